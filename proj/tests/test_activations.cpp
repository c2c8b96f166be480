#include <doctest.h>

#include <cmath>
#include <random>

#include "voctk/activations.hpp"
#include "voctk/fft.hpp"

using namespace voctk;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("snake point values") {
    CHECK(snake(0.0, 1.0) == 0.0);
    CHECK(snake(kPi / 2.0, 1.0) == doctest::Approx(kPi / 2.0 + 1.0).epsilon(1e-12));
    CHECK_THROWS_AS(snake(1.0, 0.0), validation_error);
    CHECK_THROWS_AS(snake(1.0, -2.0), validation_error);

    SUBCASE("snake(x) - x is periodic with period pi/alpha") {
        const double alpha = 2.7;
        const double period = kPi / alpha;
        for (int i = 0; i < 200; ++i) {
            const double x = -4.0 + i * 0.04;
            const double r1 = snake(x, alpha) - x;
            const double r2 = snake(x + period, alpha) - (x + period);
            CHECK(r1 == doctest::Approx(r2).epsilon(1e-9));
        }
    }
}

TEST_CASE("snake_derivative matches the closed form and its extremes") {
    CHECK(snake_derivative(0.0, 1.0) == 1.0);
    // sin(2*alpha*x) = -1 at x = 3*pi/4 for alpha = 1
    CHECK(std::abs(snake_derivative(3.0 * kPi / 4.0, 1.0)) < 1e-9);

    SUBCASE("derivative stays in [0, 2] and attains both ends on a sweep") {
        double mn = 10.0, mx = -10.0;
        for (int i = 0; i <= 20000; ++i) {
            const double x = -5.0 + i * 0.0005;
            const double d = snake_derivative(x, 1.7);
            CHECK(d >= 0.0);
            mn = std::min(mn, d);
            mx = std::max(mx, d);
        }
        CHECK(mn < 1e-6);
        CHECK(mx > 2.0 - 1e-6);
    }
    SUBCASE("finite differences agree") {
        std::mt19937_64 eng(17);
        auto uni = [&](double lo, double hi) {
            return lo + (hi - lo) * ((eng() >> 11) * (1.0 / 9007199254740992.0));
        };
        const double h = 1e-6;
        for (int i = 0; i < 1000; ++i) {
            const double x = uni(-8.0, 8.0), a = uni(0.05, 4.0);
            const double fd = (snake(x + h, a) - snake(x - h, a)) / (2.0 * h);
            const double an = snake_derivative(x, a);
            CHECK(std::abs(an - fd) / std::max(1.0, std::abs(an)) < 1e-6);
        }
    }
}

TEST_CASE("snakebeta values and partial derivatives") {
    CHECK(snakebeta(0.0, 3.0, 5.0) == 0.0);
    CHECK(snakebeta(kPi / 2.0, 1.0, 2.0) == doctest::Approx(kPi / 2.0 + 0.5).epsilon(1e-12));

    std::mt19937_64 eng(23);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * ((eng() >> 11) * (1.0 / 9007199254740992.0));
    };

    SUBCASE("reduces to snake when beta == alpha") {
        for (int i = 0; i < 100; ++i) {
            const double x = uni(-6.0, 6.0), a = uni(0.1, 3.0);
            CHECK(snakebeta(x, a, a) == snake(x, a));
        }
    }
    SUBCASE("all partials match central differences") {
        const double h = 1e-6;
        for (int i = 0; i < 1000; ++i) {
            const double x = uni(-8.0, 8.0), a = uni(0.05, 4.0), b = uni(0.05, 4.0);
            auto rel = [](double an, double fd) {
                return std::abs(an - fd) / std::max(1.0, std::abs(an));
            };
            CHECK(rel(snakebeta_dx(x, a, b),
                      (snakebeta(x + h, a, b) - snakebeta(x - h, a, b)) / (2 * h)) < 1e-6);
            CHECK(rel(snakebeta_dalpha(x, a, b),
                      (snakebeta(x, a + h, b) - snakebeta(x, a - h, b)) / (2 * h)) < 1e-6);
            CHECK(rel(snakebeta_dbeta(x, a, b),
                      (snakebeta(x, a, b + h) - snakebeta(x, a, b - h)) / (2 * h)) < 1e-6);
        }
    }
}

TEST_CASE("leaky_relu values and derivative") {
    const LeakySlope s{0.1};
    CHECK(leaky_relu(2.0, s) == 2.0);
    CHECK(leaky_relu(-2.0, s) == doctest::Approx(-0.2).epsilon(1e-15));
    CHECK(leaky_relu_derivative(-1.0, s) == 0.1);
    CHECK(leaky_relu_derivative(1.0, s) == 1.0);
    CHECK_THROWS_AS(leaky_relu(1.0, LeakySlope{1.5}), validation_error);

    const double h = 1e-6;
    const double fd = (leaky_relu(-1.0 + h, s) - leaky_relu(-1.0 - h, s)) / (2 * h);
    CHECK(fd == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("SnakeParams logscale storage exponentiates on use") {
    SnakeParams p;
    p.alpha = {0.0, std::log(2.0)};
    p.beta = {std::log(0.5)};
    p.logscale = true;
    CHECK(p.alpha_at(0) == doctest::Approx(1.0));
    CHECK(p.alpha_at(1) == doctest::Approx(2.0));
    CHECK(p.beta_at(0) == doctest::Approx(0.5));
    p.logscale = false;
    CHECK(p.alpha_at(0) == 0.0);
}

TEST_CASE("antialiased_activation basics") {
    SnakeParams p;
    p.alpha = {1.0, 0.5};
    p.beta = {1.0, 2.0};

    SUBCASE("zero in, zero out") {
        MatrixF x(2, 64, 0.0f);
        const MatrixF y = antialiased_activation(x, p, Activation::snakebeta);
        for (float v : y.data) CHECK(v == 0.0f);
    }
    SUBCASE("shape preserved for random sizes") {
        std::mt19937_64 eng(5);
        for (int trial = 0; trial < 10; ++trial) {
            const std::size_t c = 1 + eng() % 5;
            const std::size_t t = 12 + eng() % 200;
            SnakeParams q;
            q.alpha.assign(c, 0.9);
            q.beta.assign(c, 1.1);
            MatrixF x(c, t);
            for (auto& v : x.data)
                v = static_cast<float>((eng() >> 11) * (2.0 / 9007199254740992.0) - 1.0);
            const MatrixF y = antialiased_activation(x, q);
            CHECK(y.rows == c);
            CHECK(y.cols == t);
        }
    }
    SUBCASE("input shorter than the filter support is rejected") {
        MatrixF x(1, 11, 0.1f);
        SnakeParams q;
        q.alpha = {1.0};
        q.beta = {1.0};
        CHECK_THROWS_AS(antialiased_activation(x, q), validation_error);
    }
    SUBCASE("nonpositive parameters rejected") {
        MatrixF x(1, 32, 0.1f);
        SnakeParams q;
        q.alpha = {-1.0};
        q.beta = {1.0};
        CHECK_THROWS_AS(antialiased_activation(x, q, Activation::snake), validation_error);
    }
}

TEST_CASE("antialiased_activation is near-transparent for in-band tones") {
    const std::size_t T = 4096;
    MatrixF x(1, T);
    for (std::size_t t = 0; t < T; ++t)
        x.at(0, t) = static_cast<float>(
            0.8 * std::cos(2.0 * kPi * 0.05 * 0.5 * static_cast<double>(t))); // 0.05 * Nyquist
    SnakeParams p;
    p.alpha = {1.0};
    p.beta = {1.0};
    const MatrixF y = antialiased_activation(x, p, Activation::snake);

    double err2 = 0.0, ref2 = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        const double direct = snake(x.at(0, t), 1.0);
        err2 += (y.at(0, t) - direct) * (y.at(0, t) - direct);
        ref2 += direct * direct;
    }
    CHECK(std::sqrt(err2 / ref2) < 0.01);
}

TEST_CASE("antialiased_activation suppresses folded harmonics of a 0.9 Nyquist tone") {
    const std::size_t T = 4096;
    MatrixF x(1, T);
    for (std::size_t t = 0; t < T; ++t)
        x.at(0, t) = static_cast<float>(0.8 * std::cos(kPi * 0.9 * static_cast<double>(t)));
    SnakeParams p;
    p.alpha = {1.0};
    p.beta = {1.0};
    const MatrixF y = antialiased_activation(x, p, Activation::snake);

    // The squared term of the activation doubles the frequency; 1.8 pi folds
    // back to 0.2 pi, i.e. normalized frequency 0.1.
    auto band_energy = [&](const std::vector<double>& sig) {
        auto spec = fft_real(sig);
        const int center = static_cast<int>(std::lround(0.1 * static_cast<double>(T)));
        double e = 0.0;
        for (int k = center - 8; k <= center + 8; ++k) e += std::norm(spec[static_cast<std::size_t>(k)]);
        return e;
    };
    std::vector<double> direct(T), filtered(T);
    for (std::size_t t = 0; t < T; ++t) {
        direct[t] = snake(x.at(0, t), 1.0);
        filtered[t] = y.at(0, t);
    }
    const double ratio = band_energy(filtered) / band_energy(direct);
    CHECK(ratio < 0.5);
    CHECK(band_energy(filtered) < band_energy(direct)); // strict
}
