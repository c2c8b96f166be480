#include "voctk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "voctk/common.hpp"

namespace voctk {

void eigen_symmetric(const std::vector<double>& matrix, int n, std::vector<double>& values,
                     std::vector<double>& vectors) {
    if (matrix.size() != static_cast<std::size_t>(n) * n)
        throw validation_error("eigen_symmetric: shape mismatch");
    std::vector<double> a = matrix;
    vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) vectors[static_cast<std::size_t>(i) * n + i] = 1.0;

    auto at = [&](std::vector<double>& m, int r, int c) -> double& {
        return m[static_cast<std::size_t>(r) * n + c];
    };

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += at(a, p, q) * at(a, p, q);
        if (off < 1e-30) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(a, p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (int i = 0; i < n; ++i) {
                    const double aip = at(a, i, p), aiq = at(a, i, q);
                    at(a, i, p) = c * aip - s * aiq;
                    at(a, i, q) = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    const double api = at(a, p, i), aqi = at(a, q, i);
                    at(a, p, i) = c * api - s * aqi;
                    at(a, q, i) = s * api + c * aqi;
                }
                for (int i = 0; i < n; ++i) {
                    const double vip = at(vectors, i, p), viq = at(vectors, i, q);
                    at(vectors, i, p) = c * vip - s * viq;
                    at(vectors, i, q) = s * vip + c * viq;
                }
            }
        }
    }

    values.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = at(a, i, i);

    // Sort ascending, permuting eigenvector columns along.
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return values[static_cast<std::size_t>(x)] < values[static_cast<std::size_t>(y)];
    });
    std::vector<double> sorted_vals(static_cast<std::size_t>(n));
    std::vector<double> sorted_vecs(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        sorted_vals[static_cast<std::size_t>(j)] = values[static_cast<std::size_t>(order[j])];
        for (int i = 0; i < n; ++i)
            sorted_vecs[static_cast<std::size_t>(i) * n + j] =
                vectors[static_cast<std::size_t>(i) * n + order[static_cast<std::size_t>(j)]];
    }
    values = std::move(sorted_vals);
    vectors = std::move(sorted_vecs);
}

std::vector<double> mat_mul(const std::vector<double>& a, const std::vector<double>& b, int n) {
    std::vector<double> c(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const double v = a[static_cast<std::size_t>(i) * n + k];
            if (v == 0.0) continue;
            const double* brow = b.data() + static_cast<std::size_t>(k) * n;
            double* crow = c.data() + static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) crow[j] += v * brow[j];
        }
    }
    return c;
}

} // namespace voctk
