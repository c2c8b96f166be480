#include "voctk/cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "voctk/activations.hpp"
#include "voctk/config.hpp"
#include "voctk/dump.hpp"
#include "voctk/envelope.hpp"
#include "voctk/losses.hpp"
#include "voctk/metrics.hpp"
#include "voctk/netgraph.hpp"
#include "voctk/spectral.hpp"
#include "voctk/tensor.hpp"
#include "voctk/wav_io.hpp"

namespace voctk {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string iso_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void attach_meta(json& j, const std::string& config_hash, bool no_meta) {
    j["toolkit_version"] = kVersion;
    j["config_hash"] = config_hash.empty() ? "none" : config_hash;
    if (!no_meta) j["generated_at"] = iso_now();
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw io_error("cannot open for writing: " + out_path);
        out << j.dump(2) << "\n";
    }
}

MatrixD dump_to_matrix(const Dump& d) {
    MatrixD m(d.rows, d.cols);
    for (std::size_t i = 0; i < d.data.size(); ++i) m.data[i] = d.data[i];
    return m;
}

// --- envelope ---------------------------------------------------------------

struct EnvelopeArgs {
    std::string in, out;
    int mode = 1;
    int order = kEnvelopeFilterOrder;
    bool no_meta = false;
};

int cmd_envelope(const EnvelopeArgs& a) {
    const EnvelopeMode mode = envelope_mode_from_int(a.mode);
    const Waveform w = read_wav(a.in);
    const Waveform env = extract_envelope(w, mode, a.order);

    Dump d;
    d.kind = "envelope";
    d.rows = 1;
    d.cols = env.samples.size();
    d.extra["mode"] = a.mode;
    d.extra["order"] = a.order;
    d.extra["cutoff"] = (a.mode == 300 || a.mode == 500) ? a.mode : 0;
    d.extra["sample_rate"] = env.sample_rate;
    d.data.resize(env.samples.size());
    for (std::size_t i = 0; i < env.samples.size(); ++i)
        d.data[i] = static_cast<float>(env.samples[i]);
    write_dump(d, a.out);

    json j;
    j["mode"] = a.mode;
    j["order"] = a.order;
    j["length"] = env.samples.size();
    j["sample_rate"] = env.sample_rate;
    j["output"] = a.out;
    attach_meta(j, "", a.no_meta);
    emit(j, "");
    return 0;
}

// --- spectrogram ------------------------------------------------------------

struct SpectrogramArgs {
    std::string in, out, kind = "mel", config;
    int n_fft = 1024, hop = 256, win = 1024;
    bool no_meta = false;
};

int cmd_spectrogram(const SpectrogramArgs& a) {
    const Waveform w = read_wav(a.in);
    Dump d;
    std::string config_hash;

    if (a.kind == "mel") {
        if (a.config.empty()) throw validation_error("spectrogram --kind mel requires --config");
        const VocoderConfig cfg = load_config(a.config);
        config_hash = cfg.source_hash;
        const MelSpectrogram mel = mel_spectrogram(w, cfg);
        d.kind = "mel";
        d.rows = mel.values.rows;
        d.cols = mel.values.cols;
        d.data.assign(mel.values.data.begin(), mel.values.data.end());
    } else if (a.kind == "linear" || a.kind == "log") {
        StftPlan plan{a.n_fft, a.hop, a.win, true};
        Spectrogram s = stft(w, plan);
        if (a.kind == "log") s = log_magnitude(s);
        d.kind = a.kind;
        d.rows = s.values.rows;
        d.cols = s.values.cols;
        d.data.assign(s.values.data.begin(), s.values.data.end());
    } else {
        throw validation_error("spectrogram --kind must be mel, linear or log");
    }
    d.extra["sample_rate"] = w.sample_rate;
    write_dump(d, a.out);

    json j;
    j["kind"] = d.kind;
    j["rows"] = d.rows;
    j["cols"] = d.cols;
    j["output"] = a.out;
    attach_meta(j, config_hash, a.no_meta);
    emit(j, "");
    return 0;
}

// --- synth ------------------------------------------------------------------

struct SynthArgs {
    std::string config, mel, out, weights, save_weights, encoding = "float32";
    std::uint64_t seed = 0;
    bool random_init_flag = false;
    bool no_meta = false;
};

int cmd_synth(const SynthArgs& a) {
    if (a.encoding != "pcm16" && a.encoding != "float32")
        throw validation_error("synth: --encoding must be pcm16 or float32");
    const VocoderConfig cfg = load_config(a.config);
    const GeneratorSpec spec = build_generator(cfg);

    WeightBundle bundle;
    if (!a.weights.empty()) {
        bundle = load_bundle(a.weights);
    } else if (a.random_init_flag) {
        bundle = random_init(spec, a.seed);
        bundle.config_hash = cfg.source_hash;
        if (!a.save_weights.empty()) save_bundle(bundle, a.save_weights);
    } else {
        throw validation_error("synth needs --weights or --random-init-seed");
    }

    const Dump mel_dump = read_dump(a.mel);
    if (mel_dump.kind != "mel")
        throw validation_error("synth: --mel dump kind is \"" + mel_dump.kind + "\", expected mel");
    MelSpectrogram mel;
    mel.values = dump_to_matrix(mel_dump);

    const Waveform out = generator_forward(spec, bundle, mel, cfg.sampling_rate);
    write_wav(out, a.out, a.encoding == "pcm16" ? WavEncoding::pcm16 : WavEncoding::float32);

    json j;
    j["mel_frames"] = mel.values.cols;
    j["samples"] = out.samples.size();
    j["seconds"] = out.duration_seconds();
    j["length_law_exact"] =
        out.samples.size() == mel.values.cols * static_cast<std::size_t>(cfg.hop_size);
    j["output"] = a.out;
    attach_meta(j, cfg.source_hash, a.no_meta);
    emit(j, "");
    return 0;
}

// --- loss -------------------------------------------------------------------

struct LossArgs {
    std::string real, gen, config, disc = "med+mrd", weights, save_weights;
    std::uint64_t seed = 0;
    bool random_init_flag = false;
    double lambda_fm = 2.0, lambda_mel = 45.0;
    bool no_meta = false;
};

std::vector<DiscKind> parse_combination(const std::string& s) {
    std::vector<DiscKind> kinds;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t next = s.find('+', pos);
        const std::string tok = s.substr(pos, next == std::string::npos ? next : next - pos);
        if (tok.empty()) throw validation_error("bad discriminator combination: " + s);
        kinds.push_back(disc_kind_from_string(tok));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    for (std::size_t i = 0; i < kinds.size(); ++i)
        for (std::size_t j = i + 1; j < kinds.size(); ++j)
            if (kinds[i] == kinds[j])
                throw validation_error("duplicate discriminator in combination: " + s);
    return kinds;
}

int cmd_loss(const LossArgs& a) {
    const VocoderConfig cfg = load_config(a.config);
    const std::vector<DiscKind> kinds = parse_combination(a.disc);

    Waveform real = read_wav(a.real);
    Waveform gen = read_wav(a.gen);
    if (real.sample_rate != cfg.sampling_rate || gen.sample_rate != cfg.sampling_rate)
        throw validation_error("loss: waveform sample rates must match the config");
    const std::size_t n = std::min(real.samples.size(), gen.samples.size());
    if (n == 0) throw validation_error("loss: empty audio");
    real.samples.resize(n);
    gen.samples.resize(n);

    std::vector<DiscriminatorSpec> specs;
    for (DiscKind k : kinds) specs.push_back(build_discriminator(k, cfg));

    WeightBundle bundle;
    if (!a.weights.empty()) {
        bundle = load_bundle(a.weights);
    } else if (a.random_init_flag) {
        bundle.created_by = kVersion;
        bundle.config_hash = cfg.source_hash;
        for (const auto& spec : specs) {
            WeightBundle part = random_init(spec, a.seed);
            for (auto& [name, t] : part.tensors) bundle.add(std::move(t));
        }
        if (!a.save_weights.empty()) save_bundle(bundle, a.save_weights);
    } else {
        throw validation_error("loss needs --weights or --random-init-seed");
    }

    std::vector<DiscriminatorOutput> outputs_real, outputs_gen;
    for (const auto& spec : specs) {
        outputs_real.push_back(discriminator_forward(spec, bundle, real));
        outputs_gen.push_back(discriminator_forward(spec, bundle, gen));
    }

    const LossWeights lw{a.lambda_fm, a.lambda_mel};
    const LossBreakdown breakdown = total_losses(outputs_real, outputs_gen, real, gen, lw, cfg);

    json j;
    j["combination"] = a.disc;
    j["lambda_fm"] = lw.lambda_fm;
    j["lambda_mel"] = lw.lambda_mel;
    j["adv_d_per_k"] = breakdown.adv_d_per_k;
    j["adv_g_per_k"] = breakdown.adv_g_per_k;
    j["fm_per_k"] = breakdown.fm_per_k;
    j["mel"] = breakdown.mel;
    j["total_g"] = breakdown.total_g;
    j["total_d"] = breakdown.total_d;
    attach_meta(j, cfg.source_hash, a.no_meta);
    emit(j, "");
    return 0;
}

// --- metrics ----------------------------------------------------------------

struct MetricsArgs {
    std::string ref, gen, config;
    std::string embeddings_ref, embeddings_gen;
    std::string out_json, out_csv;
    int jobs = 0;
    bool no_meta = false;
};

std::vector<std::pair<fs::path, fs::path>> collect_pairs(const std::string& ref,
                                                         const std::string& gen) {
    const fs::path rp(ref), gp(gen);
    if (fs::is_regular_file(rp) && fs::is_regular_file(gp)) return {{rp, gp}};
    if (!fs::is_directory(rp) || !fs::is_directory(gp))
        throw validation_error("metrics: --ref and --gen must both be files or both directories");

    std::vector<std::pair<fs::path, fs::path>> pairs;
    std::vector<fs::path> names;
    for (const auto& e : fs::directory_iterator(rp))
        if (e.is_regular_file() && e.path().extension() == ".wav")
            names.push_back(e.path().filename());
    std::sort(names.begin(), names.end());
    for (const auto& name : names)
        if (fs::is_regular_file(gp / name)) pairs.emplace_back(rp / name, gp / name);
    if (pairs.empty())
        throw validation_error("metrics: no matching WAV filenames between " + ref + " and " + gen);
    return pairs;
}

int cmd_metrics(const MetricsArgs& a) {
    const VocoderConfig cfg = load_config(a.config);
    const auto pairs = collect_pairs(a.ref, a.gen);

    std::optional<std::pair<EmbeddingStats, EmbeddingStats>> emb;
    if (!a.embeddings_ref.empty() != !a.embeddings_gen.empty())
        throw validation_error("metrics: supply both --embeddings-ref and --embeddings-gen");
    if (!a.embeddings_ref.empty()) {
        const Dump er = read_dump(a.embeddings_ref);
        const Dump eg = read_dump(a.embeddings_gen);
        emb = std::make_pair(embedding_stats(dump_to_matrix(er)),
                             embedding_stats(dump_to_matrix(eg)));
    }

    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t jobs =
        a.jobs > 0 ? static_cast<std::size_t>(a.jobs) : std::max(1u, hw);

    std::vector<MetricReport> reports(pairs.size());
    std::vector<std::string> errors(pairs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pairs.size()) break;
            try {
                const Waveform r = read_wav(pairs[i].first.string());
                const Waveform g = read_wav(pairs[i].second.string());
                if (r.sample_rate != cfg.sampling_rate)
                    throw validation_error("sample rate mismatch vs config: " +
                                           pairs[i].first.string());
                reports[i] = compute_metric_report(r, g, cfg, emb);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    if (jobs <= 1 || pairs.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < std::min(jobs, pairs.size()); ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    json arr = json::array();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        json j;
        j["ref"] = pairs[i].first.string();
        j["gen"] = pairs[i].second.string();
        if (!errors[i].empty()) {
            j["error"] = errors[i];
        } else {
            const MetricReport& r = reports[i];
            if (r.fad) j["FAD"] = *r.fad; else j["FAD"] = nullptr;
            j["SSIM"] = r.ssim;
            j["PCC"] = r.pcc;
            j["MCD"] = r.mcd;
            j["M-STFT"] = r.m_stft;
            j["Periodicity"] = r.periodicity;
            j["provenance"] = r.provenance;
        }
        arr.push_back(j);
    }
    json out;
    out["pairs"] = arr;
    attach_meta(out, cfg.source_hash, a.no_meta);
    emit(out, a.out_json);

    if (!a.out_csv.empty()) {
        std::ofstream csv(a.out_csv);
        if (!csv) throw io_error("cannot open for writing: " + a.out_csv);
        csv << "file,FAD,SSIM,PCC,MCD,M-STFT,Periodicity\n";
        double sums[6] = {0, 0, 0, 0, 0, 0};
        std::size_t ok = 0;
        bool any_fad = false;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (!errors[i].empty()) continue;
            const MetricReport& r = reports[i];
            csv << pairs[i].first.filename().string() << ",";
            if (r.fad) { csv << *r.fad; any_fad = true; }
            csv << "," << r.ssim << "," << r.pcc << "," << r.mcd << "," << r.m_stft << ","
                << r.periodicity << "\n";
            sums[0] += r.fad.value_or(0.0);
            sums[1] += r.ssim;
            sums[2] += r.pcc;
            sums[3] += r.mcd;
            sums[4] += r.m_stft;
            sums[5] += r.periodicity;
            ++ok;
        }
        if (ok > 0) {
            csv << "mean,";
            if (any_fad) csv << sums[0] / static_cast<double>(ok);
            csv << "," << sums[1] / static_cast<double>(ok) << "," << sums[2] / static_cast<double>(ok)
                << "," << sums[3] / static_cast<double>(ok) << "," << sums[4] / static_cast<double>(ok)
                << "," << sums[5] / static_cast<double>(ok) << "\n";
        }
    }

    for (const auto& e : errors)
        if (!e.empty()) {
            std::cerr << "error: metrics failed for at least one pair\n";
            return 2;
        }
    return 0;
}

// --- gradcheck --------------------------------------------------------------

struct GradcheckArgs {
    std::string op = "snake";
    int n = 1000;
    std::uint64_t seed = 1234;
    bool no_meta = false;
};

int cmd_gradcheck(const GradcheckArgs& a) {
    if (a.n <= 0) throw validation_error("gradcheck: --n must be positive");
    std::mt19937_64 eng(a.seed);
    auto uniform = [&](double lo, double hi) {
        const double u = static_cast<double>(eng() >> 11) * (1.0 / 9007199254740992.0);
        return lo + (hi - lo) * u;
    };
    const double h = 1e-6;

    double max_rel_err = 0.0;
    for (int i = 0; i < a.n; ++i) {
        const double x = uniform(-8.0, 8.0);
        const double alpha = uniform(0.05, 4.0);
        const double beta = uniform(0.05, 4.0);
        auto rel = [](double analytic, double fd) {
            return std::abs(analytic - fd) / std::max(1.0, std::abs(analytic));
        };
        if (a.op == "snake") {
            const double fd = (snake(x + h, alpha) - snake(x - h, alpha)) / (2 * h);
            max_rel_err = std::max(max_rel_err, rel(snake_derivative(x, alpha), fd));
        } else if (a.op == "snakebeta") {
            const double fdx = (snakebeta(x + h, alpha, beta) - snakebeta(x - h, alpha, beta)) / (2 * h);
            const double fda =
                (snakebeta(x, alpha + h, beta) - snakebeta(x, alpha - h, beta)) / (2 * h);
            const double fdb =
                (snakebeta(x, alpha, beta + h) - snakebeta(x, alpha, beta - h)) / (2 * h);
            max_rel_err = std::max({max_rel_err, rel(snakebeta_dx(x, alpha, beta), fdx),
                                    rel(snakebeta_dalpha(x, alpha, beta), fda),
                                    rel(snakebeta_dbeta(x, alpha, beta), fdb)});
        } else if (a.op == "leaky_relu") {
            if (std::abs(x) < 1e-4) continue; // kink excluded
            const LeakySlope slope{0.1};
            const double fd = (leaky_relu(x + h, slope) - leaky_relu(x - h, slope)) / (2 * h);
            if (std::abs(x) < 2 * h) continue;
            max_rel_err = std::max(max_rel_err, rel(leaky_relu_derivative(x, slope), fd));
        } else {
            throw validation_error("gradcheck: --op must be snake, snakebeta or leaky_relu");
        }
    }

    json j;
    j["op"] = a.op;
    j["n_points"] = a.n;
    j["max_rel_err"] = max_rel_err;
    j["pass"] = max_rel_err < 1e-6;
    attach_meta(j, "", a.no_meta);
    emit(j, "");
    return j["pass"].get<bool>() ? 0 : 2;
}

// --- paramcount -------------------------------------------------------------

struct ParamcountArgs {
    std::string config, net = "all";
    bool no_meta = false;
};

int cmd_paramcount(const ParamcountArgs& a) {
    const VocoderConfig cfg = load_config(a.config);
    json j;
    auto add = [&](const std::string& name) {
        if (name == "generator")
            j["generator"] = count_parameters(build_generator(cfg));
        else
            j[name] = count_parameters(build_discriminator(disc_kind_from_string(name), cfg));
    };
    if (a.net == "all") {
        for (const char* n : {"generator", "med", "mrd", "mpd", "msd"}) add(n);
        j["total_gen_med_mrd"] = j["generator"].get<long long>() + j["med"].get<long long>() +
                                 j["mrd"].get<long long>();
    } else {
        add(a.net);
    }
    attach_meta(j, cfg.source_hash, a.no_meta);
    emit(j, "");
    return 0;
}

// --- lencheck ---------------------------------------------------------------

struct LencheckArgs {
    long long mel_frames = 0, wav_len = 0, hop = 256;
    int sr = 24000;
    bool no_meta = false;
};

int cmd_lencheck(const LencheckArgs& a) {
    const LengthReport r = length_consistency(a.mel_frames, a.wav_len, a.hop, a.sr);
    json j;
    j["mel_frames"] = r.mel_frames;
    j["hop"] = r.hop;
    j["expected_len"] = r.expected_len;
    j["waveform_len"] = r.waveform_len;
    j["diff"] = r.diff;
    j["diff_seconds"] = r.diff_seconds;
    j["pass"] = r.pass;
    attach_meta(j, "", a.no_meta);
    emit(j, "");
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"vocoder analysis toolkit: envelopes, spectrograms, forward passes, losses, metrics"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    EnvelopeArgs env_args;
    auto* env = app.add_subcommand("envelope", "extract an envelope signal from a WAV file");
    env->add_option("--in", env_args.in, "input WAV")->required();
    env->add_option("--out", env_args.out, "output dump file")->required();
    env->add_option("--mode", env_args.mode, "envelope mode: -1, 0, 1, 300, 500")->required();
    env->add_option("--order", env_args.order, "Butterworth order for the 300/500 modes");
    env->add_flag("--no-meta", env_args.no_meta, "omit the timestamp from the JSON output");

    SpectrogramArgs spec_args;
    auto* spc = app.add_subcommand("spectrogram", "write a spectrogram dump");
    spc->add_option("--in", spec_args.in, "input WAV")->required();
    spc->add_option("--out", spec_args.out, "output dump file")->required();
    spc->add_option("--kind", spec_args.kind, "mel, linear or log");
    spc->add_option("--config", spec_args.config, "config JSON (required for mel)");
    spc->add_option("--n-fft", spec_args.n_fft, "FFT size (linear/log)");
    spc->add_option("--hop", spec_args.hop, "hop size (linear/log)");
    spc->add_option("--win", spec_args.win, "window size (linear/log)");
    spc->add_flag("--no-meta", spec_args.no_meta, "omit the timestamp from the JSON output");

    SynthArgs synth_args;
    auto* syn = app.add_subcommand("synth", "run the generator on a mel dump");
    syn->add_option("--config", synth_args.config, "config JSON")->required();
    syn->add_option("--mel", synth_args.mel, "mel dump file")->required();
    syn->add_option("--out", synth_args.out, "output WAV")->required();
    syn->add_option("--weights", synth_args.weights, "weight bundle (base or manifest path)");
    auto* seedopt =
        syn->add_option("--random-init-seed", synth_args.seed, "random-init weights with this seed");
    syn->add_option("--save-weights", synth_args.save_weights, "save random-init weights here");
    syn->add_option("--encoding", synth_args.encoding, "pcm16 or float32 (default)");
    syn->add_flag("--no-meta", synth_args.no_meta, "omit the timestamp from the JSON output");

    LossArgs loss_args;
    auto* los = app.add_subcommand("loss", "evaluate the training objective on an audio pair");
    los->add_option("--real", loss_args.real, "reference WAV")->required();
    los->add_option("--gen", loss_args.gen, "generated WAV")->required();
    los->add_option("--config", loss_args.config, "config JSON")->required();
    los->add_option("--disc", loss_args.disc,
                    "combination: med, mrd, mpd, msd, med+mrd, mpd+msd, med+mpd+mrd, ...");
    los->add_option("--weights", loss_args.weights, "weight bundle (base or manifest path)");
    auto* lseed =
        los->add_option("--random-init-seed", loss_args.seed, "random-init weights with this seed");
    los->add_option("--save-weights", loss_args.save_weights, "save random-init weights here");
    los->add_option("--lambda-fm", loss_args.lambda_fm, "feature matching weight (default 2)");
    los->add_option("--lambda-mel", loss_args.lambda_mel, "mel loss weight (default 45)");
    los->add_flag("--no-meta", loss_args.no_meta, "omit the timestamp from the JSON output");

    MetricsArgs met_args;
    auto* met = app.add_subcommand("metrics", "objective metric suite over file pairs");
    met->add_option("--ref", met_args.ref, "reference WAV file or directory")->required();
    met->add_option("--gen", met_args.gen, "generated WAV file or directory")->required();
    met->add_option("--config", met_args.config, "config JSON")->required();
    met->add_option("--embeddings-ref", met_args.embeddings_ref, "reference embeddings dump");
    met->add_option("--embeddings-gen", met_args.embeddings_gen, "generated embeddings dump");
    met->add_option("--out-json", met_args.out_json, "write the JSON report here (default stdout)");
    met->add_option("--out-csv", met_args.out_csv, "write the CSV summary here");
    met->add_option("--jobs", met_args.jobs, "worker threads (default: logical cores)");
    met->add_flag("--no-meta", met_args.no_meta, "omit the timestamp from the JSON output");

    GradcheckArgs grad_args;
    auto* grd = app.add_subcommand("gradcheck", "analytic vs finite-difference derivatives");
    grd->add_option("--op", grad_args.op, "snake, snakebeta or leaky_relu")->required();
    grd->add_option("--n", grad_args.n, "number of random points (default 1000)");
    grd->add_option("--seed", grad_args.seed, "RNG seed");
    grd->add_flag("--no-meta", grad_args.no_meta, "omit the timestamp from the JSON output");

    ParamcountArgs par_args;
    auto* par = app.add_subcommand("paramcount", "parameter counts from the config");
    par->add_option("--config", par_args.config, "config JSON")->required();
    par->add_option("--net", par_args.net, "generator, med, mrd, mpd, msd or all");
    par->add_flag("--no-meta", par_args.no_meta, "omit the timestamp from the JSON output");

    LencheckArgs len_args;
    auto* len = app.add_subcommand("lencheck", "mel-to-waveform length consistency audit");
    len->add_option("--mel-frames", len_args.mel_frames, "mel frame count")->required();
    len->add_option("--wav-len", len_args.wav_len, "waveform length in samples")->required();
    len->add_option("--hop", len_args.hop, "hop size (default 256)");
    len->add_option("--sr", len_args.sr, "sample rate for the seconds column (default 24000)");
    len->add_flag("--no-meta", len_args.no_meta, "omit the timestamp from the JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (env->parsed()) return cmd_envelope(env_args);
        if (spc->parsed()) return cmd_spectrogram(spec_args);
        if (syn->parsed()) {
            synth_args.random_init_flag = seedopt->count() > 0;
            return cmd_synth(synth_args);
        }
        if (los->parsed()) {
            loss_args.random_init_flag = lseed->count() > 0;
            return cmd_loss(loss_args);
        }
        if (met->parsed()) return cmd_metrics(met_args);
        if (grd->parsed()) return cmd_gradcheck(grad_args);
        if (par->parsed()) return cmd_paramcount(par_args);
        if (len->parsed()) return cmd_lencheck(len_args);
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

} // namespace voctk
