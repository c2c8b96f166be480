#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "voctk/activations.hpp"
#include "voctk/config.hpp"
#include "voctk/envelope.hpp"
#include "voctk/losses.hpp"
#include "voctk/metrics.hpp"
#include "voctk/netgraph.hpp"
#include "voctk/spectral.hpp"
#include "voctk/tensor.hpp"
#include "voctk/wav_io.hpp"

namespace py = pybind11;
using namespace voctk;

namespace {

Waveform waveform_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> samples,
                             int sample_rate) {
    if (samples.ndim() != 1) throw validation_error("samples must be a 1-D array");
    Waveform w;
    w.sample_rate = sample_rate;
    w.samples.assign(samples.data(), samples.data() + samples.size());
    validate(w);
    return w;
}

py::array_t<double> vector_to_array(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<double> matrix_to_array(const MatrixD& m) {
    py::array_t<double> out({static_cast<py::ssize_t>(m.rows), static_cast<py::ssize_t>(m.cols)});
    std::copy(m.data.begin(), m.data.end(), out.mutable_data());
    return out;
}

MatrixD matrix_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> a) {
    if (a.ndim() != 2) throw validation_error("expected a 2-D array");
    MatrixD m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
    std::copy(a.data(), a.data() + a.size(), m.data.begin());
    return m;
}

MatrixF matrixf_from_array(py::array_t<float, py::array::c_style | py::array::forcecast> a) {
    if (a.ndim() != 2) throw validation_error("expected a 2-D array");
    MatrixF m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
    std::copy(a.data(), a.data() + a.size(), m.data.begin());
    return m;
}

py::array_t<float> matrixf_to_array(const MatrixF& m) {
    py::array_t<float> out({static_cast<py::ssize_t>(m.rows), static_cast<py::ssize_t>(m.cols)});
    std::copy(m.data.begin(), m.data.end(), out.mutable_data());
    return out;
}

VocoderConfig config_from_file_or_json(const std::string& path_or_json) {
    if (!path_or_json.empty() && path_or_json.front() == '{')
        return parse_config(path_or_json);
    return load_config(path_or_json);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "vocoder analysis toolkit core";
    m.attr("__version__") = kVersion;

    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<io_error>(m, "IoError", PyExc_IOError);

    // audio I/O
    m.def("read_wav", [](const std::string& path) {
        const Waveform w = read_wav(path);
        return py::make_tuple(vector_to_array(w.samples), w.sample_rate);
    });
    m.def("write_wav",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> samples, int sr,
             const std::string& path, const std::string& encoding) {
              write_wav(waveform_from_array(samples, sr), path,
                        encoding == "pcm16" ? WavEncoding::pcm16 : WavEncoding::float32);
          },
          py::arg("samples"), py::arg("sample_rate"), py::arg("path"),
          py::arg("encoding") = "float32");
    m.def("normalize_peak",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> samples, int sr) {
              return vector_to_array(normalize_peak(waveform_from_array(samples, sr)).samples);
          },
          py::arg("samples"), py::arg("sample_rate") = 24000);

    // spectral
    m.def("mel_spectrogram",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> samples, int sr,
             const std::string& config) {
              const VocoderConfig cfg = config_from_file_or_json(config);
              return matrix_to_array(mel_spectrogram(waveform_from_array(samples, sr), cfg).values);
          },
          py::arg("samples"), py::arg("sample_rate"), py::arg("config"));
    m.def("stft_magnitude",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> samples, int sr,
             int n_fft, int hop, int win) {
              StftPlan plan{n_fft, hop, win, true};
              return matrix_to_array(stft(waveform_from_array(samples, sr), plan).values);
          },
          py::arg("samples"), py::arg("sample_rate"), py::arg("n_fft") = 1024,
          py::arg("hop") = 256, py::arg("win") = 1024);

    // envelope
    m.def("extract_envelope",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> samples, int sr,
             int mode, int order) {
              return vector_to_array(extract_envelope(waveform_from_array(samples, sr),
                                                      envelope_mode_from_int(mode), order)
                                         .samples);
          },
          py::arg("samples"), py::arg("sample_rate"), py::arg("mode"),
          py::arg("order") = kEnvelopeFilterOrder);

    // activations
    m.def("snake", py::vectorize([](double x, double a) { return snake(x, a); }));
    m.def("snake_derivative",
          py::vectorize([](double x, double a) { return snake_derivative(x, a); }));
    m.def("snakebeta",
          py::vectorize([](double x, double a, double b) { return snakebeta(x, a, b); }));
    m.def("leaky_relu",
          py::vectorize([](double x, double slope) { return leaky_relu(x, LeakySlope{slope}); }),
          py::arg("x"), py::arg("slope") = 0.1);
    m.def("antialiased_activation",
          [](py::array_t<float, py::array::c_style | py::array::forcecast> x,
             py::array_t<double, py::array::c_style | py::array::forcecast> alpha,
             py::array_t<double, py::array::c_style | py::array::forcecast> beta, bool logscale,
             const std::string& kind) {
              SnakeParams p;
              p.alpha.assign(alpha.data(), alpha.data() + alpha.size());
              p.beta.assign(beta.data(), beta.data() + beta.size());
              p.logscale = logscale;
              return matrixf_to_array(
                  antialiased_activation(matrixf_from_array(x), p, activation_from_string(kind)));
          },
          py::arg("x"), py::arg("alpha"), py::arg("beta"), py::arg("logscale") = false,
          py::arg("kind") = "snakebeta");

    // losses
    m.def("adv_loss_d", [](const std::vector<float>& r, const std::vector<float>& g) {
        return adv_loss_d(r, g);
    });
    m.def("adv_loss_g", [](const std::vector<float>& g) { return adv_loss_g(g); });
    m.def("mel_loss",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> real,
             py::array_t<double, py::array::c_style | py::array::forcecast> gen, int sr,
             const std::string& config) {
              const VocoderConfig cfg = config_from_file_or_json(config);
              return mel_loss(waveform_from_array(real, sr), waveform_from_array(gen, sr), cfg);
          });

    // netgraph
    m.def("paramcount", [](const std::string& config, const std::string& net) {
        const VocoderConfig cfg = config_from_file_or_json(config);
        if (net == "generator") return count_parameters(build_generator(cfg));
        return count_parameters(build_discriminator(disc_kind_from_string(net), cfg));
    });
    m.def("generator_forward_random",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> mel,
             const std::string& config, std::uint64_t seed) {
              const VocoderConfig cfg = config_from_file_or_json(config);
              const GeneratorSpec spec = build_generator(cfg);
              const WeightBundle weights = random_init(spec, seed);
              MelSpectrogram ms;
              ms.values = matrix_from_array(mel);
              const Waveform out = generator_forward(spec, weights, ms, cfg.sampling_rate);
              return vector_to_array(out.samples);
          },
          py::arg("mel"), py::arg("config"), py::arg("seed") = 0);

    // metrics
    m.def("mcd",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> ref,
             py::array_t<double, py::array::c_style | py::array::forcecast> gen, int sr,
             const std::string& config) {
              const VocoderConfig cfg = config_from_file_or_json(config);
              return mcd(waveform_from_array(ref, sr), waveform_from_array(gen, sr), cfg);
          });
    m.def("metric_report",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> ref,
             py::array_t<double, py::array::c_style | py::array::forcecast> gen, int sr,
             const std::string& config) {
              const VocoderConfig cfg = config_from_file_or_json(config);
              const MetricReport r = compute_metric_report(waveform_from_array(ref, sr),
                                                           waveform_from_array(gen, sr), cfg);
              py::dict d;
              d["MCD"] = r.mcd;
              d["M-STFT"] = r.m_stft;
              d["SSIM"] = r.ssim;
              d["PCC"] = r.pcc;
              d["Periodicity"] = r.periodicity;
              d["provenance"] = r.provenance;
              return d;
          });
    m.def("ssim_mel",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> a,
             py::array_t<double, py::array::c_style | py::array::forcecast> b) {
              MelSpectrogram ma, mb;
              ma.values = matrix_from_array(a);
              mb.values = matrix_from_array(b);
              return ssim_mel(ma, mb);
          });
    m.def("pcc_mel",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> a,
             py::array_t<double, py::array::c_style | py::array::forcecast> b) {
              MelSpectrogram ma, mb;
              ma.values = matrix_from_array(a);
              mb.values = matrix_from_array(b);
              return pcc_mel(ma, mb);
          });
    m.def("frechet_distance",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> a,
             py::array_t<double, py::array::c_style | py::array::forcecast> b) {
              return frechet_distance(embedding_stats(matrix_from_array(a)),
                                      embedding_stats(matrix_from_array(b)));
          });
    m.def("length_consistency",
          [](long long mel_frames, long long wav_len, long long hop, int sr) {
              const LengthReport r = length_consistency(mel_frames, wav_len, hop, sr);
              py::dict d;
              d["expected_len"] = r.expected_len;
              d["diff"] = r.diff;
              d["diff_seconds"] = r.diff_seconds;
              d["pass"] = r.pass;
              return d;
          },
          py::arg("mel_frames"), py::arg("wav_len"), py::arg("hop") = 256,
          py::arg("sample_rate") = 24000);
}
