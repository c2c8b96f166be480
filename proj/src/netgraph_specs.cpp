#include "voctk/netgraph.hpp"

namespace voctk {

std::string to_string(DiscKind k) {
    switch (k) {
        case DiscKind::med: return "med";
        case DiscKind::mrd: return "mrd";
        case DiscKind::mpd: return "mpd";
        case DiscKind::msd: return "msd";
    }
    return "?";
}

DiscKind disc_kind_from_string(const std::string& s) {
    if (s == "med") return DiscKind::med;
    if (s == "mrd") return DiscKind::mrd;
    if (s == "mpd") return DiscKind::mpd;
    if (s == "msd") return DiscKind::msd;
    throw validation_error("unknown discriminator kind: " + s);
}

namespace {

int same_padding(int kernel, int dilation) { return (kernel - 1) * dilation / 2; }

ActivationSpec make_act(const std::string& name, int channels, Activation kind, bool logscale) {
    ActivationSpec a;
    a.name = name;
    a.channels = channels;
    a.kind = kind;
    a.logscale = logscale;
    return a;
}

AmpBlockSpec make_amp_block(const std::string& prefix, int channels, int kernel,
                            const std::vector<int>& dilations, Activation act, bool logscale) {
    AmpBlockSpec b;
    b.channels = channels;
    b.kernel = kernel;
    b.dilations = dilations;
    for (std::size_t d = 0; d < dilations.size(); ++d) {
        Conv1dSpec c1;
        c1.name = prefix + ".convs1." + std::to_string(d);
        c1.in_channels = c1.out_channels = channels;
        c1.kernel = kernel;
        c1.dilation = dilations[d];
        c1.padding = same_padding(kernel, dilations[d]);
        b.convs1.push_back(c1);

        Conv1dSpec c2 = c1;
        c2.name = prefix + ".convs2." + std::to_string(d);
        c2.dilation = 1;
        c2.padding = same_padding(kernel, 1);
        b.convs2.push_back(c2);

        b.acts1.push_back(make_act(prefix + ".acts1." + std::to_string(d), channels, act, logscale));
        b.acts2.push_back(make_act(prefix + ".acts2." + std::to_string(d), channels, act, logscale));
    }
    return b;
}

// The scale-style 1-D stack shared by the MED and MSD branches: kernel-15
// head, grouped strided kernel-41 body, kernel-5 tail, kernel-3 score head.
std::vector<Conv1dSpec> scale_stack(const std::string& prefix, Conv1dSpec& post) {
    struct L { int in, out, k, s, g; };
    const L layers[] = {
        {1, 128, 15, 1, 1},   {128, 128, 41, 2, 4},  {128, 256, 41, 2, 16},
        {256, 512, 41, 4, 16}, {512, 1024, 41, 4, 16}, {1024, 1024, 41, 1, 16},
        {1024, 1024, 5, 1, 1},
    };
    std::vector<Conv1dSpec> convs;
    for (std::size_t i = 0; i < std::size(layers); ++i) {
        Conv1dSpec c;
        c.name = prefix + ".convs." + std::to_string(i);
        c.in_channels = layers[i].in;
        c.out_channels = layers[i].out;
        c.kernel = layers[i].k;
        c.stride = layers[i].s;
        c.groups = layers[i].g;
        c.padding = same_padding(layers[i].k, 1);
        convs.push_back(c);
    }
    post.name = prefix + ".post";
    post.in_channels = 1024;
    post.out_channels = 1;
    post.kernel = 3;
    post.padding = 1;
    return convs;
}

} // namespace

GeneratorSpec build_generator(const VocoderConfig& cfg) {
    validate(cfg);
    GeneratorSpec g;
    g.num_mels = cfg.num_mels;
    g.upsample_initial_channel = cfg.upsample_initial_channel;
    g.upsample_rates = cfg.upsample_rates;
    g.activation = cfg.activation;
    g.snake_logscale = cfg.snake_logscale;

    g.conv_pre.name = "gen.conv_pre";
    g.conv_pre.in_channels = cfg.num_mels;
    g.conv_pre.out_channels = cfg.upsample_initial_channel;
    g.conv_pre.kernel = 7;
    g.conv_pre.padding = 3;

    int ch = cfg.upsample_initial_channel;
    for (std::size_t i = 0; i < cfg.upsample_rates.size(); ++i) {
        const int out_ch = ch / 2; // channels halve per upsample stage
        ConvTranspose1dSpec up;
        up.name = "gen.ups." + std::to_string(i);
        up.in_channels = ch;
        up.out_channels = out_ch;
        up.kernel = cfg.upsample_kernel_sizes[i];
        up.stride = cfg.upsample_rates[i];
        up.padding = (cfg.upsample_kernel_sizes[i] - cfg.upsample_rates[i]) / 2;
        g.ups.push_back(up);

        std::vector<AmpBlockSpec> stage_blocks;
        for (std::size_t j = 0; j < cfg.resblock_kernel_sizes.size(); ++j) {
            const std::string prefix =
                "gen.blocks." + std::to_string(i) + "." + std::to_string(j);
            stage_blocks.push_back(make_amp_block(prefix, out_ch, cfg.resblock_kernel_sizes[j],
                                                  cfg.resblock_dilation_sizes[j], cfg.activation,
                                                  cfg.snake_logscale));
        }
        g.blocks.push_back(std::move(stage_blocks));
        ch = out_ch;
    }

    g.act_post = make_act("gen.act_post", ch, cfg.activation, cfg.snake_logscale);
    g.conv_post.name = "gen.conv_post";
    g.conv_post.in_channels = ch;
    g.conv_post.out_channels = 1;
    g.conv_post.kernel = 7;
    g.conv_post.padding = 3;
    return g;
}

DiscriminatorSpec build_discriminator(DiscKind kind, const VocoderConfig& cfg) {
    validate(cfg);
    DiscriminatorSpec d;
    d.kind = kind;

    switch (kind) {
        case DiscKind::med: {
            int idx = 0;
            for (EnvelopeMode mode : kEnvelopeModes) {
                SubDiscriminatorSpec sub;
                sub.name = "med." + std::to_string(idx++);
                sub.mode = mode;
                sub.convs1d = scale_stack(sub.name, sub.post1d);
                d.subs.push_back(std::move(sub));
            }
            break;
        }
        case DiscKind::msd: {
            for (int s = 0; s < 3; ++s) {
                SubDiscriminatorSpec sub;
                sub.name = "msd." + std::to_string(s);
                sub.pool_stages = s;
                sub.convs1d = scale_stack(sub.name, sub.post1d);
                d.subs.push_back(std::move(sub));
            }
            break;
        }
        case DiscKind::mrd: {
            if (cfg.resolutions.empty())
                throw validation_error("mrd spec: config has no resolutions");
            const int ch = static_cast<int>(32 * cfg.discriminator_channel_mult);
            for (std::size_t r = 0; r < cfg.resolutions.size(); ++r) {
                SubDiscriminatorSpec sub;
                sub.name = "mrd." + std::to_string(r);
                sub.resolution = cfg.resolutions[r];
                struct L { int in, out, kh, kw, sh, sw; };
                const L layers[] = {
                    {1, ch, 3, 9, 1, 1}, {ch, ch, 3, 9, 1, 2}, {ch, ch, 3, 9, 1, 2},
                    {ch, ch, 3, 9, 1, 2}, {ch, ch, 3, 3, 1, 1},
                };
                for (std::size_t i = 0; i < std::size(layers); ++i) {
                    Conv2dSpec c;
                    c.name = sub.name + ".convs." + std::to_string(i);
                    c.in_channels = layers[i].in;
                    c.out_channels = layers[i].out;
                    c.kernel_h = layers[i].kh;
                    c.kernel_w = layers[i].kw;
                    c.stride_h = layers[i].sh;
                    c.stride_w = layers[i].sw;
                    c.pad_h = (layers[i].kh - 1) / 2;
                    c.pad_w = (layers[i].kw - 1) / 2;
                    sub.convs2d.push_back(c);
                }
                sub.post2d.name = sub.name + ".post";
                sub.post2d.in_channels = ch;
                sub.post2d.out_channels = 1;
                sub.post2d.kernel_h = 3;
                sub.post2d.kernel_w = 3;
                sub.post2d.pad_h = 1;
                sub.post2d.pad_w = 1;
                d.subs.push_back(std::move(sub));
            }
            break;
        }
        case DiscKind::mpd: {
            if (cfg.mpd_reshapes.empty())
                throw validation_error("mpd spec: config has no mpd_reshapes");
            for (std::size_t p = 0; p < cfg.mpd_reshapes.size(); ++p) {
                SubDiscriminatorSpec sub;
                sub.name = "mpd." + std::to_string(p);
                sub.period = cfg.mpd_reshapes[p];
                const int chans[] = {1, 32, 128, 512, 1024, 1024};
                for (int i = 0; i < 5; ++i) {
                    Conv2dSpec c;
                    c.name = sub.name + ".convs." + std::to_string(i);
                    c.in_channels = chans[i];
                    c.out_channels = chans[i + 1];
                    c.kernel_h = 5;
                    c.kernel_w = 1;
                    c.stride_h = (i < 4) ? 3 : 1;
                    c.stride_w = 1;
                    c.pad_h = 2;
                    c.pad_w = 0;
                    sub.convs2d.push_back(c);
                }
                sub.post2d.name = sub.name + ".post";
                sub.post2d.in_channels = 1024;
                sub.post2d.out_channels = 1;
                sub.post2d.kernel_h = 3;
                sub.post2d.kernel_w = 1;
                sub.post2d.pad_h = 1;
                sub.post2d.pad_w = 0;
                d.subs.push_back(std::move(sub));
            }
            break;
        }
    }
    return d;
}

namespace {

void declare_conv1d(std::vector<TensorDecl>& out, const Conv1dSpec& c) {
    out.push_back({c.name + ".weight",
                   {c.out_channels, c.in_channels / c.groups, c.kernel}, false});
    out.push_back({c.name + ".bias", {c.out_channels}, false});
}

void declare_convt1d(std::vector<TensorDecl>& out, const ConvTranspose1dSpec& c) {
    out.push_back({c.name + ".weight", {c.in_channels, c.out_channels, c.kernel}, false});
    out.push_back({c.name + ".bias", {c.out_channels}, false});
}

void declare_conv2d(std::vector<TensorDecl>& out, const Conv2dSpec& c) {
    out.push_back({c.name + ".weight",
                   {c.out_channels, c.in_channels, c.kernel_h, c.kernel_w}, false});
    out.push_back({c.name + ".bias", {c.out_channels}, false});
}

void declare_act(std::vector<TensorDecl>& out, const ActivationSpec& a) {
    if (a.kind == Activation::leaky_relu) return;
    out.push_back({a.name + ".alpha", {a.channels}, true});
    if (a.kind == Activation::snakebeta) out.push_back({a.name + ".beta", {a.channels}, true});
}

} // namespace

std::vector<TensorDecl> enumerate_tensors(const GeneratorSpec& spec) {
    std::vector<TensorDecl> out;
    declare_conv1d(out, spec.conv_pre);
    for (const auto& up : spec.ups) declare_convt1d(out, up);
    for (const auto& stage : spec.blocks) {
        for (const auto& b : stage) {
            for (std::size_t d = 0; d < b.convs1.size(); ++d) {
                declare_act(out, b.acts1[d]);
                declare_conv1d(out, b.convs1[d]);
                declare_act(out, b.acts2[d]);
                declare_conv1d(out, b.convs2[d]);
            }
        }
    }
    declare_act(out, spec.act_post);
    declare_conv1d(out, spec.conv_post);
    return out;
}

std::vector<TensorDecl> enumerate_tensors(const DiscriminatorSpec& spec) {
    std::vector<TensorDecl> out;
    for (const auto& sub : spec.subs) {
        for (const auto& c : sub.convs1d) declare_conv1d(out, c);
        for (const auto& c : sub.convs2d) declare_conv2d(out, c);
        if (!sub.convs1d.empty()) declare_conv1d(out, sub.post1d);
        if (!sub.convs2d.empty()) declare_conv2d(out, sub.post2d);
    }
    return out;
}

namespace {

long long count_from_decls(const std::vector<TensorDecl>& decls) {
    long long n = 0;
    for (const auto& d : decls) {
        long long t = 1;
        for (long long s : d.shape) t *= s;
        n += t;
    }
    return n;
}

WeightBundle init_from_decls(const std::vector<TensorDecl>& decls, std::uint64_t seed,
                             bool logscale) {
    WeightBundle bundle;
    bundle.created_by = kVersion;
    NormalSampler rng(seed);
    for (const auto& d : decls) {
        NamedTensor t;
        t.name = d.name;
        t.shape = d.shape;
        t.data.resize(static_cast<std::size_t>(count_from_decls({d})));
        if (d.is_activation_param) {
            const float v = logscale ? 0.0f : 1.0f;
            for (auto& x : t.data) x = v;
        } else {
            for (auto& x : t.data) x = static_cast<float>(rng.next(0.01));
        }
        bundle.add(std::move(t));
    }
    return bundle;
}

} // namespace

long long count_parameters(const GeneratorSpec& spec) {
    return count_from_decls(enumerate_tensors(spec));
}

long long count_parameters(const DiscriminatorSpec& spec) {
    return count_from_decls(enumerate_tensors(spec));
}

WeightBundle random_init(const GeneratorSpec& spec, std::uint64_t seed) {
    return init_from_decls(enumerate_tensors(spec), seed, spec.snake_logscale);
}

WeightBundle random_init(const DiscriminatorSpec& spec, std::uint64_t seed) {
    return init_from_decls(enumerate_tensors(spec), seed, false);
}

} // namespace voctk
