#pragma once

#include <vector>

#include "gsd/nn/core.hpp"
#include "gsd/nn/layers.hpp"

namespace gsd::nn {

struct EncoderConfig {
    int d_model = 256;
    int n_heads = 4;
    int n_layers = 1;
    int ff_dim = 256;
    double dropout = 0.1;
    bool positional_encoding = true;

    void validate() const {
        if (d_model <= 0 || n_heads <= 0 || ff_dim <= 0 || n_layers < 0) {
            throw ConfigError("invalid encoder configuration");
        }
        if (d_model % n_heads != 0) throw ConfigError("d_model must be divisible by n_heads");
    }
};

// Pre-computed sinusoidal positional encoding, tiled over blocks.
template <typename S>
Mat<S> sinusoidal_encoding(int length, int d_model) {
    Mat<S> pe(length, d_model);
    for (int pos = 0; pos < length; ++pos) {
        for (int i = 0; i < d_model; ++i) {
            const double angle =
                pos / std::pow(10000.0, 2.0 * (i / 2) / static_cast<double>(d_model));
            pe(pos, i) = static_cast<S>((i % 2 == 0) ? std::sin(angle) : std::cos(angle));
        }
    }
    return pe;
}

// One post-norm Transformer encoder layer: MHSA + residual + LayerNorm,
// feed-forward + residual + LayerNorm.
template <typename S>
class EncoderLayer {
public:
    void setup(const std::string& name, const EncoderConfig& cfg, Rng& rng) {
        mhsa_.setup(name + ".mhsa", cfg.d_model, cfg.n_heads, rng);
        ff_.setup(name + ".ff", cfg.d_model, cfg.ff_dim, rng);
        ln1_.setup(name + ".ln1", cfg.d_model);
        ln2_.setup(name + ".ln2", cfg.d_model);
        drop1_.set_p(cfg.dropout);
        drop2_.set_p(cfg.dropout);
    }

    Mat<S> forward(const Mat<S>& x, const Context& ctx, int block_len) {
        Mat<S> a = drop1_.forward(mhsa_.forward(x, x, block_len), ctx);
        Mat<S> h = ln1_.forward(x + a);
        Mat<S> f = drop2_.forward(ff_.forward(h), ctx);
        return ln2_.forward(h + f);
    }

    Mat<S> backward(const Mat<S>& gy) {
        Mat<S> g_sum = ln2_.backward(gy);
        Mat<S> g_h = g_sum + ff_.backward(drop2_.backward(g_sum));
        Mat<S> g1 = ln1_.backward(g_h);
        auto [gxq, gxkv] = mhsa_.backward(drop1_.backward(g1));
        return g1 + gxq + gxkv;
    }

    void collect(std::vector<Param<S>*>& out) {
        mhsa_.collect(out);
        ff_.collect(out);
        ln1_.collect(out);
        ln2_.collect(out);
    }

private:
    MultiHeadAttention<S> mhsa_;
    FeedForward<S> ff_;
    LayerNorm<S> ln1_, ln2_;
    DropoutLayer<S> drop1_, drop2_;
};

// Stack of encoder layers with optional sinusoidal positions. A zero-layer
// encoder is the identity (plus positions when enabled).
template <typename S>
class TransformerEncoder {
public:
    void setup(const std::string& name, const EncoderConfig& cfg, Rng& rng) {
        cfg.validate();
        cfg_ = cfg;
        layers_.resize(cfg.n_layers);
        for (int i = 0; i < cfg.n_layers; ++i) {
            layers_[i].setup(name + ".layer" + std::to_string(i), cfg, rng);
        }
    }

    Mat<S> forward(const Mat<S>& x, const Context& ctx, int block_len) {
        Mat<S> h = x;
        if (cfg_.positional_encoding) {
            if (pe_.rows() != block_len || pe_.cols() != x.cols()) {
                pe_ = sinusoidal_encoding<S>(block_len, static_cast<int>(x.cols()));
            }
            for (Eigen::Index r = 0; r < h.rows(); ++r) h.row(r) += pe_.row(r % block_len);
        }
        for (auto& layer : layers_) h = layer.forward(h, ctx, block_len);
        return h;
    }

    Mat<S> backward(const Mat<S>& gy) {
        Mat<S> g = gy;
        for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) g = it->backward(g);
        return g;  // positional encoding is additive
    }

    void collect(std::vector<Param<S>*>& out) {
        for (auto& layer : layers_) layer.collect(out);
    }

    const EncoderConfig& config() const { return cfg_; }

private:
    EncoderConfig cfg_;
    std::vector<EncoderLayer<S>> layers_;
    Mat<S> pe_;
};

// Bidirectional cross-modal encoder: per-stream standard encoder layer, then
// blocks of (cross-attention, self-attention, feed-forward) per stream. The
// queries of each cross-attention come from its own stream and the keys and
// values from the other, both evaluated on the block's input states.
template <typename S>
class CrossModalEncoder {
public:
    struct Config {
        int d_model = 256;
        int n_heads = 4;
        int n_cross_blocks = 1;
        int ff_dim = 256;
        double dropout = 0.1;
        bool positional_encoding = true;

        EncoderConfig as_encoder() const {
            return {d_model, n_heads, 1, ff_dim, dropout, positional_encoding};
        }
    };

    void setup(const std::string& name, const Config& cfg, Rng& rng) {
        cfg_ = cfg;
        EncoderConfig base = cfg.as_encoder();
        base.validate();
        base_v_.setup(name + ".base_v", base, rng);
        base_s_.setup(name + ".base_s", base, rng);
        blocks_.resize(cfg.n_cross_blocks);
        for (int i = 0; i < cfg.n_cross_blocks; ++i) {
            auto& b = blocks_[i];
            const std::string bn = name + ".cross" + std::to_string(i);
            b.mhca_v.setup(bn + ".mhca_v", cfg.d_model, cfg.n_heads, rng);
            b.mhca_s.setup(bn + ".mhca_s", cfg.d_model, cfg.n_heads, rng);
            b.ln_v1.setup(bn + ".ln_v1", cfg.d_model);
            b.ln_s1.setup(bn + ".ln_s1", cfg.d_model);
            b.self_v.setup(bn + ".self_v", base, rng);
            b.self_s.setup(bn + ".self_s", base, rng);
            b.drop_v.set_p(cfg.dropout);
            b.drop_s.set_p(cfg.dropout);
        }
    }

    std::pair<Mat<S>, Mat<S>> forward(const Mat<S>& vision, const Mat<S>& speech,
                                      const Context& ctx, int block_len) {
        if (vision.rows() != speech.rows()) {
            throw ContractError("cross-modal encoder: stream lengths differ");
        }
        Mat<S> v = base_v_.forward(vision, ctx, block_len);
        Mat<S> s = base_s_.forward(speech, ctx, block_len);
        for (auto& b : blocks_) {
            // both directions read the block inputs
            Mat<S> cv = b.drop_v.forward(b.mhca_v.forward(v, s, block_len), ctx);
            Mat<S> cs = b.drop_s.forward(b.mhca_s.forward(s, v, block_len), ctx);
            Mat<S> v1 = b.ln_v1.forward(v + cv);
            Mat<S> s1 = b.ln_s1.forward(s + cs);
            v = b.self_v.forward(v1, ctx, block_len);
            s = b.self_s.forward(s1, ctx, block_len);
        }
        return {v, s};
    }

    std::pair<Mat<S>, Mat<S>> backward(const Mat<S>& gv_in, const Mat<S>& gs_in) {
        Mat<S> gv = gv_in, gs = gs_in;
        for (auto it = blocks_.rbegin(); it != blocks_.rend(); ++it) {
            auto& b = *it;
            Mat<S> gv1 = b.self_v.backward(gv);
            Mat<S> gs1 = b.self_s.backward(gs);
            Mat<S> gsum_v = b.ln_v1.backward(gv1);
            Mat<S> gsum_s = b.ln_s1.backward(gs1);
            auto [gq_v, gkv_s] = b.mhca_v.backward(b.drop_v.backward(gsum_v));
            auto [gq_s, gkv_v] = b.mhca_s.backward(b.drop_s.backward(gsum_s));
            gv = gsum_v + gq_v + gkv_v;
            gs = gsum_s + gq_s + gkv_s;
        }
        return {base_v_.backward(gv), base_s_.backward(gs)};
    }

    void collect(std::vector<Param<S>*>& out) {
        base_v_.collect(out);
        base_s_.collect(out);
        for (auto& b : blocks_) {
            b.mhca_v.collect(out);
            b.mhca_s.collect(out);
            b.ln_v1.collect(out);
            b.ln_s1.collect(out);
            b.self_v.collect(out);
            b.self_s.collect(out);
        }
    }

    const Config& config() const { return cfg_; }

private:
    struct CrossBlock {
        MultiHeadAttention<S> mhca_v, mhca_s;
        LayerNorm<S> ln_v1, ln_s1;
        EncoderLayer<S> self_v, self_s;
        DropoutLayer<S> drop_v, drop_s;
    };

    Config cfg_;
    EncoderLayer<S> base_v_, base_s_;
    std::vector<CrossBlock> blocks_;
};

}  // namespace gsd::nn
