#pragma once

#include <vector>

#include "gsd/nn/core.hpp"

namespace gsd::nn {

// Affine layer, rows are tokens. Caches its input between forward and
// backward; one forward per step.
template <typename S>
class Dense {
public:
    void setup(const std::string& name, int in_dim, int out_dim, Rng& rng) {
        w_.setup(name + ".w", in_dim, out_dim);
        b_.setup(name + ".b", 1, out_dim);
        init_he_uniform(w_.value, in_dim, rng);
    }

    Mat<S> forward(const Mat<S>& x) {
        x_ = x;
        Mat<S> y = x * w_.value;
        y.rowwise() += b_.value.row(0);
        return y;
    }

    Mat<S> backward(const Mat<S>& gy) {
        w_.grad.noalias() += x_.transpose() * gy;
        b_.grad.row(0) += gy.colwise().sum();
        return gy * w_.value.transpose();
    }

    void collect(std::vector<Param<S>*>& out) {
        out.push_back(&w_);
        out.push_back(&b_);
    }

    int in_dim() const { return static_cast<int>(w_.value.rows()); }
    int out_dim() const { return static_cast<int>(w_.value.cols()); }

private:
    Param<S> w_, b_;
    Mat<S> x_;
};

template <typename S>
class ReluLayer {
public:
    Mat<S> forward(const Mat<S>& x) {
        mask_ = (x.array() > S(0)).template cast<S>();
        return x.cwiseMax(S(0));
    }
    Mat<S> backward(const Mat<S>& gy) { return gy.cwiseProduct(mask_); }

private:
    Mat<S> mask_;
};

// Layer normalization over the feature (column) axis with learned gain/bias.
template <typename S>
class LayerNorm {
public:
    void setup(const std::string& name, int dim) {
        gain_.setup(name + ".gain", 1, dim);
        bias_.setup(name + ".bias", 1, dim);
        gain_.value.setOnes();
    }

    Mat<S> forward(const Mat<S>& x) {
        const S eps = S(1e-5);
        const Eigen::Index d = x.cols();
        xhat_.resize(x.rows(), d);
        inv_std_.resize(x.rows());
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            const S mean = x.row(i).mean();
            const S var = (x.row(i).array() - mean).square().sum() / S(d);
            const S inv = S(1) / std::sqrt(var + eps);
            inv_std_[i] = inv;
            xhat_.row(i) = (x.row(i).array() - mean) * inv;
        }
        Mat<S> y = xhat_;
        for (Eigen::Index i = 0; i < y.rows(); ++i) {
            y.row(i) = y.row(i).cwiseProduct(gain_.value.row(0)) + bias_.value.row(0);
        }
        return y;
    }

    Mat<S> backward(const Mat<S>& gy) {
        const Eigen::Index d = gy.cols();
        Mat<S> gx(gy.rows(), d);
        for (Eigen::Index i = 0; i < gy.rows(); ++i) {
            gain_.grad.row(0) += gy.row(i).cwiseProduct(xhat_.row(i));
            bias_.grad.row(0) += gy.row(i);
            // d/dx of (x - mean) * inv_std with mean/var dependence
            Eigen::Matrix<S, 1, Eigen::Dynamic> gxhat =
                gy.row(i).cwiseProduct(gain_.value.row(0));
            const S sum_g = gxhat.sum();
            const S sum_gx = gxhat.cwiseProduct(xhat_.row(i)).sum();
            gx.row(i) = (inv_std_[i] / S(d)) *
                        (S(d) * gxhat.array() - sum_g - xhat_.row(i).array() * sum_gx);
        }
        return gx;
    }

    void collect(std::vector<Param<S>*>& out) {
        out.push_back(&gain_);
        out.push_back(&bias_);
    }

private:
    Param<S> gain_, bias_;
    Mat<S> xhat_;
    std::vector<S> inv_std_;
};

// Inverted dropout; identity when the context is not training or p == 0.
template <typename S>
class DropoutLayer {
public:
    explicit DropoutLayer(double p = 0.0) : p_(p) {}
    void set_p(double p) { p_ = p; }

    Mat<S> forward(const Mat<S>& x, const Context& ctx) {
        if (!ctx.train || p_ <= 0.0) {
            active_ = false;
            return x;
        }
        if (!ctx.rng) throw ContractError("dropout requires an rng in training mode");
        active_ = true;
        mask_.resize(x.rows(), x.cols());
        const S keep = S(1.0 - p_);
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            for (Eigen::Index j = 0; j < x.cols(); ++j) {
                mask_(i, j) = ctx.rng->uniform() < p_ ? S(0) : S(1) / keep;
            }
        }
        return x.cwiseProduct(mask_);
    }

    Mat<S> backward(const Mat<S>& gy) { return active_ ? gy.cwiseProduct(mask_) : gy; }

private:
    double p_;
    bool active_ = false;
    Mat<S> mask_;
};

// Scaled dot-product attention on a single head: softmax(Q K^T * scale) V.
// Returns the output and fills `weights` (row-stochastic) for inspection.
template <typename S>
Mat<S> attention(const Mat<S>& q, const Mat<S>& k, const Mat<S>& val, Mat<S>* weights = nullptr) {
    if (q.cols() != k.cols() || k.rows() != val.rows()) {
        throw ContractError("attention: mismatched inner dimensions");
    }
    const S scale = S(1) / std::sqrt(static_cast<S>(q.cols()));
    Mat<S> w = softmax_rows<S>(q * k.transpose() * scale);
    if (weights) *weights = w;
    return w * val;
}

// Multi-head attention with separate query and key/value inputs. The row
// stack is treated as independent consecutive blocks of block_len rows (one
// block per sequence in a batch); attention never crosses blocks. Self
// attention passes the same matrix twice; backward returns the pair
// (grad wrt query input, grad wrt key/value input).
template <typename S>
class MultiHeadAttention {
public:
    void setup(const std::string& name, int d_model, int n_heads, Rng& rng) {
        if (d_model % n_heads != 0) {
            throw ConfigError("d_model must be divisible by n_heads");
        }
        d_model_ = d_model;
        n_heads_ = n_heads;
        d_head_ = d_model / n_heads;
        wq_.setup(name + ".wq", d_model, d_model, rng);
        wk_.setup(name + ".wk", d_model, d_model, rng);
        wv_.setup(name + ".wv", d_model, d_model, rng);
        wo_.setup(name + ".wo", d_model, d_model, rng);
    }

    Mat<S> forward(const Mat<S>& xq, const Mat<S>& xkv, int block_len) {
        if (xq.rows() != xkv.rows() || block_len <= 0 || xq.rows() % block_len != 0) {
            throw ContractError("attention: rows must split into equal blocks");
        }
        block_len_ = block_len;
        n_blocks_ = static_cast<int>(xq.rows()) / block_len;
        q_ = wq_.forward(xq);
        k_ = wk_.forward(xkv);
        v_ = wv_.forward(xkv);
        const S scale = S(1) / std::sqrt(static_cast<S>(d_head_));
        attn_.assign(static_cast<std::size_t>(n_blocks_) * n_heads_, Mat<S>());
        concat_.resize(xq.rows(), d_model_);
        for (int b = 0; b < n_blocks_; ++b) {
            const Eigen::Index r0 = static_cast<Eigen::Index>(b) * block_len;
            for (int h = 0; h < n_heads_; ++h) {
                const auto qh = q_.block(r0, h * d_head_, block_len, d_head_);
                const auto kh = k_.block(r0, h * d_head_, block_len, d_head_);
                const auto vh = v_.block(r0, h * d_head_, block_len, d_head_);
                Mat<S>& a = attn_[b * n_heads_ + h];
                a = softmax_rows<S>(Mat<S>(qh * kh.transpose() * scale));
                concat_.block(r0, h * d_head_, block_len, d_head_).noalias() = a * vh;
            }
        }
        return wo_.forward(concat_);
    }

    std::pair<Mat<S>, Mat<S>> backward(const Mat<S>& gy) {
        const Mat<S> gconcat = wo_.backward(gy);
        Mat<S> gq(q_.rows(), d_model_), gk(k_.rows(), d_model_), gv(v_.rows(), d_model_);
        const S scale = S(1) / std::sqrt(static_cast<S>(d_head_));
        for (int b = 0; b < n_blocks_; ++b) {
            const Eigen::Index r0 = static_cast<Eigen::Index>(b) * block_len_;
            for (int h = 0; h < n_heads_; ++h) {
                const auto go = gconcat.block(r0, h * d_head_, block_len_, d_head_);
                const auto qh = q_.block(r0, h * d_head_, block_len_, d_head_);
                const auto kh = k_.block(r0, h * d_head_, block_len_, d_head_);
                const auto vh = v_.block(r0, h * d_head_, block_len_, d_head_);
                const Mat<S>& a = attn_[b * n_heads_ + h];
                Mat<S> ga = go * vh.transpose();
                gv.block(r0, h * d_head_, block_len_, d_head_).noalias() =
                    a.transpose() * go;
                // softmax backward, row-wise
                Mat<S> gs(a.rows(), a.cols());
                for (Eigen::Index i = 0; i < a.rows(); ++i) {
                    const S dot = ga.row(i).cwiseProduct(a.row(i)).sum();
                    gs.row(i) = a.row(i).cwiseProduct(ga.row(i).array() - dot);
                }
                gs *= scale;
                gq.block(r0, h * d_head_, block_len_, d_head_).noalias() = gs * kh;
                gk.block(r0, h * d_head_, block_len_, d_head_).noalias() =
                    gs.transpose() * qh;
            }
        }
        const Mat<S> gxq = wq_.backward(gq);
        Mat<S> gxkv = wk_.backward(gk);
        gxkv += wv_.backward(gv);
        return {gxq, gxkv};
    }

    // row-stochastic attention maps of the last forward, block-major per head
    const std::vector<Mat<S>>& attention_weights() const { return attn_; }

    void collect(std::vector<Param<S>*>& out) {
        wq_.collect(out);
        wk_.collect(out);
        wv_.collect(out);
        wo_.collect(out);
    }

private:
    int d_model_ = 0, n_heads_ = 1, d_head_ = 0;
    int block_len_ = 1, n_blocks_ = 1;
    Dense<S> wq_, wk_, wv_, wo_;
    Mat<S> q_, k_, v_, concat_;
    std::vector<Mat<S>> attn_;
};

// Position-wise feed-forward: Dense -> ReLU -> Dense.
template <typename S>
class FeedForward {
public:
    void setup(const std::string& name, int d_model, int ff_dim, Rng& rng) {
        fc1_.setup(name + ".fc1", d_model, ff_dim, rng);
        fc2_.setup(name + ".fc2", ff_dim, d_model, rng);
    }
    Mat<S> forward(const Mat<S>& x) { return fc2_.forward(relu_.forward(fc1_.forward(x))); }
    Mat<S> backward(const Mat<S>& gy) {
        return fc1_.backward(relu_.backward(fc2_.backward(gy)));
    }
    void collect(std::vector<Param<S>*>& out) {
        fc1_.collect(out);
        fc2_.collect(out);
    }

private:
    Dense<S> fc1_, fc2_;
    ReluLayer<S> relu_;
};

// Two affine layers with a ReLU in between; emits one logit pair per row.
template <typename S>
class Classifier {
public:
    void setup(const std::string& name, int in_dim, int hidden, int out_dim, Rng& rng) {
        fc1_.setup(name + ".fc1", in_dim, hidden, rng);
        fc2_.setup(name + ".fc2", hidden, out_dim, rng);
    }
    Mat<S> forward(const Mat<S>& x) { return fc2_.forward(relu_.forward(fc1_.forward(x))); }
    Mat<S> backward(const Mat<S>& gy) {
        return fc1_.backward(relu_.backward(fc2_.backward(gy)));
    }
    void collect(std::vector<Param<S>*>& out) {
        fc1_.collect(out);
        fc2_.collect(out);
    }

private:
    Dense<S> fc1_, fc2_;
    ReluLayer<S> relu_;
};

}  // namespace gsd::nn
