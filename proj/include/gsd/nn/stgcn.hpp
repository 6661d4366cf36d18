#pragma once

#include <vector>

#include "gsd/nn/layers.hpp"
#include "gsd/pose.hpp"

namespace gsd::nn {

// One spatio-temporal graph convolution block: spatial graph convolution
// (normalized-adjacency neighborhood mixing followed by a channel mix) with
// ReLU, then a channel-mixing temporal convolution with ReLU. A temporal
// kernel of 1 degenerates to plain stride subsampling along time.
struct StgcnBlockConfig {
    int in_c = 3;
    int out_c = 64;
    int temporal_kernel = 3;
    int temporal_stride = 1;
};

struct VisionBackboneConfig {
    std::vector<StgcnBlockConfig> blocks = {
        {3, 32, 5, 1}, {32, 64, 3, 2}, {64, 128, 3, 2}, {128, 256, 1, 1}};
    int embed_dim = 256;

    void validate() const {
        if (blocks.empty()) throw ConfigError("vision backbone needs at least one block");
        int prev = 3;
        for (const auto& b : blocks) {
            if (b.in_c != prev) throw ConfigError("vision backbone channel chain mismatch");
            if (b.out_c <= 0 || b.temporal_stride <= 0 || b.temporal_kernel < 1 ||
                b.temporal_kernel % 2 == 0) {
                throw ConfigError("invalid stgcn block (kernel must be odd and positive)");
            }
            prev = b.out_c;
        }
        // embeddings come straight from global average pooling, so the last
        // block must emit embed_dim channels
        if (blocks.back().out_c != embed_dim) {
            throw ConfigError("last stgcn block must emit embed_dim channels");
        }
    }
};

// Activations live in (B*T*J, C) row-major matrices; J is the joint count.
template <typename S>
class StgcnBlock {
public:
    void setup(const std::string& name, const StgcnBlockConfig& cfg, Rng& rng) {
        cfg_ = cfg;
        spatial_mix_.setup(name + ".spatial", cfg.in_c, cfg.out_c, rng);
        if (cfg.temporal_kernel > 1) {
            temporal_mix_.setup(name + ".temporal", cfg.out_c * cfg.temporal_kernel,
                                cfg.out_c, rng);
        }
    }

    // adjacency passed as the nonzero entries of A_norm, grouped by output joint
    struct AdjEntry {
        int src;
        S weight;
    };
    using AdjList = std::vector<std::vector<AdjEntry>>;  // [j] -> entries

    Mat<S> forward(const Mat<S>& x, const AdjList& adj, int batch, int t_in, int joints) {
        t_in_ = t_in;
        joints_ = joints;
        batch_ = batch;
        // neighborhood mixing: rows grouped as (b, t, j)
        Mat<S> mixed = Mat<S>::Zero(x.rows(), x.cols());
        combine_rows(x, adj, mixed);
        Mat<S> z = relu1_.forward(spatial_mix_.forward(mixed));

        if (cfg_.temporal_kernel <= 1) {
            t_out_ = (t_in - 1) / cfg_.temporal_stride + 1;
            if (cfg_.temporal_stride == 1) return z;
            return subsample_time(z);
        }
        t_out_ = (t_in - 1) / cfg_.temporal_stride + 1;
        z_rows_ = z.rows();
        Mat<S> col = time_im2col(z);
        return relu2_.forward(temporal_mix_.forward(col));
    }

    Mat<S> backward(const Mat<S>& gy, const AdjList& adj) {
        Mat<S> gz;
        if (cfg_.temporal_kernel <= 1) {
            gz = cfg_.temporal_stride == 1 ? gy : upsample_time_grad(gy);
        } else {
            Mat<S> gcol = temporal_mix_.backward(relu2_.backward(gy));
            gz = time_col2im(gcol);
        }
        Mat<S> gmixed = spatial_mix_.backward(relu1_.backward(gz));
        Mat<S> gx = Mat<S>::Zero(gmixed.rows(), cfg_.in_c);
        combine_rows_transposed(gmixed, adj, gx);
        return gx;
    }

    void collect(std::vector<Param<S>*>& out) {
        spatial_mix_.collect(out);
        if (cfg_.temporal_kernel > 1) temporal_mix_.collect(out);
    }

    int t_out() const { return t_out_; }
    const StgcnBlockConfig& config() const { return cfg_; }

private:
    // out[(b,t,j)] = sum_j' A[j,j'] * in[(b,t,j')]
    void combine_rows(const Mat<S>& in, const AdjList& adj, Mat<S>& out) const {
        const int cols = static_cast<int>(in.cols());
        const Eigen::Index groups = in.rows() / joints_;
        for (Eigen::Index g = 0; g < groups; ++g) {
            const Eigen::Index base = g * joints_;
            for (int j = 0; j < joints_; ++j) {
                S* dst = out.row(base + j).data();
                for (const AdjEntry& e : adj[j]) {
                    const S* src = in.row(base + e.src).data();
                    const S w = e.weight;
                    for (int c = 0; c < cols; ++c) dst[c] += w * src[c];
                }
            }
        }
    }

    // transpose of combine_rows; A_norm is symmetric but this stays correct
    // for any adjacency
    void combine_rows_transposed(const Mat<S>& gin, const AdjList& adj, Mat<S>& gout) const {
        const int cols = static_cast<int>(gin.cols());
        const Eigen::Index groups = gin.rows() / joints_;
        for (Eigen::Index g = 0; g < groups; ++g) {
            const Eigen::Index base = g * joints_;
            for (int j = 0; j < joints_; ++j) {
                const S* src = gin.row(base + j).data();
                for (const AdjEntry& e : adj[j]) {
                    S* dst = gout.row(base + e.src).data();
                    const S w = e.weight;
                    for (int c = 0; c < cols; ++c) dst[c] += w * src[c];
                }
            }
        }
    }

    Mat<S> subsample_time(const Mat<S>& z) const {
        Mat<S> out(static_cast<Eigen::Index>(batch_) * t_out_ * joints_, z.cols());
        for (int b = 0; b < batch_; ++b) {
            for (int t = 0; t < t_out_; ++t) {
                const Eigen::Index src = (static_cast<Eigen::Index>(b) * t_in_ +
                                          t * cfg_.temporal_stride) *
                                         joints_;
                const Eigen::Index dst = (static_cast<Eigen::Index>(b) * t_out_ + t) * joints_;
                out.middleRows(dst, joints_) = z.middleRows(src, joints_);
            }
        }
        return out;
    }

    Mat<S> upsample_time_grad(const Mat<S>& gy) const {
        Mat<S> gz = Mat<S>::Zero(static_cast<Eigen::Index>(batch_) * t_in_ * joints_,
                                 gy.cols());
        for (int b = 0; b < batch_; ++b) {
            for (int t = 0; t < t_out_; ++t) {
                const Eigen::Index dst = (static_cast<Eigen::Index>(b) * t_in_ +
                                          t * cfg_.temporal_stride) *
                                         joints_;
                const Eigen::Index src = (static_cast<Eigen::Index>(b) * t_out_ + t) * joints_;
                gz.middleRows(dst, joints_) = gy.middleRows(src, joints_);
            }
        }
        return gz;
    }

    // gather (b, t*stride + dk - pad, j) rows into (B*T_out*J, C*k) columns
    Mat<S> time_im2col(const Mat<S>& z) const {
        const int k = cfg_.temporal_kernel;
        const int pad = (k - 1) / 2;
        const int c = cfg_.out_c;
        Mat<S> col = Mat<S>::Zero(static_cast<Eigen::Index>(batch_) * t_out_ * joints_,
                                  static_cast<Eigen::Index>(c) * k);
        for (int b = 0; b < batch_; ++b) {
            for (int t = 0; t < t_out_; ++t) {
                const Eigen::Index dst = (static_cast<Eigen::Index>(b) * t_out_ + t) * joints_;
                for (int dk = 0; dk < k; ++dk) {
                    const int ts = t * cfg_.temporal_stride + dk - pad;
                    if (ts < 0 || ts >= t_in_) continue;
                    const Eigen::Index src =
                        (static_cast<Eigen::Index>(b) * t_in_ + ts) * joints_;
                    col.block(dst, static_cast<Eigen::Index>(dk) * c, joints_, c) =
                        z.middleRows(src, joints_);
                }
            }
        }
        return col;
    }

    Mat<S> time_col2im(const Mat<S>& gcol) const {
        const int k = cfg_.temporal_kernel;
        const int pad = (k - 1) / 2;
        const int c = cfg_.out_c;
        Mat<S> gz = Mat<S>::Zero(z_rows_, c);
        for (int b = 0; b < batch_; ++b) {
            for (int t = 0; t < t_out_; ++t) {
                const Eigen::Index src = (static_cast<Eigen::Index>(b) * t_out_ + t) * joints_;
                for (int dk = 0; dk < k; ++dk) {
                    const int ts = t * cfg_.temporal_stride + dk - pad;
                    if (ts < 0 || ts >= t_in_) continue;
                    const Eigen::Index dst =
                        (static_cast<Eigen::Index>(b) * t_in_ + ts) * joints_;
                    gz.middleRows(dst, joints_) +=
                        gcol.block(src, static_cast<Eigen::Index>(dk) * c, joints_, c);
                }
            }
        }
        return gz;
    }

    StgcnBlockConfig cfg_;
    Dense<S> spatial_mix_, temporal_mix_;
    ReluLayer<S> relu1_, relu2_;
    int batch_ = 0, t_in_ = 0, t_out_ = 0, joints_ = 0;
    Eigen::Index z_rows_ = 0;
};

// Stacked ST-GCN blocks over (B, c, t, j) pose windows followed by global
// average pooling over time and joints; the pooled channel count is the
// embedding width.
template <typename S>
class VisionBackbone {
public:
    void setup(const std::string& name, const VisionBackboneConfig& cfg,
               const SkeletonAdjacency& adjacency, Rng& rng) {
        cfg.validate();
        cfg_ = cfg;
        joints_ = adjacency.n;
        adj_.assign(joints_, {});
        for (int j = 0; j < joints_; ++j) {
            for (int j2 = 0; j2 < joints_; ++j2) {
                const float w = adjacency.a_norm[j * joints_ + j2];
                if (w != 0.0f) adj_[j].push_back({j2, static_cast<S>(w)});
            }
        }
        blocks_.resize(cfg.blocks.size());
        for (std::size_t i = 0; i < cfg.blocks.size(); ++i) {
            blocks_[i].setup(name + ".block" + std::to_string(i), cfg.blocks[i], rng);
        }
    }

    // x: (B*T*J, c) with T = kWindowFrames -> (B, embed_dim)
    Mat<S> forward(const Mat<S>& x, int batch, int t_in) {
        Mat<S> cur = x;
        int t = t_in;
        for (auto& block : blocks_) {
            cur = block.forward(cur, adj_, batch, t, joints_);
            t = block.t_out();
        }
        final_t_ = t;
        batch_ = batch;
        // global average pool over time and joints
        Mat<S> pooled = Mat<S>::Zero(batch, cur.cols());
        const Eigen::Index rows_per = static_cast<Eigen::Index>(t) * joints_;
        for (int b = 0; b < batch; ++b) {
            pooled.row(b) = cur.middleRows(static_cast<Eigen::Index>(b) * rows_per, rows_per)
                                .colwise()
                                .mean();
        }
        return pooled;
    }

    Mat<S> backward(const Mat<S>& gy) {
        const Eigen::Index rows_per = static_cast<Eigen::Index>(final_t_) * joints_;
        Mat<S> g(static_cast<Eigen::Index>(batch_) * rows_per, gy.cols());
        const S inv = S(1) / S(rows_per);
        for (int b = 0; b < batch_; ++b) {
            g.middleRows(static_cast<Eigen::Index>(b) * rows_per, rows_per) =
                (gy.row(b) * inv).replicate(rows_per, 1);
        }
        for (auto it = blocks_.rbegin(); it != blocks_.rend(); ++it) {
            g = it->backward(g, adj_);
        }
        return g;
    }

    void collect(std::vector<Param<S>*>& out) {
        for (auto& b : blocks_) b.collect(out);
    }

    const VisionBackboneConfig& config() const { return cfg_; }
    int joints() const { return joints_; }

private:
    VisionBackboneConfig cfg_;
    int joints_ = 0;
    typename StgcnBlock<S>::AdjList adj_;
    std::vector<StgcnBlock<S>> blocks_;
    int batch_ = 0, final_t_ = 0;
};

}  // namespace gsd::nn
