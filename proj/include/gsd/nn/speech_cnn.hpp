#pragma once

#include <vector>

#include "gsd/nn/conv.hpp"
#include "gsd/nn/layers.hpp"

namespace gsd::nn {

// VGG-style stack over 64 x T log-Mel windows: optional input average pool,
// then conv-ReLU-maxpool blocks, a global average pool, and a linear
// projection to the embedding width. The output width is independent of the
// spectrogram frame count.
struct SpeechBackboneConfig {
    std::vector<int> channels = {16, 32, 64};
    int input_pool = 2;
    int embed_dim = 256;

    void validate() const {
        if (channels.empty()) throw ConfigError("speech backbone needs at least one block");
        for (int c : channels) {
            if (c <= 0) throw ConfigError("speech backbone channels must be positive");
        }
        if (input_pool < 1) throw ConfigError("input_pool must be >= 1");
        if (embed_dim <= 0) throw ConfigError("embed_dim must be positive");
    }
};

template <typename S>
class SpeechBackbone {
public:
    void setup(const std::string& name, const SpeechBackboneConfig& cfg, int n_mels, Rng& rng) {
        cfg.validate();
        cfg_ = cfg;
        n_mels_ = n_mels;
        input_pool_ = AvgPoolF<S>(cfg.input_pool);
        convs_.resize(cfg.channels.size());
        relus_.resize(cfg.channels.size());
        pools_.resize(cfg.channels.size());
        int in_c = 1;
        for (std::size_t i = 0; i < cfg.channels.size(); ++i) {
            convs_[i].setup(name + ".conv" + std::to_string(i), in_c, cfg.channels[i], rng);
            in_c = cfg.channels[i];
        }
        proj_.setup(name + ".proj", cfg.channels.back(), cfg.embed_dim, rng);
    }

    // x: (B, n_mels * n_frames) -> (B, embed_dim)
    Mat<S> forward(const Mat<S>& x, int n_frames) {
        if (x.cols() != static_cast<Eigen::Index>(n_mels_) * n_frames) {
            throw ContractError("speech backbone: input width mismatch");
        }
        int h = n_mels_, w = n_frames;
        Mat<S> cur = x;
        if (cfg_.input_pool > 1) {
            cur = input_pool_.forward(cur, 1, h, w);
            h = input_pool_.out_h();
            w = input_pool_.out_w();
        }
        block_outputs_.clear();
        block_shapes_.clear();
        pooled_.clear();
        int c = 1;
        for (std::size_t i = 0; i < convs_.size(); ++i) {
            cur = relus_[i].forward(convs_[i].forward(cur, h, w));
            c = cfg_.channels[i];
            block_outputs_.push_back(cur);  // post-ReLU activations, for Grad-CAM
            block_shapes_.push_back({c, h, w});
            if (h >= 2 && w >= 2) {
                cur = pools_[i].forward(cur, c, h, w);
                h = pools_[i].out_h();
                w = pools_[i].out_w();
                pooled_.push_back(true);
            } else {
                pooled_.push_back(false);
            }
        }
        cur = gap_.forward(cur, c, h, w);
        return proj_.forward(cur);
    }

    Mat<S> backward(const Mat<S>& gy) {
        Mat<S> g = gap_.backward(proj_.backward(gy));
        block_output_grads_.assign(convs_.size(), Mat<S>());
        for (int i = static_cast<int>(convs_.size()) - 1; i >= 0; --i) {
            if (pooled_[i]) g = pools_[i].backward(g);
            block_output_grads_[i] = g;  // gradient at the post-ReLU activation
            g = convs_[i].backward(relus_[i].backward(g));
        }
        if (cfg_.input_pool > 1) g = input_pool_.backward(g);
        return g;
    }

    void collect(std::vector<Param<S>*>& out) {
        for (auto& c : convs_) c.collect(out);
        proj_.collect(out);
    }

    struct BlockShape {
        int c, h, w;
    };
    int n_blocks() const { return static_cast<int>(convs_.size()); }
    const Mat<S>& block_output(int i) const { return block_outputs_[i]; }
    const Mat<S>& block_output_grad(int i) const { return block_output_grads_[i]; }
    BlockShape block_shape(int i) const { return block_shapes_[i]; }
    const SpeechBackboneConfig& config() const { return cfg_; }

private:
    SpeechBackboneConfig cfg_;
    int n_mels_ = 64;
    AvgPoolF<S> input_pool_{2};
    std::vector<Conv3x3<S>> convs_;
    std::vector<ReluLayer<S>> relus_;
    std::vector<MaxPool2<S>> pools_;
    std::vector<bool> pooled_;
    GlobalAvgPool<S> gap_;
    Dense<S> proj_;
    std::vector<Mat<S>> block_outputs_;
    std::vector<Mat<S>> block_output_grads_;
    std::vector<BlockShape> block_shapes_;
};

}  // namespace gsd::nn
