#pragma once

#include <vector>

#include "gsd/nn/core.hpp"
#include "gsd/windowing.hpp"

namespace gsd::nn {

inline constexpr double kProbClamp = 1e-7;

// Per-class scaling alpha and focusing exponent gamma. gamma = 0 with unit
// alphas reduces the loss to plain cross-entropy.
struct FocalLossConfig {
    double alpha_gesture = 0.92;
    double alpha_neutral = 0.08;
    double gamma = 2.0;

    double alpha(int label) const { return label == 1 ? alpha_gesture : alpha_neutral; }

    void validate() const {
        if (alpha_gesture < 0 || alpha_neutral < 0 || gamma < 0) {
            throw ConfigError("focal loss parameters must be nonnegative");
        }
    }
};

// Mean over windows of -alpha_y (1 - p_y)^gamma log(p_y) on probability rows
// (columns: neutral, gesture). Labels are 0 = neutral, 1 = gesture.
template <typename S>
S focal_loss(const Mat<S>& probs, const std::vector<int>& labels,
             const FocalLossConfig& cfg) {
    if (probs.rows() != static_cast<Eigen::Index>(labels.size()) || probs.cols() != 2) {
        throw ContractError("focal_loss: probs must be n x 2 aligned with labels");
    }
    double total = 0.0;
    for (Eigen::Index i = 0; i < probs.rows(); ++i) {
        const int y = labels[i];
        if (y != 0 && y != 1) throw ContractError("focal_loss: label outside {0,1}");
        double p = std::clamp(static_cast<double>(probs(i, y)), kProbClamp, 1.0 - kProbClamp);
        total += -cfg.alpha(y) * std::pow(1.0 - p, cfg.gamma) * std::log(p);
    }
    return static_cast<S>(total / std::max<Eigen::Index>(1, probs.rows()));
}

template <typename S>
S cross_entropy(const Mat<S>& probs, const std::vector<int>& labels) {
    FocalLossConfig ce;
    ce.alpha_gesture = 1.0;
    ce.alpha_neutral = 1.0;
    ce.gamma = 0.0;
    return focal_loss(probs, labels, ce);
}

// Focal loss straight from logits, returning the gradient wrt the logits.
// Softmax is folded in for numerical stability.
template <typename S>
S focal_loss_from_logits(const Mat<S>& logits, const std::vector<int>& labels,
                         const FocalLossConfig& cfg, Mat<S>* grad_logits) {
    if (logits.rows() != static_cast<Eigen::Index>(labels.size()) || logits.cols() != 2) {
        throw ContractError("focal_loss_from_logits: logits must be n x 2");
    }
    const Mat<S> probs = softmax_rows(logits);
    const double inv_n = 1.0 / std::max<Eigen::Index>(1, logits.rows());
    if (grad_logits) *grad_logits = Mat<S>::Zero(logits.rows(), 2);
    double total = 0.0;
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
        const int y = labels[i];
        if (y != 0 && y != 1) throw ContractError("focal_loss: label outside {0,1}");
        const double p_raw = static_cast<double>(probs(i, y));
        const double p = std::clamp(p_raw, kProbClamp, 1.0 - kProbClamp);
        const double a = cfg.alpha(y);
        const double one_m_p = 1.0 - p;
        total += -a * std::pow(one_m_p, cfg.gamma) * std::log(p);
        if (!grad_logits) continue;
        // dL/dp, zero outside the clamp range
        double dl_dp = 0.0;
        if (p_raw > kProbClamp && p_raw < 1.0 - kProbClamp) {
            dl_dp = -a * (std::pow(one_m_p, cfg.gamma) / p -
                          cfg.gamma * std::pow(one_m_p, cfg.gamma - 1.0) * std::log(p) *
                              (cfg.gamma > 0.0 ? 1.0 : 0.0));
        }
        // dp_y/dz_k = p_y (delta_yk - p_k)
        for (int k = 0; k < 2; ++k) {
            const double dp_dz =
                p_raw * ((k == y ? 1.0 : 0.0) - static_cast<double>(probs(i, k)));
            (*grad_logits)(i, k) += static_cast<S>(dl_dp * dp_dz * inv_n);
        }
    }
    return static_cast<S>(total * inv_n);
}

}  // namespace gsd::nn
