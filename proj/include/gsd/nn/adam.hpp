#pragma once

#include <vector>

#include "gsd/nn/core.hpp"

namespace gsd::nn {

// Adam with decoupled weight decay. Gradients are consumed and zeroed on each
// step.
template <typename S>
class AdamW {
public:
    AdamW(std::vector<Param<S>*> params, double weight_decay = 1e-4, double beta1 = 0.9,
          double beta2 = 0.999, double eps = 1e-8)
        : params_(std::move(params)),
          weight_decay_(weight_decay),
          beta1_(beta1),
          beta2_(beta2),
          eps_(eps) {
        m_.reserve(params_.size());
        v_.reserve(params_.size());
        for (Param<S>* p : params_) {
            m_.push_back(Mat<S>::Zero(p->value.rows(), p->value.cols()));
            v_.push_back(Mat<S>::Zero(p->value.rows(), p->value.cols()));
        }
    }

    void step(double lr) {
        ++t_;
        const S b1 = static_cast<S>(beta1_), b2 = static_cast<S>(beta2_);
        const S bc1 = static_cast<S>(1.0 - std::pow(beta1_, t_));
        const S bc2 = static_cast<S>(1.0 - std::pow(beta2_, t_));
        for (std::size_t i = 0; i < params_.size(); ++i) {
            Param<S>& p = *params_[i];
            m_[i] = b1 * m_[i] + (S(1) - b1) * p.grad;
            v_[i] = b2 * v_[i] + (S(1) - b2) * p.grad.cwiseProduct(p.grad);
            const Mat<S> mhat = m_[i] / bc1;
            const Mat<S> vhat = v_[i] / bc2;
            p.value -= static_cast<S>(lr) *
                       (mhat.array() / (vhat.array().sqrt() + static_cast<S>(eps_))).matrix();
            if (weight_decay_ > 0.0) {
                p.value -= static_cast<S>(lr * weight_decay_) * p.value;
            }
            p.grad.setZero();
        }
    }

    void zero_grad() {
        for (Param<S>* p : params_) p->grad.setZero();
    }

private:
    std::vector<Param<S>*> params_;
    std::vector<Mat<S>> m_, v_;
    double weight_decay_, beta1_, beta2_, eps_;
    long t_ = 0;
};

}  // namespace gsd::nn
