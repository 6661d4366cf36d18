#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "gsd/errors.hpp"
#include "gsd/rng.hpp"

namespace gsd::nn {

template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// One trainable array. Gradients are accumulated across a batch and zeroed by
// the optimizer step.
template <typename S>
struct Param {
    std::string name;
    Mat<S> value;
    Mat<S> grad;

    void setup(const std::string& n, int rows, int cols) {
        name = n;
        value = Mat<S>::Zero(rows, cols);
        grad = Mat<S>::Zero(rows, cols);
    }
};

// Runtime switches threaded through every forward call. `rng` drives dropout
// masks and the sanity-check noise stream; it must be non-null when train is
// true or the model is a noise variant.
struct Context {
    bool train = false;
    Rng* rng = nullptr;
};

// He-uniform fan-in initialization, the default for all weight matrices.
template <typename S>
void init_he_uniform(Mat<S>& w, int fan_in, Rng& rng) {
    const double limit = std::sqrt(6.0 / std::max(1, fan_in));
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
        for (Eigen::Index j = 0; j < w.cols(); ++j) {
            w(i, j) = static_cast<S>(rng.uniform(-limit, limit));
        }
    }
}

template <typename S>
Mat<S> relu(const Mat<S>& x) {
    return x.cwiseMax(S(0));
}

// Row-wise softmax, numerically shifted.
template <typename S>
Mat<S> softmax_rows(const Mat<S>& x) {
    Mat<S> y(x.rows(), x.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const S m = x.row(i).maxCoeff();
        y.row(i) = (x.row(i).array() - m).exp();
        y.row(i) /= y.row(i).sum();
    }
    return y;
}

}  // namespace gsd::nn
