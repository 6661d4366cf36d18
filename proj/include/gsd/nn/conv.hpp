#pragma once

#include <vector>

#include "gsd/nn/core.hpp"

namespace gsd::nn {

// 3x3 same-padding convolution over batches of (C, H, W) images stored as
// rows of a (B, C*H*W) matrix. The im2col buffer is rebuilt in backward from
// the cached input rather than stored.
template <typename S>
class Conv3x3 {
public:
    void setup(const std::string& name, int in_c, int out_c, Rng& rng) {
        in_c_ = in_c;
        out_c_ = out_c;
        w_.setup(name + ".w", out_c, in_c * 9);
        b_.setup(name + ".b", 1, out_c);
        init_he_uniform(w_.value, in_c * 9, rng);
    }

    Mat<S> forward(const Mat<S>& x, int h, int w) {
        h_ = h;
        w_in_ = w;
        x_ = x;
        const Eigen::Index batch = x.rows();
        Mat<S> y(batch, static_cast<Eigen::Index>(out_c_) * h * w);
        Mat<S> col(in_c_ * 9, static_cast<Eigen::Index>(h) * w);
        for (Eigen::Index img = 0; img < batch; ++img) {
            im2col(x.row(img).data(), col);
            Eigen::Map<Mat<S>> out(y.row(img).data(), out_c_, static_cast<Eigen::Index>(h) * w);
            out.noalias() = w_.value * col;
            out.colwise() += b_.value.row(0).transpose();
        }
        return y;
    }

    Mat<S> backward(const Mat<S>& gy) {
        const Eigen::Index batch = gy.rows();
        Mat<S> gx = Mat<S>::Zero(batch, x_.cols());
        Mat<S> col(in_c_ * 9, static_cast<Eigen::Index>(h_) * w_in_);
        Mat<S> gcol(in_c_ * 9, static_cast<Eigen::Index>(h_) * w_in_);
        for (Eigen::Index img = 0; img < batch; ++img) {
            Eigen::Map<const Mat<S>> go(gy.row(img).data(), out_c_,
                                        static_cast<Eigen::Index>(h_) * w_in_);
            im2col(x_.row(img).data(), col);
            w_.grad.noalias() += go * col.transpose();
            b_.grad.row(0) += go.rowwise().sum().transpose();
            gcol.noalias() = w_.value.transpose() * go;
            col2im(gcol, gx.row(img).data());
        }
        return gx;
    }

    void collect(std::vector<Param<S>*>& out) {
        out.push_back(&w_);
        out.push_back(&b_);
    }

private:
    void im2col(const S* img, Mat<S>& col) const {
        col.setZero();
        for (int c = 0; c < in_c_; ++c) {
            const S* plane = img + static_cast<std::size_t>(c) * h_ * w_in_;
            for (int ky = -1; ky <= 1; ++ky) {
                for (int kx = -1; kx <= 1; ++kx) {
                    S* dst = col.row(c * 9 + (ky + 1) * 3 + (kx + 1)).data();
                    for (int y = 0; y < h_; ++y) {
                        const int sy = y + ky;
                        if (sy < 0 || sy >= h_) continue;
                        for (int x = 0; x < w_in_; ++x) {
                            const int sx = x + kx;
                            if (sx < 0 || sx >= w_in_) continue;
                            dst[y * w_in_ + x] = plane[sy * w_in_ + sx];
                        }
                    }
                }
            }
        }
    }

    void col2im(const Mat<S>& gcol, S* gimg) const {
        for (int c = 0; c < in_c_; ++c) {
            S* plane = gimg + static_cast<std::size_t>(c) * h_ * w_in_;
            for (int ky = -1; ky <= 1; ++ky) {
                for (int kx = -1; kx <= 1; ++kx) {
                    const S* src = gcol.row(c * 9 + (ky + 1) * 3 + (kx + 1)).data();
                    for (int y = 0; y < h_; ++y) {
                        const int sy = y + ky;
                        if (sy < 0 || sy >= h_) continue;
                        for (int x = 0; x < w_in_; ++x) {
                            const int sx = x + kx;
                            if (sx < 0 || sx >= w_in_) continue;
                            plane[sy * w_in_ + sx] += src[y * w_in_ + x];
                        }
                    }
                }
            }
        }
    }

    int in_c_ = 0, out_c_ = 0, h_ = 0, w_in_ = 0;
    Param<S> w_, b_;
    Mat<S> x_;
};

// Non-overlapping 2x2 max pooling; odd trailing rows/cols are dropped.
template <typename S>
class MaxPool2 {
public:
    Mat<S> forward(const Mat<S>& x, int c, int h, int w) {
        c_ = c;
        h_ = h;
        w_ = w;
        oh_ = h / 2;
        ow_ = w / 2;
        const Eigen::Index batch = x.rows();
        Mat<S> y(batch, static_cast<Eigen::Index>(c) * oh_ * ow_);
        argmax_.assign(static_cast<std::size_t>(batch) * c * oh_ * ow_, 0);
        for (Eigen::Index img = 0; img < batch; ++img) {
            const S* src = x.row(img).data();
            S* dst = y.row(img).data();
            std::size_t* amax =
                argmax_.data() + static_cast<std::size_t>(img) * c * oh_ * ow_;
            for (int ch = 0; ch < c; ++ch) {
                const S* plane = src + static_cast<std::size_t>(ch) * h * w;
                for (int y2 = 0; y2 < oh_; ++y2) {
                    for (int x2 = 0; x2 < ow_; ++x2) {
                        S best = plane[(2 * y2) * w + 2 * x2];
                        std::size_t best_i = (2 * y2) * w + 2 * x2;
                        for (int dy = 0; dy < 2; ++dy) {
                            for (int dx = 0; dx < 2; ++dx) {
                                const std::size_t i = (2 * y2 + dy) * w + 2 * x2 + dx;
                                if (plane[i] > best) {
                                    best = plane[i];
                                    best_i = i;
                                }
                            }
                        }
                        dst[(static_cast<std::size_t>(ch) * oh_ + y2) * ow_ + x2] = best;
                        amax[(static_cast<std::size_t>(ch) * oh_ + y2) * ow_ + x2] =
                            static_cast<std::size_t>(ch) * h * w + best_i;
                    }
                }
            }
        }
        return y;
    }

    Mat<S> backward(const Mat<S>& gy) {
        const Eigen::Index batch = gy.rows();
        Mat<S> gx = Mat<S>::Zero(batch, static_cast<Eigen::Index>(c_) * h_ * w_);
        for (Eigen::Index img = 0; img < batch; ++img) {
            const S* go = gy.row(img).data();
            S* gi = gx.row(img).data();
            const std::size_t* amax =
                argmax_.data() + static_cast<std::size_t>(img) * c_ * oh_ * ow_;
            const std::size_t n = static_cast<std::size_t>(c_) * oh_ * ow_;
            for (std::size_t i = 0; i < n; ++i) gi[amax[i]] += go[i];
        }
        return gx;
    }

    int out_h() const { return oh_; }
    int out_w() const { return ow_; }

private:
    int c_ = 0, h_ = 0, w_ = 0, oh_ = 0, ow_ = 0;
    std::vector<std::size_t> argmax_;
};

// Non-overlapping f x f average pooling used to downscale spectrogram input.
template <typename S>
class AvgPoolF {
public:
    explicit AvgPoolF(int factor = 2) : f_(factor) {}

    Mat<S> forward(const Mat<S>& x, int c, int h, int w) {
        c_ = c;
        h_ = h;
        w_ = w;
        oh_ = h / f_;
        ow_ = w / f_;
        const Eigen::Index batch = x.rows();
        Mat<S> y = Mat<S>::Zero(batch, static_cast<Eigen::Index>(c) * oh_ * ow_);
        const S inv = S(1) / S(f_ * f_);
        for (Eigen::Index img = 0; img < batch; ++img) {
            const S* src = x.row(img).data();
            S* dst = y.row(img).data();
            for (int ch = 0; ch < c; ++ch) {
                for (int y2 = 0; y2 < oh_; ++y2) {
                    for (int x2 = 0; x2 < ow_; ++x2) {
                        S acc = S(0);
                        for (int dy = 0; dy < f_; ++dy) {
                            for (int dx = 0; dx < f_; ++dx) {
                                acc += src[(static_cast<std::size_t>(ch) * h +
                                            (y2 * f_ + dy)) *
                                               w +
                                           x2 * f_ + dx];
                            }
                        }
                        dst[(static_cast<std::size_t>(ch) * oh_ + y2) * ow_ + x2] = acc * inv;
                    }
                }
            }
        }
        return y;
    }

    Mat<S> backward(const Mat<S>& gy) {
        const Eigen::Index batch = gy.rows();
        Mat<S> gx = Mat<S>::Zero(batch, static_cast<Eigen::Index>(c_) * h_ * w_);
        const S inv = S(1) / S(f_ * f_);
        for (Eigen::Index img = 0; img < batch; ++img) {
            const S* go = gy.row(img).data();
            S* gi = gx.row(img).data();
            for (int ch = 0; ch < c_; ++ch) {
                for (int y2 = 0; y2 < oh_; ++y2) {
                    for (int x2 = 0; x2 < ow_; ++x2) {
                        const S g =
                            go[(static_cast<std::size_t>(ch) * oh_ + y2) * ow_ + x2] * inv;
                        for (int dy = 0; dy < f_; ++dy) {
                            for (int dx = 0; dx < f_; ++dx) {
                                gi[(static_cast<std::size_t>(ch) * h_ + (y2 * f_ + dy)) * w_ +
                                   x2 * f_ + dx] += g;
                            }
                        }
                    }
                }
            }
        }
        return gx;
    }

    int out_h() const { return oh_; }
    int out_w() const { return ow_; }
    int factor() const { return f_; }

private:
    int f_ = 2;
    int c_ = 0, h_ = 0, w_ = 0, oh_ = 0, ow_ = 0;
};

// Mean over all spatial positions: (B, C*H*W) -> (B, C).
template <typename S>
class GlobalAvgPool {
public:
    Mat<S> forward(const Mat<S>& x, int c, int h, int w) {
        c_ = c;
        hw_ = static_cast<Eigen::Index>(h) * w;
        Mat<S> y(x.rows(), c);
        for (Eigen::Index img = 0; img < x.rows(); ++img) {
            for (int ch = 0; ch < c; ++ch) {
                y(img, ch) = x.row(img).segment(ch * hw_, hw_).mean();
            }
        }
        return y;
    }

    Mat<S> backward(const Mat<S>& gy) {
        Mat<S> gx(gy.rows(), static_cast<Eigen::Index>(c_) * hw_);
        const S inv = S(1) / S(hw_);
        for (Eigen::Index img = 0; img < gy.rows(); ++img) {
            for (int ch = 0; ch < c_; ++ch) {
                gx.row(img).segment(ch * hw_, hw_).setConstant(gy(img, ch) * inv);
            }
        }
        return gx;
    }

private:
    int c_ = 0;
    Eigen::Index hw_ = 0;
};

}  // namespace gsd::nn
