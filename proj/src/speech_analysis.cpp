#include "gsd/speech_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "gsd/errors.hpp"
#include "gsd/fft.hpp"

namespace gsd {
namespace {

constexpr int kF0FrameLen = 640;  // 40 ms
constexpr int kF0Hop = 160;       // 10 ms
constexpr double kF0Min = 50.0, kF0Max = 500.0;
constexpr double kVoicingThreshold = 0.45;
constexpr double kEnergyFloor = 1e-5;  // RMS below this is treated as silence

}  // namespace

F0Track estimate_f0(const std::vector<float>& samples) {
    F0Track track;
    if (samples.size() < static_cast<std::size_t>(kF0FrameLen)) {
        if (!samples.empty()) track.frames.push_back({});
        return track;
    }
    const int n_frames = static_cast<int>((samples.size() - kF0FrameLen) / kF0Hop) + 1;
    const int lag_min = static_cast<int>(16000.0 / kF0Max);  // 32
    const int lag_max = static_cast<int>(16000.0 / kF0Min);  // 320

    for (int t = 0; t < n_frames; ++t) {
        const float* x = samples.data() + static_cast<std::size_t>(t) * kF0Hop;
        F0Frame frame;

        double energy0 = 0.0;
        for (int i = 0; i < kF0FrameLen; ++i) energy0 += double(x[i]) * x[i];
        if (std::sqrt(energy0 / kF0FrameLen) < kEnergyFloor) {
            track.frames.push_back(frame);
            continue;
        }

        // normalized autocorrelation over the pitch lag range
        const int span = kF0FrameLen - lag_max;
        double e_a = 0.0;
        for (int i = 0; i < span; ++i) e_a += double(x[i]) * x[i];
        double best_r = 0.0;
        int best_lag = 0;
        std::vector<double> r(lag_max + 1, 0.0);
        for (int lag = lag_min; lag <= lag_max; ++lag) {
            double num = 0.0, e_b = 0.0;
            for (int i = 0; i < span; ++i) {
                num += double(x[i]) * x[i + lag];
                e_b += double(x[i + lag]) * x[i + lag];
            }
            const double denom = std::sqrt(e_a * e_b);
            r[lag] = denom > 1e-12 ? num / denom : 0.0;
            if (r[lag] > best_r) {
                best_r = r[lag];
                best_lag = lag;
            }
        }
        frame.voicing_confidence = std::clamp(best_r, 0.0, 1.0);
        if (best_r >= kVoicingThreshold && best_lag > lag_min && best_lag < lag_max) {
            // parabolic refinement around the peak lag
            const double y0 = r[best_lag - 1], y1 = r[best_lag], y2 = r[best_lag + 1];
            const double denom = y0 - 2.0 * y1 + y2;
            double shift = 0.0;
            if (std::fabs(denom) > 1e-12) shift = std::clamp(0.5 * (y0 - y2) / denom, -0.5, 0.5);
            const double lag = best_lag + shift;
            const double f0 = 16000.0 / lag;
            if (f0 >= kF0Min && f0 <= kF0Max) {
                frame.voiced = true;
                frame.f0_hz = f0;
            }
        }
        track.frames.push_back(frame);
    }
    return track;
}

std::vector<std::vector<double>> mfcc(const MelSpectrogram& mel, int n_coeffs) {
    std::vector<std::vector<double>> coeffs(n_coeffs,
                                            std::vector<double>(mel.n_frames, 0.0));
    const int m_bands = mel.n_mels;
    const double scale = std::sqrt(2.0 / m_bands);  // orthonormal DCT-II, k >= 1
    for (int t = 0; t < mel.n_frames; ++t) {
        for (int k = 1; k <= n_coeffs; ++k) {
            double acc = 0.0;
            for (int m = 0; m < m_bands; ++m) {
                acc += mel.at(m, t) * std::cos(M_PI * k * (m + 0.5) / m_bands);
            }
            coeffs[k - 1][t] = scale * acc;
        }
    }
    return coeffs;
}

std::optional<double> log_rel_f0_harmonics(const std::vector<float>& samples,
                                           const F0Track& f0) {
    constexpr int n_fft = 2048;
    double sum = 0.0;
    int n_voiced = 0;
    for (std::size_t t = 0; t < f0.frames.size(); ++t) {
        const F0Frame& frame = f0.frames[t];
        if (!frame.voiced) continue;
        const std::size_t off = t * kF0Hop;
        if (off + kF0FrameLen > samples.size()) break;
        const std::vector<double> mag =
            magnitude_spectrum(samples.data() + off, kF0FrameLen, n_fft);
        const double bin_hz = 16000.0 / n_fft;
        auto peak_near = [&](double hz) {
            const int lo = std::max(1, static_cast<int>(std::floor(0.9 * hz / bin_hz)));
            const int hi =
                std::min(static_cast<int>(mag.size()) - 1,
                         static_cast<int>(std::ceil(1.1 * hz / bin_hz)));
            double best = 0.0;
            for (int b = lo; b <= hi; ++b) best = std::max(best, mag[b]);
            return best;
        };
        const double a1 = peak_near(frame.f0_hz);
        const double a2 = peak_near(2.0 * frame.f0_hz);
        const double a3 = peak_near(3.0 * frame.f0_hz);
        if (a1 <= 1e-12 || a2 <= 1e-12 || a3 <= 1e-12) continue;
        sum += 0.5 * (std::log(a1 / a2) + std::log(a1 / a3));
        ++n_voiced;
    }
    if (n_voiced == 0) return std::nullopt;
    return sum / n_voiced;
}

TrackStats window_stats(const std::vector<double>& track) {
    if (track.empty()) throw InputError("window_stats: empty track");
    TrackStats s;
    const double n = static_cast<double>(track.size());
    double sum = 0.0;
    s.max = track[0];
    for (double v : track) {
        sum += v;
        s.max = std::max(s.max, v);
    }
    s.amean = sum / n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : track) {
        const double d = v - s.amean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 > 1e-24) {
        s.skewness = m3 / std::pow(m2, 1.5);
        s.kurtosis = m4 / (m2 * m2) - 3.0;
    }
    return s;
}

int voiced_segment_count(const F0Track& f0) {
    int count = 0, run = 0;
    for (const F0Frame& frame : f0.frames) {
        if (frame.voiced) {
            ++run;
            if (run == 3) ++count;
        } else {
            run = 0;
        }
    }
    return count;
}

LowLevelFeatures low_level_features(const std::vector<float>& samples) {
    LowLevelFeatures out;
    const MelSpectrogram mel = mel_spectrogram(samples);
    const std::vector<std::vector<double>> c = mfcc(mel, 4);
    const F0Track f0 = estimate_f0(samples);

    auto push_stats = [&out](const std::string& base, const TrackStats& s) {
        out.names.push_back(base + " amean");
        out.values.push_back(s.amean);
        out.names.push_back(base + " max");
        out.values.push_back(s.max);
        out.names.push_back(base + " skewness");
        out.values.push_back(s.skewness);
        out.names.push_back(base + " kurtosis");
        out.values.push_back(s.kurtosis);
    };
    for (int k = 0; k < 4; ++k) {
        push_stats("MFCC[" + std::to_string(k + 1) + "]", window_stats(c[k]));
    }
    std::vector<double> f0_values;
    for (const F0Frame& f : f0.frames) {
        if (f.voiced) f0_values.push_back(f.f0_hz);
    }
    push_stats("F0", f0_values.empty() ? TrackStats{} : window_stats(f0_values));

    const std::optional<double> rel = log_rel_f0_harmonics(samples, f0);
    out.names.push_back("logRelF0-H1-A3 amean");
    out.values.push_back(rel.value_or(0.0));
    return out;
}

}  // namespace gsd
