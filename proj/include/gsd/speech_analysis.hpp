#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gsd/mel.hpp"

namespace gsd {

// Per-10 ms-frame pitch track. f0_hz is 0 for unvoiced frames.
struct F0Frame {
    bool voiced = false;
    double f0_hz = 0.0;
    double voicing_confidence = 0.0;
};

struct F0Track {
    std::vector<F0Frame> frames;

    int voiced_count() const {
        int n = 0;
        for (const F0Frame& f : frames) n += f.voiced ? 1 : 0;
        return n;
    }
};

// Windowed summary statistics of one feature track.
struct TrackStats {
    double amean = 0.0;
    double max = 0.0;
    double skewness = 0.0;  // m3 / m2^1.5, 0 for zero-variance tracks
    double kurtosis = 0.0;  // excess, m4 / m2^2 - 3, 0 for zero-variance tracks
};

// Normalized-autocorrelation pitch estimator, 40 ms analysis frame, 10 ms hop,
// search range 50-500 Hz, voicing threshold 0.45 with parabolic lag refinement.
F0Track estimate_f0(const std::vector<float>& samples);

// Type-II DCT of each log-Mel frame; coefficients 1..n_coeffs (0 discarded).
// Returns n_coeffs tracks of length mel.n_frames.
std::vector<std::vector<double>> mfcc(const MelSpectrogram& mel, int n_coeffs = 4);

// Mean over voiced frames of mean_k[log(A1/Ak)] for k in {2,3}, where A_k is
// the peak spectral magnitude within +-10% of k*F0. Empty when no frame is
// voiced.
std::optional<double> log_rel_f0_harmonics(const std::vector<float>& samples,
                                           const F0Track& f0);

TrackStats window_stats(const std::vector<double>& track);

// Number of maximal voiced runs of length >= 3 frames (30 ms).
int voiced_segment_count(const F0Track& f0);

// The Appendix-style feature family computed on one analysis window: stats of
// MFCC[1..4] and of the F0 contour, plus the harmonic ratio mean.
struct LowLevelFeatures {
    std::vector<std::string> names;
    std::vector<double> values;
};
LowLevelFeatures low_level_features(const std::vector<float>& samples);

}  // namespace gsd
