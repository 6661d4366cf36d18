#pragma once

#include <vector>

#include "gsd/audio.hpp"
#include "gsd/windowing.hpp"

namespace gsd {

inline constexpr int kMelBands = 64;
inline constexpr int kStftFrameMs = 25;   // 400 samples at 16 kHz
inline constexpr int kStftHopMs = 10;     // 160 samples
inline constexpr int kStftFftSize = 512;
inline constexpr double kLogFloor = 1e-10;

// Frame count contract: T(500)=48, T(750)=72, T(1000)=96.
inline int mel_frame_count(int duration_ms) {
    return static_cast<int>(std::lround(0.096 * duration_ms));
}

// Log-magnitude Mel matrix, stored band-major: values[band * n_frames + t].
struct MelSpectrogram {
    int n_mels = kMelBands;
    int n_frames = 0;
    std::vector<float> values;

    float at(int band, int t) const { return values[band * n_frames + t]; }
    float& at(int band, int t) { return values[band * n_frames + t]; }
};

struct SpeechWindowConfig {
    int base_duration_ms = 500;
    int buffer_ms = 0;  // one of {0, 250, 500}

    int total_ms() const { return base_duration_ms + buffer_ms; }
};

// 64 triangular filters on the HTK Mel scale over 125-7500 Hz, rows normalized
// to unit peak. filters[m] is a dense vector over the kStftFftSize/2+1 bins.
const std::vector<std::vector<float>>& mel_filterbank();

// Cuts [window_start_ms, window_start_ms + total_ms) out of the track at the
// keypoint fps; regions outside the track are zero-padded.
std::vector<float> extract_window_audio(const AudioTrack& track, const TimeWindow& window,
                                        const SpeechWindowConfig& config, double fps);

// STFT (25 ms frame, 10 ms hop, periodic Hann) -> Mel filterbank -> natural
// log with floor kLogFloor. The frame axis is trimmed or padded (with
// log-floor frames) to mel_frame_count(...) of the input duration.
MelSpectrogram mel_spectrogram(const std::vector<float>& samples);

}  // namespace gsd
