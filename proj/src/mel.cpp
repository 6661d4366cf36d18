#include "gsd/mel.hpp"

#include <cmath>

#include "gsd/errors.hpp"
#include "gsd/fft.hpp"

namespace gsd {
namespace {

double hz_to_mel(double f) { return 2595.0 * std::log10(1.0 + f / 700.0); }
double mel_to_hz(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }

std::vector<std::vector<float>> build_filterbank() {
    const int n_bins = kStftFftSize / 2 + 1;
    const double f_lo = 125.0, f_hi = 7500.0;
    const double m_lo = hz_to_mel(f_lo), m_hi = hz_to_mel(f_hi);
    std::vector<double> centers(kMelBands + 2);
    for (int i = 0; i < kMelBands + 2; ++i) {
        centers[i] = mel_to_hz(m_lo + (m_hi - m_lo) * i / (kMelBands + 1));
    }
    std::vector<std::vector<float>> filters(kMelBands, std::vector<float>(n_bins, 0.0f));
    for (int m = 0; m < kMelBands; ++m) {
        const double left = centers[m], center = centers[m + 1], right = centers[m + 2];
        for (int b = 0; b < n_bins; ++b) {
            const double f = b * 16000.0 / kStftFftSize;
            double w = 0.0;
            if (f > left && f < center) {
                w = (f - left) / (center - left);
            } else if (f >= center && f < right) {
                w = (right - f) / (right - center);
            }
            filters[m][b] = static_cast<float>(w);
        }
    }
    return filters;
}

}  // namespace

const std::vector<std::vector<float>>& mel_filterbank() {
    static const std::vector<std::vector<float>> fb = build_filterbank();
    return fb;
}

std::vector<float> extract_window_audio(const AudioTrack& track, const TimeWindow& window,
                                        const SpeechWindowConfig& config, double fps) {
    const double start_ms = window.start_ms(fps);
    const long start = static_cast<long>(std::llround(start_ms * 16.0));
    const long n = static_cast<long>(config.total_ms()) * 16;
    std::vector<float> out(n, 0.0f);
    const long track_n = static_cast<long>(track.samples.size());
    for (long i = 0; i < n; ++i) {
        const long s = start + i;
        if (s >= 0 && s < track_n) out[i] = track.samples[s];
    }
    return out;
}

MelSpectrogram mel_spectrogram(const std::vector<float>& samples) {
    if (samples.empty()) throw InputError("mel_spectrogram: empty input");
    const int frame_len = kStftFrameMs * 16;  // 400
    const int hop = kStftHopMs * 16;          // 160
    const int duration_ms =
        static_cast<int>(std::llround(samples.size() * 1000.0 / 16000.0));
    const int target_frames = mel_frame_count(duration_ms);

    // periodic Hann; magic-static init keeps this thread-safe
    static const std::vector<float> window = [&] {
        std::vector<float> w(frame_len);
        for (int i = 0; i < frame_len; ++i) {
            w[i] = static_cast<float>(0.5 - 0.5 * std::cos(2.0 * M_PI * i / frame_len));
        }
        return w;
    }();

    const int raw_frames =
        samples.size() >= static_cast<std::size_t>(frame_len)
            ? static_cast<int>((samples.size() - frame_len) / hop) + 1
            : 0;
    const int n_frames = std::min(raw_frames, target_frames);

    const auto& fb = mel_filterbank();
    MelSpectrogram mel;
    mel.n_frames = target_frames;
    mel.values.assign(static_cast<std::size_t>(kMelBands) * target_frames,
                      static_cast<float>(std::log(kLogFloor)));

    std::vector<float> frame(frame_len);
    for (int t = 0; t < n_frames; ++t) {
        const float* src = samples.data() + static_cast<std::size_t>(t) * hop;
        for (int i = 0; i < frame_len; ++i) frame[i] = src[i] * window[i];
        const std::vector<double> mag = magnitude_spectrum(frame.data(), frame_len, kStftFftSize);
        for (int m = 0; m < kMelBands; ++m) {
            double acc = 0.0;
            const std::vector<float>& filt = fb[m];
            for (std::size_t b = 0; b < mag.size(); ++b) acc += filt[b] * mag[b];
            mel.at(m, t) = static_cast<float>(std::log(std::max(acc, kLogFloor)));
        }
    }
    return mel;
}

}  // namespace gsd
