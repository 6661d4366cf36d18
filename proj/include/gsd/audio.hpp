#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gsd {

inline constexpr int kCanonicalSampleRateHz = 16000;

// Mono, unit-normalized amplitude track at 16 kHz.
struct AudioTrack {
    std::vector<float> samples;
    int sample_rate_hz = kCanonicalSampleRateHz;
    std::string speaker_id;

    std::int64_t duration_ms() const {
        if (sample_rate_hz <= 0) return 0;
        return static_cast<std::int64_t>(
            std::llround(1000.0 * static_cast<double>(samples.size()) / sample_rate_hz));
    }
};

// Reads a PCM WAV file (8/16/24-bit int or 32-bit float, 1-2 channels, any
// rate), averages channels to mono, resamples to 16 kHz with a windowed-sinc
// kernel and normalizes so the peak amplitude is at most 1.
AudioTrack load_audio(const std::string& path);

// Writes a mono 16-bit PCM WAV file.
void save_wav(const std::string& path, const AudioTrack& track);

// Band-limited resampling (windowed sinc, 32 taps per side). Output length is
// round(n_in * to_hz / from_hz) so duration is preserved to within 1 ms.
std::vector<float> resample(const std::vector<float>& in, int from_hz, int to_hz);

}  // namespace gsd
