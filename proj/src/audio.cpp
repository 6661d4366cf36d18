#include "gsd/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "gsd/errors.hpp"

namespace gsd {
namespace {

std::uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
           std::uint32_t(b[3]) << 24;
}

std::uint16_t read_u16(std::istream& in) {
    unsigned char b[2];
    in.read(reinterpret_cast<char*>(b), 2);
    return std::uint16_t(b[0]) | std::uint16_t(b[1]) << 8;
}

void write_u32(std::ostream& out, std::uint32_t v) {
    char b[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff),
                 char((v >> 24) & 0xff)};
    out.write(b, 4);
}

void write_u16(std::ostream& out, std::uint16_t v) {
    char b[2] = {char(v & 0xff), char((v >> 8) & 0xff)};
    out.write(b, 2);
}

double sinc(double x) {
    if (std::fabs(x) < 1e-12) return 1.0;
    double px = M_PI * x;
    return std::sin(px) / px;
}

}  // namespace

std::vector<float> resample(const std::vector<float>& in, int from_hz, int to_hz) {
    if (from_hz == to_hz) return in;
    if (in.empty()) return {};
    const double ratio = static_cast<double>(to_hz) / from_hz;
    const std::size_t n_out =
        static_cast<std::size_t>(std::llround(static_cast<double>(in.size()) * ratio));
    std::vector<float> out(n_out, 0.0f);

    // Cutoff at 90% of the narrower Nyquist, Hann-windowed sinc.
    const int taps = 32;
    const double cutoff = 0.9 * 0.5 * std::min(from_hz, to_hz) / from_hz;  // cycles/input-sample
    const double scale = 2.0 * cutoff;

    for (std::size_t o = 0; o < n_out; ++o) {
        const double center = static_cast<double>(o) / ratio;
        const long lo = static_cast<long>(std::floor(center)) - taps + 1;
        const long hi = static_cast<long>(std::floor(center)) + taps;
        double acc = 0.0;
        double wsum = 0.0;
        for (long m = lo; m <= hi; ++m) {
            const double t = center - static_cast<double>(m);
            const double w = 0.5 + 0.5 * std::cos(M_PI * t / (taps + 1));
            const double k = scale * sinc(scale * t) * w;
            wsum += k;
            if (m >= 0 && m < static_cast<long>(in.size())) acc += k * in[m];
        }
        // kernel renormalization keeps DC gain at 1 near the edges
        out[o] = wsum > 1e-12 ? static_cast<float>(acc / wsum * 1.0) : 0.0f;
    }
    return out;
}

AudioTrack load_audio(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open audio file: " + path);

    char tag[4];
    in.read(tag, 4);
    if (!in || std::memcmp(tag, "RIFF", 4) != 0) throw FormatError("not a RIFF file: " + path);
    read_u32(in);  // file size
    in.read(tag, 4);
    if (!in || std::memcmp(tag, "WAVE", 4) != 0) throw FormatError("not a WAVE file: " + path);

    std::uint16_t audio_format = 0, n_channels = 0, bits = 0;
    std::uint32_t rate = 0;
    std::vector<char> data;
    bool have_fmt = false, have_data = false;

    while (in.read(tag, 4)) {
        std::uint32_t chunk_size = read_u32(in);
        if (std::memcmp(tag, "fmt ", 4) == 0) {
            audio_format = read_u16(in);
            n_channels = read_u16(in);
            rate = read_u32(in);
            read_u32(in);  // byte rate
            read_u16(in);  // block align
            bits = read_u16(in);
            if (chunk_size > 16) in.seekg(chunk_size - 16, std::ios::cur);
            have_fmt = true;
        } else if (std::memcmp(tag, "data", 4) == 0) {
            data.resize(chunk_size);
            in.read(data.data(), chunk_size);
            have_data = true;
            break;
        } else {
            in.seekg(chunk_size + (chunk_size & 1), std::ios::cur);
        }
    }
    if (!have_fmt || !have_data) throw FormatError("missing fmt/data chunk: " + path);
    if (n_channels < 1 || n_channels > 2) throw FormatError("unsupported channel count");
    if (rate == 0) throw FormatError("zero sample rate");

    const bool is_float = audio_format == 3;
    const bool is_pcm = audio_format == 1;
    if (!is_float && !is_pcm) throw FormatError("unsupported WAV encoding");
    if (is_float && bits != 32) throw FormatError("unsupported float bit depth");
    if (is_pcm && bits != 8 && bits != 16 && bits != 24) {
        throw FormatError("unsupported PCM bit depth");
    }

    const std::size_t bytes_per_sample = bits / 8;
    const std::size_t n_frames = data.size() / (bytes_per_sample * n_channels);
    if (n_frames == 0) throw InputError("zero-length audio: " + path);

    std::vector<float> mono(n_frames, 0.0f);
    const unsigned char* p = reinterpret_cast<const unsigned char*>(data.data());
    for (std::size_t i = 0; i < n_frames; ++i) {
        double acc = 0.0;
        for (int ch = 0; ch < n_channels; ++ch) {
            const unsigned char* s = p + (i * n_channels + ch) * bytes_per_sample;
            double v = 0.0;
            if (is_float) {
                float f;
                std::memcpy(&f, s, 4);
                v = f;
            } else if (bits == 8) {
                v = (static_cast<int>(s[0]) - 128) / 128.0;
            } else if (bits == 16) {
                std::int16_t x = static_cast<std::int16_t>(s[0] | (s[1] << 8));
                v = x / 32768.0;
            } else {  // 24
                std::int32_t x = s[0] | (s[1] << 8) | (s[2] << 16);
                if (x & 0x800000) x |= ~0xffffff;
                v = x / 8388608.0;
            }
            acc += v;
        }
        mono[i] = static_cast<float>(acc / n_channels);
    }

    AudioTrack track;
    track.sample_rate_hz = kCanonicalSampleRateHz;
    track.samples = resample(mono, static_cast<int>(rate), kCanonicalSampleRateHz);

    float peak = 0.0f;
    for (float v : track.samples) peak = std::max(peak, std::fabs(v));
    if (peak > 1.0f) {
        for (float& v : track.samples) v /= peak;
    }
    for (float v : track.samples) {
        if (!std::isfinite(v)) throw FormatError("non-finite sample in " + path);
    }
    return track;
}

void save_wav(const std::string& path, const AudioTrack& track) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write audio file: " + path);
    const std::uint32_t n = static_cast<std::uint32_t>(track.samples.size());
    const std::uint32_t data_bytes = n * 2;
    out.write("RIFF", 4);
    write_u32(out, 36 + data_bytes);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    write_u32(out, 16);
    write_u16(out, 1);  // PCM
    write_u16(out, 1);  // mono
    write_u32(out, static_cast<std::uint32_t>(track.sample_rate_hz));
    write_u32(out, static_cast<std::uint32_t>(track.sample_rate_hz * 2));
    write_u16(out, 2);
    write_u16(out, 16);
    out.write("data", 4);
    write_u32(out, data_bytes);
    for (float v : track.samples) {
        float c = std::clamp(v, -1.0f, 1.0f);
        auto s = static_cast<std::int16_t>(std::lround(c * 32767.0f));
        write_u16(out, static_cast<std::uint16_t>(s));
    }
}

}  // namespace gsd
