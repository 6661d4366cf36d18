#include "gsd/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "gsd/errors.hpp"
#include "gsd/rng.hpp"

namespace gsd {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// seed-derivation stream tags
enum : std::uint64_t { kTagStrokes = 1, kTagAudio = 2, kTagPose = 3 };

struct XY {
    double x, y;
};

// Rest-pose template for the 133-joint layout (pixel coordinates, 960x540-ish
// framing). Only rough plausibility matters; the model consumes a 27-joint
// subset after normalization.
std::vector<XY> rest_pose_template() {
    std::vector<XY> t(kFullJointCount, {480.0, 300.0});
    t[0] = {480, 160};                     // nose
    t[1] = {462, 150};                     // eyes
    t[2] = {498, 150};
    t[3] = {444, 162};                     // ears
    t[4] = {516, 162};
    t[5] = {400, 260};                     // shoulders
    t[6] = {560, 260};
    t[7] = {378, 370};                     // elbows
    t[8] = {582, 370};
    t[9] = {392, 458};                     // wrists
    t[10] = {568, 458};
    t[11] = {432, 470};                    // hips
    t[12] = {528, 470};
    t[13] = {430, 620};                    // knees
    t[14] = {530, 620};
    t[15] = {428, 760};                    // ankles
    t[16] = {532, 760};
    for (int i = 17; i < 23; ++i) {        // feet
        t[i] = {i < 20 ? 420.0 : 540.0, 790.0 + 6.0 * (i % 3)};
    }
    for (int i = 23; i < 91; ++i) {        // face contour
        double a = kTwoPi * (i - 23) / 68.0;
        t[i] = {480 + 42 * std::cos(a), 172 + 50 * std::sin(a)};
    }
    // hands: root + 5 fingers x 4 joints fanning away from the body
    auto fill_hand = [&t](int base, XY root, double dir) {
        t[base] = root;
        for (int f = 0; f < 5; ++f) {
            double a = (-0.55 + 0.27 * f) + (dir < 0 ? M_PI : 0.0);
            for (int k = 1; k <= 4; ++k) {
                t[base + 1 + f * 4 + (k - 1)] = {root.x + dir * std::cos(a) * 11.0 * k,
                                                 root.y + std::sin(a) * 11.0 * k + 14.0};
            }
        }
    };
    fill_hand(91, t[9], -1.0);   // left hand off the left wrist
    fill_hand(112, t[10], 1.0);  // right hand off the right wrist
    return t;
}

std::vector<StrokeAnnotation> schedule_strokes(Rng& rng, const SyntheticCorpusSpec& spec,
                                               const std::string& speaker_id) {
    const double dur_ms = spec.dialogue_duration_s * 1000.0;
    const int n = static_cast<int>(
        std::llround(spec.strokes_per_minute * spec.dialogue_duration_s / 60.0));
    std::vector<StrokeAnnotation> strokes;
    if (n <= 0) return strokes;

    // lognormal parameterized by the requested mean/sd
    const double cv2 = (spec.stroke_duration_sd_ms * spec.stroke_duration_sd_ms) /
                       (spec.stroke_duration_mean_ms * spec.stroke_duration_mean_ms);
    const double sigma2 = std::log(1.0 + cv2);
    const double mu = std::log(spec.stroke_duration_mean_ms) - 0.5 * sigma2;
    const double sigma = std::sqrt(sigma2);

    const double lead = 800.0, tail = 1500.0;
    const double usable = dur_ms - lead - tail;
    const double slot = usable / n;
    if (slot < 400.0) {
        throw ConfigError("synthetic dialogue too short for requested stroke rate");
    }
    for (int i = 0; i < n; ++i) {
        double d = std::exp(rng.normal(mu, sigma));
        d = std::clamp(d, 150.0, std::min(3000.0, slot - 120.0));
        const double slot_start = lead + i * slot;
        const double onset = rng.uniform(slot_start, slot_start + slot - d - 80.0);
        StrokeAnnotation a;
        a.speaker_id = speaker_id;
        a.start_ms = static_cast<std::int64_t>(std::llround(onset));
        a.end_ms = static_cast<std::int64_t>(std::llround(onset + d));
        strokes.push_back(a);
    }
    return strokes;
}

// Adds a harmonic complex over samples [s0, s1) with the given per-sample
// amplitude and harmonic rolloff amp_k = k^-rolloff.
void add_harmonic_complex(std::vector<float>& x, long s0, long s1, double f0, double amp,
                          double rolloff, int n_harmonics, double ramp_ms, Rng& rng) {
    const long n = static_cast<long>(x.size());
    s0 = std::max(0L, s0);
    s1 = std::min(n, s1);
    if (s1 <= s0) return;
    std::vector<double> hamp(n_harmonics), phase(n_harmonics);
    double norm = 0.0;
    for (int k = 0; k < n_harmonics; ++k) {
        hamp[k] = std::pow(k + 1.0, -rolloff);
        norm += 0.5 * hamp[k] * hamp[k];
        phase[k] = rng.uniform(0.0, kTwoPi);
    }
    const double gain = amp / std::sqrt(norm);  // hit the requested RMS
    const long ramp = static_cast<long>(ramp_ms * 16.0);
    for (long s = s0; s < s1; ++s) {
        double env = 1.0;
        if (s - s0 < ramp) env = 0.5 - 0.5 * std::cos(M_PI * (s - s0) / ramp);
        if (s1 - s <= ramp) env = std::min(env, 0.5 - 0.5 * std::cos(M_PI * (s1 - s) / ramp));
        double v = 0.0;
        for (int k = 0; k < n_harmonics; ++k) {
            v += hamp[k] * std::sin(phase[k]);
            phase[k] += kTwoPi * (k + 1) * f0 / 16000.0;
            if (phase[k] > kTwoPi) phase[k] -= kTwoPi;
        }
        x[s] += static_cast<float>(gain * env * v);
    }
}

AudioTrack synth_audio(const SyntheticCorpusSpec& spec, Rng& rng,
                       const std::vector<StrokeAnnotation>& strokes,
                       const std::string& speaker_id) {
    const long n = static_cast<long>(std::llround(spec.dialogue_duration_s * 16000.0));
    AudioTrack track;
    track.speaker_id = speaker_id;
    track.sample_rate_hz = 16000;
    track.samples.assign(n, 0.0f);
    auto& x = track.samples;

    const double base_f0 = rng.uniform(105.0, 145.0);

    // Babble-like carrier: alternating voiced syllables (mild harmonic
    // complex) and unvoiced noise bursts, with occasional pauses. This keeps
    // voiced segments present everywhere, independent of gestures.
    long t = 0;
    double lp = 0.0;
    while (t < n) {
        if (rng.uniform() < 0.18) {
            t += static_cast<long>(rng.uniform(150.0, 450.0) * 16.0);  // pause
            continue;
        }
        const long voiced_len = static_cast<long>(rng.uniform(90.0, 220.0) * 16.0);
        const double f0 = base_f0 * rng.uniform(0.9, 1.12);
        add_harmonic_complex(x, t, std::min(t + voiced_len, n), f0, 0.055, 0.7, 8, 12.0, rng);
        t += voiced_len;
        const long noise_len = static_cast<long>(rng.uniform(40.0, 130.0) * 16.0);
        for (long s = t; s < std::min(t + noise_len, n); ++s) {
            lp = 0.55 * lp + 0.45 * rng.normal(0.0, 1.0);
            x[s] += static_cast<float>(0.030 * lp);
        }
        t += noise_len;
    }
    // low-level room noise
    for (long s = 0; s < n; ++s) x[s] += static_cast<float>(rng.normal(0.0, 0.002));

    double base_rms = 0.0;
    for (long s = 0; s < n; ++s) base_rms += double(x[s]) * x[s];
    base_rms = std::sqrt(base_rms / std::max(1L, n));

    // Gesture-linked cue: a strongly tonal complex with raised F0 and steep
    // harmonic rolloff, offset from the stroke onset by speech_cue_lag_ms.
    if (spec.cue_snr_db > kNoCueSnrDb) {
        const double cue_amp = base_rms * std::pow(10.0, spec.cue_snr_db / 20.0);
        for (const StrokeAnnotation& a : strokes) {
            const long s0 = (a.start_ms + spec.speech_cue_lag_ms) * 16;
            const long s1 = s0 + (a.end_ms - a.start_ms) * 16;
            const double f0 = base_f0 * rng.uniform(1.65, 1.95);
            add_harmonic_complex(x, s0, s1, f0, cue_amp, 1.8, 6, 25.0, rng);
        }
    }

    float peak = 0.0f;
    for (float v : x) peak = std::max(peak, std::fabs(v));
    if (peak > 0.99f) {
        for (float& v : x) v *= 0.99f / peak;
    }
    return track;
}

KeypointTrack synth_keypoints(const SyntheticCorpusSpec& spec, Rng& rng,
                              const std::vector<StrokeAnnotation>& strokes,
                              const std::string& speaker_id) {
    const int n_frames =
        static_cast<int>(std::llround(spec.dialogue_duration_s * kCanonicalFps));
    const std::vector<XY> tmpl = rest_pose_template();

    KeypointTrack track;
    track.speaker_id = speaker_id;
    track.frame_rate_fps = kCanonicalFps;
    track.frames.resize(n_frames);

    // mean-reverting positional jitter per joint
    std::vector<XY> drift(kFullJointCount, {0.0, 0.0});
    const double rho = 0.92, jitter_sd = 0.9;

    struct Burst {
        int f0, f1;
        int hand;    // 0 = left, 1 = right
        double freq_hz, phase;
    };
    std::vector<Burst> bursts;
    for (const StrokeAnnotation& a : strokes) {
        Burst b;
        b.f0 = static_cast<int>(a.start_ms * kCanonicalFps / 1000.0);
        b.f1 = static_cast<int>(a.end_ms * kCanonicalFps / 1000.0);
        b.hand = rng.uniform() < 0.5 ? 0 : 1;
        b.freq_hz = rng.uniform(2.0, 3.2);
        b.phase = rng.uniform(0.0, kTwoPi);
        bursts.push_back(b);
    }

    for (int f = 0; f < n_frames; ++f) {
        KeypointFrame frame(kFullJointCount);
        for (int j = 0; j < kFullJointCount; ++j) {
            drift[j].x = rho * drift[j].x + rng.normal(0.0, jitter_sd);
            drift[j].y = rho * drift[j].y + rng.normal(0.0, jitter_sd);
            frame[j].x = static_cast<float>(tmpl[j].x + drift[j].x);
            frame[j].y = static_cast<float>(tmpl[j].y + drift[j].y);
            frame[j].confidence =
                static_cast<float>(std::clamp(rng.uniform(0.88, 1.0), 0.0, 1.0));
        }
        for (const Burst& b : bursts) {
            if (f < b.f0 || f >= b.f1) continue;
            const double u = (f - b.f0) / std::max(1.0, double(b.f1 - b.f0));
            const double env = 0.5 - 0.5 * std::cos(kTwoPi * 0.5 * 2.0 * u);  // Hann
            const double w = kTwoPi * b.freq_hz * (f - b.f0) / kCanonicalFps + b.phase;
            const double dx = spec.pose_burst_amplitude * env * std::sin(w);
            const double dy = 0.6 * spec.pose_burst_amplitude * env * std::cos(w);
            const int wrist = b.hand == 0 ? 9 : 10;
            const int elbow = b.hand == 0 ? 7 : 8;
            const int hand_base = b.hand == 0 ? 91 : 112;
            frame[wrist].x += static_cast<float>(dx);
            frame[wrist].y += static_cast<float>(dy);
            frame[elbow].x += static_cast<float>(0.35 * dx);
            frame[elbow].y += static_cast<float>(0.35 * dy);
            for (int j = hand_base; j < hand_base + 21; ++j) {
                frame[j].x += static_cast<float>(dx);
                frame[j].y += static_cast<float>(dy);
            }
        }
        track.frames[f] = std::move(frame);
    }
    return track;
}

}  // namespace

void SyntheticCorpusSpec::validate() const {
    if (n_dialogues <= 0) throw ConfigError("n_dialogues must be positive");
    if (dialogue_duration_s <= 0) throw ConfigError("dialogue_duration_s must be positive");
    if (strokes_per_minute <= 0) throw ConfigError("strokes_per_minute must be positive");
    if (stroke_duration_mean_ms <= 0 || stroke_duration_sd_ms <= 0) {
        throw ConfigError("stroke duration parameters must be positive");
    }
    if (pose_burst_amplitude <= 0) throw ConfigError("pose_burst_amplitude must be positive");
}

SyntheticDialogue generate_synthetic_dialogue(const SyntheticCorpusSpec& spec,
                                              int dialogue_index) {
    spec.validate();
    SyntheticDialogue d;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "d%03d", dialogue_index);
    d.dialogue_id = buf;
    for (int s = 0; s < 2; ++s) {
        SpeakerRecording& rec = d.speakers[s];
        rec.speaker_id = d.dialogue_id + (s == 0 ? "_A" : "_B");
        Rng stroke_rng(derive_seed(spec.seed, std::uint64_t(dialogue_index), std::uint64_t(s),
                                   kTagStrokes));
        rec.strokes = schedule_strokes(stroke_rng, spec, rec.speaker_id);
        Rng audio_rng(derive_seed(spec.seed, std::uint64_t(dialogue_index), std::uint64_t(s),
                                  kTagAudio));
        rec.audio = synth_audio(spec, audio_rng, rec.strokes, rec.speaker_id);
        Rng pose_rng(derive_seed(spec.seed, std::uint64_t(dialogue_index), std::uint64_t(s),
                                 kTagPose));
        rec.keypoints = synth_keypoints(spec, pose_rng, rec.strokes, rec.speaker_id);
    }
    return d;
}

std::vector<ManifestEntry> write_synthetic_corpus(const SyntheticCorpusSpec& spec,
                                                  const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<ManifestEntry> entries;
    for (int i = 0; i < spec.n_dialogues; ++i) {
        SyntheticDialogue d = generate_synthetic_dialogue(spec, i);
        fs::create_directories(fs::path(out_dir) / d.dialogue_id);
        for (const SpeakerRecording& rec : d.speakers) {
            ManifestEntry e;
            e.dialogue_id = d.dialogue_id;
            e.speaker_id = rec.speaker_id;
            e.audio_path = d.dialogue_id + "/" + rec.speaker_id + ".wav";
            e.keypoint_path = d.dialogue_id + "/" + rec.speaker_id + ".keypoints.txt";
            e.annotation_path = d.dialogue_id + "/" + rec.speaker_id + ".annotations.csv";
            save_wav((fs::path(out_dir) / e.audio_path).string(), rec.audio);
            save_keypoints((fs::path(out_dir) / e.keypoint_path).string(), rec.keypoints);
            save_annotations((fs::path(out_dir) / e.annotation_path).string(), rec.strokes);
            entries.push_back(std::move(e));
        }
    }
    save_manifest((fs::path(out_dir) / "manifest.csv").string(), entries);
    return entries;
}

}  // namespace gsd
