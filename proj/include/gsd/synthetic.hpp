#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsd/annotations.hpp"
#include "gsd/audio.hpp"
#include "gsd/keypoints.hpp"
#include "gsd/manifest.hpp"

namespace gsd {

// Sentinel for "no acoustic cue": any cue_snr_db at or below this value
// disables the gesture-linked tone entirely.
inline constexpr double kNoCueSnrDb = -200.0;

// Parameters of the seeded synthetic corpus. The generated dialogues embed a
// known gesture-speech coupling: every annotated stroke carries a hand-joint
// velocity burst in the keypoints and, speech_cue_lag_ms later, a harmonic
// tone complex (raised F0, boosted low-order harmonics) in the audio.
struct SyntheticCorpusSpec {
    int n_dialogues = 20;
    double dialogue_duration_s = 60.0;
    double strokes_per_minute = 6.0;
    double stroke_duration_mean_ms = 580.0;
    double stroke_duration_sd_ms = 565.0;  // lognormal; (580, 565) puts the median near 420
    int speech_cue_lag_ms = 300;
    double cue_snr_db = 3.0;
    double pose_burst_amplitude = 40.0;
    std::uint64_t seed = 7;

    void validate() const;  // throws ConfigError
};

struct SpeakerRecording {
    std::string speaker_id;
    AudioTrack audio;
    KeypointTrack keypoints;
    std::vector<StrokeAnnotation> strokes;
};

struct SyntheticDialogue {
    std::string dialogue_id;
    SpeakerRecording speakers[2];
};

// Deterministic in (spec.seed, dialogue_index); calling twice yields
// bit-identical output.
SyntheticDialogue generate_synthetic_dialogue(const SyntheticCorpusSpec& spec,
                                              int dialogue_index);

// Writes the whole corpus (WAV + keypoint text + annotation CSV per speaker)
// under out_dir and returns the manifest entries, which are also written to
// out_dir/manifest.csv.
std::vector<ManifestEntry> write_synthetic_corpus(const SyntheticCorpusSpec& spec,
                                                  const std::string& out_dir);

}  // namespace gsd
