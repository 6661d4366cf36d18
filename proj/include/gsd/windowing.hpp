#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gsd/annotations.hpp"

namespace gsd {

inline constexpr int kWindowFrames = 15;
inline constexpr int kWindowStride = 2;
inline constexpr int kSequenceLength = 40;

enum class WindowLabel { Neutral = 0, Gesture = 1 };

struct TimeWindow {
    std::string speaker_id;
    int start_frame = 0;
    int n_frames = kWindowFrames;
    WindowLabel label = WindowLabel::Neutral;
    double overlap_fraction = 0.0;

    double start_ms(double fps) const { return start_frame * 1000.0 / fps; }
    double end_ms(double fps) const { return (start_frame + n_frames) * 1000.0 / fps; }
};

// A fixed-length run of consecutive stride-2 windows; the training/eval unit.
struct SequenceSample {
    std::string dialogue_id;
    std::string speaker_id;
    int sequence_index = 0;
    std::vector<TimeWindow> windows;  // exactly kSequenceLength

    bool contains_gesture() const {
        for (const TimeWindow& w : windows) {
            if (w.label == WindowLabel::Gesture) return true;
        }
        return false;
    }
};

struct FoldAssignment {
    int k = 5;
    std::map<std::string, int> fold_of_dialogue;
};

// Start frames {0, 2, 4, ...}; count = floor((n - window)/stride) + 1 when the
// track is long enough, else empty.
std::vector<int> slide_windows(int track_n_frames, int window = kWindowFrames,
                               int stride = kWindowStride);

// Overlap fraction is measured against the window duration; a window is a
// gesture iff its overlap exceeds one half.
struct WindowLabelResult {
    WindowLabel label;
    double overlap_fraction;
};
WindowLabelResult label_window(double window_start_ms, double window_end_ms,
                               const std::vector<StrokeAnnotation>& strokes);

// Chunks consecutive windows into sequences of n; a trailing partial chunk is
// dropped.
std::vector<SequenceSample> build_sequences(const std::vector<TimeWindow>& windows,
                                            const std::string& dialogue_id,
                                            int n = kSequenceLength);

// Seeded shuffle then round-robin at dialogue level so both speakers of a
// dialogue share a fold.
FoldAssignment assign_folds(std::vector<std::string> dialogue_ids, int k, std::uint64_t seed);

// All gesture-containing sequences plus an equal-count sample of all-neutral
// sequences (or every neutral sequence when fewer exist), shuffled; a
// deterministic function of (seed, epoch).
std::vector<const SequenceSample*> subsample_epoch(const std::vector<SequenceSample>& train,
                                                   std::uint64_t seed, int epoch);

// Window-index file, one per speaker track:
//   speaker_id,start_frame,label,overlap_fraction,sequence_index
// sequence_index is -1 for windows dropped from the trailing partial chunk.
void save_window_index(const std::string& path, const std::vector<TimeWindow>& windows,
                       const std::vector<SequenceSample>& sequences);

}  // namespace gsd
