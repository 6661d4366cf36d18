#include "gsd/windowing.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "gsd/errors.hpp"
#include "gsd/rng.hpp"

namespace gsd {

std::vector<int> slide_windows(int track_n_frames, int window, int stride) {
    std::vector<int> starts;
    if (track_n_frames < window) return starts;
    const int count = (track_n_frames - window) / stride + 1;
    starts.reserve(count);
    for (int i = 0; i < count; ++i) starts.push_back(i * stride);
    return starts;
}

WindowLabelResult label_window(double window_start_ms, double window_end_ms,
                               const std::vector<StrokeAnnotation>& strokes) {
    const double dur = window_end_ms - window_start_ms;
    double overlap = 0.0;
    for (const StrokeAnnotation& s : strokes) {
        const double lo = std::max(window_start_ms, static_cast<double>(s.start_ms));
        const double hi = std::min(window_end_ms, static_cast<double>(s.end_ms));
        if (hi > lo) overlap += hi - lo;
    }
    const double frac = dur > 0.0 ? overlap / dur : 0.0;
    return {frac > 0.5 ? WindowLabel::Gesture : WindowLabel::Neutral, frac};
}

std::vector<SequenceSample> build_sequences(const std::vector<TimeWindow>& windows,
                                            const std::string& dialogue_id, int n) {
    std::vector<SequenceSample> out;
    const int n_full = static_cast<int>(windows.size()) / n;
    out.reserve(n_full);
    for (int i = 0; i < n_full; ++i) {
        SequenceSample s;
        s.dialogue_id = dialogue_id;
        s.sequence_index = i;
        s.windows.assign(windows.begin() + static_cast<long>(i) * n,
                         windows.begin() + static_cast<long>(i + 1) * n);
        s.speaker_id = s.windows.front().speaker_id;
        out.push_back(std::move(s));
    }
    return out;
}

FoldAssignment assign_folds(std::vector<std::string> dialogue_ids, int k, std::uint64_t seed) {
    if (static_cast<int>(dialogue_ids.size()) < k) {
        throw ConfigError("fewer dialogues than folds");
    }
    std::sort(dialogue_ids.begin(), dialogue_ids.end());
    Rng rng(derive_seed(seed, 0xf01d5));
    rng.shuffle(dialogue_ids);
    FoldAssignment fa;
    fa.k = k;
    for (std::size_t i = 0; i < dialogue_ids.size(); ++i) {
        fa.fold_of_dialogue[dialogue_ids[i]] = static_cast<int>(i % k);
    }
    return fa;
}

std::vector<const SequenceSample*> subsample_epoch(const std::vector<SequenceSample>& train,
                                                   std::uint64_t seed, int epoch) {
    std::vector<const SequenceSample*> gesture, neutral;
    for (const SequenceSample& s : train) {
        (s.contains_gesture() ? gesture : neutral).push_back(&s);
    }
    Rng rng(derive_seed(seed, 0x5ab5a17ull, static_cast<std::uint64_t>(epoch)));
    rng.shuffle(neutral);
    const std::size_t take = std::min(neutral.size(), gesture.size());
    std::vector<const SequenceSample*> out = gesture;
    out.insert(out.end(), neutral.begin(), neutral.begin() + take);
    rng.shuffle(out);
    return out;
}

void save_window_index(const std::string& path, const std::vector<TimeWindow>& windows,
                       const std::vector<SequenceSample>& sequences) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write window index: " + path);
    const std::size_t in_sequences = sequences.size() * kSequenceLength;
    out << "speaker_id,start_frame,label,overlap_fraction,sequence_index\n";
    char buf[32];
    for (std::size_t i = 0; i < windows.size(); ++i) {
        const TimeWindow& w = windows[i];
        const long seq = i < in_sequences ? static_cast<long>(i / kSequenceLength) : -1;
        std::snprintf(buf, sizeof(buf), "%.6f", w.overlap_fraction);
        out << w.speaker_id << ',' << w.start_frame << ','
            << (w.label == WindowLabel::Gesture ? 'G' : 'N') << ',' << buf << ',' << seq
            << '\n';
    }
}

}  // namespace gsd
