#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gsd {

// One manually segmented gesture stroke, in track milliseconds.
struct StrokeAnnotation {
    std::string speaker_id;
    std::int64_t start_ms = 0;
    std::int64_t end_ms = 0;
};

struct AnnotationLoadResult {
    std::vector<StrokeAnnotation> strokes;  // sorted by start, non-overlapping per speaker
    int merged_count = 0;
};

// Comma-delimited with header: speaker_id,start_ms,end_ms. Overlapping or
// touching strokes of one speaker are merged into their union.
AnnotationLoadResult load_annotations(const std::string& path);

void save_annotations(const std::string& path, const std::vector<StrokeAnnotation>& strokes);

// Sort + merge, shared by the loader and the synthetic generator tests.
std::vector<StrokeAnnotation> merge_overlapping(std::vector<StrokeAnnotation> strokes,
                                                int* merged_count = nullptr);

}  // namespace gsd
