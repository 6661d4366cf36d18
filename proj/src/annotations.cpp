#include "gsd/annotations.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "gsd/errors.hpp"

namespace gsd {

std::vector<StrokeAnnotation> merge_overlapping(std::vector<StrokeAnnotation> strokes,
                                                int* merged_count) {
    std::stable_sort(strokes.begin(), strokes.end(),
                     [](const StrokeAnnotation& a, const StrokeAnnotation& b) {
                         if (a.speaker_id != b.speaker_id) return a.speaker_id < b.speaker_id;
                         return a.start_ms < b.start_ms;
                     });
    std::vector<StrokeAnnotation> out;
    int merged = 0;
    for (const StrokeAnnotation& s : strokes) {
        if (!out.empty() && out.back().speaker_id == s.speaker_id &&
            s.start_ms <= out.back().end_ms) {
            out.back().end_ms = std::max(out.back().end_ms, s.end_ms);
            ++merged;
        } else {
            out.push_back(s);
        }
    }
    // global ordering by start time, speakers interleaved
    std::stable_sort(out.begin(), out.end(),
                     [](const StrokeAnnotation& a, const StrokeAnnotation& b) {
                         return a.start_ms < b.start_ms;
                     });
    if (merged_count) *merged_count = merged;
    return out;
}

AnnotationLoadResult load_annotations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open annotation file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty annotation file: " + path);
    // header line is required but not validated beyond being present
    std::vector<StrokeAnnotation> raw;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        StrokeAnnotation a;
        std::string field;
        if (!std::getline(ss, a.speaker_id, ',')) {
            throw FormatError(path + ":" + std::to_string(line_no) + ": missing speaker_id");
        }
        if (!std::getline(ss, field, ',')) {
            throw FormatError(path + ":" + std::to_string(line_no) + ": missing start_ms");
        }
        a.start_ms = std::stoll(field);
        if (!std::getline(ss, field, ',')) {
            throw FormatError(path + ":" + std::to_string(line_no) + ": missing end_ms");
        }
        a.end_ms = std::stoll(field);
        if (a.end_ms <= a.start_ms) {
            throw FormatError(path + ":" + std::to_string(line_no) +
                              ": end_ms must exceed start_ms");
        }
        raw.push_back(std::move(a));
    }
    AnnotationLoadResult result;
    result.strokes = merge_overlapping(std::move(raw), &result.merged_count);
    return result;
}

void save_annotations(const std::string& path, const std::vector<StrokeAnnotation>& strokes) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write annotation file: " + path);
    out << "speaker_id,start_ms,end_ms\n";
    for (const StrokeAnnotation& s : strokes) {
        out << s.speaker_id << ',' << s.start_ms << ',' << s.end_ms << '\n';
    }
}

}  // namespace gsd
