#include "gsd/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gsd/errors.hpp"

namespace gsd {

std::vector<ManifestEntry> load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open manifest: " + path);
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty manifest: " + path);
    std::vector<ManifestEntry> entries;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        ManifestEntry e;
        if (!std::getline(ss, e.dialogue_id, ',') || !std::getline(ss, e.speaker_id, ',') ||
            !std::getline(ss, e.audio_path, ',') || !std::getline(ss, e.keypoint_path, ',') ||
            !std::getline(ss, e.annotation_path, ',')) {
            throw FormatError(path + ":" + std::to_string(line_no) + ": expected 5 columns");
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

void save_manifest(const std::string& path, const std::vector<ManifestEntry>& entries) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write manifest: " + path);
    out << "dialogue_id,speaker_id,audio_path,keypoint_path,annotation_path\n";
    for (const ManifestEntry& e : entries) {
        out << e.dialogue_id << ',' << e.speaker_id << ',' << e.audio_path << ','
            << e.keypoint_path << ',' << e.annotation_path << '\n';
    }
}

std::string resolve_manifest_path(const std::string& manifest_path,
                                  const std::string& entry_path) {
    std::filesystem::path p(entry_path);
    if (p.is_absolute()) return entry_path;
    return (std::filesystem::path(manifest_path).parent_path() / p).string();
}

}  // namespace gsd
