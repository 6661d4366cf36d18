#pragma once

#include <string>
#include <vector>

namespace gsd {

// One speaker track of a corpus. Paths are relative to the manifest file
// unless absolute.
struct ManifestEntry {
    std::string dialogue_id;
    std::string speaker_id;
    std::string audio_path;
    std::string keypoint_path;
    std::string annotation_path;
};

std::vector<ManifestEntry> load_manifest(const std::string& path);
void save_manifest(const std::string& path, const std::vector<ManifestEntry>& entries);

// Resolves a manifest-relative path against the manifest's directory.
std::string resolve_manifest_path(const std::string& manifest_path, const std::string& entry_path);

}  // namespace gsd
