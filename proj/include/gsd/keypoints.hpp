#pragma once

#include <array>
#include <string>
#include <vector>

namespace gsd {

inline constexpr int kFullJointCount = 133;
inline constexpr double kCanonicalFps = 29.97;

struct Joint {
    float x = 0.0f;
    float y = 0.0f;
    float confidence = 0.0f;
};

using KeypointFrame = std::vector<Joint>;  // always kFullJointCount joints

struct KeypointTrack {
    std::vector<KeypointFrame> frames;
    double frame_rate_fps = kCanonicalFps;
    std::string speaker_id;
    // frame indices that were absent in the source and filled by repeating the
    // previous frame
    std::vector<int> gap_log;

    int n_frames() const { return static_cast<int>(frames.size()); }
};

// Line-delimited text, one record per frame:
//   frame_index x0 y0 c0 x1 y1 c1 ... x132 y132 c132
// Records may skip indices; gaps are filled by repeating the previous frame
// and recorded in gap_log.
KeypointTrack load_keypoints(const std::string& path);

void save_keypoints(const std::string& path, const KeypointTrack& track);

}  // namespace gsd
