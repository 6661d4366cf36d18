#include "gsd/keypoints.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gsd/errors.hpp"

namespace gsd {

KeypointTrack load_keypoints(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open keypoint file: " + path);

    KeypointTrack track;
    std::string line;
    int line_no = 0;
    int expected_index = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        long frame_index = -1;
        if (!(ss >> frame_index) || frame_index < 0) {
            throw FormatError(path + ":" + std::to_string(line_no) + ": bad frame index");
        }
        KeypointFrame frame;
        frame.reserve(kFullJointCount);
        float x, y, c;
        while (ss >> x >> y >> c) frame.push_back({x, y, c});
        if (static_cast<int>(frame.size()) != kFullJointCount) {
            throw FormatError(path + ":" + std::to_string(line_no) + ": expected " +
                              std::to_string(kFullJointCount) + " joints, got " +
                              std::to_string(frame.size()));
        }
        if (frame_index < expected_index) {
            throw FormatError(path + ":" + std::to_string(line_no) + ": out-of-order frame");
        }
        while (expected_index < frame_index) {
            if (track.frames.empty()) {
                throw FormatError(path + ": first record must be frame 0");
            }
            track.frames.push_back(track.frames.back());
            track.gap_log.push_back(expected_index);
            ++expected_index;
        }
        track.frames.push_back(std::move(frame));
        ++expected_index;
    }
    return track;
}

void save_keypoints(const std::string& path, const KeypointTrack& track) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write keypoint file: " + path);
    char buf[64];
    for (std::size_t i = 0; i < track.frames.size(); ++i) {
        out << i;
        for (const Joint& j : track.frames[i]) {
            std::snprintf(buf, sizeof(buf), " %.5f %.5f %.4f", j.x, j.y, j.confidence);
            out << buf;
        }
        out << '\n';
    }
}

}  // namespace gsd
