#pragma once

#include <string>
#include <vector>

#include "gsd/keypoints.hpp"
#include "gsd/windowing.hpp"

namespace gsd {

inline constexpr int kSelectedJoints = 27;
inline constexpr int kPoseChannels = 3;  // x, y, confidence

// Ordered subset of the 133-point layout with a tree parent structure.
// parent[i] indexes into the selection itself; -1 marks the root.
struct JointSelection {
    std::vector<int> indices;          // into the 133-joint layout
    std::vector<std::string> names;
    std::vector<int> parent;

    void validate() const;  // throws ConfigError
};

// 5 body points (nose, shoulders, elbows) plus wrist, finger-base and
// fingertip joints per hand in the COCO-WholeBody index layout.
const JointSelection& default_joint_selection();

// Plain-text table: index name parent_index (one joint per line, '#' comments).
JointSelection load_joint_selection(const std::string& path);
void save_joint_selection(const std::string& path, const JointSelection& selection);

struct SkeletonAdjacency {
    int n = kSelectedJoints;
    std::vector<float> a;       // n*n, symmetric 0/1 spatial edges
    std::vector<float> a_norm;  // D^-1/2 (A + I) D^-1/2

    float at(int i, int j) const { return a[i * n + j]; }
    float norm_at(int i, int j) const { return a_norm[i * n + j]; }
};

SkeletonAdjacency build_adjacency(const JointSelection& selection);

// c x t x j pose array for one time window (channels x frames x joints).
struct PoseWindow {
    std::vector<float> values;  // kPoseChannels * kWindowFrames * kSelectedJoints
    bool low_confidence = false;

    float at(int c, int t, int j) const {
        return values[(c * kWindowFrames + t) * kSelectedJoints + j];
    }
    float& at(int c, int t, int j) {
        return values[(c * kWindowFrames + t) * kSelectedJoints + j];
    }
};

// Selects the configured joints from a 133-joint frame, in selection order.
std::vector<Joint> select_joints(const KeypointFrame& frame, const JointSelection& selection);

// Centers on the mid-shoulder point of the first confident frame and scales
// x,y by that frame's shoulder distance; the confidence channel is unchanged.
// Degenerate shoulder geometry falls back to unit scale and sets the flag.
void normalize_pose(PoseWindow& window, const JointSelection& selection);

// Cuts the window's frames out of the track (repeating edge frames for
// overhang), selects joints, and normalizes.
PoseWindow pose_window(const KeypointTrack& track, const TimeWindow& window,
                       const JointSelection& selection);

}  // namespace gsd
