#include "gsd/pose.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gsd/errors.hpp"

namespace gsd {
namespace {

// positions of the shoulder joints within the canonical selection order
constexpr int kLeftShoulderSlot = 1;
constexpr int kRightShoulderSlot = 2;

JointSelection make_default_selection() {
    JointSelection s;
    auto add = [&s](int index, const std::string& name, int parent) {
        s.indices.push_back(index);
        s.names.push_back(name);
        s.parent.push_back(parent);
    };
    add(0, "nose", -1);
    add(5, "left_shoulder", 0);
    add(6, "right_shoulder", 0);
    add(7, "left_elbow", 1);
    add(8, "right_elbow", 2);
    // hands: wrist followed by (base knuckle, fingertip) per finger; the
    // COCO-WholeBody hand blocks start at 91 (left) and 112 (right)
    const char* fingers[5] = {"thumb", "index", "middle", "ring", "pinky"};
    for (int hand = 0; hand < 2; ++hand) {
        const int base = hand == 0 ? 91 : 112;
        const std::string side = hand == 0 ? "left_" : "right_";
        const int elbow_slot = hand == 0 ? 3 : 4;
        const int wrist_slot = static_cast<int>(s.indices.size());
        add(base, side + "wrist", elbow_slot);
        for (int f = 0; f < 5; ++f) {
            const int knuckle_slot = static_cast<int>(s.indices.size());
            add(base + 1 + f * 4 + 0, side + fingers[f] + "_base", wrist_slot);
            add(base + 1 + f * 4 + 3, side + fingers[f] + "_tip", knuckle_slot);
        }
    }
    return s;
}

}  // namespace

void JointSelection::validate() const {
    if (indices.size() != kSelectedJoints || names.size() != kSelectedJoints ||
        parent.size() != kSelectedJoints) {
        throw ConfigError("joint selection must have exactly " +
                          std::to_string(kSelectedJoints) + " entries");
    }
    std::set<int> seen(indices.begin(), indices.end());
    if (seen.size() != indices.size()) throw ConfigError("duplicate joint indices");
    for (int idx : indices) {
        if (idx < 0 || idx >= kFullJointCount) throw ConfigError("joint index out of range");
    }
    int roots = 0;
    for (std::size_t i = 0; i < parent.size(); ++i) {
        if (parent[i] == -1) {
            ++roots;
        } else if (parent[i] < 0 || parent[i] >= static_cast<int>(parent.size())) {
            throw ConfigError("parent index out of range");
        }
    }
    if (roots != 1) throw ConfigError("selection must have exactly one root");
    // connectivity: walking parents from any node must reach the root
    for (std::size_t i = 0; i < parent.size(); ++i) {
        int cur = static_cast<int>(i), steps = 0;
        while (parent[cur] != -1) {
            cur = parent[cur];
            if (++steps > static_cast<int>(parent.size())) {
                throw ConfigError("parent structure contains a cycle");
            }
        }
    }
}

const JointSelection& default_joint_selection() {
    static const JointSelection s = [] {
        JointSelection sel = make_default_selection();
        sel.validate();
        return sel;
    }();
    return s;
}

JointSelection load_joint_selection(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open joint selection: " + path);
    JointSelection s;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        int index, parent;
        std::string name;
        if (!(ss >> index >> name >> parent)) {
            throw FormatError("bad joint selection line: " + line);
        }
        s.indices.push_back(index);
        s.names.push_back(name);
        s.parent.push_back(parent);
    }
    s.validate();
    return s;
}

void save_joint_selection(const std::string& path, const JointSelection& selection) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write joint selection: " + path);
    out << "# index name parent_index\n";
    for (std::size_t i = 0; i < selection.indices.size(); ++i) {
        out << selection.indices[i] << ' ' << selection.names[i] << ' ' << selection.parent[i]
            << '\n';
    }
}

SkeletonAdjacency build_adjacency(const JointSelection& selection) {
    selection.validate();
    const int n = static_cast<int>(selection.indices.size());
    SkeletonAdjacency adj;
    adj.n = n;
    adj.a.assign(static_cast<std::size_t>(n) * n, 0.0f);
    for (int i = 0; i < n; ++i) {
        const int p = selection.parent[i];
        if (p >= 0) {
            adj.a[i * n + p] = 1.0f;
            adj.a[p * n + i] = 1.0f;
        }
    }
    // A_norm = D^-1/2 (A + I) D^-1/2 with D the degree of A + I
    std::vector<float> inv_sqrt_deg(n);
    for (int i = 0; i < n; ++i) {
        float deg = 1.0f;  // self loop
        for (int j = 0; j < n; ++j) deg += adj.a[i * n + j];
        inv_sqrt_deg[i] = 1.0f / std::sqrt(deg);
    }
    adj.a_norm.assign(static_cast<std::size_t>(n) * n, 0.0f);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const float aij = adj.a[i * n + j] + (i == j ? 1.0f : 0.0f);
            adj.a_norm[i * n + j] = inv_sqrt_deg[i] * aij * inv_sqrt_deg[j];
        }
    }
    return adj;
}

std::vector<Joint> select_joints(const KeypointFrame& frame, const JointSelection& selection) {
    if (frame.size() != kFullJointCount) {
        throw ContractError("select_joints: frame must have 133 joints");
    }
    std::vector<Joint> out;
    out.reserve(selection.indices.size());
    for (int idx : selection.indices) out.push_back(frame[idx]);
    return out;
}

void normalize_pose(PoseWindow& window, const JointSelection& selection) {
    (void)selection;
    // anchor: first frame where both shoulders are confident
    int anchor = -1;
    for (int t = 0; t < kWindowFrames; ++t) {
        if (window.at(2, t, kLeftShoulderSlot) > 0.0f &&
            window.at(2, t, kRightShoulderSlot) > 0.0f) {
            anchor = t;
            break;
        }
    }
    if (anchor < 0) {
        window.low_confidence = true;
        anchor = 0;
    }
    const float lx = window.at(0, anchor, kLeftShoulderSlot);
    const float ly = window.at(1, anchor, kLeftShoulderSlot);
    const float rx = window.at(0, anchor, kRightShoulderSlot);
    const float ry = window.at(1, anchor, kRightShoulderSlot);
    const float cx = 0.5f * (lx + rx);
    const float cy = 0.5f * (ly + ry);
    float scale = std::hypot(rx - lx, ry - ly);
    if (scale < 1e-6f) {
        scale = 1.0f;
        window.low_confidence = true;
    }
    for (int t = 0; t < kWindowFrames; ++t) {
        for (int j = 0; j < kSelectedJoints; ++j) {
            window.at(0, t, j) = (window.at(0, t, j) - cx) / scale;
            window.at(1, t, j) = (window.at(1, t, j) - cy) / scale;
        }
    }
}

PoseWindow pose_window(const KeypointTrack& track, const TimeWindow& window,
                       const JointSelection& selection) {
    PoseWindow out;
    out.values.assign(
        static_cast<std::size_t>(kPoseChannels) * kWindowFrames * kSelectedJoints, 0.0f);
    const int track_n = track.n_frames();
    if (track_n == 0) throw ContractError("pose_window: empty keypoint track");
    bool any_confident = false;
    for (int t = 0; t < kWindowFrames; ++t) {
        int f = window.start_frame + t;
        f = std::clamp(f, 0, track_n - 1);  // repeat edge frames on overhang
        const std::vector<Joint> joints = select_joints(track.frames[f], selection);
        for (int j = 0; j < kSelectedJoints; ++j) {
            out.at(0, t, j) = joints[j].x;
            out.at(1, t, j) = joints[j].y;
            out.at(2, t, j) = joints[j].confidence;
            if (joints[j].confidence > 0.0f) any_confident = true;
        }
    }
    if (!any_confident) out.low_confidence = true;
    normalize_pose(out, selection);
    return out;
}

}  // namespace gsd
