#include "aeronav/preprocess.hpp"

#include <algorithm>

#include "aeronav/error.hpp"

namespace aeronav {

std::string merged_token(ActionKind kind, std::size_t count) {
    return std::string(action_name(kind)) + "_x" + std::to_string(count);
}

std::string MergedSegment::token() const { return merged_token(kind, count); }

std::vector<MergedSegment> merge_actions(std::span<const ActionKind> actions,
                                         std::size_t merge_cap) {
    if (merge_cap == 0) throw Error(ErrorCode::InvalidArgument, "merge cap must be >= 1");
    std::vector<MergedSegment> segments;
    std::size_t i = 0;
    while (i < actions.size()) {
        const ActionKind kind = actions[i];
        std::size_t count = 1;
        while (count < merge_cap && i + count < actions.size() && actions[i + count] == kind) {
            ++count;
        }
        segments.push_back({kind, count, i, i + count});
        i += count;
    }
    return segments;
}

std::vector<ActionKind> expand_segments(std::span<const MergedSegment> segments) {
    std::vector<ActionKind> actions;
    for (const auto& seg : segments) actions.insert(actions.end(), seg.count, seg.kind);
    return actions;
}

std::vector<std::size_t> select_keyframes(std::span<const MergedSegment> segments,
                                          std::size_t total_frames) {
    if (total_frames == 0) throw Error(ErrorCode::MalformedSegments, "trajectory has no frames");
    std::size_t expected_start = 0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& seg = segments[i];
        if (seg.count == 0 || seg.start_frame != expected_start ||
            seg.end_frame != seg.start_frame + seg.count) {
            throw Error(ErrorCode::MalformedSegments,
                        "segment " + std::to_string(i) + " does not continue the frame tiling");
        }
        expected_start = seg.end_frame;
    }
    if (expected_start != total_frames - 1) {
        throw Error(ErrorCode::MalformedSegments,
                    "segments end at frame " + std::to_string(expected_start) + " but the last frame is " +
                        std::to_string(total_frames - 1));
    }

    std::vector<std::size_t> keyframes{0};
    for (const auto& seg : segments) keyframes.push_back(seg.end_frame);
    // ends are strictly increasing and every start is the previous end
    return keyframes;
}

void HistoryPolicy::validate() const {
    if (kind == Kind::FifoBank && size < 1) {
        throw Error(ErrorCode::InvalidPolicy, "FIFO capacity must be >= 1");
    }
    if (kind == Kind::LongHorizonUniform && size < 2) {
        throw Error(ErrorCode::InvalidPolicy, "uniform budget must be >= 2");
    }
}

std::string HistoryPolicy::kind_name() const {
    switch (kind) {
        case Kind::CurrentOnly: return "current";
        case Kind::FifoBank: return "fifo";
        case Kind::LongHorizonUniform: return "uniform";
    }
    return "unknown";
}

HistoryPolicy history_policy_from_name(const std::string& name, std::size_t size) {
    HistoryPolicy policy;
    if (name == "current") {
        policy = HistoryPolicy::current_only();
    } else if (name == "fifo") {
        policy = HistoryPolicy::fifo(size);
    } else if (name == "uniform") {
        policy = HistoryPolicy::uniform(size);
    } else {
        throw Error(ErrorCode::InvalidPolicy, "unknown history policy '" + name + "'");
    }
    policy.validate();
    return policy;
}

std::vector<std::size_t> sample_history(std::span<const std::size_t> frames,
                                        const HistoryPolicy& policy) {
    if (frames.empty()) throw Error(ErrorCode::EmptyHistory, "no frames to sample from");
    policy.validate();
    for (std::size_t i = 1; i < frames.size(); ++i) {
        if (frames[i] <= frames[i - 1]) {
            throw Error(ErrorCode::FrameOrderError, "history frames must be strictly increasing");
        }
    }

    const std::size_t n = frames.size();
    switch (policy.kind) {
        case HistoryPolicy::Kind::CurrentOnly: return {frames.back()};
        case HistoryPolicy::Kind::FifoBank: {
            const std::size_t keep = std::min(policy.size, n);
            return {frames.end() - static_cast<std::ptrdiff_t>(keep), frames.end()};
        }
        case HistoryPolicy::Kind::LongHorizonUniform: break;
    }

    const std::size_t budget = policy.size;
    if (n <= budget) return {frames.begin(), frames.end()};
    // n > budget makes the spacing (n-1)/(budget-1) exceed 1, so the floored
    // positions are already distinct and no backfill is needed.
    std::vector<std::size_t> out;
    out.reserve(budget);
    for (std::size_t i = 0; i < budget; ++i) out.push_back(frames[i * (n - 1) / (budget - 1)]);
    return out;
}

}  // namespace aeronav
