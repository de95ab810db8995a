#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "aeronav/kinematics.hpp"

namespace aeronav {

inline constexpr std::size_t kDefaultMergeCap = 3;
inline constexpr std::size_t kDefaultHistoryBudget = 8;

/// A run of `count` identical primitives. Frame i is the observation taken
/// before action i, so a run covers frames [start_frame, end_frame] with
/// end_frame - start_frame == count.
struct MergedSegment {
    ActionKind kind{ActionKind::Stop};
    std::size_t count{0};
    std::size_t start_frame{0};
    std::size_t end_frame{0};

    /// Merged-vocabulary token, e.g. "turn_left_x3".
    [[nodiscard]] std::string token() const;

    friend bool operator==(const MergedSegment&, const MergedSegment&) = default;
};

[[nodiscard]] std::string merged_token(ActionKind kind, std::size_t count);

/// Bounded run-length merge. Runs longer than `merge_cap` are split greedily
/// from the left ([MF x4], cap 3 -> (MF,3), (MF,1)).
/// Throws Error(InvalidArgument) when merge_cap == 0.
[[nodiscard]] std::vector<MergedSegment> merge_actions(std::span<const ActionKind> actions,
                                                       std::size_t merge_cap = kDefaultMergeCap);

/// Inverse of merge_actions.
[[nodiscard]] std::vector<ActionKind> expand_segments(std::span<const MergedSegment> segments);

/// Sorted, de-duplicated start/end frames of every segment. `total_frames` is
/// the number of observations (actions + 1). Throws Error(MalformedSegments)
/// when the spans do not tile [0, total_frames - 1].
[[nodiscard]] std::vector<std::size_t> select_keyframes(std::span<const MergedSegment> segments,
                                                        std::size_t total_frames);

struct HistoryPolicy {
    enum class Kind { CurrentOnly, FifoBank, LongHorizonUniform };

    Kind kind{Kind::LongHorizonUniform};
    /// FIFO capacity or uniform budget; ignored for CurrentOnly.
    std::size_t size{kDefaultHistoryBudget};

    static HistoryPolicy current_only() { return {Kind::CurrentOnly, 1}; }
    static HistoryPolicy fifo(std::size_t capacity) { return {Kind::FifoBank, capacity}; }
    static HistoryPolicy uniform(std::size_t budget) { return {Kind::LongHorizonUniform, budget}; }

    /// Throws Error(InvalidPolicy): FIFO needs capacity >= 1, uniform needs budget >= 2.
    void validate() const;
    /// "current", "fifo" or "uniform".
    [[nodiscard]] std::string kind_name() const;
};

/// Parses "current", "fifo" or "uniform" together with a size.
[[nodiscard]] HistoryPolicy history_policy_from_name(const std::string& name, std::size_t size);

/// Chooses which of the (strictly increasing) observed frames are shown to
/// the model at the current step.
///
/// LongHorizonUniform keeps the first and last frames and spaces the rest at
/// input positions floor(i * (n - 1) / (K - 1)).
[[nodiscard]] std::vector<std::size_t> sample_history(std::span<const std::size_t> frames,
                                                      const HistoryPolicy& policy);

}  // namespace aeronav
