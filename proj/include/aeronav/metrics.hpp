// Episode scoring: NE, SR, OSR, nDTW, SDTW, SPL and failure labels.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "aeronav/kinematics.hpp"

namespace aeronav {

inline constexpr double kDefaultSuccessRadius = 20.0;
inline constexpr double kDefaultDriftThreshold = 0.3;

enum class FailureKind { StopFailure, Collision, LongHorizonDrift, PerceptionRelated };

inline constexpr std::array<FailureKind, 4> kAllFailureKinds = {
    FailureKind::StopFailure, FailureKind::Collision, FailureKind::LongHorizonDrift,
    FailureKind::PerceptionRelated};

[[nodiscard]] std::string_view failure_name(FailureKind kind) noexcept;
/// Throws Error(InvalidArgument).
[[nodiscard]] FailureKind failure_from_name(std::string_view name);

enum class Difficulty { Easy, Moderate, Hard };

/// Easy below 30 actions, Moderate for 30..60, Hard above 60.
[[nodiscard]] Difficulty difficulty_for(std::size_t action_count) noexcept;
[[nodiscard]] std::string_view difficulty_name(Difficulty d) noexcept;

struct EvalInput {
    std::vector<Pose> predicted;
    std::vector<Pose> reference;
    Vec3 goal;
    double shortest_length{0};
    bool collided{false};
    double success_radius{kDefaultSuccessRadius};
    double drift_threshold{kDefaultDriftThreshold};
    /// Reference action count for difficulty bucketing; defaults to
    /// reference.size() - 1 when absent.
    std::optional<std::size_t> action_count;
};

struct EpisodeScore {
    double ne{0};
    int sr{0};
    int osr{0};
    double dtw{0};
    double ndtw{0};
    double sdtw{0};
    double spl{0};
    double executed_length{0};
    bool collided{false};
    std::size_t action_count{0};
    /// Present exactly when sr == 0.
    std::optional<FailureKind> failure;
};

[[nodiscard]] double navigation_error(const Pose& final_pose, const Vec3& goal) noexcept;

struct SuccessFlags {
    int sr{0};
    int osr{0};
};

/// A distance equal to the radius counts as success.
[[nodiscard]] SuccessFlags success_flags(std::span<const Pose> predicted, const Vec3& goal,
                                         double radius);

/// Dynamic time warping with Euclidean point cost and the symmetric
/// (match, insert, delete) step pattern, anchored at both ends.
[[nodiscard]] double dtw_distance(std::span<const Pose> predicted, std::span<const Pose> reference);

/// exp(-dtw / (|reference| * radius)).
[[nodiscard]] double normalized_dtw(double dtw, std::size_t reference_size, double radius) noexcept;

/// Sum of consecutive position distances.
[[nodiscard]] double path_length(std::span<const Pose> path) noexcept;

/// Precedence: StopFailure, Collision, LongHorizonDrift, PerceptionRelated.
[[nodiscard]] FailureKind classify_failure(int osr, bool collided, double ndtw,
                                           double drift_threshold = kDefaultDriftThreshold) noexcept;

/// Throws Error(InvalidArgument) when either path is empty, the radius is not
/// positive or the shortest length is negative.
[[nodiscard]] EpisodeScore score_episode(const EvalInput& input);

struct BucketSummary {
    std::size_t count{0};
    double sr{0};  ///< percent
};

/// Means over episodes. SR, OSR, SDTW and SPL are in percent; NE in units;
/// nDTW stays a fraction.
struct EvalSummary {
    std::size_t episodes{0};
    double ne{0};
    double sr{0};
    double osr{0};
    double ndtw{0};
    double sdtw{0};
    double spl{0};
    std::array<std::size_t, 4> failures{};  ///< indexed like kAllFailureKinds
    std::array<BucketSummary, 3> difficulty{};  ///< Easy, Moderate, Hard
};

/// Reduces in the given order. Throws Error(EmptyEvaluation) on empty input.
[[nodiscard]] EvalSummary aggregate(std::span<const EpisodeScore> scores);

}  // namespace aeronav
