// Label reweighting and the weighted multi-task cross-entropy objective.
//
// Navigation samples are scaled by a normalized inverse-frequency weight of
// their action token,
//
//   w(a) = sqrt( (1/p(a)) / ( (1/|A|) * sum_b 1/p(b) ) ),
//
// so that the mean of w(a)^2 over the vocabulary is exactly one. Auxiliary
// samples use fixed task weights.

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace aeronav {

/// Empirical action-token probabilities. Keys are action or merged-action
/// tokens ("move_forward", "turn_left_x3", ...).
using ActionDistribution = std::map<std::string, double>;
using WeightTable = std::map<std::string, double>;

inline constexpr double kDefaultLambdaSpatial = 1.0;
inline constexpr double kDefaultLambdaTrajectory = 0.5;

/// Normalizes raw counts into a distribution. Throws
/// Error(DegenerateDistribution) on empty input, negative or zero counts.
[[nodiscard]] ActionDistribution distribution_from_counts(const std::map<std::string, double>& counts);

/// Throws Error(DegenerateDistribution) unless every p > 0 and the total is 1 within 1e-9.
void validate_distribution(const ActionDistribution& dist);

[[nodiscard]] WeightTable compute_weights(const ActionDistribution& dist);

enum class Task { Navigation, SpatialPerception, TrajectoryReasoning };

struct TaskWeights {
    double lambda_sp{kDefaultLambdaSpatial};
    double lambda_tr{kDefaultLambdaTrajectory};
};

/// One supervised answer: target token ids and the model's predicted
/// distribution for each of them (one probability row per target token).
struct TrainSample {
    Task task{Task::Navigation};
    /// Action token for navigation samples; unused otherwise.
    std::string action_token;
    std::vector<std::size_t> target_tokens;
    std::vector<std::vector<double>> predicted_rows;
};

/// W(u): w(a_t) for navigation, lambda_sp or lambda_tr for the auxiliary
/// tasks. Throws Error(UnknownAction) for a navigation token missing from `weights`.
[[nodiscard]] double sample_weight(const TrainSample& sample, const WeightTable& weights,
                                   const TaskWeights& task_weights = {});

/// Mean negative log-likelihood over the sample's target tokens.
/// Throws Error(MalformedSample) on shape problems and
/// Error(NumericalUnderflow) when a target probability is zero.
[[nodiscard]] double cross_entropy(const TrainSample& sample);

/// (1/|B|) * sum_u W(u) * CE(u). Per-sample terms are reduced in a canonical
/// (sorted) order with compensated summation, so the result does not depend
/// on batch order. Throws Error(EmptyBatch) on an empty batch.
[[nodiscard]] double batch_loss(std::span<const TrainSample> batch, const WeightTable& weights,
                                const TaskWeights& task_weights = {});

/// Neumaier-compensated left-to-right sum.
[[nodiscard]] double compensated_sum(std::span<const double> values) noexcept;

}  // namespace aeronav
