#include "aeronav/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "aeronav/error.hpp"
#include "aeronav/supervision.hpp"

namespace aeronav {

std::string_view failure_name(FailureKind kind) noexcept {
    switch (kind) {
        case FailureKind::StopFailure: return "stop_failure";
        case FailureKind::Collision: return "collision";
        case FailureKind::LongHorizonDrift: return "long_horizon_drift";
        case FailureKind::PerceptionRelated: return "perception_related";
    }
    return "unknown";
}

FailureKind failure_from_name(std::string_view name) {
    for (FailureKind kind : kAllFailureKinds) {
        if (failure_name(kind) == name) return kind;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown failure kind '" + std::string(name) + "'");
}

Difficulty difficulty_for(std::size_t action_count) noexcept {
    if (action_count < 30) return Difficulty::Easy;
    if (action_count <= 60) return Difficulty::Moderate;
    return Difficulty::Hard;
}

std::string_view difficulty_name(Difficulty d) noexcept {
    switch (d) {
        case Difficulty::Easy: return "easy";
        case Difficulty::Moderate: return "moderate";
        case Difficulty::Hard: return "hard";
    }
    return "unknown";
}

double navigation_error(const Pose& final_pose, const Vec3& goal) noexcept {
    return distance(final_pose.position(), goal);
}

SuccessFlags success_flags(std::span<const Pose> predicted, const Vec3& goal, double radius) {
    if (predicted.empty()) throw Error(ErrorCode::InvalidArgument, "predicted path is empty");
    SuccessFlags flags;
    flags.sr = navigation_error(predicted.back(), goal) <= radius ? 1 : 0;
    flags.osr = std::any_of(predicted.begin(), predicted.end(),
                            [&](const Pose& p) { return navigation_error(p, goal) <= radius; })
                    ? 1
                    : 0;
    return flags;
}

double dtw_distance(std::span<const Pose> predicted, std::span<const Pose> reference) {
    if (predicted.empty() || reference.empty()) {
        throw Error(ErrorCode::InvalidArgument, "DTW needs two non-empty paths");
    }
    const std::size_t n = predicted.size();
    const std::size_t m = reference.size();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    // two rolling rows of the (n x m) cost table
    std::vector<double> prev(m, kInf);
    std::vector<double> cur(m, kInf);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 p = predicted[i].position();
        for (std::size_t j = 0; j < m; ++j) {
            const double cost = distance(p, reference[j].position());
            double best;
            if (i == 0 && j == 0) {
                best = 0.0;
            } else {
                best = kInf;
                if (i > 0) best = std::min(best, prev[j]);
                if (j > 0) best = std::min(best, cur[j - 1]);
                if (i > 0 && j > 0) best = std::min(best, prev[j - 1]);
            }
            cur[j] = cost + best;
        }
        std::swap(prev, cur);
    }
    return prev[m - 1];
}

double normalized_dtw(double dtw, std::size_t reference_size, double radius) noexcept {
    return std::exp(-dtw / (static_cast<double>(reference_size) * radius));
}

double path_length(std::span<const Pose> path) noexcept {
    double total = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        total += distance(path[i - 1].position(), path[i].position());
    }
    return total;
}

FailureKind classify_failure(int osr, bool collided, double ndtw, double drift_threshold) noexcept {
    if (osr == 1) return FailureKind::StopFailure;
    if (collided) return FailureKind::Collision;
    if (ndtw < drift_threshold) return FailureKind::LongHorizonDrift;
    return FailureKind::PerceptionRelated;
}

EpisodeScore score_episode(const EvalInput& input) {
    if (input.predicted.empty() || input.reference.empty()) {
        throw Error(ErrorCode::InvalidArgument, "predicted and reference paths must be non-empty");
    }
    if (!(input.success_radius > 0)) {
        throw Error(ErrorCode::InvalidArgument, "success radius must be positive");
    }
    if (!(input.shortest_length >= 0)) {
        throw Error(ErrorCode::InvalidArgument, "shortest path length must be >= 0");
    }

    EpisodeScore score;
    score.ne = navigation_error(input.predicted.back(), input.goal);
    const SuccessFlags flags = success_flags(input.predicted, input.goal, input.success_radius);
    score.sr = flags.sr;
    score.osr = flags.osr;
    score.dtw = dtw_distance(input.predicted, input.reference);
    score.ndtw = normalized_dtw(score.dtw, input.reference.size(), input.success_radius);
    score.sdtw = score.sr * score.ndtw;
    score.executed_length = path_length(input.predicted);
    const double denom = std::max(score.executed_length, input.shortest_length);
    score.spl = denom > 0 ? score.sr * input.shortest_length / denom : static_cast<double>(score.sr);
    score.collided = input.collided;
    score.action_count = input.action_count.value_or(input.reference.size() - 1);
    if (score.sr == 0) {
        score.failure = classify_failure(score.osr, input.collided, score.ndtw, input.drift_threshold);
    }
    return score;
}

EvalSummary aggregate(std::span<const EpisodeScore> scores) {
    if (scores.empty()) throw Error(ErrorCode::EmptyEvaluation, "no episodes to aggregate");
    const auto mean = [&](auto field) {
        std::vector<double> values;
        values.reserve(scores.size());
        for (const auto& s : scores) values.push_back(static_cast<double>(field(s)));
        return compensated_sum(values) / static_cast<double>(values.size());
    };

    EvalSummary summary;
    summary.episodes = scores.size();
    summary.ne = mean([](const EpisodeScore& s) { return s.ne; });
    summary.sr = 100.0 * mean([](const EpisodeScore& s) { return s.sr; });
    summary.osr = 100.0 * mean([](const EpisodeScore& s) { return s.osr; });
    summary.ndtw = mean([](const EpisodeScore& s) { return s.ndtw; });
    summary.sdtw = 100.0 * mean([](const EpisodeScore& s) { return s.sdtw; });
    summary.spl = 100.0 * mean([](const EpisodeScore& s) { return s.spl; });

    std::array<std::size_t, 3> bucket_success{};
    for (const auto& s : scores) {
        if (s.failure) ++summary.failures[static_cast<std::size_t>(*s.failure)];
        const auto b = static_cast<std::size_t>(difficulty_for(s.action_count));
        ++summary.difficulty[b].count;
        bucket_success[b] += static_cast<std::size_t>(s.sr);
    }
    for (std::size_t b = 0; b < 3; ++b) {
        if (summary.difficulty[b].count > 0) {
            summary.difficulty[b].sr = 100.0 * static_cast<double>(bucket_success[b]) /
                                       static_cast<double>(summary.difficulty[b].count);
        }
    }
    return summary;
}

}  // namespace aeronav
