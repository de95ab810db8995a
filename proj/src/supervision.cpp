#include "aeronav/supervision.hpp"

#include <algorithm>
#include <cmath>

#include "aeronav/error.hpp"

namespace aeronav {

double compensated_sum(std::span<const double> values) noexcept {
    double sum = 0.0;
    double carry = 0.0;
    for (double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    return sum + carry;
}

ActionDistribution distribution_from_counts(const std::map<std::string, double>& counts) {
    if (counts.empty()) throw Error(ErrorCode::DegenerateDistribution, "no action counts");
    std::vector<double> values;
    values.reserve(counts.size());
    for (const auto& [token, count] : counts) {
        if (!(count > 0) || !std::isfinite(count)) {
            throw Error(ErrorCode::DegenerateDistribution,
                        "count for '" + token + "' must be positive and finite");
        }
        values.push_back(count);
    }
    const double total = compensated_sum(values);
    ActionDistribution dist;
    for (const auto& [token, count] : counts) dist[token] = count / total;
    return dist;
}

void validate_distribution(const ActionDistribution& dist) {
    if (dist.empty()) throw Error(ErrorCode::DegenerateDistribution, "empty distribution");
    std::vector<double> values;
    values.reserve(dist.size());
    for (const auto& [token, p] : dist) {
        if (!(p > 0) || !std::isfinite(p)) {
            throw Error(ErrorCode::DegenerateDistribution,
                        "probability of '" + token + "' must be positive");
        }
        values.push_back(p);
    }
    const double total = compensated_sum(values);
    if (std::abs(total - 1.0) > 1e-9) {
        throw Error(ErrorCode::DegenerateDistribution,
                    "probabilities sum to " + std::to_string(total));
    }
}

WeightTable compute_weights(const ActionDistribution& dist) {
    validate_distribution(dist);
    std::vector<double> inverse;
    inverse.reserve(dist.size());
    for (const auto& [token, p] : dist) inverse.push_back(1.0 / p);
    const double mean_inverse = compensated_sum(inverse) / static_cast<double>(inverse.size());

    WeightTable weights;
    std::size_t i = 0;
    for (const auto& [token, p] : dist) weights[token] = std::sqrt(inverse[i++] / mean_inverse);
    return weights;
}

double sample_weight(const TrainSample& sample, const WeightTable& weights,
                     const TaskWeights& task_weights) {
    switch (sample.task) {
        case Task::SpatialPerception: return task_weights.lambda_sp;
        case Task::TrajectoryReasoning: return task_weights.lambda_tr;
        case Task::Navigation: break;
    }
    const auto it = weights.find(sample.action_token);
    if (it == weights.end()) {
        throw Error(ErrorCode::UnknownAction,
                    "no weight for action token '" + sample.action_token + "'");
    }
    return it->second;
}

double cross_entropy(const TrainSample& sample) {
    if (sample.target_tokens.empty()) {
        throw Error(ErrorCode::MalformedSample, "sample has no target tokens");
    }
    if (sample.target_tokens.size() != sample.predicted_rows.size()) {
        throw Error(ErrorCode::MalformedSample, "target and prediction lengths differ");
    }
    std::vector<double> nll;
    nll.reserve(sample.target_tokens.size());
    for (std::size_t t = 0; t < sample.target_tokens.size(); ++t) {
        const auto& row = sample.predicted_rows[t];
        const std::size_t target = sample.target_tokens[t];
        if (target >= row.size()) {
            throw Error(ErrorCode::MalformedSample,
                        "target id " + std::to_string(target) + " outside the vocabulary");
        }
        if (std::abs(compensated_sum(row) - 1.0) > 1e-6) {
            throw Error(ErrorCode::MalformedSample,
                        "prediction row " + std::to_string(t) + " does not sum to 1");
        }
        const double p = row[target];
        if (!(p > 0)) {
            throw Error(ErrorCode::NumericalUnderflow,
                        "zero probability at target position " + std::to_string(t));
        }
        nll.push_back(-std::log(p));
    }
    return compensated_sum(nll) / static_cast<double>(nll.size());
}

double batch_loss(std::span<const TrainSample> batch, const WeightTable& weights,
                  const TaskWeights& task_weights) {
    if (batch.empty()) throw Error(ErrorCode::EmptyBatch, "batch has no samples");
    std::vector<double> terms;
    terms.reserve(batch.size());
    for (const auto& sample : batch) {
        terms.push_back(sample_weight(sample, weights, task_weights) * cross_entropy(sample));
    }
    std::sort(terms.begin(), terms.end());
    return compensated_sum(terms) / static_cast<double>(batch.size());
}

}  // namespace aeronav
