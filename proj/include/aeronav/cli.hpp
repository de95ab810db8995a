#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "aeronav/metrics.hpp"
#include "aeronav/preprocess.hpp"
#include "aeronav/supervision.hpp"

namespace aeronav::cli {

/// Every tunable of a run. Defaults reproduce the reference preprocessing
/// regime (merge cap 3, uniform history of 8 frames, 20 m success radius,
/// lambda_sp 1.0, lambda_tr 0.5).
struct RunConfig {
    std::string command;
    std::string action_space{"aerialvln"};
    std::size_t merge_cap{kDefaultMergeCap};
    std::string history_policy{"uniform"};
    std::size_t history_size{kDefaultHistoryBudget};
    double success_radius{kDefaultSuccessRadius};
    double drift_threshold{kDefaultDriftThreshold};
    double lambda_sp{kDefaultLambdaSpatial};
    double lambda_tr{kDefaultLambdaTrajectory};
    std::uint64_t seed{0};
    std::string policy{"random"};
    std::size_t max_steps{500};
    std::size_t workers{1};
    std::map<std::string, std::string> inputs;
    std::string output;

    /// Output-affecting settings only: worker count and output path are left
    /// out so reports do not depend on them.
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Reads "token count" lines (or {"token":..,"count":..} JSON lines);
/// blank lines and lines starting with '#' are skipped.
[[nodiscard]] std::map<std::string, double> read_counts(std::istream& in);

/// Entry point shared by the executable and the tests. Returns 0 on success,
/// 1 on usage or validation errors and 2 on I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aeronav::cli
