// Episode storage, baseline agents and the closed-loop evaluation runner.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "aeronav/kinematics.hpp"
#include "aeronav/metrics.hpp"
#include "aeronav/preprocess.hpp"

namespace aeronav {

inline constexpr int kEpisodeSchemaVersion = 1;

struct Episode {
    std::string id;
    std::string action_space{"aerialvln"};
    std::string instruction;
    Pose start;
    std::vector<ActionKind> gt_actions;
    Vec3 goal;
    std::vector<ObstacleBox> obstacles;
    std::optional<std::vector<std::string>> frames;
    /// Dataset-provided shortest path length; straight-line distance is used when absent.
    std::optional<double> shortest_length;
    /// Fields this version does not know about, written back verbatim.
    nlohmann::json extra = nlohmann::json::object();

    friend bool operator==(const Episode&, const Episode&) = default;
};

/// One JSON object per line:
///   {"schema_version":1,"id":...,"action_space":"aerialvln","instruction":...,
///    "start":{"x":..,"y":..,"z":..,"yaw":..},"gt_actions":["move_forward",...],
///    "goal":[x,y,z],"obstacles":[{"min":[..],"max":[..]}],
///    "frames":[...],"shortest_length":...}
/// `frames` and `shortest_length` are optional.
[[nodiscard]] nlohmann::json episode_to_json(const Episode& episode);
/// Throws Error(InvalidArgument) describing the first schema violation.
[[nodiscard]] Episode episode_from_json(const nlohmann::json& record);

struct Diagnostic {
    std::size_t line{0};  ///< 1-based; 0 when not tied to a line
    std::string message;
};

struct LoadResult {
    std::vector<Episode> episodes;
    std::vector<Diagnostic> diagnostics;
};

/// Malformed lines become diagnostics; blank lines are skipped.
[[nodiscard]] LoadResult load_episodes(std::istream& in);
/// Throws Error(Io) if the file cannot be opened.
[[nodiscard]] LoadResult load_episodes(const std::filesystem::path& path);
void save_episodes(std::span<const Episode> episodes, std::ostream& out);
/// Throws Error(Io) if the file cannot be written.
void save_episodes(std::span<const Episode> episodes, const std::filesystem::path& path);

/// Best-effort adapter for AerialVLN-style annotation JSON
/// ({"episodes":[{episode_id, instruction.instruction_text, start_position,
/// start_rotation [x,y,z,w], goals[0].position, actions[int]}]}).
/// Integer actions map 0..7 to stop, move_forward, turn_left, turn_right,
/// ascend, descend, move_left, move_right. Unmapped fields land in `extra`.
[[nodiscard]] LoadResult import_aerialvln(const std::filesystem::path& path,
                                          const std::string& action_space = "aerialvln");

/// Deterministic per-episode seed, identical for serial and parallel runs.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view episode_id) noexcept;

/// Portable draws from a 64-bit engine (the std distributions are
/// implementation-defined).
[[nodiscard]] double uniform_unit(std::mt19937_64& rng) noexcept;
[[nodiscard]] std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) noexcept;

/// Inverse-CDF sampler over primitive actions.
class ActionSampler {
public:
    /// Throws Error(DegenerateDistribution) for empty or non-positive totals.
    explicit ActionSampler(const std::map<ActionKind, double>& weights);

    [[nodiscard]] ActionKind sample(std::mt19937_64& rng) const noexcept;
    [[nodiscard]] const std::vector<ActionKind>& kinds() const noexcept { return kinds_; }

private:
    std::vector<ActionKind> kinds_;
    std::vector<double> cumulative_;
};

struct AgentPolicy {
    enum class Kind { RandomSampler, ActionSampler, OracleGreedy, Replay };

    Kind kind{Kind::RandomSampler};
    std::uint64_t seed{0};
    /// Target distribution for ActionSampler.
    std::map<ActionKind, double> distribution;

    static AgentPolicy random(std::uint64_t seed) { return {Kind::RandomSampler, seed, {}}; }
    static AgentPolicy sampler(std::map<ActionKind, double> dist, std::uint64_t seed) {
        return {Kind::ActionSampler, seed, std::move(dist)};
    }
    static AgentPolicy oracle() { return {Kind::OracleGreedy, 0, {}}; }
    /// Replays the episode's ground-truth actions.
    static AgentPolicy replay() { return {Kind::Replay, 0, {}}; }

    [[nodiscard]] std::string name() const;
};

/// Primitive action frequencies over a corpus (training-set distribution).
[[nodiscard]] std::map<ActionKind, double> action_frequencies(std::span<const Episode> episodes);

struct AgentRun {
    std::vector<ActionKind> actions;
    Rollout rollout;
};

/// Runs the policy until it emits Stop or `max_steps` actions were taken.
/// Throws Error(InvalidArgument) when max_steps == 0.
[[nodiscard]] AgentRun run_agent(const Episode& episode, const AgentPolicy& policy,
                                 std::size_t max_steps, double success_radius = kDefaultSuccessRadius);

struct EvalOptions {
    std::size_t max_steps{500};
    double success_radius{kDefaultSuccessRadius};
    double drift_threshold{kDefaultDriftThreshold};
    std::size_t workers{1};
};

struct EpisodeResult {
    std::string id;
    EpisodeScore score;
    std::size_t predicted_actions{0};
    std::size_t reference_actions{0};
    double shortest_length{0};
    bool shortest_from_dataset{false};
};

struct EvalReport {
    std::vector<EpisodeResult> results;
    /// Episodes that failed to evaluate, with the reason.
    std::vector<Diagnostic> errors;
    /// Absent when every episode failed.
    std::optional<EvalSummary> summary;
};

/// Output order follows input order regardless of the worker count.
/// Throws Error(EmptyEvaluation) on an empty split.
[[nodiscard]] EvalReport evaluate_split(std::span<const Episode> episodes, const AgentPolicy& policy,
                                        const EvalOptions& options);

/// Calls fn(i) for i in [0, n) on up to `workers` threads.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn);

struct LengthStats {
    std::size_t min{0};
    std::size_t max{0};
    double mean{0};
};

struct PreprocessStats {
    std::size_t episodes{0};
    std::map<std::string, std::size_t> before_histogram;  ///< primitive action -> count
    std::map<std::string, std::size_t> after_histogram;   ///< merged token -> count
    std::vector<std::size_t> before_lengths;
    std::vector<std::size_t> after_lengths;
    LengthStats before;
    LengthStats after;
    std::size_t max_run_after{0};
};

[[nodiscard]] PreprocessStats preprocess_stats(std::span<const Episode> episodes,
                                               std::size_t merge_cap = kDefaultMergeCap);

struct PreprocessedEpisode {
    std::string id;
    std::vector<MergedSegment> segments;
    std::vector<std::size_t> keyframes;
    /// History shown at the final step under the configured policy.
    std::vector<std::size_t> history;
};

[[nodiscard]] PreprocessedEpisode preprocess_episode(const Episode& episode, std::size_t merge_cap,
                                                     const HistoryPolicy& history);

struct SyntheticOptions {
    std::size_t min_actions{20};
    std::size_t max_actions{80};
    double min_goal_distance{0};
    std::size_t obstacles{0};
    double start_extent{200};
    double min_altitude{5};
    double max_altitude{60};
};

/// Random episodes whose goal is the endpoint of their own ground-truth
/// actions (which end with Stop). Obstacles are rejection-sampled so the
/// reference path never touches them.
[[nodiscard]] std::vector<Episode> generate_synthetic_split(std::size_t count, const ActionSpace& space,
                                                            std::uint64_t seed,
                                                            const SyntheticOptions& options = {});

}  // namespace aeronav
