#include "aeronav/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "aeronav/error.hpp"
#include "aeronav/supervision.hpp"

namespace aeronav {
namespace {

using nlohmann::json;

const std::set<std::string>& known_episode_keys() {
    static const std::set<std::string> keys = {
        "schema_version", "id",        "action_space", "instruction",    "start",
        "gt_actions",     "goal",      "obstacles",    "frames",         "shortest_length",
    };
    return keys;
}

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) {
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be an array of 3 numbers");
    }
    Vec3 v{j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z)) {
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be finite");
    }
    return v;
}

const json& require(const json& record, const char* key) {
    const auto it = record.find(key);
    if (it == record.end()) {
        throw Error(ErrorCode::InvalidArgument, std::string("missing field '") + key + "'");
    }
    return *it;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

LengthStats length_stats(const std::vector<std::size_t>& lengths) {
    LengthStats stats;
    if (lengths.empty()) return stats;
    stats.min = *std::min_element(lengths.begin(), lengths.end());
    stats.max = *std::max_element(lengths.begin(), lengths.end());
    std::vector<double> values(lengths.begin(), lengths.end());
    stats.mean = compensated_sum(values) / static_cast<double>(values.size());
    return stats;
}

}  // namespace

json episode_to_json(const Episode& episode) {
    json record = episode.extra.is_object() ? episode.extra : json::object();
    record["schema_version"] = kEpisodeSchemaVersion;
    record["id"] = episode.id;
    record["action_space"] = episode.action_space;
    record["instruction"] = episode.instruction;
    record["start"] = {{"x", episode.start.x},
                       {"y", episode.start.y},
                       {"z", episode.start.z},
                       {"yaw", episode.start.yaw}};
    json actions = json::array();
    for (ActionKind kind : episode.gt_actions) actions.push_back(action_name(kind));
    record["gt_actions"] = std::move(actions);
    record["goal"] = vec_to_json(episode.goal);
    json obstacles = json::array();
    for (const auto& box : episode.obstacles) {
        obstacles.push_back({{"min", vec_to_json(box.min)}, {"max", vec_to_json(box.max)}});
    }
    record["obstacles"] = std::move(obstacles);
    if (episode.frames) record["frames"] = *episode.frames;
    if (episode.shortest_length) record["shortest_length"] = *episode.shortest_length;
    return record;
}

Episode episode_from_json(const json& record) {
    if (!record.is_object()) throw Error(ErrorCode::InvalidArgument, "record is not a JSON object");
    try {
        Episode ep;
        const auto version = require(record, "schema_version").get<int>();
        if (version != kEpisodeSchemaVersion) {
            throw Error(ErrorCode::InvalidArgument,
                        "unsupported schema_version " + std::to_string(version));
        }
        ep.id = require(record, "id").get<std::string>();
        ep.action_space = require(record, "action_space").get<std::string>();
        const ActionSpace space = action_space_by_name(ep.action_space);
        ep.instruction = record.value("instruction", std::string{});

        const json& start = require(record, "start");
        ep.start = Pose{require(start, "x").get<double>(), require(start, "y").get<double>(),
                        require(start, "z").get<double>(), require(start, "yaw").get<double>()};
        if (!std::isfinite(ep.start.x) || !std::isfinite(ep.start.y) || !std::isfinite(ep.start.z) ||
            !(ep.start.yaw >= 0 && ep.start.yaw < 360)) {
            throw Error(ErrorCode::InvalidArgument, "start pose must be finite with yaw in [0, 360)");
        }

        for (const auto& name : require(record, "gt_actions")) {
            const ActionKind kind = action_from_name(name.get<std::string>());
            if (!space.contains(kind)) {
                throw Error(ErrorCode::InvalidArgument, std::string(action_name(kind)) +
                                                            " is not in the " + space.name +
                                                            " vocabulary");
            }
            ep.gt_actions.push_back(kind);
        }
        ep.goal = vec_from_json(require(record, "goal"), "goal");
        if (const auto it = record.find("obstacles"); it != record.end()) {
            for (const auto& box : *it) {
                ObstacleBox b{vec_from_json(require(box, "min"), "obstacle min"),
                              vec_from_json(require(box, "max"), "obstacle max")};
                if (b.min.x > b.max.x || b.min.y > b.max.y || b.min.z > b.max.z) {
                    throw Error(ErrorCode::InvalidArgument, "obstacle min exceeds max");
                }
                ep.obstacles.push_back(b);
            }
        }
        if (const auto it = record.find("frames"); it != record.end()) {
            ep.frames = it->get<std::vector<std::string>>();
        }
        if (const auto it = record.find("shortest_length"); it != record.end()) {
            ep.shortest_length = it->get<double>();
            if (!(*ep.shortest_length >= 0)) {
                throw Error(ErrorCode::InvalidArgument, "shortest_length must be >= 0");
            }
        }
        for (const auto& [key, value] : record.items()) {
            if (!known_episode_keys().contains(key)) ep.extra[key] = value;
        }
        return ep;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, e.what());
    }
}

LoadResult load_episodes(std::istream& in) {
    LoadResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            result.episodes.push_back(episode_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            result.diagnostics.push_back({line_no, e.what()});
        } catch (const Error& e) {
            result.diagnostics.push_back({line_no, e.what()});
        }
    }
    return result;
}

LoadResult load_episodes(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return load_episodes(in);
}

void save_episodes(std::span<const Episode> episodes, std::ostream& out) {
    for (const auto& ep : episodes) out << episode_to_json(ep).dump() << '\n';
}

void save_episodes(std::span<const Episode> episodes, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    save_episodes(episodes, out);
    if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

LoadResult import_aerialvln(const std::filesystem::path& path, const std::string& action_space) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, path.string() + ": " + e.what());
    }
    const json& list = doc.is_object() && doc.contains("episodes") ? doc["episodes"] : doc;
    if (!list.is_array()) {
        throw Error(ErrorCode::InvalidArgument, "expected an \"episodes\" array");
    }

    static constexpr std::array<ActionKind, 8> kIdToAction = {
        ActionKind::Stop,    ActionKind::MoveForward, ActionKind::TurnLeft, ActionKind::TurnRight,
        ActionKind::Ascend,  ActionKind::Descend,     ActionKind::MoveLeft, ActionKind::MoveRight};
    static const std::set<std::string> kMapped = {"episode_id", "instruction", "start_position",
                                                  "start_rotation", "goals", "actions"};

    const ActionSpace space = action_space_by_name(action_space);
    LoadResult result;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const json& raw = list[i];
        try {
            Episode ep;
            ep.action_space = space.name;
            const json& id = require(raw, "episode_id");
            ep.id = id.is_string() ? id.get<std::string>() : id.dump();
            if (const auto it = raw.find("instruction"); it != raw.end()) {
                ep.instruction = it->is_object() ? it->value("instruction_text", std::string{})
                                                 : it->get<std::string>();
            }
            const Vec3 p = vec_from_json(require(raw, "start_position"), "start_position");
            double yaw = 0;
            if (const auto it = raw.find("start_rotation"); it != raw.end() && it->size() == 4) {
                const double qx = (*it)[0].get<double>();
                const double qy = (*it)[1].get<double>();
                const double qz = (*it)[2].get<double>();
                const double qw = (*it)[3].get<double>();
                yaw = std::atan2(2 * (qw * qz + qx * qy), 1 - 2 * (qy * qy + qz * qz)) * 180.0 /
                      std::numbers::pi;
            }
            ep.start = Pose{p.x, p.y, p.z, normalize_yaw(yaw)};
            const json& goals = require(raw, "goals");
            if (!goals.is_array() || goals.empty()) {
                throw Error(ErrorCode::InvalidArgument, "goals must be a non-empty array");
            }
            ep.goal = vec_from_json(require(goals[0], "position"), "goal position");
            for (const auto& a : require(raw, "actions")) {
                const int code = a.get<int>();
                if (code < 0 || code >= static_cast<int>(kIdToAction.size()) ||
                    !space.contains(kIdToAction[static_cast<std::size_t>(code)])) {
                    throw Error(ErrorCode::InvalidArgument,
                                "action id " + std::to_string(code) + " is not in " + space.name);
                }
                ep.gt_actions.push_back(kIdToAction[static_cast<std::size_t>(code)]);
            }
            for (const auto& [key, value] : raw.items()) {
                if (!kMapped.contains(key)) ep.extra[key] = value;
            }
            result.episodes.push_back(std::move(ep));
        } catch (const json::exception& e) {
            result.diagnostics.push_back({0, "episode " + std::to_string(i) + ": " + e.what()});
        } catch (const Error& e) {
            result.diagnostics.push_back({0, "episode " + std::to_string(i) + ": " + e.what()});
        }
    }
    return result;
}

std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view episode_id) noexcept {
    // FNV-1a over the id, then mixed with the global seed
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : episode_id) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return splitmix64(splitmix64(global_seed) ^ h);
}

double uniform_unit(std::mt19937_64& rng) noexcept {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) noexcept {
    return static_cast<std::size_t>(rng() % n);
}

ActionSampler::ActionSampler(const std::map<ActionKind, double>& weights) {
    double total = 0;
    for (const auto& [kind, w] : weights) {
        if (!(w >= 0) || !std::isfinite(w)) {
            throw Error(ErrorCode::DegenerateDistribution, "sampler weights must be finite and >= 0");
        }
        if (w == 0) continue;
        total += w;
        kinds_.push_back(kind);
        cumulative_.push_back(total);
    }
    if (kinds_.empty()) throw Error(ErrorCode::DegenerateDistribution, "sampler has no mass");
    for (double& c : cumulative_) c /= total;
    cumulative_.back() = 1.0;
}

ActionKind ActionSampler::sample(std::mt19937_64& rng) const noexcept {
    const double u = uniform_unit(rng);
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                           kinds_.size() - 1);
    return kinds_[idx];
}

std::string AgentPolicy::name() const {
    switch (kind) {
        case Kind::RandomSampler: return "random";
        case Kind::ActionSampler: return "action_sampler";
        case Kind::OracleGreedy: return "oracle";
        case Kind::Replay: return "replay";
    }
    return "unknown";
}

std::map<ActionKind, double> action_frequencies(std::span<const Episode> episodes) {
    std::map<ActionKind, double> counts;
    double total = 0;
    for (const auto& ep : episodes) {
        for (ActionKind kind : ep.gt_actions) {
            counts[kind] += 1;
            total += 1;
        }
    }
    for (auto& [kind, c] : counts) c /= total;
    return counts;
}

AgentRun run_agent(const Episode& episode, const AgentPolicy& policy, std::size_t max_steps,
                   double success_radius) {
    if (max_steps == 0) throw Error(ErrorCode::InvalidArgument, "max_steps must be >= 1");
    const ActionSpace space = action_space_by_name(episode.action_space);
    std::mt19937_64 rng(derive_seed(policy.seed, episode.id));
    std::optional<ActionSampler> sampler;
    if (policy.kind == AgentPolicy::Kind::ActionSampler) {
        for (const auto& [kind, w] : policy.distribution) {
            if (w > 0 && !space.contains(kind)) {
                throw Error(ErrorCode::UnsupportedAction, std::string(action_name(kind)) +
                                                              " is not in the " + space.name +
                                                              " vocabulary");
            }
        }
        sampler.emplace(policy.distribution);
    }

    AgentRun run;
    Pose pose = episode.start;
    for (std::size_t step = 0; step < max_steps; ++step) {
        ActionKind action = ActionKind::Stop;
        switch (policy.kind) {
            case AgentPolicy::Kind::RandomSampler:
                action = space.vocabulary[uniform_index(rng, space.vocabulary.size())];
                break;
            case AgentPolicy::Kind::ActionSampler: action = sampler->sample(rng); break;
            case AgentPolicy::Kind::Replay:
                action = step < episode.gt_actions.size() ? episode.gt_actions[step] : ActionKind::Stop;
                break;
            case AgentPolicy::Kind::OracleGreedy: {
                double best = distance(pose.position(), episode.goal);
                if (best <= success_radius) break;
                // turns leave the distance unchanged, so a turn wins whenever
                // every translation moves away from the goal
                best = std::numeric_limits<double>::infinity();
                for (ActionKind candidate : space.vocabulary) {
                    if (candidate == ActionKind::Stop) continue;
                    const double d = distance(apply_action(pose, candidate, space).position(), episode.goal);
                    if (d < best) {
                        best = d;
                        action = candidate;
                    }
                }
                break;
            }
        }
        run.actions.push_back(action);
        if (action == ActionKind::Stop) break;
        pose = apply_action(pose, action, space);
    }
    run.rollout = rollout(episode.start, run.actions, space, episode.obstacles);
    return run;
}

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn) {
    workers = std::max<std::size_t>(1, std::min(workers, n));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
}

EvalReport evaluate_split(std::span<const Episode> episodes, const AgentPolicy& policy,
                          const EvalOptions& options) {
    if (episodes.empty()) throw Error(ErrorCode::EmptyEvaluation, "no episodes to evaluate");

    std::vector<std::optional<EpisodeResult>> slots(episodes.size());
    std::vector<std::string> failures(episodes.size());
    parallel_for(episodes.size(), options.workers, [&](std::size_t i) {
        const Episode& ep = episodes[i];
        try {
            const ActionSpace space = action_space_by_name(ep.action_space);
            const AgentRun run = run_agent(ep, policy, options.max_steps, options.success_radius);
            const Rollout reference = rollout(ep.start, ep.gt_actions, space, ep.obstacles);

            EvalInput input;
            input.predicted = run.rollout.trajectory;
            input.reference = reference.trajectory;
            input.goal = ep.goal;
            input.shortest_length = ep.shortest_length.value_or(distance(ep.start.position(), ep.goal));
            input.collided = run.rollout.collided;
            input.success_radius = options.success_radius;
            input.drift_threshold = options.drift_threshold;
            input.action_count = ep.gt_actions.size();

            EpisodeResult result;
            result.id = ep.id;
            result.score = score_episode(input);
            result.predicted_actions = run.actions.size();
            result.reference_actions = ep.gt_actions.size();
            result.shortest_length = input.shortest_length;
            result.shortest_from_dataset = ep.shortest_length.has_value();
            slots[i] = std::move(result);
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });

    EvalReport report;
    std::vector<EpisodeScore> scores;
    for (std::size_t i = 0; i < episodes.size(); ++i) {
        if (slots[i]) {
            scores.push_back(slots[i]->score);
            report.results.push_back(std::move(*slots[i]));
        } else {
            report.errors.push_back({i + 1, episodes[i].id + ": " + failures[i]});
        }
    }
    if (!scores.empty()) report.summary = aggregate(scores);
    return report;
}

PreprocessStats preprocess_stats(std::span<const Episode> episodes, std::size_t merge_cap) {
    PreprocessStats stats;
    stats.episodes = episodes.size();
    for (const auto& ep : episodes) {
        for (ActionKind kind : ep.gt_actions) ++stats.before_histogram[std::string(action_name(kind))];
        const auto segments = merge_actions(ep.gt_actions, merge_cap);
        for (const auto& seg : segments) {
            ++stats.after_histogram[seg.token()];
            stats.max_run_after = std::max(stats.max_run_after, seg.count);
        }
        stats.before_lengths.push_back(ep.gt_actions.size());
        stats.after_lengths.push_back(segments.size());
    }
    stats.before = length_stats(stats.before_lengths);
    stats.after = length_stats(stats.after_lengths);
    return stats;
}

PreprocessedEpisode preprocess_episode(const Episode& episode, std::size_t merge_cap,
                                       const HistoryPolicy& history) {
    PreprocessedEpisode out;
    out.id = episode.id;
    out.segments = merge_actions(episode.gt_actions, merge_cap);
    out.keyframes = select_keyframes(out.segments, episode.gt_actions.size() + 1);
    out.history = sample_history(out.keyframes, history);
    return out;
}

std::vector<Episode> generate_synthetic_split(std::size_t count, const ActionSpace& space,
                                              std::uint64_t seed, const SyntheticOptions& options) {
    if (count == 0) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
    if (options.min_actions == 0 || options.min_actions > options.max_actions) {
        throw Error(ErrorCode::InvalidArgument, "need 1 <= min_actions <= max_actions");
    }
    space.validate();

    // Mostly forward flight, broken up by short turns and altitude changes.
    std::map<ActionKind, double> mix = {
        {ActionKind::MoveForward, 0.6}, {ActionKind::TurnLeft, 0.1}, {ActionKind::TurnRight, 0.1},
        {ActionKind::Ascend, 0.05},     {ActionKind::Descend, 0.05}, {ActionKind::MoveLeft, 0.05},
        {ActionKind::MoveRight, 0.05},
    };
    std::erase_if(mix, [&](const auto& kv) { return !space.contains(kv.first); });
    const ActionSampler run_kind(mix);

    std::mt19937_64 rng(splitmix64(seed));
    const auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * uniform_unit(rng); };
    const std::size_t headings = static_cast<std::size_t>(std::round(360.0 / space.turn_step));

    std::vector<Episode> episodes;
    episodes.reserve(count);
    for (std::size_t e = 0; e < count; ++e) {
        Episode ep;
        ep.id = space.name + "-" + std::to_string(seed) + "-" + std::to_string(e);
        ep.action_space = space.name;
        ep.instruction = "synthetic episode " + std::to_string(e);

        constexpr int kMaxAttempts = 10000;
        int attempt = 0;
        for (;; ++attempt) {
            if (attempt == kMaxAttempts) {
                throw Error(ErrorCode::InvalidArgument,
                            "could not reach min_goal_distance with the given action lengths");
            }
            ep.start = Pose{uniform(-options.start_extent, options.start_extent),
                            uniform(-options.start_extent, options.start_extent),
                            uniform(options.min_altitude, options.max_altitude),
                            normalize_yaw(static_cast<double>(uniform_index(rng, headings)) * space.turn_step)};
            const std::size_t length =
                options.min_actions + uniform_index(rng, options.max_actions - options.min_actions + 1);
            ep.gt_actions.clear();
            while (ep.gt_actions.size() < length) {
                const ActionKind kind = run_kind.sample(rng);
                const std::size_t run = 1 + uniform_index(rng, is_turn(kind) ? 3 : 6);
                for (std::size_t r = 0; r < run && ep.gt_actions.size() < length; ++r) {
                    ep.gt_actions.push_back(kind);
                }
            }
            ep.gt_actions.push_back(ActionKind::Stop);
            const Rollout path = rollout(ep.start, ep.gt_actions, space);
            ep.goal = path.trajectory.back().position();
            if (distance(ep.start.position(), ep.goal) >= options.min_goal_distance) break;
        }

        if (options.obstacles > 0) {
            const Rollout path = rollout(ep.start, ep.gt_actions, space);
            Vec3 lo = ep.start.position();
            Vec3 hi = lo;
            for (const auto& p : path.trajectory) {
                lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
                hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
            }
            constexpr double kMargin = 20.0;
            for (std::size_t k = 0; k < options.obstacles; ++k) {
                for (int tries = 0; tries < 200; ++tries) {
                    const Vec3 c{uniform(lo.x - kMargin, hi.x + kMargin),
                                 uniform(lo.y - kMargin, hi.y + kMargin),
                                 uniform(lo.z - kMargin, hi.z + kMargin)};
                    const Vec3 half{uniform(1, 8), uniform(1, 8), uniform(1, 8)};
                    const ObstacleBox box{{c.x - half.x, c.y - half.y, c.z - half.z},
                                          {c.x + half.x, c.y + half.y, c.z + half.z}};
                    const bool hits = std::any_of(path.trajectory.begin(), path.trajectory.end(),
                                                  [&](const Pose& p) { return box.contains(p.position()); });
                    if (!hits) {
                        ep.obstacles.push_back(box);
                        break;
                    }
                }
            }
        }
        episodes.push_back(std::move(ep));
    }
    return episodes;
}

}  // namespace aeronav
