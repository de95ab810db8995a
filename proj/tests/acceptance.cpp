// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aeronav/actionlang.hpp"
#include "aeronav/cli.hpp"
#include "aeronav/harness.hpp"
#include "aeronav/metrics.hpp"
#include "aeronav/preprocess.hpp"
#include "aeronav/supervision.hpp"
#include "aeronav/tokens.hpp"
#include "oracles.hpp"

using namespace aeronav;

namespace {

struct Outcome {
    bool pass{true};
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && pass) {
            pass = false;
            detail = what;
        }
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

Outcome weight_law() {
    Outcome o;
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(1e-3, 1.0);
    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t k = 2 + rng() % 9;
        std::map<std::string, double> counts;
        for (std::size_t i = 0; i < k; ++i) counts["a" + std::to_string(i)] = u(rng);
        const WeightTable w = compute_weights(distribution_from_counts(counts));
        double mean_sq = 0;
        for (const auto& [t, v] : w) mean_sq += v * v;
        mean_sq /= static_cast<double>(k);
        worst = std::max(worst, std::abs(mean_sq - 1.0));

        ActionDistribution uniform;
        for (std::size_t i = 0; i < k; ++i) uniform["a" + std::to_string(i)] = 1.0 / static_cast<double>(k);
        for (const auto& [t, v] : compute_weights(uniform)) {
            o.require(std::abs(v - 1.0) <= 1e-12, "uniform weight " + fmt(v));
        }
    }
    o.require(worst <= 1e-9, "mean w^2 deviates by " + fmt(worst));
    const WeightTable two = compute_weights({{"mf", 0.8}, {"tl", 0.2}});
    o.require(std::abs(two.at("mf") - 0.63246) <= 1e-5 && std::abs(two.at("tl") - 1.26491) <= 1e-5,
              "(0.8, 0.2) -> (" + fmt(two.at("mf")) + ", " + fmt(two.at("tl")) + ")");
    if (o.pass) {
        o.detail = "1000 distributions, max |mean w^2 - 1| = " + fmt(worst) + "; (0.8,0.2) -> (" +
                   fmt(two.at("mf")) + ", " + fmt(two.at("tl")) + ")";
    }
    return o;
}

TrainSample constant_sample(Task task, std::string token, double q, std::size_t len) {
    TrainSample s{task, std::move(token), std::vector<std::size_t>(len, 0), {}};
    s.predicted_rows.assign(len, std::vector<double>{q, 1.0 - q});
    return s;
}

Outcome loss_law() {
    Outcome o;
    const WeightTable w = compute_weights({{"mf", 0.8}, {"tl", 0.2}});
    // navigation sample with CE 2.0 on the rare token, trajectory sample with CE 1.0
    const std::vector<TrainSample> worked{constant_sample(Task::Navigation, "tl", std::exp(-2.0), 3),
                                          constant_sample(Task::TrajectoryReasoning, "", std::exp(-1.0), 2)};
    const double example = batch_loss(worked, w);
    o.require(std::abs(example - 1.51491) <= 1e-5, "worked example = " + fmt(example));

    TrainSample perfect{Task::Navigation, "mf", {2, 0, 1}, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}};
    const std::vector<TrainSample> perfect_batch{perfect, perfect};
    o.require(batch_loss(perfect_batch, w) == 0.0, "one-hot batch is not 0");

    double worst = 0;
    for (std::size_t vocab = 2; vocab <= 64; vocab *= 2) {
        TrainSample s{Task::SpatialPerception, "", {0, vocab / 2, vocab - 1}, {}};
        s.predicted_rows.assign(3, std::vector<double>(vocab, 1.0 / static_cast<double>(vocab)));
        const std::vector<TrainSample> batch{s, s};
        worst = std::max(worst, std::abs(batch_loss(batch, {}) - std::log(static_cast<double>(vocab))));
    }
    o.require(worst <= 1e-9, "uniform batch off ln V by " + fmt(worst));
    if (o.pass) o.detail = "worked example = " + fmt(example) + ", uniform max err " + fmt(worst);
    return o;
}

Outcome merge_round_trip() {
    Outcome o;
    std::mt19937_64 rng(303);
    const ActionSpace space = aerialvln_space();
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t cap = 1 + rng() % 6;
        std::vector<ActionKind> actions(rng() % 201);
        // long runs are the interesting case, so repeat the previous action often
        for (std::size_t i = 0; i < actions.size(); ++i) {
            actions[i] = (i > 0 && rng() % 4 != 0) ? actions[i - 1] : space.vocabulary[rng() % space.vocabulary.size()];
        }
        const auto merged = merge_actions(actions, cap);
        o.require(expand_segments(merged) == actions, "round trip failed (cap " + std::to_string(cap) + ")");
        const auto merged3 = merge_actions(actions, 3);
        for (const auto& seg : merged3) o.require(seg.count <= 3, "cap-3 segment of " + std::to_string(seg.count));
        o.require(expand_segments(merged3) == actions, "cap-3 round trip failed");
    }
    const std::vector<ActionKind> tl3(3, ActionKind::TurnLeft);
    const auto seg = merge_actions(tl3, 3);
    o.require(seg.size() == 1 && seg[0].kind == ActionKind::TurnLeft && seg[0].count == 3 &&
                  command_from_segment(seg[0], space) == ActionCommand{ActionKind::TurnLeft, 45},
              "[TL x3] did not become one 45 degree segment");
    if (o.pass) o.detail = "10000 sequences round trip; [TL x3] -> turn left 45 degrees";
    return o;
}

Outcome keyframe_properties() {
    Outcome o;
    std::mt19937_64 rng(404);
    const ActionSpace space = aerialvln_space();
    for (int trial = 0; trial < 10000; ++trial) {
        std::vector<ActionKind> actions(rng() % 201);
        for (std::size_t i = 0; i < actions.size(); ++i) {
            actions[i] = (i > 0 && rng() % 3 != 0) ? actions[i - 1] : space.vocabulary[rng() % space.vocabulary.size()];
        }
        const auto segs = merge_actions(actions, 1 + rng() % 6);
        const auto keys = select_keyframes(segs, actions.size() + 1);
        o.require(!keys.empty() && keys.front() == 0 && keys.back() == actions.size(), "missing first/final frame");
        o.require(keys.size() <= segs.size() + 1, "too many keyframes");
    }
    if (o.pass) o.detail = "10000 fuzzed trajectories";
    return o;
}

Outcome stc_laws() {
    Outcome o;
    std::mt19937_64 rng(505);
    for (std::size_t h = 1; h <= 12; ++h) {
        for (std::size_t w = 1; w <= 12; ++w) {
            for (std::size_t g = 1; g <= 4; ++g) {
                const std::size_t ch = 1 + (h + w + g) % 3;
                const auto comp = stc_compress(oracle::random_grid(rng, h, w, ch), g);
                const std::size_t rows = ((h + g - 1) / g) * ((w + g - 1) / g);
                o.require(comp.tokens.rows == rows && comp.tokens.cols == ch * g * g,
                          "shape law broken at H=" + std::to_string(h) + " W=" + std::to_string(w) +
                              " g=" + std::to_string(g));
            }
        }
    }
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t h = 1 + rng() % 12;
        const std::size_t w = 1 + rng() % 12;
        const std::size_t g = 1 + rng() % 4;
        const TokenGrid grid = oracle::random_grid(rng, h, w, 1 + rng() % 8);
        const auto comp = stc_compress(grid, g);
        o.require(comp.tokens == oracle::scatter_stc(grid, g), "layout differs from the scatter oracle");
        o.require(stc_decompress(comp, h, w) == grid, "round trip is not bit-exact");
        o.require(stc_compress(grid, 1).tokens == grid.tokens, "g = 1 is not the identity");
    }
    if (o.pass) o.detail = "576 shapes, 1000 bit-exact round trips";
    return o;
}

Outcome dtw_oracle() {
    Outcome o;
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 500; ++trial) {
        const auto p = oracle::random_path(rng, 1 + rng() % 6);
        const auto r = oracle::random_path(rng, 1 + rng() % 6);
        const double got = dtw_distance(p, r);
        const double want = oracle::brute_force_dtw(p, r);
        o.require(got == want, "dtw " + fmt(got) + " vs brute force " + fmt(want));
    }
    if (o.pass) o.detail = "500 pairs exact";
    return o;
}

Outcome metric_orderings() {
    Outcome o;
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> u(-80, 80);
    for (int trial = 0; trial < 1000; ++trial) {
        EvalInput in{oracle::random_path(rng, 1 + rng() % 20, 80), oracle::random_path(rng, 1 + rng() % 20, 80),
                     Vec3{u(rng), u(rng), u(rng)}, std::abs(u(rng)), rng() % 3 == 0};
        if (rng() % 4 == 0) in.goal = in.predicted.back().position();  // force some successes
        const EpisodeScore s = score_episode(in);
        const bool unit = s.ndtw >= 0 && s.ndtw <= 1 && s.sdtw >= 0 && s.sdtw <= 1 && s.spl >= 0 && s.spl <= 1;
        o.require(s.sr <= s.osr && s.sdtw <= s.ndtw && s.sdtw <= s.sr && s.spl <= s.sr && unit,
                  "ordering law violated on trial " + std::to_string(trial));
    }

    SyntheticOptions opts;
    opts.obstacles = 2;
    std::vector<Episode> episodes = generate_synthetic_split(100, aerialvln_space(), 708, opts);
    const auto openfly = generate_synthetic_split(100, openfly_space(), 709, opts);
    episodes.insert(episodes.end(), openfly.begin(), openfly.end());
    const EvalReport self = evaluate_split(episodes, AgentPolicy::replay(), EvalOptions{});
    o.require(self.errors.empty() && self.summary.has_value(), "self-evaluation produced errors");
    if (self.summary) {
        o.require(self.summary->sr == 100.0, "self SR = " + fmt(self.summary->sr));
        o.require(std::abs(self.summary->ndtw - 1.0) <= 1e-9, "self nDTW = " + fmt(self.summary->ndtw));
        o.require(std::abs(self.summary->ne) <= 1e-9, "self NE = " + fmt(self.summary->ne));
    }
    if (o.pass) o.detail = "1000 fuzzed episodes; self-evaluation SR 100, nDTW 1, NE 0 on 200 episodes";
    return o;
}

Outcome parser_round_trip() {
    Outcome o;
    std::size_t total = 0;
    std::size_t parsed = 0;
    for (const ActionSpace& space : {aerialvln_space(), openfly_space()}) {
        for (ActionKind kind : space.vocabulary) {
            const std::size_t max_k = kind == ActionKind::Stop ? 1 : kDefaultMergeCap;
            for (std::size_t k = 1; k <= max_k; ++k) {
                const ActionCommand cmd{kind, kind == ActionKind::Stop ? 0.0 : static_cast<double>(k) * space.step_for(kind)};
                ++total;
                try {
                    if (parse_command(render_command(cmd, space), space) == cmd) ++parsed;
                } catch (const std::exception&) {
                }
            }
        }
    }
    o.require(parsed == total, std::to_string(parsed) + "/" + std::to_string(total) + " parsed");

    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> coord(-500, 500);
    std::uniform_real_distribution<double> heading(0, 360);
    double worst = 0;
    for (const ActionSpace& space : {aerialvln_space(), openfly_space()}) {
        for (int trial = 0; trial < 5000; ++trial) {
            const ActionKind kind = space.vocabulary[rng() % space.vocabulary.size()];
            const double k = static_cast<double>(1 + rng() % kDefaultMergeCap);
            const ActionCommand cmd{kind, kind == ActionKind::Stop ? 0.0 : k * space.step_for(kind)};
            const Pose start{coord(rng), coord(rng), coord(rng), normalize_yaw(heading(rng))};
            Pose stepped = start;
            for (ActionKind a : decompose(cmd, space)) stepped = apply_action(stepped, a, space);
            const Pose closed = apply_command_closed_form(start, cmd, space);
            const double dyaw = std::abs(closed.yaw - stepped.yaw);
            worst = std::max({worst, std::abs(closed.x - stepped.x), std::abs(closed.y - stepped.y),
                              std::abs(closed.z - stepped.z), std::min(dyaw, 360.0 - dyaw)});
        }
    }
    o.require(worst <= 1e-9, "closed-form deviation " + fmt(worst));
    if (o.pass) {
        o.detail = std::to_string(parsed) + "/" + std::to_string(total) + " commands; closed-form max err " + fmt(worst);
    }
    return o;
}

Outcome baselines() {
    Outcome o;
    const ActionSpace space = aerialvln_space();
    SyntheticOptions far;
    far.min_actions = 60;
    far.max_actions = 120;
    far.min_goal_distance = 150;
    const auto hard = generate_synthetic_split(200, space, 909, far);
    const EvalReport random = evaluate_split(hard, AgentPolicy::random(909), EvalOptions{});
    const double random_sr = random.summary ? random.summary->sr : 100.0;
    o.require(random.errors.empty() && random_sr <= 1.0, "random SR = " + fmt(random_sr));

    const auto open = generate_synthetic_split(200, space, 910);
    const EvalReport oracle_run = evaluate_split(open, AgentPolicy::oracle(), EvalOptions{});
    const double oracle_sr = oracle_run.summary ? oracle_run.summary->sr : 0.0;
    o.require(oracle_sr == 100.0, "oracle SR = " + fmt(oracle_sr));

    const auto target = action_frequencies(open);
    const ActionSampler sampler(target);
    std::mt19937_64 rng(derive_seed(911, "sampler"));
    std::map<ActionKind, std::size_t> seen;
    constexpr std::size_t kDraws = 100000;
    for (std::size_t i = 0; i < kDraws; ++i) ++seen[sampler.sample(rng)];
    double worst = 0;
    for (const auto& [kind, p] : target) {
        worst = std::max(worst, std::abs(static_cast<double>(seen[kind]) / kDraws - p));
    }
    o.require(worst <= 0.01, "sampler frequency off by " + fmt(worst));
    if (o.pass) {
        o.detail = "random SR " + fmt(random_sr) + "%, oracle SR " + fmt(oracle_sr) + "%, sampler max err " + fmt(worst);
    }
    return o;
}

std::vector<Pose> along_x(double from, double to, double step) {
    std::vector<Pose> out;
    const double dir = to >= from ? 1.0 : -1.0;
    for (double x = from; dir * (to - x) >= -1e-12; x += dir * step) out.push_back({x, 0, 0, 0});
    return out;
}

Outcome failure_taxonomy() {
    Outcome o;
    const auto reference = along_x(0, 100, 5);
    const Vec3 goal{100, 0, 0};
    struct Fixture {
        const char* name;
        EvalInput input;
        FailureKind expected;
    };
    const std::vector<Fixture> fixtures{
        // reaches the goal but keeps flying
        {"stop", {along_x(0, 160, 5), reference, goal, 100, false}, FailureKind::StopFailure},
        {"collision", {along_x(0, 40, 5), reference, goal, 100, true}, FailureKind::Collision},
        // heads the wrong way
        {"drift", {along_x(0, -100, 5), reference, goal, 100, false}, FailureKind::LongHorizonDrift},
        // follows the route but stops 30 short
        {"perception", {along_x(0, 70, 5), reference, goal, 100, false}, FailureKind::PerceptionRelated},
    };
    for (const auto& f : fixtures) {
        const EpisodeScore s = score_episode(f.input);
        o.require(s.sr == 0 && s.failure == f.expected, std::string(f.name) + " fixture mislabelled");
    }

    // every failed episode of a real run carries exactly one label
    SyntheticOptions opts;
    opts.obstacles = 3;
    const auto episodes = generate_synthetic_split(100, aerialvln_space(), 1010, opts);
    const EvalReport report = evaluate_split(episodes, AgentPolicy::random(1010), EvalOptions{});
    std::size_t labelled = 0;
    for (const auto& r : report.results) {
        o.require(r.score.failure.has_value() == (r.score.sr == 0), "label presence mismatch for " + r.id);
        labelled += r.score.failure.has_value();
    }
    std::size_t tallied = 0;
    if (report.summary) {
        for (std::size_t c : report.summary->failures) tallied += c;
    }
    o.require(tallied == labelled, "failure table does not sum to the failed episodes");
    if (o.pass) o.detail = "4/4 fixtures; " + std::to_string(labelled) + " failed episodes labelled once";
    return o;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
    Outcome o;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "aeronav_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string split = (dir / "split.jsonl").string();
    std::ostringstream sink;
    o.require(cli::run({"gen-synthetic", "--count", "60", "--seed", "11", "--obstacles", "2", "--out", split},
                       sink, sink) == 0,
              "gen-synthetic failed");
    for (const char* policy : {"random", "action"}) {
        std::vector<std::string> reports;
        for (const char* workers : {"1", "1", "4"}) {
            const std::string out = (dir / ("report_" + std::to_string(reports.size()) + ".jsonl")).string();
            const int status = cli::run({"evaluate", "--episodes", split, "--policy", policy, "--seed", "7",
                                         "--workers", workers, "--out", out},
                                        sink, sink);
            o.require(status == 0, std::string("evaluate --policy ") + policy + " failed");
            reports.push_back(slurp(out));
        }
        o.require(!reports[0].empty() && reports[0] == reports[1] && reports[0] == reports[2],
                  std::string(policy) + " reports differ");
    }
    fs::remove_all(dir);
    if (o.pass) o.detail = "random and action policies, workers 1/1/4 byte-identical";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"weight normalization", weight_law},
        {"weighted batch loss", loss_law},
        {"merge/expand round trip", merge_round_trip},
        {"keyframe properties", keyframe_properties},
        {"spatial token compression", stc_laws},
        {"DTW oracle equivalence", dtw_oracle},
        {"metric orderings and self-evaluation", metric_orderings},
        {"action text round trip", parser_round_trip},
        {"baseline agents", baselines},
        {"failure taxonomy", failure_taxonomy},
        {"deterministic evaluation", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failures += outcome.pass ? 0 : 1;
        std::printf("%s %2zu %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    outcome.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
