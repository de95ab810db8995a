#include "aeronav/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "aeronav/actionlang.hpp"
#include "aeronav/error.hpp"
#include "aeronav/harness.hpp"
#include "aeronav/report.hpp"
#include "aeronav/tokens.hpp"

namespace aeronav::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

/// Writes to `path`, or to `fallback` when the path is empty.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::trunc | std::ios::binary);
            if (!file_) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
            stream_ = &file_;
        }
    }
    std::ostream& stream() { return *stream_; }
    void finish(const std::string& path) {
        stream_->flush();
        if (!*stream_) throw Error(ErrorCode::Io, "failed writing " + (path.empty() ? "output" : path));
    }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

void guard_inputs(const RunConfig& cfg) {
    if (cfg.output.empty()) return;
    for (const auto& [name, path] : cfg.inputs) {
        std::error_code ec;
        if (!path.empty() && fs::exists(path, ec) && fs::equivalent(path, cfg.output, ec)) {
            throw Error(ErrorCode::InvalidArgument, "--out would overwrite input " + path);
        }
    }
}

std::vector<Episode> load_checked(const std::string& path, std::ostream& err) {
    LoadResult loaded = load_episodes(fs::path(path));
    for (const auto& d : loaded.diagnostics) {
        err << path << ":" << d.line << ": skipped malformed record: " << d.message << '\n';
    }
    return std::move(loaded.episodes);
}

AgentPolicy make_policy(const RunConfig& cfg, std::span<const Episode> episodes) {
    if (cfg.policy == "random") return AgentPolicy::random(cfg.seed);
    if (cfg.policy == "action") {
        std::map<ActionKind, double> freq = action_frequencies(episodes);
        if (freq.empty()) throw Error(ErrorCode::InvalidArgument, "no actions to build a sampler from");
        return AgentPolicy::sampler(std::move(freq), cfg.seed);
    }
    if (cfg.policy == "oracle") return AgentPolicy::oracle();
    if (cfg.policy == "replay") return AgentPolicy::replay();
    throw Error(ErrorCode::InvalidArgument, "unknown policy '" + cfg.policy + "'");
}

json segment_to_json(const MergedSegment& seg) {
    return {{"kind", std::string(action_name(seg.kind))},
            {"count", seg.count},
            {"start_frame", seg.start_frame},
            {"end_frame", seg.end_frame},
            {"token", seg.token()}};
}

int cmd_gen_synthetic(RunConfig& cfg, std::size_t count, const SyntheticOptions& opts, std::ostream& out) {
    const ActionSpace space = action_space_by_name(cfg.action_space);
    const auto episodes = generate_synthetic_split(count, space, cfg.seed, opts);
    Sink sink(cfg.output, out);
    save_episodes(episodes, sink.stream());
    sink.finish(cfg.output);
    return 0;
}

int cmd_preprocess(RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto episodes = load_checked(cfg.inputs.at("episodes"), err);
    const HistoryPolicy history = history_policy_from_name(cfg.history_policy, cfg.history_size);
    std::vector<std::string> lines(episodes.size());
    parallel_for(episodes.size(), cfg.workers, [&](std::size_t i) {
        const Episode& ep = episodes[i];
        try {
            const PreprocessedEpisode pre = preprocess_episode(ep, cfg.merge_cap, history);
            json segments = json::array();
            for (const auto& seg : pre.segments) segments.push_back(segment_to_json(seg));
            json record = {{"id", pre.id},
                           {"segments", segments},
                           {"keyframes", pre.keyframes},
                           {"history", pre.history}};
            if (ep.frames && ep.frames->size() == ep.gt_actions.size() + 1) {
                json ids = json::array();
                for (std::size_t k : pre.keyframes) ids.push_back((*ep.frames)[k]);
                record["keyframe_ids"] = std::move(ids);
            }
            lines[i] = record.dump();
        } catch (const Error& e) {
            lines[i] = json{{"id", ep.id}, {"error", e.what()}}.dump();
        }
    });
    Sink sink(cfg.output, out);
    for (const auto& line : lines) sink.stream() << line << '\n';
    sink.finish(cfg.output);
    return 0;
}

int cmd_stats(RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto episodes = load_checked(cfg.inputs.at("episodes"), err);
    const PreprocessStats stats = preprocess_stats(episodes, cfg.merge_cap);
    const auto lengths = [](const LengthStats& s) {
        return json{{"min", s.min}, {"max", s.max}, {"mean", s.mean}};
    };
    json record = {{"type", "preprocess_stats"},
                   {"config", cfg.to_json()},
                   {"episodes", stats.episodes},
                   {"before", {{"histogram", stats.before_histogram}, {"length", lengths(stats.before)}}},
                   {"after",
                    {{"histogram", stats.after_histogram},
                     {"length", lengths(stats.after)},
                     {"max_run", stats.max_run_after}}},
                   {"before_lengths", stats.before_lengths},
                   {"after_lengths", stats.after_lengths}};
    Sink sink(cfg.output, out);
    sink.stream() << record.dump() << '\n';
    sink.finish(cfg.output);
    return 0;
}

int cmd_weights(RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::map<std::string, double> counts;
    if (const auto it = cfg.inputs.find("dist"); it != cfg.inputs.end() && !it->second.empty()) {
        std::ifstream in(it->second);
        if (!in) throw Error(ErrorCode::Io, "cannot open " + it->second);
        counts = read_counts(in);
    } else if (const auto ep = cfg.inputs.find("episodes"); ep != cfg.inputs.end() && !ep->second.empty()) {
        const auto episodes = load_checked(ep->second, err);
        for (const auto& e : episodes) {
            for (const auto& seg : merge_actions(e.gt_actions, cfg.merge_cap)) counts[seg.token()] += 1;
        }
    } else {
        throw Error(ErrorCode::InvalidArgument, "weights needs --dist or --episodes");
    }
    const ActionDistribution dist = distribution_from_counts(counts);
    const WeightTable weights = compute_weights(dist);

    Sink sink(cfg.output, out);
    for (const auto& [token, w] : weights) {
        sink.stream() << json{{"type", "action"}, {"token", token}, {"count", counts.at(token)},
                              {"p", dist.at(token)}, {"weight", w}}
                             .dump()
                      << '\n';
    }
    sink.stream() << json{{"type", "task"}, {"task", "spatial_perception"}, {"weight", cfg.lambda_sp}}.dump()
                  << '\n';
    sink.stream() << json{{"type", "task"}, {"task", "trajectory_reasoning"}, {"weight", cfg.lambda_tr}}.dump()
                  << '\n';
    sink.finish(cfg.output);
    return 0;
}

int cmd_simulate(RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto episodes = load_checked(cfg.inputs.at("episodes"), err);
    const AgentPolicy policy = make_policy(cfg, episodes);
    std::vector<std::string> lines(episodes.size());
    parallel_for(episodes.size(), cfg.workers, [&](std::size_t i) {
        try {
            const AgentRun run = run_agent(episodes[i], policy, cfg.max_steps, cfg.success_radius);
            json actions = json::array();
            for (ActionKind a : run.actions) actions.push_back(action_name(a));
            json trajectory = json::array();
            for (const Pose& p : run.rollout.trajectory) trajectory.push_back({p.x, p.y, p.z, p.yaw});
            lines[i] = json{{"id", episodes[i].id},
                            {"actions", actions},
                            {"trajectory", trajectory},
                            {"collided", run.rollout.collided},
                            {"first_collision_step", run.rollout.first_collision_step
                                                         ? json(*run.rollout.first_collision_step)
                                                         : json(nullptr)}}
                           .dump();
        } catch (const Error& e) {
            lines[i] = json{{"id", episodes[i].id}, {"error", e.what()}}.dump();
        }
    });
    Sink sink(cfg.output, out);
    for (const auto& line : lines) sink.stream() << line << '\n';
    sink.finish(cfg.output);
    return 0;
}

int cmd_evaluate(RunConfig& cfg, const std::string& table_path, std::ostream& out, std::ostream& err) {
    const auto episodes = load_checked(cfg.inputs.at("episodes"), err);
    const AgentPolicy policy = make_policy(cfg, episodes);
    EvalOptions opts;
    opts.max_steps = cfg.max_steps;
    opts.success_radius = cfg.success_radius;
    opts.drift_threshold = cfg.drift_threshold;
    opts.workers = cfg.workers;
    const EvalReport report = evaluate_split(episodes, policy, opts);
    for (const auto& e : report.errors) err << "episode " << e.message << '\n';

    Sink sink(cfg.output, out);
    write_report_jsonl(sink.stream(), report, cfg.to_json());
    sink.finish(cfg.output);
    const std::string table = format_report_table(report);
    if (!table_path.empty()) {
        Sink tsink(table_path, out);
        tsink.stream() << table;
        tsink.finish(table_path);
    } else if (!cfg.output.empty()) {
        out << table;
    }
    return 0;
}

int cmd_classify(RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::string& path = cfg.inputs.at("report");
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    std::vector<Diagnostic> diagnostics;
    const auto records = read_failure_records(in, diagnostics);
    for (const auto& d : diagnostics) err << path << ":" << d.line << ": " << d.message << '\n';

    Sink sink(cfg.output, out);
    for (const auto& r : records) {
        json label = nullptr;
        if (r.sr == 0) label = std::string(failure_name(classify_failure(r.osr, r.collided, r.ndtw, cfg.drift_threshold)));
        sink.stream() << json{{"id", r.id}, {"failure", label}}.dump() << '\n';
    }
    sink.finish(cfg.output);
    const std::string table = format_failure_table(tabulate_failures(records, cfg.drift_threshold));
    if (cfg.output.empty()) {
        err << table;
    } else {
        out << table;
    }
    return 0;
}

int cmd_stc(RunConfig& cfg, std::size_t grid, bool inverse, const std::string& gen, std::ostream& out) {
    if (cfg.output.empty()) throw Error(ErrorCode::InvalidArgument, "stc needs --out");
    if (!gen.empty()) {
        std::size_t h = 0, w = 0, c = 0;
        char x1 = 0, x2 = 0;
        std::istringstream spec(gen);
        if (!(spec >> h >> x1 >> w >> x2 >> c) || x1 != 'x' || x2 != 'x' || h == 0 || w == 0 || c == 0) {
            throw Error(ErrorCode::InvalidArgument, "--gen expects HxWxC, got '" + gen + "'");
        }
        std::mt19937_64 rng(cfg.seed);
        TokenGrid g{h, w, Matrix(h * w, c)};
        for (double& v : g.tokens.data) v = static_cast<float>(2.0 * uniform_unit(rng) - 1.0);
        write_token_file(cfg.output, TokenFile::from_grid(g));
        out << "wrote " << h << "x" << w << "x" << c << " grid to " << cfg.output << '\n';
        return 0;
    }
    const auto it = cfg.inputs.find("in");
    if (it == cfg.inputs.end() || it->second.empty()) throw Error(ErrorCode::InvalidArgument, "stc needs --in");
    const TokenFile file = read_token_file(it->second);
    if (inverse) {
        const TokenGrid restored = stc_decompress(file.to_compressed(), file.height, file.width);
        write_token_file(cfg.output, TokenFile::from_grid(restored));
        out << "restored " << restored.tokens.rows << " tokens x " << restored.channels() << " channels\n";
    } else {
        const CompressedTokens comp = stc_compress(file.to_grid(), grid);
        write_token_file(cfg.output, TokenFile::from_compressed(comp, file.height, file.width));
        out << "compressed " << file.tokens.rows << " -> " << comp.tokens.rows << " tokens, "
            << comp.tokens.cols << " channels\n";
    }
    return 0;
}

int cmd_parse(RunConfig& cfg, const std::vector<std::string>& texts, bool self_check, std::ostream& out,
              std::ostream& err) {
    const ActionSpace space = action_space_by_name(cfg.action_space);
    if (self_check) {
        std::size_t total = 0;
        std::size_t ok = 0;
        for (ActionKind kind : space.vocabulary) {
            const std::size_t max_k = kind == ActionKind::Stop ? 1 : cfg.merge_cap;
            for (std::size_t k = 1; k <= max_k; ++k) {
                const ActionCommand cmd =
                    kind == ActionKind::Stop ? ActionCommand{kind, 0}
                                             : ActionCommand{kind, static_cast<double>(k) * space.step_for(kind)};
                ++total;
                const std::string text = render_command(cmd, space);
                try {
                    if (parse_command(text, space) == cmd) {
                        ++ok;
                        continue;
                    }
                    err << "mismatch: " << text << '\n';
                } catch (const Error& e) {
                    err << "failed: " << text << ": " << e.what() << '\n';
                }
            }
        }
        out << json{{"space", space.name}, {"commands", total}, {"parsed", ok},
                    {"success_rate", total ? static_cast<double>(ok) / static_cast<double>(total) : 1.0}}
                   .dump()
            << '\n';
        return ok == total ? 0 : 1;
    }

    std::vector<std::string> inputs = texts;
    if (inputs.empty()) {
        for (std::string line; std::getline(std::cin, line);) {
            if (!line.empty()) inputs.push_back(line);
        }
    }
    int status = 0;
    for (const auto& text : inputs) {
        try {
            const ActionCommand cmd = parse_command(text, space);
            out << json{{"text", text},
                        {"kind", std::string(action_name(cmd.kind))},
                        {"magnitude", cmd.magnitude},
                        {"canonical", render_command(cmd, space)},
                        {"primitives", decompose(cmd, space).size()}}
                       .dump()
                << '\n';
        } catch (const Error& e) {
            out << json{{"text", text}, {"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump()
                << '\n';
            status = 1;
        }
    }
    return status;
}

int cmd_import(RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::string& path = cfg.inputs.at("aerialvln");
    const LoadResult loaded = import_aerialvln(path, cfg.action_space);
    for (const auto& d : loaded.diagnostics) err << path << ": " << d.message << '\n';
    Sink sink(cfg.output, out);
    save_episodes(loaded.episodes, sink.stream());
    sink.finish(cfg.output);
    return 0;
}

}  // namespace

json RunConfig::to_json() const {
    return {{"command", command},
            {"action_space", action_space},
            {"merge_cap", merge_cap},
            {"history_policy", history_policy},
            {"history_size", history_size},
            {"success_radius", success_radius},
            {"drift_threshold", drift_threshold},
            {"lambda_sp", lambda_sp},
            {"lambda_tr", lambda_tr},
            {"seed", seed},
            {"policy", policy},
            {"max_steps", max_steps},
            {"inputs", inputs}};
}

std::map<std::string, double> read_counts(std::istream& in) {
    std::map<std::string, double> counts;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::string token;
        double count = 0;
        if (line[first] == '{') {
            try {
                const json j = json::parse(line);
                token = j.at("token").get<std::string>();
                count = j.at("count").get<double>();
            } catch (const json::exception& e) {
                throw Error(ErrorCode::InvalidArgument, "counts line " + std::to_string(line_no) + ": " + e.what());
            }
        } else {
            std::istringstream fields(line);
            std::string rest;
            if (!(fields >> token >> count) || (fields >> rest)) {
                throw Error(ErrorCode::InvalidArgument,
                            "counts line " + std::to_string(line_no) + " must be '<token> <count>'");
            }
        }
        counts[token] += count;
    }
    return counts;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Aerial VLN data pipeline and evaluation tools", "aeronav"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    RunConfig cfg;
    std::string episodes_path, dist_path, report_path, stc_in, aerialvln_path, table_path, gen;
    std::size_t count = 0;
    std::size_t grid = 2;
    bool inverse = false;
    bool self_check = false;
    std::vector<std::string> texts;
    SyntheticOptions synth;

    const auto add_space = [&](CLI::App* sub) {
        sub->add_option("--space", cfg.action_space, "Action space: aerialvln or openfly")
            ->capture_default_str()
            ->check(CLI::IsMember({"aerialvln", "openfly"}, CLI::ignore_case));
    };
    const auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.output, "Output path (stdout when omitted)")->envname("AERONAV_OUT");
    };
    const auto add_episodes = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--episodes", episodes_path, "Episode file (JSON lines)")
                        ->envname("AERONAV_EPISODES");
        if (required) opt->required();
    };
    const auto add_merge_cap = [&](CLI::App* sub) {
        sub->add_option("--merge-cap", cfg.merge_cap, "Maximum merged run length")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
    };
    const auto add_workers = [&](CLI::App* sub) {
        sub->add_option("--workers", cfg.workers, "Worker threads (output order is fixed)")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
    };
    const auto add_agent = [&](CLI::App* sub) {
        sub->add_option("--policy", cfg.policy, "Agent: random, action, oracle or replay")
            ->capture_default_str()
            ->check(CLI::IsMember({"random", "action", "oracle", "replay"}));
        sub->add_option("--seed", cfg.seed, "Global seed")->capture_default_str();
        sub->add_option("--max-steps", cfg.max_steps, "Step limit per episode")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        sub->add_option("--success-radius", cfg.success_radius, "Success radius in units")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
    };
    const auto add_drift = [&](CLI::App* sub) {
        sub->add_option("--drift-threshold", cfg.drift_threshold, "nDTW below this counts as drift")
            ->capture_default_str()
            ->check(CLI::Range(0.0, 1.0));
    };

    auto* gen_cmd = app.add_subcommand("gen-synthetic", "Generate a seeded synthetic episode split");
    gen_cmd->add_option("--count", count, "Number of episodes")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", cfg.seed, "Seed")->capture_default_str();
    gen_cmd->add_option("--min-actions", synth.min_actions, "Minimum ground-truth length")->capture_default_str();
    gen_cmd->add_option("--max-actions", synth.max_actions, "Maximum ground-truth length")->capture_default_str();
    gen_cmd->add_option("--min-goal-distance", synth.min_goal_distance, "Minimum start-goal distance")
        ->capture_default_str();
    gen_cmd->add_option("--obstacles", synth.obstacles, "Obstacle boxes per episode")->capture_default_str();
    add_space(gen_cmd);
    add_out(gen_cmd);

    auto* pre_cmd = app.add_subcommand("preprocess", "Merge actions, select keyframes and sample history");
    add_episodes(pre_cmd, true);
    add_merge_cap(pre_cmd);
    pre_cmd->add_option("--history", cfg.history_policy, "History policy: current, fifo or uniform")
        ->capture_default_str()
        ->check(CLI::IsMember({"current", "fifo", "uniform"}));
    pre_cmd->add_option("--history-size", cfg.history_size, "FIFO capacity or uniform budget")
        ->capture_default_str();
    add_workers(pre_cmd);
    add_out(pre_cmd);

    auto* stats_cmd = app.add_subcommand("stats", "Action statistics before and after merging");
    add_episodes(stats_cmd, true);
    add_merge_cap(stats_cmd);
    add_out(stats_cmd);

    auto* weights_cmd = app.add_subcommand("weights", "Inverse-frequency label weights");
    weights_cmd->add_option("--dist", dist_path, "Counts file ('<token> <count>' per line)")
        ->envname("AERONAV_DIST");
    add_episodes(weights_cmd, false);
    add_merge_cap(weights_cmd);
    weights_cmd->add_option("--lambda-sp", cfg.lambda_sp, "Spatial perception task weight")->capture_default_str();
    weights_cmd->add_option("--lambda-tr", cfg.lambda_tr, "Trajectory reasoning task weight")->capture_default_str();
    add_out(weights_cmd);

    auto* sim_cmd = app.add_subcommand("simulate", "Run an agent and dump trajectories");
    add_episodes(sim_cmd, true);
    add_agent(sim_cmd);
    add_workers(sim_cmd);
    add_out(sim_cmd);

    auto* eval_cmd = app.add_subcommand("evaluate", "Run an agent and score every episode");
    add_episodes(eval_cmd, true);
    add_agent(eval_cmd);
    add_drift(eval_cmd);
    add_workers(eval_cmd);
    add_out(eval_cmd);
    eval_cmd->add_option("--table", table_path, "Also write the text table here");

    auto* cls_cmd = app.add_subcommand("classify-failures", "Re-label failures of an evaluation report");
    cls_cmd->add_option("--report", report_path, "Report from 'evaluate'")->required()->envname("AERONAV_REPORT");
    add_drift(cls_cmd);
    add_out(cls_cmd);

    auto* stc_cmd = app.add_subcommand("stc", "Spatial token compression of a token file");
    stc_cmd->add_option("--in", stc_in, "Input token file");
    stc_cmd->add_option("--grid", grid, "Cell size g")->capture_default_str()->check(CLI::PositiveNumber);
    stc_cmd->add_flag("--inverse", inverse, "Decompress instead of compress");
    stc_cmd->add_option("--gen", gen, "Write a random HxWxC grid instead of transforming");
    stc_cmd->add_option("--seed", cfg.seed, "Seed for --gen")->capture_default_str();
    add_out(stc_cmd);

    auto* parse_cmd = app.add_subcommand("parse", "Parse textual actions (stdin when no --text)");
    parse_cmd->add_option("--text", texts, "Action text; repeatable");
    parse_cmd->add_flag("--self-check", self_check, "Render and re-parse every command up to --merge-cap steps");
    add_merge_cap(parse_cmd);
    add_space(parse_cmd);

    auto* import_cmd = app.add_subcommand("import", "Convert AerialVLN-style annotations to episodes");
    import_cmd->add_option("--aerialvln", aerialvln_path, "Annotation JSON")->required();
    add_space(import_cmd);
    add_out(import_cmd);

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("aeronav");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        cfg.command = sub->get_name();
        std::transform(cfg.action_space.begin(), cfg.action_space.end(), cfg.action_space.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (!episodes_path.empty()) cfg.inputs["episodes"] = episodes_path;
        if (!dist_path.empty()) cfg.inputs["dist"] = dist_path;
        if (!report_path.empty()) cfg.inputs["report"] = report_path;
        if (!stc_in.empty()) cfg.inputs["in"] = stc_in;
        if (!aerialvln_path.empty()) cfg.inputs["aerialvln"] = aerialvln_path;
        guard_inputs(cfg);
        err << "config: " << cfg.to_json().dump() << '\n';

        if (sub == gen_cmd) return cmd_gen_synthetic(cfg, count, synth, out);
        if (sub == pre_cmd) return cmd_preprocess(cfg, out, err);
        if (sub == stats_cmd) return cmd_stats(cfg, out, err);
        if (sub == weights_cmd) return cmd_weights(cfg, out, err);
        if (sub == sim_cmd) return cmd_simulate(cfg, out, err);
        if (sub == eval_cmd) return cmd_evaluate(cfg, table_path, out, err);
        if (sub == cls_cmd) return cmd_classify(cfg, out, err);
        if (sub == stc_cmd) return cmd_stc(cfg, grid, inverse, gen, out);
        if (sub == parse_cmd) return cmd_parse(cfg, texts, self_check, out, err);
        if (sub == import_cmd) return cmd_import(cfg, out, err);
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::Io ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace aeronav::cli
