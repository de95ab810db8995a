#include "aeronav/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "aeronav/error.hpp"

namespace aeronav {
namespace {

using nlohmann::json;

std::string fixed(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

json summary_to_json(const EvalSummary& summary) {
    json failures = json::object();
    for (FailureKind kind : kAllFailureKinds) {
        failures[std::string(failure_name(kind))] = summary.failures[static_cast<std::size_t>(kind)];
    }
    json difficulty = json::object();
    for (std::size_t b = 0; b < 3; ++b) {
        difficulty[std::string(difficulty_name(static_cast<Difficulty>(b)))] = {
            {"episodes", summary.difficulty[b].count}, {"sr", summary.difficulty[b].sr}};
    }
    return {{"episodes", summary.episodes}, {"ne", summary.ne},     {"sr", summary.sr},
            {"osr", summary.osr},           {"ndtw", summary.ndtw}, {"sdtw", summary.sdtw},
            {"spl", summary.spl},           {"failures", failures}, {"difficulty", difficulty}};
}

json result_to_json(const EpisodeResult& r) {
    const EpisodeScore& s = r.score;
    return {{"type", "episode"},
            {"id", r.id},
            {"ne", s.ne},
            {"sr", s.sr},
            {"osr", s.osr},
            {"dtw", s.dtw},
            {"ndtw", s.ndtw},
            {"sdtw", s.sdtw},
            {"spl", s.spl},
            {"executed_length", s.executed_length},
            {"shortest_length", r.shortest_length},
            {"shortest_length_source", r.shortest_from_dataset ? "dataset" : "straight_line"},
            {"collided", s.collided},
            {"predicted_actions", r.predicted_actions},
            {"reference_actions", r.reference_actions},
            {"difficulty", std::string(difficulty_name(difficulty_for(s.action_count)))},
            {"failure", s.failure ? json(std::string(failure_name(*s.failure))) : json(nullptr)}};
}

void write_report_jsonl(std::ostream& out, const EvalReport& report, const json& header_config) {
    out << json{{"type", "header"}, {"tool", "aeronav"}, {"version", kVersion}, {"config", header_config}}
               .dump()
        << '\n';
    for (const auto& r : report.results) out << result_to_json(r).dump() << '\n';
    for (const auto& e : report.errors) {
        out << json{{"type", "error"}, {"index", e.line}, {"message", e.message}}.dump() << '\n';
    }
    if (report.summary) {
        json summary = summary_to_json(*report.summary);
        summary["type"] = "summary";
        out << summary.dump() << '\n';
    }
    out << json{{"type", "note"},
                {"text", "SDTW weights nDTW by per-episode success; SPL falls back to the straight-line "
                         "start-goal distance when the episode has no shortest_length"}}
               .dump()
        << '\n';
}

std::string format_report_table(const EvalReport& report) {
    std::ostringstream out;
    if (!report.summary) {
        out << "no episodes scored (" << report.errors.size() << " errors)\n";
        return out.str();
    }
    const EvalSummary& s = *report.summary;
    const std::vector<std::string> header = {"Episodes", "NE", "SR", "OSR", "SDTW", "SPL", "nDTW"};
    const std::vector<std::string> row = {std::to_string(s.episodes), fixed(s.ne, 2), fixed(s.sr, 1),
                                          fixed(s.osr, 1), fixed(s.sdtw, 1), fixed(s.spl, 1),
                                          fixed(s.ndtw, 3)};
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::size_t w = std::max(header[i].size(), row[i].size()) + 2;
        out << pad_left(header[i], w);
    }
    out << '\n';
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::size_t w = std::max(header[i].size(), row[i].size()) + 2;
        out << pad_left(row[i], w);
    }
    out << "\n\n";

    out << pad_right("Difficulty", 12) << pad_left("Episodes", 10) << pad_left("SR", 8) << '\n';
    for (std::size_t b = 0; b < 3; ++b) {
        out << pad_right(std::string(difficulty_name(static_cast<Difficulty>(b))), 12)
            << pad_left(std::to_string(s.difficulty[b].count), 10)
            << pad_left(fixed(s.difficulty[b].sr, 1), 8) << '\n';
    }
    out << '\n';

    FailureTable failures;
    failures.counts = s.failures;
    failures.total = s.episodes;
    for (std::size_t c : s.failures) failures.failed += c;
    out << format_failure_table(failures);
    if (!report.errors.empty()) out << "\nerrors: " << report.errors.size() << '\n';
    return out.str();
}

std::vector<FailureRecord> read_failure_records(std::istream& in, std::vector<Diagnostic>& diagnostics) {
    std::vector<FailureRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const json j = json::parse(line);
            if (j.value("type", std::string{}) != "episode") continue;
            FailureRecord r;
            r.id = j.at("id").get<std::string>();
            r.sr = j.at("sr").get<int>();
            r.osr = j.at("osr").get<int>();
            r.collided = j.at("collided").get<bool>();
            r.ndtw = j.at("ndtw").get<double>();
            records.push_back(std::move(r));
        } catch (const json::exception& e) {
            diagnostics.push_back({line_no, e.what()});
        }
    }
    return records;
}

FailureTable tabulate_failures(std::span<const FailureRecord> records, double drift_threshold) {
    FailureTable table;
    table.total = records.size();
    for (const auto& r : records) {
        if (r.sr != 0) continue;
        ++table.failed;
        ++table.counts[static_cast<std::size_t>(classify_failure(r.osr, r.collided, r.ndtw, drift_threshold))];
    }
    return table;
}

std::string format_failure_table(const FailureTable& table) {
    std::ostringstream out;
    out << pad_right("Failure", 22) << pad_left("Count", 8) << pad_left("Share", 9) << '\n';
    for (FailureKind kind : kAllFailureKinds) {
        const std::size_t c = table.counts[static_cast<std::size_t>(kind)];
        const double share = table.failed > 0 ? 100.0 * static_cast<double>(c) / static_cast<double>(table.failed) : 0.0;
        out << pad_right(std::string(failure_name(kind)), 22) << pad_left(std::to_string(c), 8)
            << pad_left(fixed(share, 1) + "%", 9) << '\n';
    }
    out << pad_right("failed / total", 22)
        << pad_left(std::to_string(table.failed) + "/" + std::to_string(table.total), 8) << '\n';
    return out.str();
}

}  // namespace aeronav
