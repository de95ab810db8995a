// Evaluation report formats: line-delimited JSON records and an aligned text
// table with the NE / SR / OSR / SDTW / SPL columns.

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "aeronav/harness.hpp"

namespace aeronav {

inline constexpr const char* kVersion = "0.1.0";

/// Record order: header, one "episode" record per result, "error" records,
/// "summary", "note". `header_config` is embedded verbatim in the header.
void write_report_jsonl(std::ostream& out, const EvalReport& report, const nlohmann::json& header_config);

[[nodiscard]] std::string format_report_table(const EvalReport& report);

[[nodiscard]] nlohmann::json summary_to_json(const EvalSummary& summary);
[[nodiscard]] nlohmann::json result_to_json(const EpisodeResult& result);

/// Failure-relevant fields recovered from an "episode" report record.
struct FailureRecord {
    std::string id;
    int sr{0};
    int osr{0};
    bool collided{false};
    double ndtw{0};
};

/// Reads every "episode" record of a JSONL report; other records are ignored.
/// Malformed lines become diagnostics.
[[nodiscard]] std::vector<FailureRecord> read_failure_records(std::istream& in,
                                                              std::vector<Diagnostic>& diagnostics);

struct FailureTable {
    std::array<std::size_t, 4> counts{};  ///< indexed like kAllFailureKinds
    std::size_t failed{0};
    std::size_t total{0};
};

[[nodiscard]] FailureTable tabulate_failures(std::span<const FailureRecord> records, double drift_threshold);
[[nodiscard]] std::string format_failure_table(const FailureTable& table);

}  // namespace aeronav
