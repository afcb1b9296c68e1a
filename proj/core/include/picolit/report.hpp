#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "picolit/format.hpp"
#include "picolit/index.hpp"
#include "picolit/metrics.hpp"
#include "picolit/relations.hpp"
#include "picolit/trec.hpp"

namespace picolit {

struct EvalParams {
    Scorer scorer = Scorer::bm25;
    std::size_t k = kDefaultHitCap;
    std::size_t granularity = kDefaultGranularity;
    Scope scope = Scope::title_abstract;
    PrecisionDenominator relation_precision = PrecisionDenominator::all_retrieved;
    std::string run_tag = "picolit";
};

/// What one topic's query produced before evaluation.
struct TopicRun {
    std::string topic_id;
    std::string question;
    std::size_t n_hits = 0;
    std::size_t n_retained = 0;
    std::optional<double> retained_fraction;
    GroupingStats grouping;
    std::optional<std::array<std::optional<RoleFit>, 3>> fit;  // when query concepts were supplied
};

struct EvalReport {
    EvalParams params;
    std::vector<TopicRun> topics;  // same order as comparison.rows
    ViewComparison comparison;
    std::optional<SummaryStats> retained_fraction;
    std::optional<CorrelationReport> relation_precision;  // needs >= 2 relations
    std::optional<std::array<std::optional<SummaryStats>, 3>> fit_summary;
    std::vector<RunEntry> raw_run;
};

/// Header: topic_id,n_rel,n_irrel,n_unj,precision,precision_judg,prop_unjudged.
/// Undefined metrics are empty cells.
void write_eval_csv(std::ostream& out, std::span<const QueryEval> rows);

nlohmann::json to_json(const QueryEval& eval);
nlohmann::json to_json(const std::optional<SummaryStats>& stats);
nlohmann::json to_json(const GroupingStats& stats);
nlohmann::json to_json(const EvalReport& report);

/// File names written by write_eval_report().
inline constexpr const char* kRawCsv = "eval_raw.csv";
inline constexpr const char* kFilteredCsv = "eval_filtered.csv";
inline constexpr const char* kReportJson = "eval_report.json";
inline constexpr const char* kRawRun = "run_raw.txt";

/// Creates `dir` if needed and writes the two CSVs, the JSON report and the raw run.
void write_eval_report(const std::filesystem::path& dir, const EvalReport& report);

}  // namespace picolit
