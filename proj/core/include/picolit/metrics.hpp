#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "picolit/relations.hpp"
#include "picolit/sankey.hpp"
#include "picolit/trec.hpp"

namespace picolit {

/// Set-based (rank-free) evaluation of one topic's result set. Metrics whose
/// denominator is zero are left empty rather than reported as 0 or NaN.
struct QueryEval {
    std::string topic_id;
    std::size_t n_rel = 0;
    std::size_t n_irrel = 0;
    std::size_t n_unj = 0;
    std::optional<double> precision;       // n_rel / (n_rel + n_irrel + n_unj)
    std::optional<double> precision_judg;  // n_rel / (n_rel + n_irrel)
    std::optional<double> prop_unjudged;   // n_unj / total

    std::size_t total() const noexcept { return n_rel + n_irrel + n_unj; }
};

/// Duplicate doc ids are counted once; order is irrelevant.
QueryEval evaluate_query(std::span<const std::string> result_docs, const std::string& topic_id, const Qrels& qrels);

struct SummaryStats {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double median = 0.0;
    std::size_t n = 0;
};

/// Empty values are skipped; no defined value gives no summary.
std::optional<SummaryStats> summarize(std::span<const std::optional<double>> values);
std::optional<SummaryStats> summarize(std::span<const double> values);

struct ViewSummary {
    std::optional<SummaryStats> precision;
    std::optional<SummaryStats> precision_judg;
    std::optional<SummaryStats> prop_unjudged;
};

struct TopicComparison {
    std::string topic_id;
    QueryEval raw;
    QueryEval filtered;
    std::optional<double> precision_delta;  // filtered - raw
};

struct ViewComparison {
    std::vector<TopicComparison> rows;  // topic order (see topic_less)
    ViewSummary raw;
    ViewSummary filtered;
};

/// Pairs the two views by topic_id. Throws std::invalid_argument when the
/// topic sets differ or a topic repeats.
ViewComparison compare_views(std::span<const QueryEval> raw, std::span<const QueryEval> filtered);

struct CorrelationReport {
    std::optional<double> rho;  // empty when either rank vector has zero variance
    std::size_t n_pairs = 0;
};

/// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman's rho: Pearson correlation of the average-rank vectors.
/// Throws std::invalid_argument on length mismatch, fewer than 2 pairs, or NaN.
CorrelationReport spearman(std::span<const double> xs, std::span<const double> ys);

/// Truncated concept codes per role for one query.
using QueryConcepts = std::array<std::set<std::string>, 3>;

struct RoleFit {
    std::size_t matched = 0;
    std::size_t total = 0;
    std::optional<double> percentage;  // empty when the graph has no node of this role
};

/// Per role: share (in percent) of graph nodes whose code is in the query's
/// set for that role. Roles the query does not express are left empty.
std::array<std::optional<RoleFit>, 3> query_fit(const QueryConcepts& query, const SankeyGraph& graph);

/// Per role summary of defined fit percentages across topics.
std::array<std::optional<SummaryStats>, 3> fit_summary(std::span<const std::array<std::optional<RoleFit>, 3>> fits);

struct TopicRelations {
    std::string topic_id;
    std::vector<Relation> relations;
};

enum class PrecisionDenominator { all_retrieved, judged_only };

/// Spearman correlation between relation size and the precision of the
/// relation's document set, pooled across topics. With judged_only,
/// relations without any judged document are skipped.
/// Throws std::invalid_argument with fewer than 2 usable relations.
CorrelationReport relation_precision_correlation(std::span<const TopicRelations> topics, const Qrels& qrels,
                                                 PrecisionDenominator denominator = PrecisionDenominator::all_retrieved);

}  // namespace picolit
