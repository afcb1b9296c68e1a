#include "picolit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace picolit {

QueryEval evaluate_query(std::span<const std::string> result_docs, const std::string& topic_id, const Qrels& qrels)
{
    QueryEval e;
    e.topic_id = topic_id;
    std::set<std::string> unique(result_docs.begin(), result_docs.end());
    for (const auto& doc : unique) {
        switch (qrels.classify(topic_id, doc)) {
        case Relevance::relevant:
            ++e.n_rel;
            break;
        case Relevance::irrelevant:
            ++e.n_irrel;
            break;
        case Relevance::unjudged:
            ++e.n_unj;
            break;
        }
    }
    const double rel = static_cast<double>(e.n_rel);
    if (const auto total = e.total(); total > 0) {
        e.precision = rel / static_cast<double>(total);
        e.prop_unjudged = static_cast<double>(e.n_unj) / static_cast<double>(total);
    }
    if (const auto judged = e.n_rel + e.n_irrel; judged > 0) {
        e.precision_judg = rel / static_cast<double>(judged);
    }
    return e;
}

std::optional<SummaryStats> summarize(std::span<const double> values)
{
    if (values.empty()) {
        return std::nullopt;
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    SummaryStats s;
    s.n = sorted.size();
    s.min = sorted.front();
    s.max = sorted.back();
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.n);
    const std::size_t mid = s.n / 2;
    s.median = s.n % 2 == 1 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
    return s;
}

std::optional<SummaryStats> summarize(std::span<const std::optional<double>> values)
{
    std::vector<double> defined;
    for (const auto& v : values) {
        if (v) {
            defined.push_back(*v);
        }
    }
    return summarize(std::span<const double>(defined));
}

namespace {

ViewSummary summarize_view(const std::vector<QueryEval>& evals)
{
    std::vector<std::optional<double>> p, pj, pu;
    for (const auto& e : evals) {
        p.push_back(e.precision);
        pj.push_back(e.precision_judg);
        pu.push_back(e.prop_unjudged);
    }
    return ViewSummary{summarize(p), summarize(pj), summarize(pu)};
}

std::map<std::string, const QueryEval*> by_topic(std::span<const QueryEval> evals, const char* side)
{
    std::map<std::string, const QueryEval*> out;
    for (const auto& e : evals) {
        if (!out.emplace(e.topic_id, &e).second) {
            throw std::invalid_argument(std::string("topic ") + e.topic_id + " repeated in " + side + " view");
        }
    }
    return out;
}

}  // namespace

ViewComparison compare_views(std::span<const QueryEval> raw, std::span<const QueryEval> filtered)
{
    auto raw_map = by_topic(raw, "raw");
    auto filtered_map = by_topic(filtered, "filtered");
    for (const auto& [topic, e] : raw_map) {
        if (filtered_map.count(topic) == 0) {
            throw std::invalid_argument("topic " + topic + " missing from filtered view");
        }
    }
    for (const auto& [topic, e] : filtered_map) {
        if (raw_map.count(topic) == 0) {
            throw std::invalid_argument("topic " + topic + " missing from raw view");
        }
    }

    std::vector<std::string> topics;
    for (const auto& [topic, e] : raw_map) {
        topics.push_back(topic);
    }
    std::sort(topics.begin(), topics.end(), topic_less);

    ViewComparison out;
    std::vector<QueryEval> raw_rows, filtered_rows;
    for (const auto& topic : topics) {
        TopicComparison row{topic, *raw_map.at(topic), *filtered_map.at(topic), std::nullopt};
        if (row.raw.precision && row.filtered.precision) {
            row.precision_delta = *row.filtered.precision - *row.raw.precision;
        }
        raw_rows.push_back(row.raw);
        filtered_rows.push_back(row.filtered);
        out.rows.push_back(std::move(row));
    }
    out.raw = summarize_view(raw_rows);
    out.filtered = summarize_view(filtered_rows);
    return out;
}

std::vector<double> average_ranks(std::span<const double> values)
{
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) {
            ++j;
        }
        // positions i..j (0-based) share ranks i+1..j+1
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = rank;
        }
        i = j + 1;
    }
    return ranks;
}

CorrelationReport spearman(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("spearman: length mismatch");
    }
    if (xs.size() < 2) {
        throw std::invalid_argument("spearman: need at least 2 pairs");
    }
    auto has_nan = [](std::span<const double> v) {
        return std::any_of(v.begin(), v.end(), [](double x) { return std::isnan(x); });
    };
    if (has_nan(xs) || has_nan(ys)) {
        throw std::invalid_argument("spearman: NaN in input");
    }

    const auto rx = average_ranks(xs);
    const auto ry = average_ranks(ys);
    const double n = static_cast<double>(rx.size());
    // Both rank vectors have mean (n + 1) / 2.
    const double mean = (n + 1.0) / 2.0;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    CorrelationReport report;
    report.n_pairs = rx.size();
    if (sxx == 0.0 || syy == 0.0) {
        return report;
    }
    report.rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    return report;
}

std::array<std::optional<RoleFit>, 3> query_fit(const QueryConcepts& query, const SankeyGraph& graph)
{
    std::array<std::optional<RoleFit>, 3> out;
    for (auto role : kPicoTypes) {
        const auto& wanted = query[static_cast<std::size_t>(role)];
        if (wanted.empty()) {
            continue;
        }
        RoleFit fit;
        for (const auto& node : graph.nodes) {
            if (node.role != role) {
                continue;
            }
            ++fit.total;
            fit.matched += wanted.count(node.code);
        }
        if (fit.total > 0) {
            fit.percentage = 100.0 * static_cast<double>(fit.matched) / static_cast<double>(fit.total);
        }
        out[static_cast<std::size_t>(role)] = fit;
    }
    return out;
}

std::array<std::optional<SummaryStats>, 3> fit_summary(std::span<const std::array<std::optional<RoleFit>, 3>> fits)
{
    std::array<std::optional<SummaryStats>, 3> out;
    for (std::size_t r = 0; r < 3; ++r) {
        std::vector<double> values;
        for (const auto& topic : fits) {
            if (topic[r] && topic[r]->percentage) {
                values.push_back(*topic[r]->percentage);
            }
        }
        out[r] = summarize(std::span<const double>(values));
    }
    return out;
}

CorrelationReport relation_precision_correlation(std::span<const TopicRelations> topics, const Qrels& qrels,
                                                 PrecisionDenominator denominator)
{
    std::vector<double> sizes;
    std::vector<double> precisions;
    for (const auto& topic : topics) {
        for (const auto& rel : topic.relations) {
            const auto e = evaluate_query(rel.doc_ids, topic.topic_id, qrels);
            const auto& p = denominator == PrecisionDenominator::all_retrieved ? e.precision : e.precision_judg;
            if (!p) {
                continue;
            }
            sizes.push_back(static_cast<double>(rel.doc_ids.size()));
            precisions.push_back(*p);
        }
    }
    if (sizes.size() < 2) {
        throw std::invalid_argument("relation_precision_correlation: need at least 2 relations");
    }
    return spearman(sizes, precisions);
}

}  // namespace picolit
