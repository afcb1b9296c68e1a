#include "picolit/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace picolit {

std::string format_fixed6(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    std::string out(buf);
    if (out == "-0.000000") {
        out = "0.000000";
    }
    return out;
}

double round6(double value)
{
    return std::stod(format_fixed6(value));
}

namespace {

nlohmann::json number(const std::optional<double>& v)
{
    return v ? nlohmann::json(round6(*v)) : nlohmann::json(nullptr);
}

std::string cell(const std::optional<double>& v)
{
    return v ? format_fixed6(*v) : std::string{};
}

nlohmann::json view_json(const ViewSummary& view)
{
    return {{"precision", to_json(view.precision)},
            {"precision_judg", to_json(view.precision_judg)},
            {"prop_unjudged", to_json(view.prop_unjudged)}};
}

nlohmann::json fit_json(const std::array<std::optional<RoleFit>, 3>& fit)
{
    nlohmann::json out = nlohmann::json::object();
    for (auto role : kPicoTypes) {
        const auto& f = fit[static_cast<std::size_t>(role)];
        if (!f) {
            continue;
        }
        out[std::string(to_string(role))] = {
            {"matched", f->matched}, {"total", f->total}, {"percentage", number(f->percentage)}};
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << content;
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

}  // namespace

void write_eval_csv(std::ostream& out, std::span<const QueryEval> rows)
{
    out << "topic_id,n_rel,n_irrel,n_unj,precision,precision_judg,prop_unjudged\n";
    for (const auto& e : rows) {
        out << e.topic_id << ',' << e.n_rel << ',' << e.n_irrel << ',' << e.n_unj << ',' << cell(e.precision) << ','
            << cell(e.precision_judg) << ',' << cell(e.prop_unjudged) << '\n';
    }
}

nlohmann::json to_json(const QueryEval& e)
{
    return {{"topic_id", e.topic_id},
            {"n_rel", e.n_rel},
            {"n_irrel", e.n_irrel},
            {"n_unj", e.n_unj},
            {"precision", number(e.precision)},
            {"precision_judg", number(e.precision_judg)},
            {"prop_unjudged", number(e.prop_unjudged)}};
}

nlohmann::json to_json(const std::optional<SummaryStats>& s)
{
    if (!s) {
        return nullptr;
    }
    return {{"mean", round6(s->mean)},
            {"min", round6(s->min)},
            {"max", round6(s->max)},
            {"median", round6(s->median)},
            {"n", s->n}};
}

nlohmann::json to_json(const GroupingStats& g)
{
    nlohmann::json histogram = nlohmann::json::array();
    for (const auto& [size, count] : g.histogram) {
        histogram.push_back({{"docs", size}, {"relations", count}});
    }
    return {{"n_relations", g.n_relations},
            {"histogram", std::move(histogram)},
            {"ratio_gt1", number(g.ratio_gt1)},
            {"max_docs", g.max_docs}};
}

nlohmann::json to_json(const EvalReport& report)
{
    const auto& p = report.params;
    nlohmann::json topics = nlohmann::json::array();
    for (std::size_t i = 0; i < report.topics.size(); ++i) {
        const auto& t = report.topics[i];
        const auto& row = report.comparison.rows.at(i);
        nlohmann::json entry = {{"topic_id", t.topic_id},
                                {"question", t.question},
                                {"n_hits", t.n_hits},
                                {"n_retained", t.n_retained},
                                {"retained_fraction", number(t.retained_fraction)},
                                {"raw", to_json(row.raw)},
                                {"filtered", to_json(row.filtered)},
                                {"precision_delta", number(row.precision_delta)},
                                {"grouping", to_json(t.grouping)}};
        if (t.fit) {
            entry["query_fit"] = fit_json(*t.fit);
        }
        topics.push_back(std::move(entry));
    }

    nlohmann::json out = {
        {"params",
         {{"scorer", to_string(p.scorer)},
          {"k", p.k},
          {"granularity", p.granularity},
          {"scope", to_string(p.scope)},
          {"relation_precision",
           p.relation_precision == PrecisionDenominator::all_retrieved ? "all_retrieved" : "judged_only"},
          {"run_tag", p.run_tag}}},
        {"topics", std::move(topics)},
        {"summary",
         {{"raw", view_json(report.comparison.raw)},
          {"filtered", view_json(report.comparison.filtered)},
          {"retained_fraction", to_json(report.retained_fraction)}}},
    };
    if (report.relation_precision) {
        out["relation_precision_correlation"] = {{"rho", number(report.relation_precision->rho)},
                                                 {"n_pairs", report.relation_precision->n_pairs}};
    } else {
        out["relation_precision_correlation"] = nullptr;
    }
    if (report.fit_summary) {
        nlohmann::json fits = nlohmann::json::object();
        for (auto role : kPicoTypes) {
            fits[std::string(to_string(role))] = to_json((*report.fit_summary)[static_cast<std::size_t>(role)]);
        }
        out["query_fit_summary"] = std::move(fits);
    }
    return out;
}

void write_eval_report(const std::filesystem::path& dir, const EvalReport& report)
{
    std::filesystem::create_directories(dir);
    std::vector<QueryEval> raw, filtered;
    for (const auto& row : report.comparison.rows) {
        raw.push_back(row.raw);
        filtered.push_back(row.filtered);
    }
    std::ostringstream raw_csv, filtered_csv, run;
    write_eval_csv(raw_csv, raw);
    write_eval_csv(filtered_csv, filtered);
    write_run(run, report.raw_run);
    write_file(dir / kRawCsv, raw_csv.str());
    write_file(dir / kFilteredCsv, filtered_csv.str());
    write_file(dir / kReportJson, to_json(report).dump(2) + "\n");
    write_file(dir / kRawRun, run.str());
}

}  // namespace picolit
