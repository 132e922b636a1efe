#include "graphrag/eval/report.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace graphrag::eval {

using nlohmann::json;

std::optional<ReportFormat> parse_report_format(std::string_view name) {
    if (name == "md" || name == "markdown") return ReportFormat::Markdown;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    return std::nullopt;
}

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

std::string_view kind_name(MethodKind kind) {
    return kind == MethodKind::NoRetrieval ? "no-retrieval" : "ir-pipeline";
}

std::string fixed4(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    return buf;
}

json score_json(const rouge::RougeScore& s) {
    return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string markdown(const ExperimentReport& r) {
    std::ostringstream out;
    out << "| Method | ROUGE-1 F1 | ROUGE-2 F1 | ROUGE-L F1 |\n";
    out << "|---|---|---|---|\n";
    for (const auto& m : r.methods) {
        out << "| " << m.spec.name << " | " << fixed4(m.rouge1) << " | " << fixed4(m.rouge2) << " | "
            << fixed4(m.rougeL) << " |\n";
    }
    out << "\n| Method | Average Tokens |\n";
    out << "|---|---|\n";
    for (const auto& m : r.methods) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.1f", m.avg_output_tokens);
        out << "| " << m.spec.name << " | " << buf << " |\n";
    }
    out << "\npairs=" << r.dataset_size << " runs=" << r.runs << " seed=" << r.base_seed
        << " tokens=" << text::to_string(r.token_scheme) << " backend=" << r.backend_kind << '\n';
    for (const auto& m : r.methods) {
        if (m.cells_excluded > 0) {
            out << m.spec.name << ": " << m.cells_excluded << " of " << (m.cells_used + m.cells_excluded)
                << " cells excluded after errors\n";
        }
    }
    return out.str();
}

std::string csv(const ExperimentReport& r) {
    std::ostringstream out;
    out << "method,kind,variant,filter,rouge1_f1,rouge2_f1,rougeL_f1,avg_output_tokens,cells_used,cells_excluded,"
           "runs,token_scheme\n";
    for (const auto& m : r.methods) {
        const bool ir = m.spec.kind == MethodKind::IrPipeline;
        out << csv_field(m.spec.name) << ',' << kind_name(m.spec.kind) << ','
            << (ir ? pipeline::to_string(m.spec.variant) : "") << ',' << (ir && m.spec.filter_enabled ? "on" : "off")
            << ',' << format_double(m.rouge1) << ',' << format_double(m.rouge2) << ',' << format_double(m.rougeL)
            << ',' << format_double(m.avg_output_tokens) << ',' << m.cells_used << ',' << m.cells_excluded << ','
            << r.runs << ',' << text::to_string(r.token_scheme) << '\n';
    }
    return out.str();
}

}  // namespace

json to_json(const ExperimentReport& r) {
    json methods = json::array();
    for (std::size_t i = 0; i < r.methods.size(); ++i) {
        const auto& m = r.methods[i];
        json failures = json::array();
        for (const auto& c : r.cells) {
            if (c.method == i && !c.ok) {
                failures.push_back({{"pair_id", r.pair_ids[c.pair]}, {"run", c.run}, {"error", c.error}});
            }
        }
        json entry = {
            {"name", m.spec.name},
            {"kind", std::string(kind_name(m.spec.kind))},
            {"rouge1_f1", m.rouge1},
            {"rouge2_f1", m.rouge2},
            {"rougeL_f1", m.rougeL},
            {"avg_output_tokens", m.avg_output_tokens},
            {"cells_used", m.cells_used},
            {"cells_excluded", m.cells_excluded},
            {"per_run",
             {
                 {"rouge1_f1", m.run_rouge1},
                 {"rouge2_f1", m.run_rouge2},
                 {"rougeL_f1", m.run_rougeL},
                 {"output_tokens", m.run_tokens},
             }},
            {"failures", failures},
        };
        if (m.spec.kind == MethodKind::IrPipeline) {
            entry["variant"] = std::string(pipeline::to_string(m.spec.variant));
            entry["filter_enabled"] = m.spec.filter_enabled;
        }
        methods.push_back(std::move(entry));
    }

    json cells = json::array();
    for (const auto& c : r.cells) {
        json cell = {
            {"method", r.methods[c.method].spec.name},
            {"pair_id", r.pair_ids[c.pair]},
            {"run", c.run},
            {"seed", c.seed},
            {"ok", c.ok},
        };
        if (c.ok) {
            cell["rouge1"] = score_json(c.scores.rouge1);
            cell["rouge2"] = score_json(c.scores.rouge2);
            cell["rougeL"] = score_json(c.scores.rougeL);
            cell["output_tokens"] = c.output_tokens;
        } else {
            cell["error"] = c.error;
        }
        cells.push_back(std::move(cell));
    }

    return {
        {"schema_version", 1},
        {"dataset", {{"name", r.dataset_name}, {"size", r.dataset_size}, {"pair_ids", r.pair_ids}}},
        {"runs", r.runs},
        {"base_seed", r.base_seed},
        {"token_scheme", std::string(text::to_string(r.token_scheme))},
        {"token_limit", r.token_limit},
        {"backend_kind", r.backend_kind},
        {"averaging", "mean over pairs within each run, then mean over runs"},
        {"methods", methods},
        {"cells", cells},
    };
}

std::string emit_report(const ExperimentReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::Markdown: return markdown(report);
        case ReportFormat::Csv: return csv(report);
        case ReportFormat::Json: return to_json(report).dump(2) + "\n";
    }
    return {};
}

}  // namespace graphrag::eval
