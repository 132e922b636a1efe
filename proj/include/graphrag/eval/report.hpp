#pragma once

#include "graphrag/eval/experiment.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace graphrag::eval {

enum class ReportFormat { Markdown, Csv, Json };

std::optional<ReportFormat> parse_report_format(std::string_view name);

/// Markdown: a method x {ROUGE-1, ROUGE-2, ROUGE-L} F1 table (4 decimals)
/// followed by an average-tokens table. CSV: one row per method at full
/// precision. JSON: schema_version 1 with summaries, per-run means and the
/// per-cell matrix; dumped with 2-space indent and a trailing newline.
std::string emit_report(const ExperimentReport& report, ReportFormat format);

nlohmann::json to_json(const ExperimentReport& report);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

}  // namespace graphrag::eval
