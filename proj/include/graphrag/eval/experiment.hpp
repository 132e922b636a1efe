#pragma once

#include "graphrag/eval/dataset.hpp"
#include "graphrag/kg/graph.hpp"
#include "graphrag/llm/chat.hpp"
#include "graphrag/pipeline/pipeline.hpp"
#include "graphrag/rouge/rouge.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace graphrag::eval {

enum class MethodKind { NoRetrieval, IrPipeline };

struct MethodSpec {
    std::string name;
    MethodKind kind = MethodKind::IrPipeline;
    pipeline::Variant variant = pipeline::Variant::Vanilla;
    bool filter_enabled = true;

    bool operator==(const MethodSpec&) const = default;
};

/// "no-retrieval", "ir-vanilla", "ir-with-sentences", "ir-only-sentences",
/// each ir-* optionally suffixed ":no-filter". Names are kept verbatim.
std::optional<MethodSpec> parse_method(std::string_view text);

/// Comma-separated list. Throws std::invalid_argument on an unknown method,
/// an empty list, or a repeated name.
std::vector<MethodSpec> parse_methods(std::string_view text);

struct ExperimentConfig {
    int runs = 5;
    uint64_t base_seed = 0;
    std::size_t jobs = 4;
    /// Template for every IrPipeline cell; variant, filter toggle and seed
    /// are overwritten per cell.
    pipeline::PipelineConfig pipeline;
};

/// One (method, pair, run) execution.
struct Cell {
    std::size_t method = 0;
    std::size_t pair = 0;
    int run = 0;
    uint64_t seed = 0;
    bool ok = false;
    rouge::RougeTriple scores;
    std::size_t output_tokens = 0;
    std::string error;  // "<stage>: <message>" when !ok
};

struct MethodSummary {
    MethodSpec spec;
    /// Mean over the method's successful pairs within each run; runs without
    /// a successful pair are absent from the outer mean.
    std::vector<double> run_rouge1;
    std::vector<double> run_rouge2;
    std::vector<double> run_rougeL;
    std::vector<double> run_tokens;
    double rouge1 = 0.0;
    double rouge2 = 0.0;
    double rougeL = 0.0;
    double avg_output_tokens = 0.0;
    std::size_t cells_used = 0;
    std::size_t cells_excluded = 0;
};

struct ExperimentReport {
    std::string dataset_name;
    std::size_t dataset_size = 0;
    std::vector<std::string> pair_ids;
    int runs = 0;
    uint64_t base_seed = 0;
    text::TokenScheme token_scheme = text::TokenScheme::UnicodeWordsCjkChars;
    std::size_t token_limit = 0;
    std::string backend_kind;
    std::vector<MethodSummary> methods;
    /// Ordered by (method, pair, run).
    std::vector<Cell> cells;
};

/// derive_seed(base, {method name, pair id, run}).
uint64_t cell_seed(uint64_t base, const MethodSpec& method, const QaPair& pair, int run);

/// Invoked once per cell, serialized by the harness. `answer` is null for
/// NoRetrieval cells and for failed cells.
using CellObserver = std::function<void(const MethodSpec& method, const QaPair& pair, int run,
                                        const pipeline::Answer* answer)>;

/// Runs every cell with up to config.jobs worker threads. Results do not
/// depend on scheduling. Throws std::invalid_argument when runs < 1 or method
/// names repeat.
ExperimentReport run_experiment(const QaDataset& dataset, const std::vector<MethodSpec>& methods,
                                const kg::KnowledgeGraph& graph, llm::ChatBackend& backend,
                                const ExperimentConfig& config, const CellObserver& observer = {});

}  // namespace graphrag::eval
