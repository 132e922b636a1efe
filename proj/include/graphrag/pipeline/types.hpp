#pragma once

#include "graphrag/kg/graph.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace graphrag::pipeline {

/// Prompt composition for the reasoning call.
enum class Variant {
    Vanilla,        // sub-graph blocks only
    WithSentences,  // blocks plus their provenance sentences
    OnlySentences,  // provenance sentences only
};

/// "vanilla", "with-sentences", "only-sentences".
std::string_view to_string(Variant variant);
std::optional<Variant> parse_variant(std::string_view name);

/// Retrieved terms, distinct after normalization, in retrieval order.
using TermSet = std::vector<std::string>;

/// One-hop neighbourhood of a target node. `edges` holds every edge incident
/// to the target in either direction (sorted by id); `neighbor_nodes` their
/// far endpoints (sorted, target excluded).
struct SubGraph {
    int id = 0;
    std::string target;
    std::vector<std::string> neighbor_nodes;
    std::vector<std::string> edges;
    std::string source_term;

    bool operator==(const SubGraph&) const = default;
};

/// Ids are contiguous from 1 in extraction order.
using SubGraphSet = std::vector<SubGraph>;

using SentenceSet = std::vector<kg::SentenceRecord>;

}  // namespace graphrag::pipeline
