#pragma once

#include "graphrag/kg/graph.hpp"
#include "graphrag/pipeline/types.hpp"

#include <string>

namespace graphrag::pipeline {

/// One-hop sub-graph around `node_id` (id left at 0). Throws UnknownNode.
SubGraph one_hop(const kg::KnowledgeGraph& graph, const std::string& node_id, std::string source_term = {});

struct Extraction {
    SubGraphSet subgraphs;
    std::vector<std::string> matched_terms;
    std::vector<std::string> unmatched_terms;
};

/// For each term in order, one sub-graph per matching node (node-id order).
/// A node already produced by an earlier term is not extracted again.
Extraction extract_subgraphs(const TermSet& terms, const kg::KnowledgeGraph& graph);

/// "Target: <label>" followed by one "<src> -[<relation>]-> <dst>" line per
/// edge in edge-id order, with repeated lines collapsed. No trailing newline.
/// Throws UnknownNode/UnknownEdge when the sub-graph does not fit the graph.
std::string render_subgraph(const SubGraph& sg, const kg::KnowledgeGraph& graph);

}  // namespace graphrag::pipeline
