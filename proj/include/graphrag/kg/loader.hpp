#pragma once

#include "graphrag/kg/graph.hpp"

#include <filesystem>
#include <istream>
#include <string>

namespace graphrag::kg {

/// Reads the JSON-lines node, edge and sentence files (plus an optional alias
/// file of {"alias": str, "node": str} records). Blank lines are skipped;
/// unknown object members are ignored. Errors carry the 1-based line number of
/// the offending record.
KnowledgeGraph load_graph(std::istream& nodes, std::istream& edges, std::istream& sentences,
                          std::istream* aliases = nullptr);

struct GraphFiles {
    std::filesystem::path nodes;
    std::filesystem::path edges;
    std::filesystem::path sentences;
    std::filesystem::path aliases;  // optional; empty path means none
};

KnowledgeGraph load_graph_files(const GraphFiles& files);

/// Tab-separated `src_label<TAB>relation<TAB>dst_label` triples. Nodes are
/// created on first sight of a normalized label (category "other", ids n1,
/// n2, ...); edges get ids e1, e2, ... in line order.
KnowledgeGraph import_triples(std::istream& tsv);

struct SerializedGraph {
    std::string nodes;
    std::string edges;
    std::string sentences;
    std::string aliases;
};

/// Inverse of load_graph: JSON-lines text in id order.
SerializedGraph serialize(const KnowledgeGraph& graph);

}  // namespace graphrag::kg
