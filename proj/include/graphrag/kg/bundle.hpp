#pragma once

#include "graphrag/kg/graph.hpp"
#include "graphrag/kg/loader.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace graphrag::kg {

/// A bundle is a directory holding nodes.jsonl, edges.jsonl, sentences.jsonl,
/// an optional aliases.jsonl and manifest.json (SHA-256 of each file plus
/// record counts).
class BundleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BundleCounts {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t sentences = 0;
};

std::string sha256_hex(std::string_view bytes);

/// Validates the inputs with load_graph_files (KgError propagates untouched),
/// then copies them into `out_dir` and writes the manifest.
BundleCounts write_bundle(const GraphFiles& inputs, const std::filesystem::path& out_dir);

/// Verifies the manifest hashes and loads the graph.
KnowledgeGraph load_bundle(const std::filesystem::path& dir);

}  // namespace graphrag::kg
