#pragma once

#include "graphrag/kg/graph.hpp"
#include "graphrag/kg/loader.hpp"
#include "graphrag/llm/chat.hpp"
#include "graphrag/llm/mock_backend.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

namespace testsupport {

namespace fs = std::filesystem;
using namespace graphrag;

inline fs::path fixture(const std::string& name) {
    return fs::path(GRAPHRAG_TEST_FIXTURES) / name;
}

inline fs::path synthetic(const std::string& name) {
    return fs::path(GRAPHRAG_DATA_DIR) / "synthetic" / name;
}

inline kg::GraphFiles fixture_files(const std::string& dir) {
    return kg::GraphFiles{fixture(dir) / "nodes.jsonl", fixture(dir) / "edges.jsonl",
                          fixture(dir) / "sentences.jsonl", {}};
}

inline kg::KnowledgeGraph load_fixture(const std::string& dir) {
    return kg::load_graph_files(fixture_files(dir));
}

inline kg::KnowledgeGraph load_synthetic() {
    return kg::load_graph_files(kg::GraphFiles{synthetic("nodes.jsonl"), synthetic("edges.jsonl"),
                                               synthetic("sentences.jsonl"), synthetic("aliases.jsonl")});
}

inline std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path_ = fs::temp_directory_path() /
                ("graphrag-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

struct CommandResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

/// Runs `command` through the shell, capturing stdout and stderr.
inline CommandResult run_command(const std::string& command) {
    TempDir tmp("cmd");
    const auto out_path = tmp / "stdout";
    const auto err_path = tmp / "stderr";
    const auto full = command + " >" + out_path.string() + " 2>" + err_path.string();
    const int status = std::system(full.c_str());
    CommandResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_file(out_path);
    r.err = read_file(err_path);
    return r;
}

inline std::string cli() {
    return GRAPHRAG_CLI_PATH;
}

/// Random directed multigraph: `n` nodes labelled from a small pool (so
/// labels repeat), up to `m` edges including self-loops and parallels.
inline kg::KnowledgeGraph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t m) {
    static const std::array<const char*, 6> labels{"clutch", "disc", "wear", "noise", "engine", "seal"};
    static const std::array<const char*, 4> relations{"causal", "weak_causal", "status", "hierarchical"};
    std::vector<kg::Node> nodes;
    for (std::size_t i = 0; i < n; ++i) {
        kg::Node node;
        node.id = "n" + std::to_string(i);
        node.label = std::string(labels[rng() % labels.size()]) + (rng() % 2 ? "" : " " + std::to_string(rng() % 4));
        node.category = kg::NodeCategory::Other;
        nodes.push_back(node);
    }
    std::vector<kg::Edge> edges;
    for (std::size_t i = 0; i < m && n > 0; ++i) {
        kg::Edge e;
        e.id = "e" + std::to_string(i);
        e.src = nodes[rng() % n].id;
        e.dst = nodes[rng() % n].id;
        e.relation = *kg::parse_relation(relations[rng() % relations.size()]);
        edges.push_back(e);
    }
    return kg::KnowledgeGraph::build(std::move(nodes), std::move(edges), {});
}

inline llm::MockPolicy mock_policy(std::vector<std::string> lexicon = {}) {
    llm::MockPolicy p;
    p.lexicon = std::move(lexicon);
    return p;
}

/// Backend whose answer is computed by a callable; records every request.
class ScriptedBackend : public llm::ChatBackend {
public:
    using Script = std::function<std::string(const llm::ChatRequest&, int call)>;

    explicit ScriptedBackend(Script script) : script_(std::move(script)) {}

    llm::ChatResponse complete(const llm::ChatRequest& request) override {
        int n;
        {
            std::lock_guard lock(mutex_);
            n = static_cast<int>(requests_.size());
            requests_.push_back(request);
        }
        return llm::ChatResponse{script_(request, n), std::nullopt};
    }
    std::string_view kind() const override { return "scripted"; }

    std::vector<llm::ChatRequest> requests() const {
        std::lock_guard lock(mutex_);
        return requests_;
    }

private:
    Script script_;
    mutable std::mutex mutex_;
    std::vector<llm::ChatRequest> requests_;
};

}  // namespace testsupport
