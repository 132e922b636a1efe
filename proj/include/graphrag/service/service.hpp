#pragma once

#include "graphrag/kg/graph.hpp"
#include "graphrag/llm/chat.hpp"
#include "graphrag/pipeline/pipeline.hpp"

#include <memory>
#include <mutex>
#include <string>

namespace httplib {
class Server;
}

namespace graphrag::service {

struct ServiceConfig {
    /// Defaults for every query; requests may override variant, seed and
    /// the filter toggle.
    pipeline::PipelineConfig pipeline;
    /// Value of Access-Control-Allow-Origin; empty disables CORS headers.
    std::string ui_origin;
};

/// Status code plus JSON body.
struct Response {
    int status = 200;
    std::string body;
};

/// Endpoint logic, independent of the HTTP server. Handlers may be called
/// concurrently; the graph is swapped in once loading completes.
class Service {
public:
    Service(llm::ChatBackend& backend, ServiceConfig config);

    void set_graph(std::shared_ptr<const kg::KnowledgeGraph> graph);
    std::shared_ptr<const kg::KnowledgeGraph> graph() const;

    /// POST /api/query. Body {question, variant?, seed?, filter_enabled?,
    /// include_ids?, exclude_ids?}. 400 malformed or empty question, 422
    /// overlapping or unknown override ids, 502 backend failure (body names
    /// the stage), 503 graph not loaded.
    Response query(const std::string& body) const;

    /// GET /api/graph/neighbors?node=<id>. 400 without a node, 404 unknown.
    Response neighbors(const std::string& node_id) const;

    /// GET /api/health. 503 until a graph is set.
    Response health() const;

    const ServiceConfig& config() const noexcept { return config_; }

private:
    llm::ChatBackend& backend_;
    ServiceConfig config_;
    mutable std::mutex graph_mutex_;
    std::shared_ptr<const kg::KnowledgeGraph> graph_;
};

/// Registers the three endpoints (and CORS preflight when configured).
void mount(const Service& service, httplib::Server& server);

}  // namespace graphrag::service
