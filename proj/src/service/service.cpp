#include "graphrag/service/service.hpp"

#include "graphrag/pipeline/subgraph.hpp"
#include "graphrag/text/unicode.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <algorithm>

namespace graphrag::service {

using nlohmann::json;

namespace {

Response reply(int status, const json& body) {
    return Response{status, body.dump()};
}

Response error(int status, const std::string& message, const std::string& stage = {}) {
    json body = {{"error", message}};
    if (!stage.empty()) {
        body["stage"] = stage;
    }
    return reply(status, body);
}

struct QueryRequest {
    std::string question;
    pipeline::PipelineConfig config;
    pipeline::Overrides overrides;
};

std::vector<int> id_list(const json& body, const char* key) {
    std::vector<int> out;
    auto it = body.find(key);
    if (it == body.end() || it->is_null()) {
        return out;
    }
    if (!it->is_array()) {
        throw std::invalid_argument(std::string("\"") + key + "\" must be an array of integers");
    }
    for (const auto& v : *it) {
        if (!v.is_number_integer()) {
            throw std::invalid_argument(std::string("\"") + key + "\" must be an array of integers");
        }
        out.push_back(v.get<int>());
    }
    return out;
}

QueryRequest parse_query(const std::string& text, const pipeline::PipelineConfig& defaults) {
    json body;
    try {
        body = json::parse(text);
    } catch (const json::parse_error&) {
        throw std::invalid_argument("request body is not valid JSON");
    }
    if (!body.is_object()) {
        throw std::invalid_argument("request body must be a JSON object");
    }
    QueryRequest req;
    req.config = defaults;

    auto q = body.find("question");
    if (q == body.end() || !q->is_string()) {
        throw std::invalid_argument("\"question\" must be a string");
    }
    req.question = q->get<std::string>();
    if (text::trim(req.question).empty()) {
        throw std::invalid_argument("\"question\" must not be empty");
    }
    if (auto v = body.find("variant"); v != body.end() && !v->is_null()) {
        auto variant = v->is_string() ? pipeline::parse_variant(v->get<std::string>()) : std::nullopt;
        if (!variant) {
            throw std::invalid_argument("unknown variant");
        }
        req.config.variant = *variant;
    }
    if (auto s = body.find("seed"); s != body.end() && !s->is_null()) {
        if (!s->is_number_unsigned()) {
            throw std::invalid_argument("\"seed\" must be a non-negative integer");
        }
        req.config.seed = s->get<uint64_t>();
    }
    if (auto f = body.find("filter_enabled"); f != body.end() && !f->is_null()) {
        if (!f->is_boolean()) {
            throw std::invalid_argument("\"filter_enabled\" must be a boolean");
        }
        req.config.filter_enabled = f->get<bool>();
    }
    req.overrides.include = id_list(body, "include_ids");
    req.overrides.exclude = id_list(body, "exclude_ids");
    return req;
}

json node_json(const kg::Node& n) {
    return {{"id", n.id}, {"label", n.label}, {"category", std::string(kg::to_string(n.category))}};
}

}  // namespace

Service::Service(llm::ChatBackend& backend, ServiceConfig config) : backend_(backend), config_(std::move(config)) {}

void Service::set_graph(std::shared_ptr<const kg::KnowledgeGraph> graph) {
    std::lock_guard lock(graph_mutex_);
    graph_ = std::move(graph);
}

std::shared_ptr<const kg::KnowledgeGraph> Service::graph() const {
    std::lock_guard lock(graph_mutex_);
    return graph_;
}

Response Service::query(const std::string& body) const {
    auto g = graph();
    if (!g) {
        return error(503, "graph not loaded");
    }
    QueryRequest req;
    try {
        req = parse_query(body, config_.pipeline);
    } catch (const std::invalid_argument& e) {
        return error(400, e.what());
    }
    for (int id : req.overrides.include) {
        if (std::count(req.overrides.exclude.begin(), req.overrides.exclude.end(), id)) {
            return error(422, "sub-graph " + std::to_string(id) + " is both included and excluded", "override");
        }
    }

    pipeline::Answer answer;
    try {
        answer = pipeline::answer_query(req.question, *g, req.config, backend_, req.overrides);
    } catch (const pipeline::PipelineError& e) {
        return error(e.backend_error() ? 502 : 500, e.what(), e.stage());
    }
    if (!answer.trace.override_ignored.empty()) {
        return error(422, "override ids name no extracted sub-graph", "override");
    }

    json blocks = json::object();
    for (const auto& sg : answer.trace.extracted) {
        blocks[std::to_string(sg.id)] = pipeline::render_subgraph(sg, *g);
    }
    return reply(200, {{"answer", answer.text},
                       {"trace", pipeline::to_json(answer.trace, false)},
                       {"blocks", blocks}});
}

Response Service::neighbors(const std::string& node_id) const {
    auto g = graph();
    if (!g) {
        return error(503, "graph not loaded");
    }
    if (node_id.empty()) {
        return error(400, "missing \"node\" parameter");
    }
    const auto* node = g->find_node(node_id);
    if (!node) {
        return error(404, "unknown node \"" + node_id + "\"");
    }
    const auto sg = pipeline::one_hop(*g, node_id);
    json edges = json::array();
    for (const auto& id : sg.edges) {
        const auto& e = g->edge(id);
        json prov = json::array();
        for (const auto& ref : e.provenance) {
            prov.push_back({{"doc", ref.doc_id}, {"sent", ref.sentence_id}});
        }
        edges.push_back({{"id", e.id},
                         {"src", e.src},
                         {"dst", e.dst},
                         {"relation", std::string(kg::to_string(e.relation))},
                         {"provenance", prov}});
    }
    json neighbors = json::array();
    for (const auto& id : sg.neighbor_nodes) {
        neighbors.push_back(node_json(g->node(id)));
    }
    return reply(200, {{"node", node_json(*node)},
                       {"block", pipeline::render_subgraph(sg, *g)},
                       {"edges", edges},
                       {"neighbors", neighbors}});
}

Response Service::health() const {
    auto g = graph();
    if (!g) {
        return reply(503, {{"status", "loading"}, {"backend_kind", std::string(backend_.kind())}});
    }
    return reply(200, {{"status", "ok"},
                       {"graph_stats",
                        {{"nodes", g->nodes().size()},
                         {"edges", g->edges().size()},
                         {"sentences", g->sentences().size()}}},
                       {"backend_kind", std::string(backend_.kind())}});
}

void mount(const Service& service, httplib::Server& server) {
    const auto origin = service.config().ui_origin;
    auto send = [origin](httplib::Response& res, const Response& r) {
        res.status = r.status;
        res.set_content(r.body, "application/json");
        if (!origin.empty()) {
            res.set_header("Access-Control-Allow-Origin", origin);
            res.set_header("Vary", "Origin");
        }
    };
    server.Post("/api/query", [&service, send](const httplib::Request& req, httplib::Response& res) {
        send(res, service.query(req.body));
    });
    server.Get("/api/graph/neighbors", [&service, send](const httplib::Request& req, httplib::Response& res) {
        send(res, service.neighbors(req.get_param_value("node")));
    });
    server.Get("/api/health", [&service, send](const httplib::Request&, httplib::Response& res) {
        send(res, service.health());
    });
    if (!origin.empty()) {
        server.Options(R"(/api/.*)", [origin](const httplib::Request&, httplib::Response& res) {
            res.status = 204;
            res.set_header("Access-Control-Allow-Origin", origin);
            res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Content-Type");
            res.set_header("Vary", "Origin");
        });
    }
}

}  // namespace graphrag::service
