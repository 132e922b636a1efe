#include "graphrag/kg/graph.hpp"

#include "graphrag/text/unicode.hpp"

#include <algorithm>
#include <set>

namespace graphrag::kg {

std::string_view to_string(NodeCategory category) {
    switch (category) {
        case NodeCategory::System: return "system";
        case NodeCategory::Component: return "component";
        case NodeCategory::Part: return "part";
        case NodeCategory::Status: return "status";
        case NodeCategory::Other: return "other";
    }
    return "other";
}

std::string_view to_string(RelationKind relation) {
    switch (relation) {
        case RelationKind::Causal: return "causal";
        case RelationKind::WeakCausal: return "weak_causal";
        case RelationKind::StatusRelation: return "status";
        case RelationKind::Hierarchical: return "hierarchical";
    }
    return "causal";
}

std::optional<NodeCategory> parse_category(std::string_view name) {
    for (auto c : {NodeCategory::System, NodeCategory::Component, NodeCategory::Part, NodeCategory::Status,
                   NodeCategory::Other}) {
        if (to_string(c) == name) {
            return c;
        }
    }
    return std::nullopt;
}

std::optional<RelationKind> parse_relation(std::string_view name) {
    for (auto r : {RelationKind::Causal, RelationKind::WeakCausal, RelationKind::StatusRelation,
                   RelationKind::Hierarchical}) {
        if (to_string(r) == name) {
            return r;
        }
    }
    return std::nullopt;
}

std::string_view to_string(KgErrorKind kind) {
    switch (kind) {
        case KgErrorKind::DuplicateId: return "DuplicateId";
        case KgErrorKind::DanglingEndpoint: return "DanglingEndpoint";
        case KgErrorKind::DanglingProvenance: return "DanglingProvenance";
        case KgErrorKind::MalformedRecord: return "MalformedRecord";
        case KgErrorKind::UnknownNode: return "UnknownNode";
        case KgErrorKind::UnknownEdge: return "UnknownEdge";
    }
    return "KgError";
}

KgError::KgError(KgErrorKind kind, std::string subject, std::string message, std::string record,
                 std::optional<std::size_t> line)
    : std::runtime_error(std::string(to_string(kind)) + ": " +
                         (line ? "line " + std::to_string(*line) + ": " : std::string()) + message),
      kind_(kind), subject_(std::move(subject)), message_(std::move(message)), record_(std::move(record)),
      line_(line) {}

KnowledgeGraph KnowledgeGraph::build(std::vector<Node> nodes, std::vector<Edge> edges,
                                     std::vector<SentenceRecord> sentences, std::vector<Alias> aliases) {
    KnowledgeGraph g;

    for (auto& s : sentences) {
        if (s.text.empty()) {
            throw KgError(KgErrorKind::MalformedRecord, s.ref.doc_id,
                          "empty sentence text for " + s.ref.doc_id + "#" + std::to_string(s.ref.sentence_id));
        }
        auto ref = s.ref;
        if (!g.sentences_.emplace(ref, std::move(s)).second) {
            throw KgError(KgErrorKind::DuplicateId, ref.doc_id,
                          "duplicate sentence " + ref.doc_id + "#" + std::to_string(ref.sentence_id));
        }
    }

    for (auto& n : nodes) {
        if (n.id.empty()) {
            throw KgError(KgErrorKind::MalformedRecord, n.id, "node with empty id");
        }
        if (n.label.empty()) {
            throw KgError(KgErrorKind::MalformedRecord, n.id, "node '" + n.id + "' has an empty label", n.id);
        }
        n.normalized_label = text::normalize_label(n.label);
        auto id = n.id;
        if (!g.nodes_.emplace(id, std::move(n)).second) {
            throw KgError(KgErrorKind::DuplicateId, id, "duplicate node id '" + id + "'", id);
        }
    }

    for (auto& e : edges) {
        if (e.id.empty()) {
            throw KgError(KgErrorKind::MalformedRecord, e.id, "edge with empty id");
        }
        for (const auto* endpoint : {&e.src, &e.dst}) {
            if (!g.nodes_.contains(*endpoint)) {
                throw KgError(KgErrorKind::DanglingEndpoint, *endpoint,
                              "edge '" + e.id + "' references unknown node '" + *endpoint + "'", e.id);
            }
        }
        for (const auto& ref : e.provenance) {
            if (!g.sentences_.contains(ref)) {
                throw KgError(KgErrorKind::DanglingProvenance, ref.doc_id + "#" + std::to_string(ref.sentence_id),
                              "edge '" + e.id + "' cites unknown sentence " + ref.doc_id + "#" +
                                  std::to_string(ref.sentence_id),
                              e.id);
            }
        }
        auto id = e.id;
        if (!g.edges_.emplace(id, std::move(e)).second) {
            throw KgError(KgErrorKind::DuplicateId, id, "duplicate edge id '" + id + "'", id);
        }
    }

    for (const auto& a : aliases) {
        if (!g.nodes_.contains(a.node_id)) {
            throw KgError(KgErrorKind::DanglingEndpoint, a.node_id,
                          "alias '" + a.alias + "' references unknown node '" + a.node_id + "'", a.alias);
        }
    }
    g.aliases_ = std::move(aliases);

    // edges_ iterates in id order, so every adjacency list comes out sorted.
    for (const auto& [id, e] : g.edges_) {
        g.out_index_[e.src].push_back(id);
        g.in_index_[e.dst].push_back(id);
    }

    for (const auto& [id, n] : g.nodes_) {
        g.label_index_[n.normalized_label].push_back(id);
    }
    for (const auto& a : g.aliases_) {
        auto& ids = g.label_index_[text::normalize_label(a.alias)];
        if (std::find(ids.begin(), ids.end(), a.node_id) == ids.end()) {
            ids.push_back(a.node_id);
        }
    }
    for (auto& [label, ids] : g.label_index_) {
        std::sort(ids.begin(), ids.end());
    }
    return g;
}

const Node* KnowledgeGraph::find_node(std::string_view id) const {
    auto it = nodes_.find(std::string(id));
    return it == nodes_.end() ? nullptr : &it->second;
}

const Edge* KnowledgeGraph::find_edge(std::string_view id) const {
    auto it = edges_.find(std::string(id));
    return it == edges_.end() ? nullptr : &it->second;
}

const Node& KnowledgeGraph::node(std::string_view id) const {
    if (const auto* n = find_node(id)) {
        return *n;
    }
    throw KgError(KgErrorKind::UnknownNode, std::string(id), "unknown node '" + std::string(id) + "'");
}

const Edge& KnowledgeGraph::edge(std::string_view id) const {
    if (const auto* e = find_edge(id)) {
        return *e;
    }
    throw KgError(KgErrorKind::UnknownEdge, std::string(id), "unknown edge '" + std::string(id) + "'");
}

std::vector<std::string> KnowledgeGraph::match_nodes(std::string_view term) const {
    auto it = label_index_.find(text::normalize_label(term));
    if (it == label_index_.end()) {
        return {};
    }
    return it->second;
}

Incident KnowledgeGraph::neighbors(std::string_view node_id) const {
    node(node_id);
    Incident result;
    const std::string key(node_id);
    if (auto it = in_index_.find(key); it != in_index_.end()) {
        result.incoming = it->second;
    }
    if (auto it = out_index_.find(key); it != out_index_.end()) {
        result.outgoing = it->second;
    }
    return result;
}

std::vector<SentenceRecord> KnowledgeGraph::sentences_for(std::span<const std::string> edge_ids) const {
    std::set<SentenceRef> refs;
    for (const auto& id : edge_ids) {
        const auto& e = edge(id);
        refs.insert(e.provenance.begin(), e.provenance.end());
    }
    std::vector<SentenceRecord> out;
    out.reserve(refs.size());
    for (const auto& ref : refs) {
        out.push_back(sentences_.at(ref));
    }
    return out;
}

std::vector<std::string> KnowledgeGraph::lexicon() const {
    std::set<std::string> labels;
    for (const auto& [id, n] : nodes_) {
        labels.insert(n.label);
    }
    for (const auto& a : aliases_) {
        labels.insert(a.alias);
    }
    return {labels.begin(), labels.end()};
}

}  // namespace graphrag::kg
