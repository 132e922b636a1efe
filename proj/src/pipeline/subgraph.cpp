#include "graphrag/pipeline/subgraph.hpp"

#include <algorithm>
#include <set>

namespace graphrag::pipeline {

std::string_view to_string(Variant variant) {
    switch (variant) {
        case Variant::Vanilla: return "vanilla";
        case Variant::WithSentences: return "with-sentences";
        case Variant::OnlySentences: return "only-sentences";
    }
    return "vanilla";
}

std::optional<Variant> parse_variant(std::string_view name) {
    for (auto v : {Variant::Vanilla, Variant::WithSentences, Variant::OnlySentences}) {
        if (to_string(v) == name) {
            return v;
        }
    }
    return std::nullopt;
}

SubGraph one_hop(const kg::KnowledgeGraph& graph, const std::string& node_id, std::string source_term) {
    const auto incident = graph.neighbors(node_id);
    std::set<std::string> edges(incident.incoming.begin(), incident.incoming.end());
    edges.insert(incident.outgoing.begin(), incident.outgoing.end());

    std::set<std::string> neighbors;
    for (const auto& id : edges) {
        const auto& e = graph.edge(id);
        for (const auto* end : {&e.src, &e.dst}) {
            if (*end != node_id) {
                neighbors.insert(*end);
            }
        }
    }

    SubGraph sg;
    sg.target = node_id;
    sg.edges.assign(edges.begin(), edges.end());
    sg.neighbor_nodes.assign(neighbors.begin(), neighbors.end());
    sg.source_term = std::move(source_term);
    return sg;
}

Extraction extract_subgraphs(const TermSet& terms, const kg::KnowledgeGraph& graph) {
    Extraction out;
    std::set<std::string> targets;
    for (const auto& term : terms) {
        const auto ids = graph.match_nodes(term);
        if (ids.empty()) {
            out.unmatched_terms.push_back(term);
            continue;
        }
        out.matched_terms.push_back(term);
        for (const auto& id : ids) {
            if (!targets.insert(id).second) {
                continue;
            }
            auto sg = one_hop(graph, id, term);
            sg.id = static_cast<int>(out.subgraphs.size()) + 1;
            out.subgraphs.push_back(std::move(sg));
        }
    }
    return out;
}

std::string render_subgraph(const SubGraph& sg, const kg::KnowledgeGraph& graph) {
    std::string out = "Target: " + graph.node(sg.target).label;

    std::vector<std::string> ids = sg.edges;
    std::sort(ids.begin(), ids.end());
    std::set<std::string> seen;
    for (const auto& id : ids) {
        const auto& e = graph.edge(id);
        std::string line = graph.node(e.src).label + " -[" + std::string(kg::to_string(e.relation)) + "]-> " +
                           graph.node(e.dst).label;
        if (seen.insert(line).second) {
            out += "\n";
            out += line;
        }
    }
    return out;
}

}  // namespace graphrag::pipeline
