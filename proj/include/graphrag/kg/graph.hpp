#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace graphrag::kg {

enum class NodeCategory { System, Component, Part, Status, Other };
enum class RelationKind { Causal, WeakCausal, StatusRelation, Hierarchical };

/// Wire names: "system", "component", ... / "causal", "weak_causal", "status", "hierarchical".
std::string_view to_string(NodeCategory category);
std::string_view to_string(RelationKind relation);
std::optional<NodeCategory> parse_category(std::string_view name);
std::optional<RelationKind> parse_relation(std::string_view name);

struct SentenceRef {
    std::string doc_id;
    int64_t sentence_id = 0;

    auto operator<=>(const SentenceRef&) const = default;
    bool operator==(const SentenceRef&) const = default;
};

struct SentenceRecord {
    SentenceRef ref;
    std::string text;

    bool operator==(const SentenceRecord&) const = default;
};

struct Node {
    std::string id;
    std::string label;
    NodeCategory category = NodeCategory::Other;
    std::string normalized_label;

    bool operator==(const Node&) const = default;
};

struct Edge {
    std::string id;
    std::string src;
    std::string dst;
    RelationKind relation = RelationKind::Causal;
    std::vector<SentenceRef> provenance;

    bool operator==(const Edge&) const = default;
};

struct Alias {
    std::string alias;
    std::string node_id;

    bool operator==(const Alias&) const = default;
};

enum class KgErrorKind {
    DuplicateId,
    DanglingEndpoint,
    DanglingProvenance,
    MalformedRecord,
    UnknownNode,
    UnknownEdge,
};

std::string_view to_string(KgErrorKind kind);

class KgError : public std::runtime_error {
public:
    /// `subject` is the offending value (e.g. the missing node id), `record`
    /// the id of the record at fault, `line` its 1-based line when known.
    KgError(KgErrorKind kind, std::string subject, std::string message, std::string record = {},
            std::optional<std::size_t> line = {});

    KgErrorKind kind() const noexcept { return kind_; }
    const std::string& subject() const noexcept { return subject_; }
    const std::string& message() const noexcept { return message_; }
    const std::string& record() const noexcept { return record_; }
    std::optional<std::size_t> line() const noexcept { return line_; }

private:
    KgErrorKind kind_;
    std::string subject_;
    std::string message_;
    std::string record_;
    std::optional<std::size_t> line_;
};

struct Incident {
    std::vector<std::string> incoming;
    std::vector<std::string> outgoing;

    bool operator==(const Incident&) const = default;
};

/// Immutable failure knowledge graph. Built once through `build`, which
/// validates referential integrity and constructs every index; afterwards the
/// graph is safe for any number of concurrent readers.
class KnowledgeGraph {
public:
    KnowledgeGraph() = default;

    /// Nodes' normalized_label fields are recomputed from their labels.
    /// Adjacency lists are sorted by edge id.
    static KnowledgeGraph build(std::vector<Node> nodes, std::vector<Edge> edges,
                                std::vector<SentenceRecord> sentences, std::vector<Alias> aliases = {});

    const std::map<std::string, Node>& nodes() const noexcept { return nodes_; }
    const std::map<std::string, Edge>& edges() const noexcept { return edges_; }
    const std::map<SentenceRef, SentenceRecord>& sentences() const noexcept { return sentences_; }
    const std::map<std::string, std::vector<std::string>>& label_index() const noexcept { return label_index_; }
    const std::map<std::string, std::vector<std::string>>& out_index() const noexcept { return out_index_; }
    const std::map<std::string, std::vector<std::string>>& in_index() const noexcept { return in_index_; }
    const std::vector<Alias>& aliases() const noexcept { return aliases_; }

    const Node* find_node(std::string_view id) const;
    const Edge* find_edge(std::string_view id) const;
    const Node& node(std::string_view id) const;  // throws UnknownNode
    const Edge& edge(std::string_view id) const;  // throws UnknownEdge

    /// Ids of all nodes whose normalized label (or an alias of which) equals
    /// the normalized term, sorted by id. Unmatched terms give an empty list.
    std::vector<std::string> match_nodes(std::string_view term) const;

    Incident neighbors(std::string_view node_id) const;

    /// Provenance sentences of the given edges, deduplicated and ordered by
    /// (doc_id, sentence_id).
    std::vector<SentenceRecord> sentences_for(std::span<const std::string> edge_ids) const;

    /// Distinct node labels, sorted. Used as the mock retriever's lexicon.
    std::vector<std::string> lexicon() const;

    bool operator==(const KnowledgeGraph&) const = default;

private:
    std::map<std::string, Node> nodes_;
    std::map<std::string, Edge> edges_;
    std::map<SentenceRef, SentenceRecord> sentences_;
    std::map<std::string, std::vector<std::string>> out_index_;
    std::map<std::string, std::vector<std::string>> in_index_;
    std::map<std::string, std::vector<std::string>> label_index_;
    std::vector<Alias> aliases_;
};

}  // namespace graphrag::kg
