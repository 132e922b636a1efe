#include "graphrag/kg/loader.hpp"

#include "graphrag/text/unicode.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace graphrag::kg {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(std::size_t line, const std::string& what, const std::string& subject = {}) {
    throw KgError(KgErrorKind::MalformedRecord, subject, what, subject, line);
}

void for_each_record(std::istream& in, const std::function<void(const json&, std::size_t)>& fn) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) {
            continue;
        }
        json record;
        try {
            record = json::parse(line);
        } catch (const json::parse_error& e) {
            malformed(lineno, std::string("invalid JSON: ") + e.what());
        }
        if (!record.is_object()) {
            malformed(lineno, "record is not a JSON object");
        }
        fn(record, lineno);
    }
}

std::string require_string(const json& record, const char* key, std::size_t line) {
    auto it = record.find(key);
    if (it == record.end() || !it->is_string()) {
        malformed(line, std::string("missing or non-string field \"") + key + "\"");
    }
    return it->get<std::string>();
}

int64_t require_int(const json& record, const char* key, std::size_t line) {
    auto it = record.find(key);
    if (it == record.end() || !it->is_number_integer()) {
        malformed(line, std::string("missing or non-integer field \"") + key + "\"");
    }
    return it->get<int64_t>();
}

SentenceRef parse_ref(const json& record, std::size_t line) {
    return SentenceRef{require_string(record, "doc", line), require_int(record, "sent", line)};
}

}  // namespace

KnowledgeGraph load_graph(std::istream& nodes_in, std::istream& edges_in, std::istream& sentences_in,
                          std::istream* aliases_in) {
    std::vector<Node> nodes;
    std::vector<Edge> edges;
    std::vector<SentenceRecord> sentences;
    std::vector<Alias> aliases;
    std::map<std::string, std::size_t> node_lines;
    std::map<std::string, std::size_t> edge_lines;

    for_each_record(sentences_in, [&](const json& r, std::size_t line) {
        sentences.push_back(SentenceRecord{parse_ref(r, line), require_string(r, "text", line)});
        if (sentences.back().text.empty()) {
            malformed(line, "empty sentence text");
        }
    });

    for_each_record(nodes_in, [&](const json& r, std::size_t line) {
        Node n;
        n.id = require_string(r, "id", line);
        n.label = require_string(r, "label", line);
        auto category = require_string(r, "category", line);
        auto parsed = parse_category(category);
        if (!parsed) {
            malformed(line, "unknown category \"" + category + "\"", n.id);
        }
        if (n.label.empty()) {
            malformed(line, "empty label for node '" + n.id + "'", n.id);
        }
        n.category = *parsed;
        node_lines[n.id] = line;
        nodes.push_back(std::move(n));
    });

    for_each_record(edges_in, [&](const json& r, std::size_t line) {
        Edge e;
        e.id = require_string(r, "id", line);
        e.src = require_string(r, "src", line);
        e.dst = require_string(r, "dst", line);
        auto relation = require_string(r, "relation", line);
        auto parsed = parse_relation(relation);
        if (!parsed) {
            malformed(line, "unknown relation \"" + relation + "\"", e.id);
        }
        e.relation = *parsed;
        if (auto it = r.find("provenance"); it != r.end()) {
            if (!it->is_array()) {
                malformed(line, "\"provenance\" must be an array", e.id);
            }
            for (const auto& ref : *it) {
                if (!ref.is_object()) {
                    malformed(line, "provenance entries must be objects", e.id);
                }
                e.provenance.push_back(parse_ref(ref, line));
            }
        }
        edge_lines[e.id] = line;
        edges.push_back(std::move(e));
    });

    if (aliases_in != nullptr) {
        for_each_record(*aliases_in, [&](const json& r, std::size_t line) {
            aliases.push_back(Alias{require_string(r, "alias", line), require_string(r, "node", line)});
        });
    }

    try {
        return KnowledgeGraph::build(std::move(nodes), std::move(edges), std::move(sentences), std::move(aliases));
    } catch (const KgError& e) {
        std::optional<std::size_t> line;
        const bool node_record = e.kind() == KgErrorKind::DuplicateId && node_lines.contains(e.record()) &&
                                 !edge_lines.contains(e.record());
        if (node_record) {
            line = node_lines.at(e.record());
        } else if (auto it = edge_lines.find(e.record()); it != edge_lines.end()) {
            line = it->second;
        }
        throw KgError(e.kind(), e.subject(), e.message(), e.record(), line);
    }
}

KnowledgeGraph load_graph_files(const GraphFiles& files) {
    auto open = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        if (!in) {
            throw std::runtime_error("cannot open '" + p.string() + "'");
        }
        return in;
    };
    auto nodes = open(files.nodes);
    auto edges = open(files.edges);
    auto sentences = open(files.sentences);
    if (files.aliases.empty()) {
        return load_graph(nodes, edges, sentences);
    }
    auto aliases = open(files.aliases);
    return load_graph(nodes, edges, sentences, &aliases);
}

KnowledgeGraph import_triples(std::istream& tsv) {
    std::vector<Node> nodes;
    std::vector<Edge> edges;
    std::map<std::string, std::string> id_by_label;

    auto node_for = [&](const std::string& label) {
        auto key = text::normalize_label(label);
        auto it = id_by_label.find(key);
        if (it != id_by_label.end()) {
            return it->second;
        }
        auto id = "n" + std::to_string(nodes.size() + 1);
        nodes.push_back(Node{id, label, NodeCategory::Other, {}});
        id_by_label.emplace(key, id);
        return id;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(tsv, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (text::trim(line).empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, '\t')) {
            fields.emplace_back(text::trim(field));
        }
        if (fields.size() != 3 || fields[0].empty() || fields[2].empty()) {
            malformed(lineno, "expected src_label<TAB>relation<TAB>dst_label");
        }
        auto relation = parse_relation(fields[1]);
        if (!relation) {
            malformed(lineno, "unknown relation \"" + fields[1] + "\"");
        }
        Edge e;
        e.id = "e" + std::to_string(edges.size() + 1);
        e.src = node_for(fields[0]);
        e.dst = node_for(fields[2]);
        e.relation = *relation;
        edges.push_back(std::move(e));
    }
    return KnowledgeGraph::build(std::move(nodes), std::move(edges), {});
}

SerializedGraph serialize(const KnowledgeGraph& graph) {
    SerializedGraph out;
    for (const auto& [id, n] : graph.nodes()) {
        json j = {{"id", n.id}, {"label", n.label}, {"category", std::string(to_string(n.category))}};
        out.nodes += j.dump() + "\n";
    }
    for (const auto& [id, e] : graph.edges()) {
        json prov = json::array();
        for (const auto& ref : e.provenance) {
            prov.push_back({{"doc", ref.doc_id}, {"sent", ref.sentence_id}});
        }
        json j = {{"id", e.id},
                  {"src", e.src},
                  {"dst", e.dst},
                  {"relation", std::string(to_string(e.relation))},
                  {"provenance", prov}};
        out.edges += j.dump() + "\n";
    }
    for (const auto& [ref, s] : graph.sentences()) {
        json j = {{"doc", ref.doc_id}, {"sent", ref.sentence_id}, {"text", s.text}};
        out.sentences += j.dump() + "\n";
    }
    for (const auto& a : graph.aliases()) {
        json j = {{"alias", a.alias}, {"node", a.node_id}};
        out.aliases += j.dump() + "\n";
    }
    return out;
}

}  // namespace graphrag::kg
