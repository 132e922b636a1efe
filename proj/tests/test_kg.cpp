#include "graphrag/kg/bundle.hpp"
#include "graphrag/kg/graph.hpp"
#include "graphrag/kg/loader.hpp"

#include "support.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <sstream>

using namespace graphrag::kg;
using testsupport::load_fixture;
using Ids = std::vector<std::string>;

namespace {

KnowledgeGraph load_text(const std::string& nodes, const std::string& edges, const std::string& sentences = "",
                         const std::string* aliases = nullptr) {
    std::istringstream n(nodes), e(edges), s(sentences);
    std::istringstream a(aliases ? *aliases : "");
    return load_graph(n, e, s, aliases ? &a : nullptr);
}

KgError load_error(const std::string& nodes, const std::string& edges, const std::string& sentences = "") {
    try {
        load_text(nodes, edges, sentences);
    } catch (const KgError& e) {
        return e;
    }
    FAIL("expected KgError");
    throw std::logic_error("unreachable");
}

// Brute-force index over the edge map.
std::pair<Ids, Ids> scan_incident(const KnowledgeGraph& g, const std::string& node) {
    Ids in, out;
    for (const auto& [id, e] : g.edges()) {
        if (e.dst == node) in.push_back(id);
        if (e.src == node) out.push_back(id);
    }
    return {in, out};
}

}  // namespace

TEST_CASE("empty streams give an empty graph") {
    auto g = load_text("", "", "");
    CHECK(g.nodes().empty());
    CHECK(g.edges().empty());
    CHECK(g.sentences().empty());
}

TEST_CASE("two nodes and one edge build both indexes") {
    auto g = load_fixture("tiny");
    CHECK(g.nodes().size() == 2);
    CHECK(g.edges().size() == 1);
    CHECK(g.out_index().at("a") == Ids{"e1"});
    CHECK(g.in_index().at("b") == Ids{"e1"});
    for (const auto& [id, node] : g.nodes()) {
        auto [in, out] = scan_incident(g, id);
        CHECK(g.neighbors(id).incoming == in);
        CHECK(g.neighbors(id).outgoing == out);
    }
    CHECK(g.node("a").normalized_label == "a");
}

TEST_CASE("dangling endpoint names the missing node and the edge line") {
    auto e = load_error(R"({"id":"a","label":"A","category":"part"})",
                        "{\"id\":\"e1\",\"src\":\"a\",\"dst\":\"a\",\"relation\":\"causal\"}\n"
                        "{\"id\":\"e2\",\"src\":\"a\",\"dst\":\"z\",\"relation\":\"causal\"}\n");
    CHECK(e.kind() == KgErrorKind::DanglingEndpoint);
    CHECK(e.subject() == "z");
    CHECK(e.record() == "e2");
    CHECK(e.line() == 2u);
    CHECK(std::string(e.what()).find("z") != std::string::npos);
}

TEST_CASE("load errors") {
    const std::string node_a = R"({"id":"a","label":"A","category":"part"})";
    SUBCASE("duplicate node id") {
        auto e = load_error(node_a + "\n" + node_a + "\n", "");
        CHECK(e.kind() == KgErrorKind::DuplicateId);
        CHECK(e.subject() == "a");
        CHECK(e.line() == 2u);
    }
    SUBCASE("duplicate edge id") {
        auto e = load_error(node_a, "{\"id\":\"e1\",\"src\":\"a\",\"dst\":\"a\",\"relation\":\"causal\"}\n"
                                    "{\"id\":\"e1\",\"src\":\"a\",\"dst\":\"a\",\"relation\":\"status\"}\n");
        CHECK(e.kind() == KgErrorKind::DuplicateId);
        CHECK(e.subject() == "e1");
        CHECK(e.line() == 2u);
    }
    SUBCASE("dangling provenance") {
        auto e = load_error(node_a,
                            R"({"id":"e1","src":"a","dst":"a","relation":"causal","provenance":[{"doc":"d","sent":9}]})");
        CHECK(e.kind() == KgErrorKind::DanglingProvenance);
        CHECK(e.record() == "e1");
        CHECK(e.line() == 1u);
    }
    SUBCASE("malformed json carries its line") {
        auto e = load_error(node_a + "\n\n{not json}\n", "");
        CHECK(e.kind() == KgErrorKind::MalformedRecord);
        CHECK(e.line() == 3u);
    }
    SUBCASE("unknown category") {
        auto e = load_error(R"({"id":"a","label":"A","category":"widget"})", "");
        CHECK(e.kind() == KgErrorKind::MalformedRecord);
        CHECK(e.line() == 1u);
    }
    SUBCASE("unknown relation") {
        auto e = load_error(node_a, R"({"id":"e1","src":"a","dst":"a","relation":"causes"})");
        CHECK(e.kind() == KgErrorKind::MalformedRecord);
    }
    SUBCASE("empty label") {
        auto e = load_error(R"({"id":"a","label":"","category":"part"})", "");
        CHECK(e.kind() == KgErrorKind::MalformedRecord);
    }
    SUBCASE("duplicate sentence ref") {
        auto e = load_error("", "", "{\"doc\":\"d\",\"sent\":1,\"text\":\"x\"}\n{\"doc\":\"d\",\"sent\":1,\"text\":\"y\"}\n");
        CHECK(e.kind() == KgErrorKind::DuplicateId);
    }
}

TEST_CASE("self-loops and parallel edges are accepted") {
    auto g = load_text(R"({"id":"a","label":"A","category":"part"})",
                       "{\"id\":\"e1\",\"src\":\"a\",\"dst\":\"a\",\"relation\":\"causal\"}\n"
                       "{\"id\":\"e2\",\"src\":\"a\",\"dst\":\"a\",\"relation\":\"causal\"}\n");
    CHECK(g.neighbors("a").incoming == Ids{"e1", "e2"});
    CHECK(g.neighbors("a").outgoing == Ids{"e1", "e2"});
}

TEST_CASE("match_nodes") {
    auto g = load_text("{\"id\":\"n2\",\"label\":\"engine\",\"category\":\"system\"}\n"
                       "{\"id\":\"n1\",\"label\":\"Engine\",\"category\":\"system\"}\n"
                       "{\"id\":\"n3\",\"label\":\"clutch\",\"category\":\"system\"}\n"
                       "{\"id\":\"n4\",\"label\":\"クラッチ\",\"category\":\"system\"}\n",
                       "");
    CHECK(g.match_nodes("Clutch") == Ids{"n3"});
    CHECK(g.match_nodes("CLUTCH") == Ids{"n3"});
    CHECK(g.match_nodes("ｃｌｕｔｃｈ") == Ids{"n3"});
    CHECK(g.match_nodes(" clutch ") == Ids{"n3"});
    CHECK(g.match_nodes("ｸﾗｯﾁ") == Ids{"n4"});
    CHECK(g.match_nodes("gearbox").empty());
    CHECK(g.match_nodes("engine") == Ids{"n1", "n2"});
}

TEST_CASE("aliases resolve to their node") {
    const std::string aliases = R"({"alias":"DMF","node":"a"})";
    auto g = load_text(R"({"id":"a","label":"dual mass flywheel","category":"component"})", "", "", &aliases);
    CHECK(g.match_nodes("dmf") == Ids{"a"});
    CHECK(g.match_nodes("Dual Mass Flywheel") == Ids{"a"});
    const std::string bad = R"({"alias":"X","node":"zz"})";
    CHECK_THROWS_AS(load_text(R"({"id":"a","label":"A","category":"part"})", "", "", &bad), KgError);
}

TEST_CASE("neighbors") {
    auto g = load_fixture("triad");
    CHECK(g.neighbors("a") == Incident{{"e2"}, {"e1"}});
    CHECK(g.neighbors("d") == Incident{{}, {}});
    try {
        g.neighbors("zz");
        FAIL("expected UnknownNode");
    } catch (const KgError& e) {
        CHECK(e.kind() == KgErrorKind::UnknownNode);
    }
}

TEST_CASE("sentences_for") {
    auto g = load_fixture("triad");
    auto tiny = load_fixture("tiny");
    const Ids none{"e1"};
    CHECK(tiny.sentences_for(none).empty());

    const Ids both{"e2", "e1"};
    auto records = g.sentences_for(both);
    std::vector<SentenceRef> refs;
    for (const auto& r : records) refs.push_back(r.ref);
    // e1 and e2 share (r1, 2); three distinct refs over two documents.
    CHECK(refs == std::vector<SentenceRef>{{"r1", 1}, {"r1", 2}, {"r2", 1}});

    const Ids unknown{"e9"};
    CHECK_THROWS_AS(g.sentences_for(unknown), KgError);
}

TEST_CASE("sentences_for with three edges and four refs across two documents") {
    auto g = load_text(R"({"id":"a","label":"A","category":"part"})",
                       "{\"id\":\"e1\",\"src\":\"a\",\"dst\":\"a\",\"relation\":\"causal\",\"provenance\":[{\"doc\":\"y\",\"sent\":2}]}\n"
                       "{\"id\":\"e2\",\"src\":\"a\",\"dst\":\"a\",\"relation\":\"causal\",\"provenance\":[{\"doc\":\"x\",\"sent\":3},{\"doc\":\"y\",\"sent\":1}]}\n"
                       "{\"id\":\"e3\",\"src\":\"a\",\"dst\":\"a\",\"relation\":\"causal\",\"provenance\":[{\"doc\":\"x\",\"sent\":1}]}\n",
                       "{\"doc\":\"x\",\"sent\":1,\"text\":\"x1\"}\n{\"doc\":\"x\",\"sent\":3,\"text\":\"x3\"}\n"
                       "{\"doc\":\"y\",\"sent\":1,\"text\":\"y1\"}\n{\"doc\":\"y\",\"sent\":2,\"text\":\"y2\"}\n");
    const Ids all{"e1", "e2", "e3"};
    std::vector<std::string> texts;
    for (const auto& r : g.sentences_for(all)) texts.push_back(r.text);
    CHECK(texts == std::vector<std::string>{"x1", "x3", "y1", "y2"});
}

TEST_CASE("neighbors equal a brute-force scan on random graphs") {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = 1 + rng() % 50;
        const auto m = rng() % 201;
        auto g = testsupport::random_graph(rng, n, m);
        for (const auto& [id, node] : g.nodes()) {
            auto [in, out] = scan_incident(g, id);
            auto inc = g.neighbors(id);
            REQUIRE(inc.incoming == in);
            REQUIRE(inc.outgoing == out);
        }
    }
}

TEST_CASE("serialize round-trips") {
    auto check = [](const KnowledgeGraph& g) {
        auto text = serialize(g);
        std::istringstream n(text.nodes), e(text.edges), s(text.sentences), a(text.aliases);
        auto back = load_graph(n, e, s, &a);
        CHECK(back == g);
    };
    check(load_fixture("triad"));
    check(testsupport::load_synthetic());
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        check(testsupport::random_graph(rng, 1 + rng() % 30, rng() % 80));
    }
}

TEST_CASE("import_triples") {
    std::istringstream tsv("Clutch Disc\tstatus\twear\nclutch disc\tcausal\tslipping\n\nwear\tcausal\tslipping\n");
    auto g = import_triples(tsv);
    CHECK(g.nodes().size() == 3);
    CHECK(g.edges().size() == 3);
    CHECK(g.node("n1").label == "Clutch Disc");
    CHECK(g.node("n1").category == NodeCategory::Other);
    CHECK(g.edge("e2").src == "n1");
    CHECK(g.edge("e2").relation == RelationKind::Causal);

    std::istringstream bad("a\tcauses\tb\n");
    CHECK_THROWS_AS(import_triples(bad), KgError);
    std::istringstream short_line("a\tcausal\n");
    CHECK_THROWS_AS(import_triples(short_line), KgError);
}

TEST_CASE("enum names round-trip") {
    for (auto c : {NodeCategory::System, NodeCategory::Component, NodeCategory::Part, NodeCategory::Status,
                   NodeCategory::Other}) {
        CHECK(parse_category(to_string(c)) == c);
    }
    for (auto r : {RelationKind::Causal, RelationKind::WeakCausal, RelationKind::StatusRelation,
                   RelationKind::Hierarchical}) {
        CHECK(parse_relation(to_string(r)) == r);
    }
    CHECK(to_string(RelationKind::WeakCausal) == "weak_causal");
}

TEST_CASE("bundle write, load and tamper detection") {
    testsupport::TempDir dir("bundle");
    const auto out = dir / "kb";
    auto counts = write_bundle(testsupport::fixture_files("triad"), out);
    CHECK(counts.nodes == 4);
    CHECK(counts.edges == 2);
    CHECK(counts.sentences == 3);
    CHECK(load_bundle(out) == load_fixture("triad"));

    auto manifest = nlohmann::json::parse(testsupport::read_file(out / "manifest.json"));
    CHECK(manifest["schema_version"] == 1);
    CHECK(manifest["files"]["nodes.jsonl"]["sha256"] ==
          sha256_hex(testsupport::read_file(out / "nodes.jsonl")));

    testsupport::write_file(out / "edges.jsonl", testsupport::read_file(out / "edges.jsonl") + "\n");
    CHECK_THROWS_AS(load_bundle(out), BundleError);
    CHECK_THROWS_AS(load_bundle(dir / "missing"), BundleError);
    CHECK_THROWS_AS(write_bundle(testsupport::fixture_files("dangling"), dir / "bad"), KgError);
}

TEST_CASE("sha256 of a known vector") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
