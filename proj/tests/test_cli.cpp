#include "support.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

using testsupport::cli;
using testsupport::run_command;
using testsupport::TempDir;
using nlohmann::json;

namespace {

std::string quote(const testsupport::fs::path& p) {
    return "'" + p.string() + "'";
}

std::string ingest_args(const std::string& dir, const testsupport::fs::path& out) {
    const auto f = testsupport::fixture_files(dir);
    return " ingest --nodes " + quote(f.nodes) + " --edges " + quote(f.edges) + " --sentences " +
           quote(f.sentences) + " --out " + quote(out);
}

testsupport::fs::path synthetic_kb(const TempDir& tmp) {
    const auto kb = tmp / "kb";
    const auto r = run_command(cli() + " ingest --nodes " + quote(testsupport::synthetic("nodes.jsonl")) +
                               " --edges " + quote(testsupport::synthetic("edges.jsonl")) + " --sentences " +
                               quote(testsupport::synthetic("sentences.jsonl")) + " --aliases " +
                               quote(testsupport::synthetic("aliases.jsonl")) + " --out " + quote(kb));
    REQUIRE(r.exit_code == 0);
    return kb;
}

}  // namespace

TEST_CASE("ingest reports counts") {
    TempDir tmp("cli");
    const auto r = run_command(cli() + ingest_args("tiny", tmp / "kb"));
    CHECK(r.exit_code == 0);
    CHECK(r.out == "nodes=2 edges=1 sentences=0\n");
    CHECK(testsupport::fs::exists(tmp / "kb"));
}

TEST_CASE("ingest rejects dangling edges") {
    TempDir tmp("cli");
    const auto r = run_command(cli() + ingest_args("dangling", tmp / "kb"));
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("e7") != std::string::npos);
    CHECK(r.err.find("z") != std::string::npos);
}

TEST_CASE("usage errors exit 2 with a hint") {
    TempDir tmp("cli");
    const auto r = run_command(cli() + " ingest --nodes /nonexistent.jsonl --edges /x --sentences /y --out " +
                               quote(tmp / "kb"));
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("--help") != std::string::npos);
    CHECK(run_command(cli() + " bogus").exit_code == 2);
    CHECK(run_command(cli() + " --help").exit_code == 0);
}

TEST_CASE("query output and trace are reproducible") {
    TempDir tmp("cli");
    const auto kb = synthetic_kb(tmp);
    const auto cmd = cli() + " query --kb " + quote(kb) +
                     " --question 'Why does the clutch disc slip?' --variant with-sentences --seed 5 --trace-out ";
    const auto a = run_command(cmd + quote(tmp / "a.json"));
    const auto b = run_command(cmd + quote(tmp / "b.json"));
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(testsupport::read_file(tmp / "a.json") == testsupport::read_file(tmp / "b.json"));
    const auto trace = json::parse(testsupport::read_file(tmp / "a.json"));
    CHECK(trace["stages"]["reason"]["response"].get<std::string>() + "\n" == a.out);
    CHECK(trace["config"]["variant"] == "with-sentences");
    CHECK_FALSE(trace.contains("timings_ms"));

    const auto t = run_command(cli() + " query --kb " + quote(kb) + " --question clutch --timings --trace-out " +
                               quote(tmp / "t.json"));
    REQUIRE(t.exit_code == 0);
    CHECK(json::parse(testsupport::read_file(tmp / "t.json")).contains("timings_ms"));
}

TEST_CASE("query flags reach the pipeline") {
    TempDir tmp("cli");
    const auto kb = synthetic_kb(tmp);
    const auto base = cli() + " query --kb " + quote(kb) + " --question 'What causes clutch judder?'";

    REQUIRE(run_command(base + " --no-filter --trace-out " + quote(tmp / "nf.json")).exit_code == 0);
    const auto nf = json::parse(testsupport::read_file(tmp / "nf.json"));
    std::vector<int> extracted;
    for (const auto& sg : nf["stages"]["extract"]["subgraphs"]) extracted.push_back(sg["id"].get<int>());
    CHECK(nf["stages"]["filter"]["kept"].get<std::vector<int>>() == extracted);
    CHECK(nf["config"]["filter_enabled"] == false);

    REQUIRE(run_command(base + " --variant only-sentences --trace-out " + quote(tmp / "os.json")).exit_code == 0);
    const auto os = json::parse(testsupport::read_file(tmp / "os.json"));
    CHECK(os["stages"]["reason"]["prompt"].get<std::string>().find("Target:") == std::string::npos);

    REQUIRE(run_command(base + " --token-scheme whitespace --trace-out " + quote(tmp / "ws.json")).exit_code == 0);
    CHECK(json::parse(testsupport::read_file(tmp / "ws.json"))["config"]["token_scheme"] == "whitespace");

    CHECK(run_command(base + " --variant graph").exit_code == 2);
    CHECK(run_command(base + " --token-limit 2").exit_code == 4);
}

TEST_CASE("unreachable http backend exits 3 naming the stage") {
    TempDir tmp("cli");
    const auto kb = synthetic_kb(tmp);
    const auto r = run_command("GRAPHRAG_MAX_RETRIES=0 GRAPHRAG_API_KEY=x " + cli() + " query --kb " + quote(kb) +
                               " --question clutch --backend http --api-base http://127.0.0.1:1/v1 --model m");
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("retrieve") != std::string::npos);
}

TEST_CASE("eval writes byte-identical reports") {
    TempDir tmp("cli");
    const auto kb = synthetic_kb(tmp);
    const auto cmd = cli() + " eval --kb " + quote(kb) + " --dataset " +
                     quote(testsupport::synthetic("qa.jsonl")) + " --runs 2 --seed 9 --report ";
    const auto a = run_command(cmd + quote(tmp / "a.json"));
    const auto b = run_command(cmd + quote(tmp / "b.json") + " --jobs 1");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(testsupport::read_file(tmp / "a.json") == testsupport::read_file(tmp / "b.json"));
    CHECK(a.out.rfind("| Method | ROUGE-1 F1 | ROUGE-2 F1 | ROUGE-L F1 |", 0) == 0);

    const auto j = json::parse(testsupport::read_file(tmp / "a.json"));
    CHECK(j["methods"].size() == 5);
    CHECK(j["dataset"]["name"] == "qa");

    REQUIRE(run_command(cmd + quote(tmp / "r.csv") + " --format csv --methods ir-vanilla").exit_code == 0);
    CHECK(testsupport::read_file(tmp / "r.csv").rfind("method,kind,variant", 0) == 0);
    CHECK(run_command(cmd + quote(tmp / "x") + " --methods ir-graph").exit_code == 2);
    CHECK(run_command(cmd + quote(tmp / "x") + " --format xlsx").exit_code == 2);
}

TEST_CASE("eval against references as answers scores one") {
    TempDir tmp("cli");
    const auto kb = tmp / "kb";
    REQUIRE(run_command(cli() + ingest_args("triad", kb)).exit_code == 0);
    // The mock reason reply for an empty evidence set is its preamble alone.
    const auto r = run_command(cli() + " eval --kb " + quote(kb) + " --dataset " +
                               quote(testsupport::fixture("self_match_qa.jsonl")) +
                               " --methods no-retrieval --runs 2");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("| no-retrieval | 1.0000 | 1.0000 | 1.0000 |") != std::string::npos);
}

TEST_CASE("gen-dataset writes pairs") {
    TempDir tmp("cli");
    const auto r = run_command(cli() + " gen-dataset --documents " +
                               quote(testsupport::synthetic("documents.jsonl")) + " --out " + quote(tmp / "qa.jsonl"));
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("pairs=", 0) == 0);
    CHECK(r.out.find("failures=0") != std::string::npos);
    const auto text = testsupport::read_file(tmp / "qa.jsonl");
    CHECK(std::count(text.begin(), text.end(), '\n') >= 20);
    const auto again = run_command(cli() + " gen-dataset --documents " +
                                   quote(testsupport::synthetic("documents.jsonl")) + " --out " +
                                   quote(tmp / "qa2.jsonl"));
    CHECK(testsupport::read_file(tmp / "qa2.jsonl") == text);
}
