#include "graphrag/eval/dataset.hpp"
#include "graphrag/eval/experiment.hpp"
#include "graphrag/eval/report.hpp"
#include "graphrag/kg/bundle.hpp"
#include "graphrag/llm/http_backend.hpp"
#include "graphrag/llm/mock_backend.hpp"
#include "graphrag/pipeline/pipeline.hpp"
#include "graphrag/service/service.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <thread>

namespace {

using namespace graphrag;

constexpr int kExitInput = 2;
constexpr int kExitBackend = 3;
constexpr int kExitPipeline = 4;

constexpr const char* kDefaultMethods =
    "no-retrieval,ir-vanilla,ir-with-sentences,ir-only-sentences,ir-vanilla:no-filter";

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BackendOptions {
    std::string kind = "mock";
    std::string api_base;
    std::string model;
};

struct PipelineOptions {
    std::string variant = "vanilla";
    uint64_t seed = 0;
    bool no_filter = false;
    std::size_t token_limit = 8000;
    std::string token_scheme = "unicode-words-cjk-chars";
    std::string prompts_dir;
};

void add_backend_flags(CLI::App* cmd, BackendOptions& o) {
    cmd->add_option("--backend", o.kind, "Chat backend")->check(CLI::IsMember({"mock", "http"}));
    cmd->add_option("--api-base", o.api_base, "Chat-completions base URL (http backend; else GRAPHRAG_API_BASE)");
    cmd->add_option("--model", o.model, "Model name (http backend; else GRAPHRAG_MODEL)");
}

void add_pipeline_flags(CLI::App* cmd, PipelineOptions& o, bool with_variant) {
    if (with_variant) {
        cmd->add_option("--variant", o.variant, "Evidence variant")
            ->check(CLI::IsMember({"vanilla", "with-sentences", "only-sentences"}));
        cmd->add_flag("--no-filter", o.no_filter, "Skip the LLM filter stage");
    }
    cmd->add_option("--seed", o.seed, "Base seed");
    cmd->add_option("--token-limit", o.token_limit, "Reasoning prompt token limit");
    cmd->add_option("--token-scheme", o.token_scheme, "Token counting scheme")
        ->check(CLI::IsMember({"unicode-words-cjk-chars", "whitespace"}));
    cmd->add_option("--prompts", o.prompts_dir, "Directory with retrieve/filter/reason/generate .txt templates")
        ->check(CLI::ExistingDirectory);
}

pipeline::PipelineConfig make_config(const PipelineOptions& o) {
    pipeline::PipelineConfig c;
    c.variant = *pipeline::parse_variant(o.variant);
    c.seed = o.seed;
    c.filter_enabled = !o.no_filter;
    c.token_limit = o.token_limit;
    c.token_scheme = *text::parse_token_scheme(o.token_scheme);
    if (!o.prompts_dir.empty()) {
        c.templates = llm::load_prompts(o.prompts_dir);
    }
    return c;
}

std::unique_ptr<llm::ChatBackend> make_backend(const BackendOptions& o, const kg::KnowledgeGraph* graph) {
    if (o.kind == "http") {
        auto cfg = llm::HttpBackendConfig::from_env();
        if (!o.api_base.empty()) cfg.base_url = o.api_base;
        if (!o.model.empty()) cfg.model = o.model;
        if (cfg.base_url.empty()) {
            throw InputError("http backend needs --api-base or GRAPHRAG_API_BASE");
        }
        return std::make_unique<llm::HttpBackend>(std::move(cfg));
    }
    llm::MockPolicy policy;
    if (graph) {
        policy.lexicon = graph->lexicon();
    }
    return std::make_unique<llm::MockBackend>(std::move(policy));
}

kg::KnowledgeGraph open_kb(const std::string& dir) {
    try {
        return kg::load_bundle(dir);
    } catch (const kg::KgError& e) {
        throw InputError(e.what());
    } catch (const kg::BundleError& e) {
        throw InputError(e.what());
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) {
        throw InputError("cannot write " + path);
    }
}

int cmd_ingest(const kg::GraphFiles& files, const std::string& out_dir) {
    const auto counts = kg::write_bundle(files, out_dir);
    std::cout << "nodes=" << counts.nodes << " edges=" << counts.edges << " sentences=" << counts.sentences << '\n';
    return 0;
}

int cmd_query(const std::string& kb, const std::string& question, const PipelineOptions& po,
              const BackendOptions& bo, const std::string& trace_out, bool timings) {
    const auto graph = open_kb(kb);
    auto backend = make_backend(bo, &graph);
    const auto answer = pipeline::answer_query(question, graph, make_config(po), *backend);
    if (!trace_out.empty()) {
        write_file(trace_out, pipeline::to_json(answer.trace, timings).dump(2) + "\n");
    }
    std::cout << answer.text << '\n';
    return 0;
}

int cmd_eval(const std::string& kb, const std::string& dataset_path, const std::string& methods_text, int runs,
             std::size_t jobs, const std::string& report_path, const std::string& format_name,
             const PipelineOptions& po, const BackendOptions& bo) {
    const auto graph = open_kb(kb);
    eval::QaDataset dataset;
    try {
        dataset = eval::load_dataset_file(dataset_path);
    } catch (const eval::DatasetError& e) {
        throw InputError(e.what());
    }
    std::vector<eval::MethodSpec> methods;
    try {
        methods = eval::parse_methods(methods_text);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    auto backend = make_backend(bo, &graph);

    eval::ExperimentConfig cfg;
    cfg.runs = runs;
    cfg.base_seed = po.seed;
    cfg.jobs = jobs;
    cfg.pipeline = make_config(po);
    auto report = eval::run_experiment(dataset, methods, graph, *backend, cfg);
    report.dataset_name = std::filesystem::path(dataset_path).stem().string();

    if (!report_path.empty()) {
        write_file(report_path, eval::emit_report(report, *eval::parse_report_format(format_name)));
    }
    std::cout << eval::emit_report(report, eval::ReportFormat::Markdown);
    return 0;
}

int cmd_gen_dataset(const std::string& docs_path, const std::string& out_path, const PipelineOptions& po,
                    const BackendOptions& bo) {
    std::ifstream in(docs_path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + docs_path);
    }
    std::vector<eval::Document> docs;
    try {
        docs = eval::load_documents(in);
    } catch (const eval::DatasetError& e) {
        throw InputError(e.what());
    }
    auto backend = make_backend(bo, nullptr);
    const auto config = make_config(po);
    const auto result = eval::gen_dataset(
        docs, *backend, config.templates.generate,
        pipeline::CallOptions{config.system_prompt, config.temperature, config.max_output_tokens});
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + out_path);
    }
    eval::write_dataset(result.dataset, out);
    for (const auto& f : result.failures) {
        std::cerr << "warning: document " << f.doc_id << ": " << f.message << '\n';
    }
    std::cout << "pairs=" << result.dataset.size() << " failures=" << result.failures.size() << '\n';
    return 0;
}

int cmd_serve(const std::string& kb, const std::string& listen, const std::string& ui_origin,
              const PipelineOptions& po, const BackendOptions& bo) {
    const auto colon = listen.rfind(':');
    int port = 0;
    if (colon == std::string::npos || (port = std::atoi(listen.c_str() + colon + 1)) <= 0 || port > 65535) {
        throw InputError("--listen expects host:port, got '" + listen + "'");
    }
    const auto host = listen.substr(0, colon);

    auto graph = std::make_shared<const kg::KnowledgeGraph>(open_kb(kb));
    auto backend = make_backend(bo, graph.get());

    service::ServiceConfig cfg;
    cfg.pipeline = make_config(po);
    cfg.ui_origin = ui_origin;
    service::Service svc(*backend, cfg);
    svc.set_graph(graph);

    httplib::Server server;
    service::mount(svc, server);
    if (!server.bind_to_port(host, port)) {
        throw InputError("cannot listen on " + listen);
    }
    std::cerr << "listening on " << listen << '\n';
    server.listen_after_bind();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph RAG retrieval engine and evaluation harness", "graphrag"};
    app.require_subcommand(1);

    kg::GraphFiles files;
    std::string out_dir;
    auto* ingest = app.add_subcommand("ingest", "Validate graph files and write a bundle");
    ingest->add_option("--nodes", files.nodes, "nodes.jsonl")->required()->check(CLI::ExistingFile);
    ingest->add_option("--edges", files.edges, "edges.jsonl")->required()->check(CLI::ExistingFile);
    ingest->add_option("--sentences", files.sentences, "sentences.jsonl")->required()->check(CLI::ExistingFile);
    ingest->add_option("--aliases", files.aliases, "aliases.jsonl")->check(CLI::ExistingFile);
    ingest->add_option("--out", out_dir, "Bundle directory")->required();

    std::string kb, question, trace_out;
    bool timings = false;
    PipelineOptions po;
    BackendOptions bo;
    auto* query = app.add_subcommand("query", "Answer one question");
    query->add_option("--kb", kb, "Bundle directory")->required()->check(CLI::ExistingDirectory);
    query->add_option("--question", question, "Question text")->required();
    query->add_option("--trace-out", trace_out, "Write the trace JSON here");
    query->add_flag("--timings", timings, "Include stage timings in the trace");
    add_pipeline_flags(query, po, true);
    add_backend_flags(query, bo);

    std::string dataset, methods = kDefaultMethods, report, format = "json";
    int runs = 5;
    std::size_t jobs = 4;
    auto* evalc = app.add_subcommand("eval", "Run a multi-method experiment");
    evalc->add_option("--kb", kb, "Bundle directory")->required()->check(CLI::ExistingDirectory);
    evalc->add_option("--dataset", dataset, "QA dataset JSONL")->required()->check(CLI::ExistingFile);
    evalc->add_option("--methods", methods, "Comma-separated methods")->capture_default_str();
    evalc->add_option("--runs", runs, "Runs per pair")->capture_default_str()->check(CLI::PositiveNumber);
    evalc->add_option("--jobs", jobs, "Parallel cells")->capture_default_str()->check(CLI::PositiveNumber);
    evalc->add_option("--report", report, "Report output path");
    evalc->add_option("--format", format, "Report format")
        ->capture_default_str()
        ->check(CLI::IsMember({"md", "markdown", "csv", "json"}));
    add_pipeline_flags(evalc, po, false);
    add_backend_flags(evalc, bo);

    std::string documents, dataset_out;
    auto* gen = app.add_subcommand("gen-dataset", "Generate QA pairs from documents");
    gen->add_option("--documents", documents, "Documents JSONL")->required()->check(CLI::ExistingFile);
    gen->add_option("--out", dataset_out, "Dataset JSONL output")->required();
    gen->add_option("--prompts", po.prompts_dir, "Prompt template directory")->check(CLI::ExistingDirectory);
    add_backend_flags(gen, bo);

    std::string listen = "127.0.0.1:8080", ui_origin;
    auto* serve = app.add_subcommand("serve", "Run the HTTP service");
    serve->add_option("--kb", kb, "Bundle directory")->required()->check(CLI::ExistingDirectory);
    serve->add_option("--listen", listen, "host:port")->capture_default_str();
    serve->add_option("--ui-origin", ui_origin, "Origin allowed by CORS");
    add_pipeline_flags(serve, po, true);
    add_backend_flags(serve, bo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << "Run '" << app.get_name() << " --help' for usage.\n";
        return kExitInput;
    }

    try {
        if (*ingest) return cmd_ingest(files, out_dir);
        if (*query) return cmd_query(kb, question, po, bo, trace_out, timings);
        if (*evalc) return cmd_eval(kb, dataset, methods, runs, jobs, report, format, po, bo);
        if (*gen) return cmd_gen_dataset(documents, dataset_out, po, bo);
        if (*serve) return cmd_serve(kb, listen, ui_origin, po, bo);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const kg::KgError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const kg::BundleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const pipeline::PipelineError& e) {
        if (e.backend_error()) {
            std::cerr << "error: backend failure in stage " << e.stage() << ": " << e.what() << '\n';
            return kExitBackend;
        }
        std::cerr << "error: stage " << e.stage() << ": " << e.what() << '\n';
        return kExitPipeline;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
