#include "graphrag/eval/experiment.hpp"

#include "graphrag/pipeline/seed.hpp"
#include "graphrag/text/unicode.hpp"

#include <atomic>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

namespace graphrag::eval {

std::optional<MethodSpec> parse_method(std::string_view text) {
    const auto name = text::trim(text);
    auto base = name;
    bool filter = true;
    if (auto colon = name.find(':'); colon != std::string_view::npos) {
        if (name.substr(colon + 1) != "no-filter") {
            return std::nullopt;
        }
        base = name.substr(0, colon);
        filter = false;
    }
    MethodSpec spec;
    spec.name = std::string(name);
    spec.filter_enabled = filter;
    if (base == "no-retrieval") {
        if (!filter) {
            return std::nullopt;
        }
        spec.kind = MethodKind::NoRetrieval;
        return spec;
    }
    if (base.substr(0, 3) != "ir-") {
        return std::nullopt;
    }
    auto variant = pipeline::parse_variant(base.substr(3));
    if (!variant) {
        return std::nullopt;
    }
    spec.kind = MethodKind::IrPipeline;
    spec.variant = *variant;
    return spec;
}

std::vector<MethodSpec> parse_methods(std::string_view text) {
    std::vector<MethodSpec> out;
    std::set<std::string> names;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        if (!text::trim(item).empty()) {
            auto spec = parse_method(item);
            if (!spec) {
                throw std::invalid_argument("unknown method \"" + std::string(text::trim(item)) + "\"");
            }
            if (!names.insert(spec->name).second) {
                throw std::invalid_argument("method \"" + spec->name + "\" listed twice");
            }
            out.push_back(std::move(*spec));
        }
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    if (out.empty()) {
        throw std::invalid_argument("no methods given");
    }
    return out;
}

uint64_t cell_seed(uint64_t base, const MethodSpec& method, const QaPair& pair, int run) {
    const auto run_text = std::to_string(run);
    return pipeline::derive_seed(base, {method.name, pair.id, run_text});
}

namespace {

double mean(const std::vector<double>& xs) {
    if (xs.empty()) {
        return 0.0;
    }
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

MethodSummary summarize(const MethodSpec& spec, std::size_t method, const std::vector<Cell>& cells, int runs) {
    MethodSummary s;
    s.spec = spec;
    for (int run = 0; run < runs; ++run) {
        std::vector<double> r1, r2, rl, tok;
        for (const auto& c : cells) {
            if (c.method != method || c.run != run) {
                continue;
            }
            if (!c.ok) {
                ++s.cells_excluded;
                continue;
            }
            ++s.cells_used;
            r1.push_back(c.scores.rouge1.f1);
            r2.push_back(c.scores.rouge2.f1);
            rl.push_back(c.scores.rougeL.f1);
            tok.push_back(static_cast<double>(c.output_tokens));
        }
        if (r1.empty()) {
            continue;
        }
        s.run_rouge1.push_back(mean(r1));
        s.run_rouge2.push_back(mean(r2));
        s.run_rougeL.push_back(mean(rl));
        s.run_tokens.push_back(mean(tok));
    }
    s.rouge1 = mean(s.run_rouge1);
    s.rouge2 = mean(s.run_rouge2);
    s.rougeL = mean(s.run_rougeL);
    s.avg_output_tokens = mean(s.run_tokens);
    return s;
}

}  // namespace

ExperimentReport run_experiment(const QaDataset& dataset, const std::vector<MethodSpec>& methods,
                                const kg::KnowledgeGraph& graph, llm::ChatBackend& backend,
                                const ExperimentConfig& config, const CellObserver& observer) {
    if (config.runs < 1) {
        throw std::invalid_argument("runs must be at least 1");
    }
    std::set<std::string> names;
    for (const auto& m : methods) {
        if (!names.insert(m.name).second) {
            throw std::invalid_argument("method \"" + m.name + "\" listed twice");
        }
    }

    ExperimentReport report;
    report.dataset_size = dataset.size();
    report.runs = config.runs;
    report.base_seed = config.base_seed;
    report.token_scheme = config.pipeline.token_scheme;
    report.token_limit = config.pipeline.token_limit;
    report.backend_kind = std::string(backend.kind());
    for (const auto& pair : dataset) {
        report.pair_ids.push_back(pair.id);
    }

    std::vector<Cell> cells;
    for (std::size_t m = 0; m < methods.size(); ++m) {
        for (std::size_t p = 0; p < dataset.size(); ++p) {
            for (int run = 0; run < config.runs; ++run) {
                Cell c;
                c.method = m;
                c.pair = p;
                c.run = run;
                c.seed = cell_seed(config.base_seed, methods[m], dataset[p], run);
                cells.push_back(c);
            }
        }
    }

    const auto scheme = config.pipeline.token_scheme;
    std::mutex observer_mutex;
    auto execute = [&](Cell& cell) {
        const auto& method = methods[cell.method];
        const auto& pair = dataset[cell.pair];
        std::optional<pipeline::Answer> answer;
        std::string text;
        try {
            auto pc = config.pipeline;
            pc.seed = cell.seed;
            if (method.kind == MethodKind::NoRetrieval) {
                text = pipeline::answer_without_retrieval(pair.question, pc, backend);
            } else {
                pc.variant = method.variant;
                pc.filter_enabled = method.filter_enabled;
                answer = pipeline::answer_query(pair.question, graph, pc, backend);
                text = answer->text;
            }
            cell.scores = rouge::score_texts(text, pair.reference_answer, scheme);
            cell.output_tokens = text::count_tokens(text, scheme);
            cell.ok = true;
        } catch (const std::exception& e) {
            cell.error = e.what();
            answer.reset();
        }
        if (observer) {
            std::lock_guard lock(observer_mutex);
            observer(method, pair, cell.run, answer ? &*answer : nullptr);
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(config.jobs, cells.size()));
    if (workers <= 1) {
        for (auto& c : cells) {
            execute(c);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (auto i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
                    execute(cells[i]);
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    for (std::size_t m = 0; m < methods.size(); ++m) {
        report.methods.push_back(summarize(methods[m], m, cells, config.runs));
    }
    report.cells = std::move(cells);
    return report;
}

}  // namespace graphrag::eval
