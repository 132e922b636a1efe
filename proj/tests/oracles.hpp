#pragma once

#include "graphrag/kg/graph.hpp"
#include "graphrag/pipeline/types.hpp"
#include "graphrag/rouge/rouge.hpp"
#include "graphrag/text/unicode.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracles {

using Seq = std::vector<std::string>;

/// Clipped n-gram overlap by linear matching against unused reference n-grams.
inline std::size_t overlap(const Seq& c, const Seq& r, std::size_t n, std::size_t& c_total, std::size_t& r_total) {
    auto grams = [n](const Seq& s) {
        std::vector<Seq> out;
        for (std::size_t i = 0; i + n <= s.size(); ++i) {
            out.emplace_back(s.begin() + static_cast<std::ptrdiff_t>(i),
                             s.begin() + static_cast<std::ptrdiff_t>(i + n));
        }
        return out;
    };
    const auto cg = grams(c), rg = grams(r);
    c_total = cg.size();
    r_total = rg.size();
    std::vector<bool> used(rg.size(), false);
    std::size_t hits = 0;
    for (const auto& g : cg) {
        for (std::size_t j = 0; j < rg.size(); ++j) {
            if (!used[j] && rg[j] == g) {
                used[j] = true;
                ++hits;
                break;
            }
        }
    }
    return hits;
}

inline graphrag::rouge::RougeScore score(double hits, std::size_t c_total, std::size_t r_total) {
    graphrag::rouge::RougeScore s;
    s.precision = c_total ? hits / static_cast<double>(c_total) : 0.0;
    s.recall = r_total ? hits / static_cast<double>(r_total) : 0.0;
    s.f1 = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
    return s;
}

inline graphrag::rouge::RougeScore rouge_n(const Seq& c, const Seq& r, std::size_t n) {
    std::size_t ct = 0, rt = 0;
    const auto hits = overlap(c, r, n, ct, rt);
    return score(static_cast<double>(hits), ct, rt);
}

inline bool is_subsequence(const Seq& sub, const Seq& s) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < s.size() && j < sub.size(); ++i) {
        if (s[i] == sub[j]) ++j;
    }
    return j == sub.size();
}

/// Longest common subsequence by enumerating every subsequence of the shorter input.
inline std::size_t lcs(const Seq& a, const Seq& b) {
    const Seq& shorter = a.size() <= b.size() ? a : b;
    const Seq& longer = a.size() <= b.size() ? b : a;
    std::size_t best = 0;
    for (uint32_t mask = 0; mask < (1u << shorter.size()); ++mask) {
        Seq sub;
        for (std::size_t i = 0; i < shorter.size(); ++i) {
            if (mask & (1u << i)) sub.push_back(shorter[i]);
        }
        if (sub.size() > best && is_subsequence(sub, longer)) best = sub.size();
    }
    return best;
}

inline graphrag::rouge::RougeScore rouge_l(const Seq& c, const Seq& r) {
    return score(static_cast<double>(lcs(c, r)), c.size(), r.size());
}

/// Incident-edge scan over the whole edge table.
inline graphrag::pipeline::SubGraph one_hop(const graphrag::kg::KnowledgeGraph& g, const std::string& node) {
    graphrag::pipeline::SubGraph sg;
    sg.target = node;
    std::set<std::string> far;
    for (const auto& [id, e] : g.edges()) {
        if (e.src == node || e.dst == node) {
            sg.edges.push_back(id);
            if (e.src != node) far.insert(e.src);
            if (e.dst != node) far.insert(e.dst);
        }
    }
    sg.neighbor_nodes.assign(far.begin(), far.end());
    return sg;
}

/// Label scan per term; each node at most once, ids numbered in order.
inline graphrag::pipeline::SubGraphSet extract(const std::vector<std::string>& terms,
                                              const graphrag::kg::KnowledgeGraph& g) {
    graphrag::pipeline::SubGraphSet out;
    std::set<std::string> done;
    for (const auto& t : terms) {
        const auto key = graphrag::text::normalize_label(t);
        for (const auto& [id, node] : g.nodes()) {
            if (graphrag::text::normalize_label(node.label) == key && done.insert(id).second) {
                auto sg = one_hop(g, id);
                sg.id = static_cast<int>(out.size()) + 1;
                sg.source_term = t;
                out.push_back(std::move(sg));
            }
        }
    }
    return out;
}

struct Means {
    double rouge1 = 0, rouge2 = 0, rougeL = 0, tokens = 0;
};

/// Method means from a JSON report's cell matrix: per run over successful
/// cells, then over runs that had any.
inline std::map<std::string, Means> recompute_means(const nlohmann::json& report) {
    std::map<std::string, std::map<int, std::vector<const nlohmann::json*>>> grouped;
    for (const auto& c : report["cells"]) {
        if (c["ok"].get<bool>()) grouped[c["method"].get<std::string>()][c["run"].get<int>()].push_back(&c);
    }
    std::map<std::string, Means> out;
    for (const auto& [method, runs] : grouped) {
        Means outer;
        for (const auto& [run, cells] : runs) {
            Means inner;
            for (const auto* c : cells) {
                inner.rouge1 += (*c)["rouge1"]["f1"].get<double>();
                inner.rouge2 += (*c)["rouge2"]["f1"].get<double>();
                inner.rougeL += (*c)["rougeL"]["f1"].get<double>();
                inner.tokens += (*c)["output_tokens"].get<double>();
            }
            const auto n = static_cast<double>(cells.size());
            outer.rouge1 += inner.rouge1 / n;
            outer.rouge2 += inner.rouge2 / n;
            outer.rougeL += inner.rougeL / n;
            outer.tokens += inner.tokens / n;
        }
        const auto n = static_cast<double>(runs.size());
        out[method] = {outer.rouge1 / n, outer.rouge2 / n, outer.rougeL / n, outer.tokens / n};
    }
    return out;
}

}  // namespace oracles
