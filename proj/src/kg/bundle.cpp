#include "graphrag/kg/bundle.hpp"

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <iterator>
#include <sstream>

namespace graphrag::kg {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw BundleError("cannot open '" + p.string() + "'");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& p, std::string_view bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw BundleError("cannot write '" + p.string() + "'");
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
        throw BundleError("SHA-256 computation failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(length * 2);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

BundleCounts write_bundle(const GraphFiles& inputs, const fs::path& out_dir) {
    for (const auto* p : {&inputs.nodes, &inputs.edges, &inputs.sentences}) {
        if (!fs::exists(*p)) {
            throw BundleError("input file not found: '" + p->string() + "'");
        }
    }
    if (!inputs.aliases.empty() && !fs::exists(inputs.aliases)) {
        throw BundleError("input file not found: '" + inputs.aliases.string() + "'");
    }

    const auto graph = load_graph_files(inputs);

    fs::create_directories(out_dir);
    json files = json::object();
    auto copy = [&](const fs::path& src, const std::string& name) {
        auto bytes = read_file(src);
        write_file(out_dir / name, bytes);
        files[name] = {{"sha256", sha256_hex(bytes)}, {"bytes", bytes.size()}};
    };
    copy(inputs.nodes, "nodes.jsonl");
    copy(inputs.edges, "edges.jsonl");
    copy(inputs.sentences, "sentences.jsonl");
    if (!inputs.aliases.empty()) {
        copy(inputs.aliases, "aliases.jsonl");
    }

    BundleCounts counts{graph.nodes().size(), graph.edges().size(), graph.sentences().size()};
    json manifest = {
        {"schema_version", 1},
        {"files", files},
        {"counts", {{"nodes", counts.nodes}, {"edges", counts.edges}, {"sentences", counts.sentences}}},
    };
    write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
    return counts;
}

KnowledgeGraph load_bundle(const fs::path& dir) {
    const auto manifest_path = dir / "manifest.json";
    if (!fs::exists(manifest_path)) {
        throw BundleError("not a bundle (no manifest.json): '" + dir.string() + "'");
    }
    json manifest;
    try {
        manifest = json::parse(read_file(manifest_path));
    } catch (const json::parse_error& e) {
        throw BundleError(std::string("corrupt manifest: ") + e.what());
    }
    if (!manifest.contains("files") || !manifest["files"].is_object()) {
        throw BundleError("corrupt manifest: missing \"files\"");
    }
    for (const auto& [name, entry] : manifest["files"].items()) {
        const auto actual = sha256_hex(read_file(dir / name));
        if (!entry.contains("sha256") || entry["sha256"] != actual) {
            throw BundleError("hash mismatch for '" + (dir / name).string() + "'");
        }
    }
    GraphFiles files{dir / "nodes.jsonl", dir / "edges.jsonl", dir / "sentences.jsonl", {}};
    if (manifest["files"].contains("aliases.jsonl")) {
        files.aliases = dir / "aliases.jsonl";
    }
    return load_graph_files(files);
}

}  // namespace graphrag::kg
