#include "graphrag/eval/dataset.hpp"

#include "graphrag/text/unicode.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <set>

namespace graphrag::eval {

using nlohmann::json;

std::string_view to_string(DatasetErrorKind kind) {
    switch (kind) {
        case DatasetErrorKind::DuplicateId: return "DuplicateId";
        case DatasetErrorKind::MalformedRecord: return "MalformedRecord";
        case DatasetErrorKind::Io: return "Io";
    }
    return "?";
}

namespace {

std::string error_text(DatasetErrorKind kind, std::size_t line, const std::string& message) {
    std::string out(to_string(kind));
    out += ": ";
    if (line > 0) {
        out += "line " + std::to_string(line) + ": ";
    }
    return out + message;
}

[[noreturn]] void malformed(std::size_t line, const std::string& message) {
    throw DatasetError(DatasetErrorKind::MalformedRecord, {}, message, line);
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

std::string require_text(const json& record, const char* key, std::size_t line) {
    auto it = record.find(key);
    if (it == record.end() || !it->is_string()) {
        malformed(line, std::string("missing or non-string field \"") + key + "\"");
    }
    auto value = it->get<std::string>();
    if (text::trim(value).empty()) {
        malformed(line, std::string("empty field \"") + key + "\"");
    }
    return value;
}

}  // namespace

DatasetError::DatasetError(DatasetErrorKind kind, std::string subject, const std::string& message, std::size_t line)
    : std::runtime_error(error_text(kind, line, message)), kind_(kind), subject_(std::move(subject)), line_(line) {}

QaDataset load_dataset(std::istream& in) {
    QaDataset out;
    std::set<std::string> seen;
    for_each_record(in, [&](const json& r, std::size_t line) {
        QaPair pair;
        pair.id = require_text(r, "id", line);
        pair.question = require_text(r, "question", line);
        pair.reference_answer = require_text(r, "reference_answer", line);
        if (auto it = r.find("source_doc"); it != r.end() && !it->is_null()) {
            if (!it->is_string()) {
                malformed(line, "non-string field \"source_doc\"");
            }
            pair.source_doc = it->get<std::string>();
        }
        if (!seen.insert(pair.id).second) {
            throw DatasetError(DatasetErrorKind::DuplicateId, pair.id, "duplicate pair id \"" + pair.id + "\"", line);
        }
        out.push_back(std::move(pair));
    });
    return out;
}

QaDataset load_dataset_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DatasetError(DatasetErrorKind::Io, path.string(), "cannot open " + path.string());
    }
    return load_dataset(in);
}

void write_dataset(const QaDataset& dataset, std::ostream& out) {
    for (const auto& pair : dataset) {
        json r = json::object();
        r["id"] = pair.id;
        r["question"] = pair.question;
        r["reference_answer"] = pair.reference_answer;
        if (pair.source_doc) {
            r["source_doc"] = *pair.source_doc;
        }
        out << r.dump() << '\n';
    }
}

std::vector<Document> load_documents(std::istream& in) {
    std::vector<Document> out;
    std::set<std::string> seen;
    for_each_record(in, [&](const json& r, std::size_t line) {
        Document doc{require_text(r, "doc_id", line), require_text(r, "text", line)};
        if (!seen.insert(doc.doc_id).second) {
            throw DatasetError(DatasetErrorKind::DuplicateId, doc.doc_id,
                               "duplicate document id \"" + doc.doc_id + "\"", line);
        }
        out.push_back(std::move(doc));
    });
    return out;
}

namespace {

std::vector<std::pair<std::string, std::string>> parse_generated(std::string_view response) {
    auto start = response.find_first_of("[{");
    if (start == std::string_view::npos) {
        throw std::runtime_error("response holds no JSON");
    }
    json parsed;
    try {
        parsed = json::parse(response.substr(start));
    } catch (const json::parse_error&) {
        auto end = response.find_last_of("]}");
        if (end == std::string_view::npos || end < start) {
            throw std::runtime_error("response is not valid JSON");
        }
        try {
            parsed = json::parse(response.substr(start, end - start + 1));
        } catch (const json::parse_error& e) {
            throw std::runtime_error(std::string("response is not valid JSON: ") + e.what());
        }
    }
    if (parsed.is_object()) {
        parsed = json::array({parsed});
    }
    if (!parsed.is_array()) {
        throw std::runtime_error("response is not a JSON array");
    }
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& item : parsed) {
        if (!item.is_object()) {
            continue;
        }
        auto q = item.find("question");
        auto a = item.find("answer");
        if (q == item.end() || a == item.end() || !q->is_string() || !a->is_string()) {
            continue;
        }
        auto question = std::string(text::trim(q->get<std::string>()));
        auto answer = std::string(text::trim(a->get<std::string>()));
        if (!question.empty() && !answer.empty()) {
            out.emplace_back(std::move(question), std::move(answer));
        }
    }
    if (out.empty()) {
        throw std::runtime_error("response holds no usable question/answer pair");
    }
    return out;
}

}  // namespace

GenResult gen_dataset(const std::vector<Document>& documents, llm::ChatBackend& backend,
                      const llm::PromptTemplate& instruction, const pipeline::CallOptions& options) {
    GenResult result;
    for (const auto& doc : documents) {
        try {
            llm::ChatRequest req;
            req.system_prompt = options.system_prompt;
            req.temperature = options.temperature;
            req.max_output_tokens = options.max_output_tokens;
            req.task = "generate";
            req.fields = {{"doc_id", doc.doc_id}, {"document", doc.text}};
            req.user_prompt = llm::render_template(instruction, req.fields);
            const auto response = backend.complete(req);
            int k = 0;
            for (auto& [question, answer] : parse_generated(response.text)) {
                result.dataset.push_back(
                    QaPair{doc.doc_id + "-q" + std::to_string(++k), std::move(question), std::move(answer), doc.doc_id});
            }
        } catch (const std::exception& e) {
            result.failures.push_back({doc.doc_id, e.what()});
        }
    }
    return result;
}

}  // namespace graphrag::eval
