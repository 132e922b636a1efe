#pragma once

#include "graphrag/llm/chat.hpp"
#include "graphrag/llm/template.hpp"
#include "graphrag/pipeline/stages.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphrag::eval {

struct QaPair {
    std::string id;
    std::string question;
    std::string reference_answer;
    std::optional<std::string> source_doc;

    bool operator==(const QaPair&) const = default;
};

using QaDataset = std::vector<QaPair>;

enum class DatasetErrorKind { DuplicateId, MalformedRecord, Io };

std::string_view to_string(DatasetErrorKind kind);

class DatasetError : public std::runtime_error {
public:
    DatasetError(DatasetErrorKind kind, std::string subject, const std::string& message, std::size_t line = 0);

    DatasetErrorKind kind() const noexcept { return kind_; }
    /// Offending id for DuplicateId, file path for Io.
    const std::string& subject() const noexcept { return subject_; }
    /// 1-based line number, 0 when not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    DatasetErrorKind kind_;
    std::string subject_;
    std::size_t line_;
};

/// JSON-lines {id, question, reference_answer, source_doc?}; blank lines
/// skipped, unknown fields ignored.
QaDataset load_dataset(std::istream& in);
QaDataset load_dataset_file(const std::filesystem::path& path);

/// One JSON object per line, keys in a fixed order.
void write_dataset(const QaDataset& dataset, std::ostream& out);

struct Document {
    std::string doc_id;
    std::string text;
};

/// JSON-lines {doc_id, text}. Same error model as load_dataset.
std::vector<Document> load_documents(std::istream& in);

struct GenFailure {
    std::string doc_id;
    std::string message;
};

struct GenResult {
    QaDataset dataset;
    std::vector<GenFailure> failures;
};

/// Asks the backend for question/answer pairs per document. The response is
/// a JSON array of {"question", "answer"} objects (a single object is also
/// accepted); pairs get ids "<doc_id>-q<k>" from 1. Backend errors and
/// unusable responses are recorded per document and generation continues.
GenResult gen_dataset(const std::vector<Document>& documents, llm::ChatBackend& backend,
                      const llm::PromptTemplate& instruction, const pipeline::CallOptions& options);

}  // namespace graphrag::eval
