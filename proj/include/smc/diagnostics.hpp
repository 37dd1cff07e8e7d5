#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace smc {

/// Position in the source document, 1-based. {-1, -1} when unknown.
struct SourcePos {
    int line = -1;
    int column = -1;

    friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

/// Path of key names and sequence indices addressing a node in a card
/// document, e.g. sustainability_model_card/platforms/0/platform/name.
class DocPath {
public:
    using Segment = std::variant<std::string, std::size_t>;

    DocPath() = default;

    [[nodiscard]] DocPath child(std::string_view key) const;
    [[nodiscard]] DocPath child(std::size_t index) const;

    const std::vector<Segment>& segments() const { return segments_; }
    bool empty() const { return segments_.empty(); }

    /// Slash-separated rendering: "a/b/0/c".
    std::string str() const;

    friend bool operator==(const DocPath&, const DocPath&) = default;

private:
    std::vector<Segment> segments_;
};

enum class Severity { Error, Warning };

/// The code prefix fixes the severity: E -> Error, W -> Warning.
Severity severity_for_code(std::string_view code);

struct Diagnostic {
    std::string code;
    Severity severity = Severity::Error;
    DocPath path;
    SourcePos pos;
    std::string message;
    std::string related_value; ///< offending text, empty when not applicable
};

Diagnostic make_diagnostic(std::string code, DocPath path, SourcePos pos,
                           std::string message, std::string related_value = {});

struct SeveritySummary {
    int errors = 0;
    int warnings = 0;
    bool valid = false; ///< true iff errors == 0
};

SeveritySummary severity_summary(const std::vector<Diagnostic>& diagnostics);

/// Stable sort by source position; diagnostics at the same position keep
/// their emission order. Restores document order after merging passes.
void sort_by_position(std::vector<Diagnostic>& diagnostics);

} // namespace smc
