#include "smc/diagnostics.hpp"

#include <algorithm>
#include <tuple>

namespace smc {

DocPath DocPath::child(std::string_view key) const {
    DocPath out = *this;
    out.segments_.emplace_back(std::string(key));
    return out;
}

DocPath DocPath::child(std::size_t index) const {
    DocPath out = *this;
    out.segments_.emplace_back(index);
    return out;
}

std::string DocPath::str() const {
    std::string out;
    for (const auto& seg : segments_) {
        if (!out.empty())
            out += '/';
        if (const auto* key = std::get_if<std::string>(&seg))
            out += *key;
        else
            out += std::to_string(std::get<std::size_t>(seg));
    }
    return out;
}

Severity severity_for_code(std::string_view code) {
    return (!code.empty() && code.front() == 'W') ? Severity::Warning
                                                  : Severity::Error;
}

Diagnostic make_diagnostic(std::string code, DocPath path, SourcePos pos,
                           std::string message, std::string related_value) {
    Diagnostic d;
    d.severity = severity_for_code(code);
    d.code = std::move(code);
    d.path = std::move(path);
    d.pos = pos;
    d.message = std::move(message);
    d.related_value = std::move(related_value);
    return d;
}

SeveritySummary severity_summary(const std::vector<Diagnostic>& diagnostics) {
    SeveritySummary s;
    for (const auto& d : diagnostics) {
        if (d.severity == Severity::Error)
            ++s.errors;
        else
            ++s.warnings;
    }
    s.valid = s.errors == 0;
    return s;
}

void sort_by_position(std::vector<Diagnostic>& diagnostics) {
    std::stable_sort(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& a, const Diagnostic& b) {
                         return std::tuple(a.pos.line, a.pos.column) <
                                std::tuple(b.pos.line, b.pos.column);
                     });
}

} // namespace smc
