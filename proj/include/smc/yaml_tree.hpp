#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smc/diagnostics.hpp"

namespace smc {

/// Generic parsed-document tree: scalars, sequences and mappings with
/// source positions. No metamodel knowledge. Mapping entries preserve
/// document order; duplicate keys are rejected at parse time.
struct RawNode {
    enum class Kind { Null, Scalar, Sequence, Mapping };

    struct Entry;

    Kind kind = Kind::Null;
    std::string scalar;  ///< Kind::Scalar only, raw text
    bool quoted = false; ///< scalar written in a non-plain style
    std::vector<RawNode> items; ///< Kind::Sequence
    std::vector<Entry> entries; ///< Kind::Mapping, document order
    SourcePos pos;

    bool is_null() const { return kind == Kind::Null; }
    bool is_scalar() const { return kind == Kind::Scalar; }
    bool is_sequence() const { return kind == Kind::Sequence; }
    bool is_mapping() const { return kind == Kind::Mapping; }

    /// Mapping lookup; nullptr when absent or not a mapping.
    const Entry* find(std::string_view key) const;
};

struct RawNode::Entry {
    std::string key;
    SourcePos key_pos;
    RawNode value;
};

class ParseError : public std::runtime_error {
public:
    enum class Kind { Syntax, DuplicateKey, EmptyDocument };

    ParseError(Kind kind, SourcePos pos, const std::string& message)
        : std::runtime_error(message), kind_(kind), pos_(pos) {}

    Kind kind() const { return kind_; }
    SourcePos pos() const { return pos_; }

private:
    Kind kind_;
    SourcePos pos_;
};

/// Parses UTF-8 text into the generic tree. Throws ParseError for
/// malformed documents, duplicate mapping keys and empty documents.
RawNode parse_document(std::string_view text);

} // namespace smc
