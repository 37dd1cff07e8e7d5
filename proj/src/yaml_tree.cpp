#include "smc/yaml_tree.hpp"

#include <unordered_set>

#include <yaml-cpp/yaml.h>

namespace smc {

namespace {

constexpr int kMaxDepth = 128;

SourcePos pos_of(const YAML::Node& node) {
    const auto mark = node.Mark();
    if (mark.line < 0)
        return {};
    return SourcePos{mark.line + 1, mark.column + 1};
}

RawNode convert(const YAML::Node& node, int depth) {
    if (depth > kMaxDepth)
        throw ParseError(ParseError::Kind::Syntax, pos_of(node),
                         "document nesting exceeds the supported depth");

    RawNode out;
    out.pos = pos_of(node);
    switch (node.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
        out.kind = RawNode::Kind::Null;
        break;
    case YAML::NodeType::Scalar:
        out.kind = RawNode::Kind::Scalar;
        out.scalar = node.Scalar();
        // yaml-cpp marks non-plain scalars (quoted, literal, folded)
        // with the non-specific tag "!".
        out.quoted = node.Tag() == "!";
        break;
    case YAML::NodeType::Sequence:
        out.kind = RawNode::Kind::Sequence;
        out.items.reserve(node.size());
        for (const auto& item : node)
            out.items.push_back(convert(item, depth + 1));
        break;
    case YAML::NodeType::Map: {
        out.kind = RawNode::Kind::Mapping;
        std::unordered_set<std::string> seen;
        for (auto it = node.begin(); it != node.end(); ++it) {
            const YAML::Node key = it->first;
            if (!key.IsScalar())
                throw ParseError(ParseError::Kind::Syntax, pos_of(key),
                                 "mapping keys must be scalars");
            RawNode::Entry entry;
            entry.key = key.Scalar();
            entry.key_pos = pos_of(key);
            if (!seen.insert(entry.key).second)
                throw ParseError(ParseError::Kind::DuplicateKey, entry.key_pos,
                                 "duplicate mapping key `" + entry.key + "`");
            entry.value = convert(it->second, depth + 1);
            out.entries.push_back(std::move(entry));
        }
        break;
    }
    }
    return out;
}

} // namespace

const RawNode::Entry* RawNode::find(std::string_view key) const {
    for (const auto& e : entries)
        if (e.key == key)
            return &e;
    return nullptr;
}

RawNode parse_document(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ParseError(ParseError::Kind::Syntax,
                         SourcePos{static_cast<int>(e.mark.line) + 1,
                                   static_cast<int>(e.mark.column) + 1},
                         e.msg);
    } catch (const YAML::Exception& e) {
        throw ParseError(ParseError::Kind::Syntax, SourcePos{1, 1}, e.msg);
    }

    if (!root.IsDefined() || root.IsNull())
        throw ParseError(ParseError::Kind::EmptyDocument, SourcePos{1, 1},
                         "document is empty");

    return convert(root, 0);
}

} // namespace smc
