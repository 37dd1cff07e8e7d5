#include "smc/check.hpp"

#include "smc/parser.hpp"
#include "smc/validator.hpp"
#include "smc/yaml_tree.hpp"

namespace smc {

DocumentCheck check_document(std::string_view text) {
    DocumentCheck out;

    RawNode tree;
    try {
        tree = parse_document(text);
    } catch (const ParseError& e) {
        const char* code =
            e.kind() == ParseError::Kind::DuplicateKey ? "E013" : "E012";
        out.diagnostics.push_back(
            make_diagnostic(code, DocPath{}, e.pos(), e.what()));
        return out;
    }

    try {
        BuildResult built = build_card(tree);
        out.diagnostics = std::move(built.diagnostics);
        for (auto& d : validate(built.card))
            out.diagnostics.push_back(std::move(d));
        sort_by_position(out.diagnostics);
        out.card = std::move(built.card);
    } catch (const FatalStructure& e) {
        out.diagnostics.push_back(make_diagnostic(
            e.code(), DocPath{}.child("sustainability_model_card"), e.pos(),
            e.what()));
    }
    return out;
}

} // namespace smc
