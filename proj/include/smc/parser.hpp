#pragma once

#include <stdexcept>
#include <vector>

#include "smc/model.hpp"
#include "smc/yaml_tree.hpp"

namespace smc {

/// The document root is unusable: the sustainability_model_card key is
/// absent or the node carrying it is not a mapping. Carries the
/// diagnostic code (E001/E002) the condition maps to.
class FatalStructure : public std::runtime_error {
public:
    FatalStructure(std::string code, SourcePos pos, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)), pos_(pos) {}

    const std::string& code() const { return code_; }
    SourcePos pos() const { return pos_; }

private:
    std::string code_;
    SourcePos pos_;
};

struct BuildResult {
    Card card;
    /// Structural findings: E001 missing key, E002 wrong node kind,
    /// W103 unknown key, W104 quoted number, W105 offset-free timestamp.
    std::vector<Diagnostic> diagnostics;
};

/// Maps the generic tree onto a card. Collects diagnostics instead of
/// stopping at the first problem; throws FatalStructure only when the
/// root gives nothing to build on.
BuildResult build_card(const RawNode& tree);

/// Checks every platform and energy-source reference against the declared
/// names: E008 per unresolved reference, E010 per duplicated declaration.
std::vector<Diagnostic> resolve_references(const Card& card);

} // namespace smc
