#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "smc/model.hpp"

namespace smc {

struct DocumentCheck {
    /// Engaged whenever the root structure allowed a build, even with errors.
    std::optional<Card> card;
    /// Parse, build and validation diagnostics merged in document order.
    std::vector<Diagnostic> diagnostics;
};

/// One-call pipeline: parse_document + build_card + validate. Parse-level
/// failures surface as E012/E013 diagnostics, fatal structure as E001/E002
/// at the root; the function itself never throws on bad input.
DocumentCheck check_document(std::string_view text);

} // namespace smc
