#pragma once

#include <vector>

#include "smc/model.hpp"

namespace smc {

// Diagnostic catalogue
//
//   E001  missing required key          E008  unresolved reference
//   E002  wrong node kind               E009  bad timestamp
//   E003  missing unit                  E010  duplicate declaration name
//   E004  unknown unit for the field    E011  negative value
//   E005  unknown inference type        E012  document syntax error
//   E006  unknown energy source type    E013  duplicate mapping key
//   E007  percentage out of range       W101  mix ratios do not sum to 100%
//   W102  declared/implied carbon deviation (analysis)
//   W103  unknown key                   W104  quoted number coerced
//   W105  timestamp without UTC offset, UTC assumed (once per document)

/// Conformance pass over a structurally built card: unit presence and
/// correspondence, inference and energy type membership, percentage
/// bounds, sign checks, timestamp syntax, reference resolution and mix
/// sums. Total function; diagnostics come back in document order.
std::vector<Diagnostic> validate(const Card& card);

} // namespace smc
