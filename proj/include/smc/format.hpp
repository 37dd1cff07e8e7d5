#pragma once

#include <string>

#include "smc/units.hpp"

namespace smc {

/// Shortest decimal form that round-trips the exact double value
/// (25.0 -> "25", 0.57 -> "0.57").
std::string format_number(double value);

/// Fraction as a fixed two-decimal percentage: 0.0155 -> "1.55%".
std::string format_fraction_percent(double fraction);

/// "25 kWh"
std::string format_quantity(const units::MetricValue& m);

} // namespace smc
