#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace smc::units {

enum class Family { Energy, Carbon, Water };

/// Closed unit set. Adjacent units within a family differ by a factor of
/// exactly 1000 (Wh/kWh/MWh, gCO2eq/kgCO2eq/tCO2eq, mL/L/m3).
enum class Unit { Wh, kWh, MWh, gCO2eq, kgCO2eq, tCO2eq, mL, L, m3 };

struct UnitFamilyMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PercentageOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Exact spelling match; nullopt for anything outside the closed set.
std::optional<Unit> parse_unit(std::string_view text);

std::string_view unit_name(Unit u);
Family family_of(Unit u);
std::string_view family_name(Family f);

/// Canonical units: Wh, gCO2eq, L.
Unit canonical_unit(Family f);

/// Re-scales value by the power-of-1000 factor between the units.
/// Throws UnitFamilyMismatch when the families differ.
double convert(double value, Unit from, Unit to);

/// Maps a [0, 100] percentage to a [0, 1] fraction.
/// Throws PercentageOutOfRange outside [0, 100].
double normalize_percentage(double value);

/// A magnitude with its unit.
struct MetricValue {
    double value = 0.0;
    Unit unit = Unit::Wh;

    /// Same quantity re-expressed in the canonical unit of its family.
    [[nodiscard]] MetricValue normalized() const;
    [[nodiscard]] double canonical_value() const;

    friend bool operator==(const MetricValue&, const MetricValue&) = default;
};

} // namespace smc::units
