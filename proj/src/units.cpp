#include "smc/units.hpp"

#include <array>
#include <string>

namespace smc::units {

namespace {

struct UnitInfo {
    Unit unit;
    std::string_view name;
    Family family;
    int rank; ///< steps of 1000 above the smallest unit of the family
};

constexpr std::array<UnitInfo, 9> kUnits{{
    {Unit::Wh, "Wh", Family::Energy, 0},
    {Unit::kWh, "kWh", Family::Energy, 1},
    {Unit::MWh, "MWh", Family::Energy, 2},
    {Unit::gCO2eq, "gCO2eq", Family::Carbon, 0},
    {Unit::kgCO2eq, "kgCO2eq", Family::Carbon, 1},
    {Unit::tCO2eq, "tCO2eq", Family::Carbon, 2},
    {Unit::mL, "mL", Family::Water, 0},
    {Unit::L, "L", Family::Water, 1},
    {Unit::m3, "m3", Family::Water, 2},
}};

const UnitInfo& info(Unit u) { return kUnits[static_cast<std::size_t>(u)]; }

} // namespace

std::optional<Unit> parse_unit(std::string_view text) {
    for (const auto& i : kUnits)
        if (i.name == text)
            return i.unit;
    return std::nullopt;
}

std::string_view unit_name(Unit u) { return info(u).name; }

Family family_of(Unit u) { return info(u).family; }

std::string_view family_name(Family f) {
    switch (f) {
    case Family::Energy: return "energy";
    case Family::Carbon: return "carbon";
    case Family::Water: return "water";
    }
    return "";
}

Unit canonical_unit(Family f) {
    switch (f) {
    case Family::Energy: return Unit::Wh;
    case Family::Carbon: return Unit::gCO2eq;
    case Family::Water: return Unit::L;
    }
    return Unit::Wh;
}

double convert(double value, Unit from, Unit to) {
    const auto& a = info(from);
    const auto& b = info(to);
    if (a.family != b.family)
        throw UnitFamilyMismatch("cannot convert " + std::string(a.name) +
                                 " to " + std::string(b.name) +
                                 ": different unit families");
    // One multiplication or division by an exact power of ten, so
    // integer-valued conversions stay exact and round trips recover the
    // input to the last bit for values the scaling represents exactly.
    static constexpr double kFactors[3] = {1.0, 1e3, 1e6};
    const int steps = a.rank - b.rank;
    if (steps >= 0)
        return value * kFactors[steps];
    return value / kFactors[-steps];
}

double normalize_percentage(double value) {
    if (!(value >= 0.0 && value <= 100.0))
        throw PercentageOutOfRange("percentage outside [0, 100]");
    return value / 100.0;
}

MetricValue MetricValue::normalized() const {
    const Unit target = canonical_unit(family_of(unit));
    return MetricValue{convert(value, unit, target), target};
}

double MetricValue::canonical_value() const { return normalized().value; }

} // namespace smc::units
