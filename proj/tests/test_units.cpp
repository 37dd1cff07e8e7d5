#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "smc/format.hpp"
#include "smc/units.hpp"

using namespace smc::units;

namespace {

const Unit kAll[] = {Unit::Wh,  Unit::kWh,    Unit::MWh,
                     Unit::gCO2eq, Unit::kgCO2eq, Unit::tCO2eq,
                     Unit::mL,  Unit::L,      Unit::m3};

bool close_rel(double a, double b, double rel) {
    if (a == b)
        return true;
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

} // namespace

TEST_CASE("unit spellings parse exactly") {
    CHECK(parse_unit("kWh") == Unit::kWh);
    CHECK(parse_unit("Wh") == Unit::Wh);
    CHECK(parse_unit("MWh") == Unit::MWh);
    CHECK(parse_unit("gCO2eq") == Unit::gCO2eq);
    CHECK(parse_unit("kgCO2eq") == Unit::kgCO2eq);
    CHECK(parse_unit("tCO2eq") == Unit::tCO2eq);
    CHECK(parse_unit("mL") == Unit::mL);
    CHECK(parse_unit("L") == Unit::L);
    CHECK(parse_unit("m3") == Unit::m3);
    CHECK(!parse_unit("Liters"));
    CHECK(!parse_unit("kwh")); // case sensitive
    CHECK(!parse_unit(""));
}

TEST_CASE("convert scales by exact factor-1000 steps") {
    CHECK(convert(25.0, Unit::kWh, Unit::Wh) == 25000.0);
    CHECK(convert(14.25, Unit::kgCO2eq, Unit::kgCO2eq) == 14.25);
    CHECK(close_rel(convert(7.12, Unit::gCO2eq, Unit::kgCO2eq), 0.00712,
                    1e-12));
    CHECK(convert(1.0, Unit::MWh, Unit::Wh) == 1e6);
    CHECK(convert(57.5, Unit::L, Unit::mL) == 57500.0);
    CHECK(convert(2.0, Unit::m3, Unit::L) == 2000.0);
}

TEST_CASE("convert rejects cross-family pairs") {
    CHECK_THROWS_AS(convert(1.0, Unit::kWh, Unit::kgCO2eq),
                    UnitFamilyMismatch);
    CHECK_THROWS_AS(convert(1.0, Unit::L, Unit::Wh), UnitFamilyMismatch);
}

TEST_CASE("convert inverse round trips within 1e-12 for random values") {
    std::mt19937_64 rng(20250809);
    std::uniform_real_distribution<double> value(0.0, 1e9);
    for (int i = 0; i < 1000; ++i) {
        const double v = value(rng);
        for (const Unit a : kAll)
            for (const Unit b : kAll) {
                if (family_of(a) != family_of(b))
                    continue;
                const double round = convert(convert(v, a, b), b, a);
                CHECK(close_rel(round, v, 1e-12));
            }
    }
}

TEST_CASE("convert round trips integers exactly") {
    for (int i = 0; i <= 10000; i += 7) {
        const double v = i;
        CHECK(convert(convert(v, Unit::kWh, Unit::Wh), Unit::Wh, Unit::kWh) ==
              v);
        CHECK(convert(convert(v, Unit::tCO2eq, Unit::gCO2eq), Unit::gCO2eq,
                      Unit::tCO2eq) == v);
    }
}

TEST_CASE("normalize_metric maps to the canonical unit of the family") {
    CHECK(MetricValue{25.0, Unit::kWh}.normalized() ==
          MetricValue{25000.0, Unit::Wh});
    CHECK(MetricValue{12.3, Unit::Wh}.normalized() ==
          MetricValue{12.3, Unit::Wh});
    CHECK(MetricValue{57.5, Unit::L}.normalized() ==
          MetricValue{57.5, Unit::L});
    CHECK(MetricValue{14.25, Unit::kgCO2eq}.normalized() ==
          MetricValue{14250.0, Unit::gCO2eq});
    CHECK(MetricValue{500.0, Unit::mL}.normalized() ==
          MetricValue{0.5, Unit::L});
}

TEST_CASE("normalize_metric is idempotent") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> value(0.0, 1e7);
    for (int i = 0; i < 1000; ++i) {
        const double v = value(rng);
        for (const Unit u : kAll) {
            const MetricValue once = MetricValue{v, u}.normalized();
            CHECK(once.normalized() == once);
        }
    }
}

TEST_CASE("same-family comparison is invariant under re-expression") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> value(0.0, 1e6);
    for (int i = 0; i < 500; ++i) {
        const MetricValue a{value(rng), Unit::kWh};
        const MetricValue b{value(rng), Unit::kWh};
        const bool base = a.canonical_value() < b.canonical_value();
        const MetricValue a2{convert(a.value, Unit::kWh, Unit::MWh),
                             Unit::MWh};
        const MetricValue b2{convert(b.value, Unit::kWh, Unit::Wh), Unit::Wh};
        CHECK((a2.canonical_value() < b2.canonical_value()) == base);
    }
}

TEST_CASE("normalize_percentage maps [0,100] to [0,1]") {
    CHECK(normalize_percentage(100.0) == 1.0);
    CHECK(normalize_percentage(0.0) == 0.0);
    CHECK(normalize_percentage(37.5) == 0.375);
    CHECK_THROWS_AS(normalize_percentage(-0.5), PercentageOutOfRange);
    CHECK_THROWS_AS(normalize_percentage(100.5), PercentageOutOfRange);
    CHECK_THROWS_AS(normalize_percentage(std::nan("")),
                    PercentageOutOfRange);
}

TEST_CASE("format_number emits shortest value-preserving form") {
    CHECK(smc::format_number(25.0) == "25");
    CHECK(smc::format_number(0.57) == "0.57");
    CHECK(smc::format_number(14250.0) == "14250");
    CHECK(smc::format_number(12.3) == "12.3");
    CHECK(smc::format_number(0.0) == "0");
}
