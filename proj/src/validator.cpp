#include "smc/validator.hpp"

#include <cmath>
#include <string>

#include "smc/format.hpp"
#include "smc/parser.hpp"

namespace smc {

namespace {

constexpr double kMixSumTolerance = 1e-3;

class Validator {
public:
    std::vector<Diagnostic> run(const Card& card) {
        for (const auto& p : card.platforms)
            check_platform(p);
        for (const auto& s : card.energy_sources)
            check_source(s);
        if (card.training) {
            check_computation(*card.training);
            const auto& hours = card.training->hours;
            if (hours.present && hours.value < 0.0)
                diag("E011", hours.path, hours.pos,
                     "training duration must be non-negative",
                     format_number(hours.value));
        }
        for (const auto& t : card.tasks) {
            if (t.inference_type.present &&
                !parse_inference_type(t.inference_type.value))
                diag("E005", t.inference_type.path, t.inference_type.pos,
                     "unknown inference type `" + t.inference_type.value + "`",
                     t.inference_type.value);
            check_computation(t);
        }

        for (auto& d : resolve_references(card))
            out_.push_back(std::move(d));

        sort_by_position(out_);
        return std::move(out_);
    }

private:
    std::vector<Diagnostic> out_;

    void diag(std::string code, DocPath path, SourcePos pos,
              std::string message, std::string related = {}) {
        out_.push_back(make_diagnostic(std::move(code), std::move(path), pos,
                                       std::move(message),
                                       std::move(related)));
    }

    /// Checks 1 and 2: the unit key is present and belongs to the
    /// family the field demands.
    void check_metric(const Metric& m, units::Family family,
                      std::string_view label) {
        if (!m.present)
            return;
        if (!m.unit.present) {
            diag("E003", m.path.child("unit"), m.pos,
                 "missing `unit` for " + std::string(label));
        } else {
            const auto unit = units::parse_unit(m.unit.value);
            if (!unit || units::family_of(*unit) != family)
                diag("E004", m.unit.path, m.unit.pos,
                     "`" + m.unit.value + "` is not a valid " +
                         std::string(units::family_name(family)) + " unit",
                     m.unit.value);
        }
        if (m.value.present && m.value.value < 0.0)
            diag("E011", m.value.path, m.value.pos,
                 std::string(label) + " must be non-negative",
                 format_number(m.value.value));
    }

    void check_offset(const Metric& m) {
        if (!m.present)
            return;
        if (!m.unit.present) {
            diag("E003", m.path.child("unit"), m.pos,
                 "missing `unit` for carbon_offset_credit");
        } else if (m.unit.value == kPercentageUnit) {
            if (m.value.present &&
                (m.value.value < 0.0 || m.value.value > 100.0))
                diag("E007", m.value.path, m.value.pos,
                     "offset percentage outside [0, 100] (normalized "
                     "fraction outside [0, 1])",
                     format_number(m.value.value));
        } else if (units::parse_unit(m.unit.value) == units::Unit::kgCO2eq) {
            if (m.value.present && m.value.value < 0.0)
                diag("E011", m.value.path, m.value.pos,
                     "carbon offset credit must be non-negative",
                     format_number(m.value.value));
        } else {
            diag("E004", m.unit.path, m.unit.pos,
                 "carbon_offset_credit unit must be PERCENTAGE or kgCO2eq",
                 m.unit.value);
        }
    }

    void check_platform(const Platform& p) {
        check_offset(p.offset);
        double ratio_sum = 0.0;
        for (const auto& e : p.energy_mix) {
            if (!e.ratio.present)
                continue;
            if (e.ratio.value < 0.0 || e.ratio.value > 100.0)
                diag("E007", e.ratio.path, e.ratio.pos,
                     "mix ratio outside [0, 100] (normalized fraction "
                     "outside [0, 1])",
                     format_number(e.ratio.value));
            else
                ratio_sum += e.ratio.value;
        }
        if (p.mix_present && !p.energy_mix.empty() &&
            std::abs(ratio_sum / 100.0 - 1.0) > kMixSumTolerance)
            diag("W101", p.mix_path, p.mix_pos,
                 "energy mix ratios sum to " + format_number(ratio_sum) +
                     "%, expected 100%",
                 format_number(ratio_sum));
    }

    /// Check 3 covers the declared energy source types; the unit side of
    /// the ambiguity is handled by check_metric as E004.
    void check_source(const EnergySource& s) {
        if (s.type.present && !parse_energy_source_type(s.type.value))
            diag("E006", s.type.path, s.type.pos,
                 "unknown energy source type `" + s.type.value + "`",
                 s.type.value);
        if (s.intensity.present && s.intensity.value < 0.0)
            diag("E011", s.intensity.path, s.intensity.pos,
                 "co2_per_kWh must be non-negative",
                 format_number(s.intensity.value));
        if (!s.unit.present) {
            diag("E003", s.path.child("unit"), s.pos,
                 "missing `unit` for co2_per_kWh");
        } else {
            const auto unit = units::parse_unit(s.unit.value);
            if (!unit || units::family_of(*unit) != units::Family::Carbon)
                diag("E004", s.unit.path, s.unit.pos,
                     "`" + s.unit.value +
                         "` is not a valid carbon unit for co2_per_kWh",
                     s.unit.value);
        }
    }

    void check_computation(const Computation& c) {
        check_metric(c.energy, units::Family::Energy, "energy_consumption");
        check_metric(c.carbon, units::Family::Carbon, "carbon_emissions");
        check_metric(c.water, units::Family::Water, "water_consumption");
        if (c.timestamp.present && !c.timestamp.parsed)
            diag("E009", c.timestamp.path, c.timestamp.pos,
                 "timestamp is not an ISO-8601 date-time", c.timestamp.text);
    }
};

} // namespace

std::vector<Diagnostic> validate(const Card& card) {
    Validator validator;
    return validator.run(card);
}

} // namespace smc
