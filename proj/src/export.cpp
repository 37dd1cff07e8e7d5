#include "smc/export.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

#include "smc/format.hpp"

namespace smc {

using units::MetricValue;
using units::Unit;

namespace {

bool plain_safe(std::string_view s) {
    if (s.empty())
        return false;
    if (s == "~" || s == "null" || s == "Null" || s == "NULL")
        return false;
    const auto is_space = [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) != 0;
    };
    if (is_space(s.front()) || is_space(s.back()))
        return false;
    constexpr std::string_view kBadFirst = "-?:,[]{}#&*!|>'\"%@`";
    if (kBadFirst.find(s.front()) != std::string_view::npos)
        return false;
    if (s.back() == ':')
        return false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (static_cast<unsigned char>(c) < 0x20)
            return false;
        const bool last = i + 1 == s.size();
        if (!last && ((c == ':' && s[i + 1] == ' ') ||
                      (c == ' ' && s[i + 1] == '#')))
            return false;
    }
    return true;
}

std::string yaml_scalar(std::string_view s) {
    if (plain_safe(s))
        return std::string(s);
    std::string out = "\"";
    for (const char c : s) {
        switch (c) {
        case '\\': out += "\\\\"; break;
        case '"': out += "\\\""; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\x%02X",
                              static_cast<unsigned>(
                                  static_cast<unsigned char>(c)));
                out += buf;
            } else {
                out += c;
            }
        }
    }
    out += '"';
    return out;
}

class YamlWriter {
public:
    explicit YamlWriter(std::string& out) : out_(out) {}

    void key_text(int indent, std::string_view key, std::string_view value) {
        line(indent, std::string(key) + ": " + yaml_scalar(value));
    }

    void key_number(int indent, std::string_view key, double value) {
        line(indent, std::string(key) + ": " + format_number(value));
    }

    void key_raw(int indent, std::string_view key, std::string_view value) {
        line(indent, std::string(key) + ": " + std::string(value));
    }

    void key(int indent, std::string_view key) {
        line(indent, std::string(key) + ":");
    }

    void line(int indent, std::string_view text) {
        out_.append(static_cast<std::size_t>(indent), ' ');
        out_ += text;
        out_ += '\n';
    }

private:
    std::string& out_;
};

void emit_metric(YamlWriter& w, int indent, std::string_view key,
                 const Metric& m) {
    w.key(indent, key);
    w.key_number(indent + 2, "value", m.value.value);
    w.key_text(indent + 2, "unit", m.unit.value);
}

void emit_computation(YamlWriter& w, int indent, const Computation& c) {
    w.key_text(indent, "platform", c.platform_ref.value);
    emit_metric(w, indent, "carbon_emissions", c.carbon);
    emit_metric(w, indent, "energy_consumption", c.energy);
    emit_metric(w, indent, "water_consumption", c.water);
    if (c.timestamp.present)
        w.key_raw(indent, "timestamp", c.timestamp.text);
}

} // namespace

std::string to_canonical_yaml(const Card& card) {
    std::string out;
    YamlWriter w(out);

    w.line(0, "sustainability_model_card:");
    w.key(2, "meta_data");
    w.key_text(4, "name", card.meta.name.value);
    w.key_text(4, "version", card.meta.version.value);
    w.key_text(4, "model_type", card.meta.model_type.value);
    w.key_text(4, "provider", card.meta.provider.value);
    w.key_text(4, "license", card.meta.license.value);

    if (!card.platforms.empty()) {
        w.key(2, "platforms");
        for (const auto& p : card.platforms) {
            w.line(4, "- platform:");
            w.key_text(8, "name", p.name.value);
            if (p.hardware.present)
                w.key_text(8, "hardware", p.hardware.value);
            if (p.provider.present)
                w.key_text(8, "provider", p.provider.value);
            if (p.region.present)
                w.key_text(8, "region", p.region.value);
            if (p.offset.present) {
                w.key(8, "carbon_offset_credit");
                w.key_number(10, "value", p.offset.value.value);
                w.key_text(10, "unit", p.offset.unit.value);
            }
            if (p.mix_present && !p.energy_mix.empty()) {
                w.key(8, "energy_mix");
                for (const auto& e : p.energy_mix) {
                    w.line(10, "- energy_mix:");
                    w.key_number(14, "ratio", e.ratio.value);
                    w.key_text(14, "energy_source", e.source_ref.value);
                }
            }
        }
    }

    if (!card.energy_sources.empty()) {
        w.key(2, "energy_sources");
        for (const auto& s : card.energy_sources) {
            w.line(4, "- energy_source:");
            w.key_text(8, "name", s.name.value);
            w.key_text(8, "type", s.type.value);
            w.key_number(8, "co2_per_kWh", s.intensity.value);
            w.key_text(8, "unit", s.unit.value);
        }
    }

    if (card.training) {
        w.key(2, "training");
        w.key_number(4, "hour_duration", card.training->hours.value);
        emit_computation(w, 4, *card.training);
    }

    if (!card.tasks.empty()) {
        w.key(2, "inference");
        for (const auto& t : card.tasks) {
            w.line(4, "- task:");
            w.key_text(8, "inference_type", t.inference_type.value);
            emit_computation(w, 8, t);
        }
    }
    return out;
}

// --- markdown -----------------------------------------------------------

namespace {

std::string quantity_cell(const MetricSummary& m, bool canonical_only) {
    if (canonical_only)
        return format_quantity(m.canonical);
    std::string out = format_quantity(m.declared);
    if (m.declared.unit != m.canonical.unit)
        out += " (" + format_quantity(m.canonical) + ")";
    return out;
}

void impact_rows(std::string& out, const ComputationSummary& c,
                 bool canonical_only) {
    out += "| Energy consumption | " + quantity_cell(c.energy, canonical_only) +
           " |\n";
    out += "| Carbon emissions | " + quantity_cell(c.carbon, canonical_only) +
           " |\n";
    out += "| Water consumption | " + quantity_cell(c.water, canonical_only) +
           " |\n";
    out += "| Platform | " + c.platform + " |\n";
    if (c.timestamp)
        out += "| Measured | " + *c.timestamp + " |\n";
}

void impact_table(std::string& out, const ComputationSummary& c,
                  bool canonical_only) {
    out += "| Field | Value |\n";
    out += "| --- | --- |\n";
    impact_rows(out, c, canonical_only);
}

} // namespace

std::string to_markdown(const Card& card, const CardSummary& summary,
                        const RenderOptions& options) {
    const bool canonical_only = options.canonical_units_only;
    std::string out;
    out += "# Sustainability Model Card: " + summary.name + "\n\n";
    out += "| Field | Value |\n";
    out += "| --- | --- |\n";
    out += "| Name | " + summary.name + " |\n";
    out += "| Version | " + summary.version + " |\n";
    out += "| Type | " + summary.model_type + " |\n";
    out += "| Provider | " + summary.provider + " |\n";
    out += "| License | " + summary.license + " |\n";

    if (summary.training) {
        out += "\n## Environmental Impact — Training\n\n";
        out += "| Field | Value |\n";
        out += "| --- | --- |\n";
        out += "| Training duration | " +
               format_number(summary.training->hours) + " h |\n";
        impact_rows(out, *summary.training, canonical_only);
    }

    for (const auto& task : summary.tasks) {
        out += "\n## Environmental Impact — Inference: ";
        out += inference_type_name(task.type);
        out += "\n\n";
        impact_table(out, task, canonical_only);
    }

    if (!summary.platforms.empty()) {
        out += "\n## Platforms\n";
        for (const auto& p : summary.platforms) {
            out += "\n### " + p.name + "\n\n";
            if (!p.hardware.empty())
                out += "- Hardware: " + p.hardware + "\n";
            if (!p.provider.empty())
                out += "- Provider: " + p.provider + "\n";
            if (!p.region.empty())
                out += "- Region: " + p.region + "\n";
            if (p.offset_fraction)
                out += "- Carbon offset credit: " +
                       format_number(*p.offset_fraction * 100.0) + "%\n";
            if (p.offset_absolute)
                out += "- Carbon offset credit: " +
                       format_quantity(*p.offset_absolute) + "\n";
            if (p.intensity_g_per_kwh)
                out += "- Carbon intensity (from energy mix): " +
                       format_number(*p.intensity_g_per_kwh) +
                       " gCO2eq/kWh\n";
            if (!p.mix.empty()) {
                out += "\n| Energy source | Type | Ratio | Intensity |\n";
                out += "| --- | --- | --- | --- |\n";
                for (const auto& row : p.mix) {
                    out += "| " + row.source + " | ";
                    out += energy_source_type_name(row.type);
                    out += " | " + format_number(row.ratio_percent) + "% | ";
                    out += format_number(row.intensity_g_per_kwh) +
                           " gCO2eq/kWh |\n";
                }
            }
        }
    }

    if (options.include_warnings) {
        const ConsistencyResult consistency = check_consistency(card);
        if (!consistency.reports.empty()) {
            out += "\n## Consistency\n\n";
            out += "| Subject | Declared | Implied | Deviation |\n";
            out += "| --- | --- | --- | --- |\n";
            for (const auto& r : consistency.reports) {
                out += "| " + r.subject + " | " +
                       format_quantity(r.declared_carbon) + " | " +
                       format_quantity(r.implied_carbon) + " | " +
                       format_fraction_percent(r.relative_deviation);
                if (!r.within_tolerance)
                    out += " (above tolerance)";
                out += " |\n";
            }
        }
    }
    return out;
}

// --- frontmatter ----------------------------------------------------------

std::string to_hf_frontmatter(const Card& card) {
    if (!card.training)
        throw MissingTraining("card has no training section");

    const Training& training = *card.training;
    const double emissions_g =
        training.carbon.metric_value().canonical_value();
    const Platform* platform = card.find_platform(training.platform_ref.value);

    std::string out;
    YamlWriter w(out);
    w.line(0, "co2_eq_emissions:");
    w.key_number(2, "emissions", emissions_g);
    w.key_raw(2, "training_type", "training");
    if (platform != nullptr) {
        if (platform->region.present)
            w.key_text(2, "geographical_location", platform->region.value);
        if (platform->hardware.present)
            w.key_text(2, "hardware_used", platform->hardware.value);
        if (platform->provider.present)
            w.key_text(2, "cloud_provider", platform->provider.value);
        if (platform->offset.present) {
            if (platform->offset.unit.value == kPercentageUnit)
                w.key_number(2, "offset_percentage",
                             platform->offset.value.value);
            else
                w.key_number(2, "offset_emissions_kg",
                             platform->offset.value.value);
        }
    }
    return out;
}

// --- json -----------------------------------------------------------------

namespace {

nlohmann::json metric_json(const Metric& m) {
    return {{"value", m.value.value}, {"unit", m.unit.value}};
}

nlohmann::json computation_json(const Computation& c) {
    nlohmann::json j{
        {"platform", c.platform_ref.value},
        {"energy_consumption", metric_json(c.energy)},
        {"carbon_emissions", metric_json(c.carbon)},
        {"water_consumption", metric_json(c.water)},
    };
    if (c.timestamp.present)
        j["timestamp"] = c.timestamp.text;
    return j;
}

nlohmann::json metric_summary_json(const MetricSummary& m) {
    return {{"value", m.declared.value},
            {"unit", units::unit_name(m.declared.unit)},
            {"canonical_value", m.canonical.value},
            {"canonical_unit", units::unit_name(m.canonical.unit)}};
}

nlohmann::json computation_summary_json(const ComputationSummary& c) {
    nlohmann::json j{
        {"platform", c.platform},
        {"energy", metric_summary_json(c.energy)},
        {"carbon", metric_summary_json(c.carbon)},
        {"water", metric_summary_json(c.water)},
    };
    if (c.timestamp)
        j["timestamp"] = *c.timestamp;
    return j;
}

} // namespace

nlohmann::json card_to_json(const Card& card) {
    nlohmann::json j;
    j["meta_data"] = {
        {"name", card.meta.name.value},
        {"version", card.meta.version.value},
        {"model_type", card.meta.model_type.value},
        {"provider", card.meta.provider.value},
        {"license", card.meta.license.value},
    };
    j["platforms"] = nlohmann::json::array();
    for (const auto& p : card.platforms) {
        nlohmann::json pj{{"name", p.name.value}};
        if (p.hardware.present)
            pj["hardware"] = p.hardware.value;
        if (p.provider.present)
            pj["provider"] = p.provider.value;
        if (p.region.present)
            pj["region"] = p.region.value;
        if (p.offset.present)
            pj["carbon_offset_credit"] = metric_json(p.offset);
        if (p.mix_present) {
            auto mix = nlohmann::json::array();
            for (const auto& e : p.energy_mix)
                mix.push_back({{"ratio", e.ratio.value},
                               {"energy_source", e.source_ref.value}});
            pj["energy_mix"] = std::move(mix);
        }
        j["platforms"].push_back(std::move(pj));
    }
    j["energy_sources"] = nlohmann::json::array();
    for (const auto& s : card.energy_sources)
        j["energy_sources"].push_back({{"name", s.name.value},
                                       {"type", s.type.value},
                                       {"co2_per_kWh", s.intensity.value},
                                       {"unit", s.unit.value}});
    if (card.training) {
        j["training"] = computation_json(*card.training);
        j["training"]["hour_duration"] = card.training->hours.value;
    }
    j["inference"] = nlohmann::json::array();
    for (const auto& t : card.tasks) {
        nlohmann::json tj = computation_json(t);
        tj["inference_type"] = t.inference_type.value;
        j["inference"].push_back(std::move(tj));
    }
    return j;
}

nlohmann::json diagnostic_to_json(const Diagnostic& d) {
    nlohmann::json j{
        {"code", d.code},
        {"severity", d.severity == Severity::Error ? "error" : "warning"},
        {"path", d.path.str()},
        {"message", d.message},
    };
    if (d.pos.line >= 0) {
        j["line"] = d.pos.line;
        j["column"] = d.pos.column;
    }
    if (!d.related_value.empty())
        j["related_value"] = d.related_value;
    return j;
}

nlohmann::json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics) {
    auto arr = nlohmann::json::array();
    for (const auto& d : diagnostics)
        arr.push_back(diagnostic_to_json(d));
    return arr;
}

nlohmann::json summary_to_json(const CardSummary& summary) {
    nlohmann::json j;
    j["meta_data"] = {
        {"name", summary.name},         {"version", summary.version},
        {"model_type", summary.model_type}, {"provider", summary.provider},
        {"license", summary.license},
    };
    if (summary.training) {
        j["training"] = computation_summary_json(*summary.training);
        j["training"]["hour_duration"] = summary.training->hours;
    }
    j["inference"] = nlohmann::json::array();
    for (const auto& t : summary.tasks) {
        nlohmann::json tj = computation_summary_json(t);
        tj["inference_type"] = inference_type_name(t.type);
        j["inference"].push_back(std::move(tj));
    }
    j["platforms"] = nlohmann::json::array();
    for (const auto& p : summary.platforms) {
        nlohmann::json pj{{"name", p.name}};
        if (!p.hardware.empty())
            pj["hardware"] = p.hardware;
        if (!p.provider.empty())
            pj["provider"] = p.provider;
        if (!p.region.empty())
            pj["region"] = p.region;
        if (p.intensity_g_per_kwh)
            pj["intensity_gco2eq_per_kwh"] = *p.intensity_g_per_kwh;
        if (p.offset_fraction)
            pj["offset_fraction"] = *p.offset_fraction;
        if (p.offset_absolute)
            pj["offset_kgco2eq"] = p.offset_absolute->value;
        auto mix = nlohmann::json::array();
        for (const auto& row : p.mix)
            mix.push_back({{"energy_source", row.source},
                           {"type", energy_source_type_name(row.type)},
                           {"ratio_percent", row.ratio_percent},
                           {"intensity_gco2eq_per_kwh",
                            row.intensity_g_per_kwh}});
        if (!mix.empty())
            pj["energy_mix"] = std::move(mix);
        j["platforms"].push_back(std::move(pj));
    }
    return j;
}

nlohmann::json consistency_to_json(const std::vector<ConsistencyReport>& reports) {
    auto arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j{
            {"subject", r.subject},
            {"declared_gco2eq", r.declared_carbon.value},
            {"implied_gco2eq", r.implied_carbon.value},
            {"within_tolerance", r.within_tolerance},
        };
        if (std::isfinite(r.relative_deviation))
            j["relative_deviation"] = r.relative_deviation;
        else
            j["relative_deviation"] = nullptr;
        arr.push_back(std::move(j));
    }
    return arr;
}

nlohmann::json ranking_to_json(const Ranking& ranking) {
    nlohmann::json j;
    j["criterion"] = criterion_label(ranking.criterion);
    j["entries"] = nlohmann::json::array();
    for (const auto& e : ranking.entries)
        j["entries"].push_back({{"name", e.card_name},
                                {"version", e.card_version},
                                {"score", e.score},
                                {"unit", units::unit_name(e.unit)}});
    j["excluded"] = ranking.excluded;
    return j;
}

} // namespace smc
