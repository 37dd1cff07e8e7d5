#include "smc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "smc/format.hpp"

namespace smc {

using units::Family;
using units::MetricValue;
using units::Unit;

double mix_intensity(const Platform& platform,
                     const std::vector<EnergySource>& sources) {
    if (!platform.mix_present || platform.energy_mix.empty())
        throw EmptyMix("platform `" + platform.name.value +
                       "` declares no energy mix");

    double weighted = 0.0;
    double ratio_sum = 0.0;
    double last_intensity = 0.0;
    for (const auto& entry : platform.energy_mix) {
        const EnergySource* source = nullptr;
        for (const auto& s : sources)
            if (s.name.value == entry.source_ref.value) {
                source = &s;
                break;
            }
        if (source == nullptr)
            throw UnresolvedReference("energy source `" +
                                      entry.source_ref.value +
                                      "` is not declared");
        const auto unit = units::parse_unit(source->unit.value);
        if (!unit)
            throw std::invalid_argument("energy source `" +
                                        source->name.value +
                                        "` has no valid intensity unit");
        const double g_per_kwh =
            units::convert(source->intensity.value, *unit, Unit::gCO2eq);
        weighted += entry.ratio.value * g_per_kwh;
        ratio_sum += entry.ratio.value;
        last_intensity = g_per_kwh;
    }
    if (ratio_sum <= 0.0)
        throw EmptyMix("platform `" + platform.name.value +
                       "` has an energy mix with zero ratio sum");
    // A single-entry mix is that source's intensity, bit for bit; the
    // r*g/r weighting could cost an ulp.
    if (platform.energy_mix.size() == 1)
        return last_intensity;
    // Weighting by share of the actual sum renormalizes non-unity mixes.
    return weighted / ratio_sum;
}

namespace {

double energy_in_kwh(const Metric& energy) {
    const MetricValue mv = energy.metric_value();
    return units::convert(mv.value, mv.unit, Unit::kWh);
}

} // namespace

ConsistencyResult check_consistency(const Card& card, double tolerance) {
    ConsistencyResult out;

    const auto handle = [&](const Computation& comp, bool is_training,
                            std::optional<InferenceType> task_type,
                            std::string subject) {
        const Platform* platform = card.find_platform(comp.platform_ref.value);
        if (platform == nullptr || !platform->mix_present ||
            platform->energy_mix.empty())
            return;

        const double intensity = mix_intensity(*platform, card.energy_sources);
        const double implied_g = energy_in_kwh(comp.energy) * intensity;
        const double declared_g = comp.carbon.metric_value().canonical_value();

        double deviation = 0.0;
        if (implied_g > 0.0)
            deviation = std::abs(declared_g - implied_g) / implied_g;
        else if (declared_g != 0.0)
            deviation = std::numeric_limits<double>::infinity();

        ConsistencyReport report;
        report.is_training = is_training;
        report.task_type = task_type;
        report.subject = std::move(subject);
        report.declared_carbon = MetricValue{declared_g, Unit::gCO2eq};
        report.implied_carbon = MetricValue{implied_g, Unit::gCO2eq};
        report.relative_deviation = deviation;
        report.within_tolerance = deviation <= tolerance;
        report.path = comp.carbon.path;

        if (!report.within_tolerance)
            out.diagnostics.push_back(make_diagnostic(
                "W102", comp.carbon.path, comp.carbon.pos,
                "declared carbon for " + report.subject + " deviates " +
                    format_fraction_percent(deviation) +
                    " from energy x mix intensity (" +
                    format_number(implied_g) + " gCO2eq implied)",
                format_number(declared_g)));
        out.reports.push_back(std::move(report));
    };

    if (card.training)
        handle(*card.training, true, std::nullopt, "training");
    for (const auto& task : card.tasks) {
        const auto type = parse_inference_type(task.inference_type.value);
        std::string subject = "inference " + std::string(
            type ? inference_type_name(*type) : task.inference_type.value);
        handle(task, false, type, std::move(subject));
    }
    return out;
}

std::optional<Criterion> parse_criterion(std::string_view name,
                                         std::optional<std::string_view> task_type) {
    Criterion c;
    if (name == "training-energy")
        c = {Phase::Training, Family::Energy, std::nullopt};
    else if (name == "training-carbon")
        c = {Phase::Training, Family::Carbon, std::nullopt};
    else if (name == "training-water")
        c = {Phase::Training, Family::Water, std::nullopt};
    else if (name == "inference-energy")
        c = {Phase::Inference, Family::Energy, std::nullopt};
    else if (name == "inference-carbon")
        c = {Phase::Inference, Family::Carbon, std::nullopt};
    else if (name == "inference-water")
        c = {Phase::Inference, Family::Water, std::nullopt};
    else
        return std::nullopt;

    if (c.phase == Phase::Inference) {
        if (!task_type)
            return std::nullopt;
        const auto type = parse_inference_type(*task_type);
        if (!type)
            return std::nullopt;
        c.task_type = type;
    }
    return c;
}

std::string criterion_label(const Criterion& c) {
    std::string out = c.phase == Phase::Training ? "training-" : "inference-";
    out += units::family_name(c.family);
    if (c.task_type)
        out += " (" + std::string(inference_type_name(*c.task_type)) + ")";
    return out;
}

namespace {

const Metric& metric_for(const Computation& comp, Family family) {
    switch (family) {
    case Family::Energy: return comp.energy;
    case Family::Carbon: return comp.carbon;
    case Family::Water: return comp.water;
    }
    return comp.energy;
}

} // namespace

Ranking compare_cards(std::span<const Card> cards, const Criterion& criterion) {
    Ranking ranking;
    ranking.criterion = criterion;

    for (const auto& card : cards) {
        const Computation* subject = nullptr;
        if (criterion.phase == Phase::Training) {
            if (card.training)
                subject = &*card.training;
        } else {
            for (const auto& task : card.tasks)
                if (parse_inference_type(task.inference_type.value) ==
                    criterion.task_type) {
                    subject = &task;
                    break;
                }
        }
        const std::string label =
            card.meta.name.value + " " + card.meta.version.value;
        if (subject == nullptr) {
            ranking.excluded.push_back(label);
            continue;
        }
        const MetricValue mv =
            metric_for(*subject, criterion.family).metric_value();
        RankingEntry entry;
        entry.card_name = card.meta.name.value;
        entry.card_version = card.meta.version.value;
        entry.score = mv.canonical_value();
        entry.unit = units::canonical_unit(criterion.family);
        ranking.entries.push_back(std::move(entry));
    }

    if (ranking.entries.empty())
        throw EmptyComparison("no card supplies criterion " +
                              criterion_label(criterion));

    std::sort(ranking.entries.begin(), ranking.entries.end(),
              [](const RankingEntry& a, const RankingEntry& b) {
                  return std::tie(a.score, a.card_name, a.card_version) <
                         std::tie(b.score, b.card_name, b.card_version);
              });
    return ranking;
}

namespace {

MetricSummary metric_summary(const Metric& m) {
    const MetricValue declared = m.metric_value();
    return MetricSummary{declared, declared.normalized()};
}

void fill_computation(const Computation& comp, ComputationSummary& out) {
    out.platform = comp.platform_ref.value;
    out.energy = metric_summary(comp.energy);
    out.carbon = metric_summary(comp.carbon);
    out.water = metric_summary(comp.water);
    if (comp.timestamp.present)
        out.timestamp = comp.timestamp.text;
}

} // namespace

CardSummary summarize(const Card& card) {
    CardSummary s;
    s.name = card.meta.name.value;
    s.version = card.meta.version.value;
    s.model_type = card.meta.model_type.value;
    s.provider = card.meta.provider.value;
    s.license = card.meta.license.value;

    if (card.training) {
        TrainingSummary t;
        fill_computation(*card.training, t);
        t.hours = card.training->hours.value;
        s.training = std::move(t);
    }
    for (const auto& task : card.tasks) {
        TaskSummary t;
        fill_computation(task, t);
        t.type = parse_inference_type(task.inference_type.value)
                     .value_or(InferenceType::TextGeneration);
        s.tasks.push_back(std::move(t));
    }
    for (const auto& p : card.platforms) {
        PlatformSummary ps;
        ps.name = p.name.value;
        ps.hardware = p.hardware.value;
        ps.provider = p.provider.value;
        ps.region = p.region.value;
        if (p.mix_present && !p.energy_mix.empty())
            ps.intensity_g_per_kwh = mix_intensity(p, card.energy_sources);
        if (p.offset.present) {
            if (p.offset.unit.value == kPercentageUnit)
                ps.offset_fraction =
                    units::normalize_percentage(p.offset.value.value);
            else
                ps.offset_absolute = MetricValue{p.offset.value.value,
                                                 Unit::kgCO2eq};
        }
        for (const auto& e : p.energy_mix) {
            const EnergySource* src =
                card.find_energy_source(e.source_ref.value);
            if (src == nullptr)
                continue;
            MixRowSummary row;
            row.source = src->name.value;
            row.ratio_percent = e.ratio.value;
            row.type = parse_energy_source_type(src->type.value)
                           .value_or(EnergySourceType::Mixed);
            const auto unit = units::parse_unit(src->unit.value);
            row.intensity_g_per_kwh = units::convert(
                src->intensity.value, unit.value_or(Unit::gCO2eq),
                Unit::gCO2eq);
            ps.mix.push_back(std::move(row));
        }
        s.platforms.push_back(std::move(ps));
    }
    return s;
}

} // namespace smc
