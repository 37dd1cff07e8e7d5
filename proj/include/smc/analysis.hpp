#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "smc/model.hpp"

namespace smc {

struct EmptyMix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyComparison : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnresolvedReference : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mix-weighted carbon intensity of a platform in gCO2eq per kWh.
/// Ratios are weighted by their share of the actual ratio sum, so a mix
/// that does not add up to 100% (W101) is renormalized rather than
/// rejected. Throws EmptyMix when the platform declares no mix entries
/// or the ratio sum is zero.
double mix_intensity(const Platform& platform,
                     const std::vector<EnergySource>& sources);

inline constexpr double kDefaultConsistencyTolerance = 0.02;

/// Declared vs implied carbon for one computation. Both metrics are
/// canonicalized to gCO2eq.
struct ConsistencyReport {
    bool is_training = false;
    std::optional<InferenceType> task_type; ///< set for inference subjects
    std::string subject;                    ///< display label
    units::MetricValue declared_carbon;
    units::MetricValue implied_carbon;
    double relative_deviation = 0.0;
    bool within_tolerance = true;
    DocPath path; ///< carbon_emissions node of the subject
};

struct ConsistencyResult {
    std::vector<ConsistencyReport> reports;
    std::vector<Diagnostic> diagnostics; ///< W102 per out-of-tolerance subject
};

/// Cross-checks declared carbon against energy x mix intensity for the
/// training section and every task whose platform declares an energy mix.
/// Subjects without a mix are skipped. Precondition: card is valid.
ConsistencyResult check_consistency(const Card& card,
                                    double tolerance = kDefaultConsistencyTolerance);

enum class Phase { Training, Inference };

struct Criterion {
    Phase phase = Phase::Training;
    units::Family family = units::Family::Energy;
    std::optional<InferenceType> task_type; ///< required for inference
};

/// CLI spellings: training-energy, training-carbon, training-water,
/// inference-energy, inference-carbon, inference-water. Inference
/// criteria need the task type; nullopt when the combination is invalid.
std::optional<Criterion> parse_criterion(std::string_view name,
                                         std::optional<std::string_view> task_type);

std::string criterion_label(const Criterion& c);

struct RankingEntry {
    std::string card_name;
    std::string card_version;
    double score = 0.0; ///< in the canonical unit of the criterion's family
    units::Unit unit = units::Unit::Wh;
};

struct Ranking {
    Criterion criterion;
    /// Ascending score; ties broken by card name, then version.
    std::vector<RankingEntry> entries;
    /// "name version" of cards lacking the requested criterion.
    std::vector<std::string> excluded;
};

/// Ranks cards by one criterion; lower impact first. Cards lacking the
/// criterion are excluded and reported. Throws EmptyComparison when no
/// card supplies it. Precondition: every card is valid.
Ranking compare_cards(std::span<const Card> cards, const Criterion& criterion);

// --- card summary -------------------------------------------------------

struct MetricSummary {
    units::MetricValue declared;
    units::MetricValue canonical;
};

struct ComputationSummary {
    std::string platform;
    MetricSummary energy;
    MetricSummary carbon;
    MetricSummary water;
    std::optional<std::string> timestamp;
};

struct TrainingSummary : ComputationSummary {
    double hours = 0.0;
};

struct TaskSummary : ComputationSummary {
    InferenceType type = InferenceType::TextGeneration;
};

struct MixRowSummary {
    std::string source;
    double ratio_percent = 0.0;
    EnergySourceType type = EnergySourceType::Fossil;
    double intensity_g_per_kwh = 0.0;
};

struct PlatformSummary {
    std::string name;
    std::string hardware;
    std::string provider;
    std::string region;
    std::optional<double> intensity_g_per_kwh; ///< absent without a mix
    std::optional<double> offset_fraction;     ///< PERCENTAGE credits, [0, 1]
    std::optional<units::MetricValue> offset_absolute; ///< kgCO2eq credits
    std::vector<MixRowSummary> mix;
};

struct CardSummary {
    std::string name;
    std::string version;
    std::string model_type;
    std::string provider;
    std::string license;
    std::optional<TrainingSummary> training;
    std::vector<TaskSummary> tasks;
    std::vector<PlatformSummary> platforms;
};

/// Canonicalized view of a card: metrics in declared and canonical units,
/// per-platform mix intensity, offset credit as fraction or absolute
/// quantity. Precondition: card is valid.
CardSummary summarize(const Card& card);

} // namespace smc
