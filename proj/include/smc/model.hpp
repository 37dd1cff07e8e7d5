#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smc/diagnostics.hpp"
#include "smc/units.hpp"

namespace smc {

/// Inference task taxonomy (closed set, exact spelling).
enum class InferenceType {
    TextGeneration,
    ImageGeneration,
    TextClassification,
    ImageClassification,
    ImageCaptioning,
    Summarization,
    AutomaticSpeechRecognition,
    ObjectDetection,
    SentenceSimilarity,
    ExtractiveQuestionAnswering,
};

std::optional<InferenceType> parse_inference_type(std::string_view text);
std::string_view inference_type_name(InferenceType t);
std::span<const InferenceType> all_inference_types();

enum class EnergySourceType { Fossil, Renewable, Nuclear, Mixed };

std::optional<EnergySourceType> parse_energy_source_type(std::string_view text);
std::string_view energy_source_type_name(EnergySourceType t);
std::span<const EnergySourceType> all_energy_source_types();

/// Carbon offset credits are declared either as a percentage of emissions
/// or as an absolute kgCO2eq quantity.
inline constexpr std::string_view kPercentageUnit = "PERCENTAGE";

// --- document model ---------------------------------------------------
//
// Cards are stored as written: values keep their declared units and the
// validator, not the constructor, establishes the metamodel invariants.
// Every field carries the document path and position it came from so
// diagnostics can point back into the source.

struct TextField {
    std::string value;
    bool present = false;
    DocPath path;
    SourcePos pos;

    explicit operator bool() const { return present; }
};

struct NumberField {
    double value = 0.0;
    bool present = false;
    bool quoted = false; ///< written as a quoted scalar and coerced
    DocPath path;
    SourcePos pos;
};

struct TimestampField {
    std::string text; ///< as written
    bool present = false;
    bool parsed = false;
    bool has_offset = false;
    std::int64_t epoch_seconds = 0; ///< UTC assumed when no offset given
    DocPath path;
    SourcePos pos;
};

/// A value/unit mapping: the three impact metrics and the offset credit.
struct Metric {
    bool present = false;
    NumberField value;
    TextField unit;
    DocPath path;
    SourcePos pos;

    /// Strongly typed view. Precondition: the unit spelling is valid
    /// (holds for any card that validates without errors).
    [[nodiscard]] units::MetricValue metric_value() const;
};

struct MetaData {
    bool present = false;
    TextField name;
    TextField version;
    TextField model_type;
    TextField provider;
    TextField license;
    DocPath path;
    SourcePos pos;
};

struct EnergyMixEntry {
    NumberField ratio;    ///< percentage scale, [0, 100]
    TextField source_ref; ///< name of an EnergySource
    DocPath path;
    SourcePos pos;
};

struct Platform {
    TextField name;
    TextField hardware;
    TextField provider;
    TextField region;
    Metric offset; ///< carbon_offset_credit, absent when not declared
    bool mix_present = false;
    std::vector<EnergyMixEntry> energy_mix;
    DocPath mix_path;
    SourcePos mix_pos;
    DocPath path;
    SourcePos pos;
};

struct EnergySource {
    TextField name;
    TextField type;
    NumberField intensity; ///< co2_per_kWh
    TextField unit;        ///< carbon unit of the intensity numerator
    DocPath path;
    SourcePos pos;
};

/// Shared shape of the training section and each inference task.
struct Computation {
    TextField platform_ref;
    Metric energy;
    Metric carbon;
    Metric water;
    TimestampField timestamp;
    DocPath path;
    SourcePos pos;
};

struct Training : Computation {
    NumberField hours; ///< hour_duration
};

struct Task : Computation {
    TextField inference_type;
};

struct Card {
    MetaData meta;
    std::vector<Platform> platforms;
    std::vector<EnergySource> energy_sources;
    std::optional<Training> training;
    std::vector<Task> tasks; ///< inference section, document order
    DocPath path;

    const Platform* find_platform(std::string_view name) const;
    const EnergySource* find_energy_source(std::string_view name) const;
};

/// Strict ISO-8601 date-time: YYYY-MM-DDTHH:MM:SS[.fff...][Z|+HH:MM|-HH:MM].
struct ParsedTimestamp {
    bool ok = false;
    bool has_offset = false;
    std::int64_t epoch_seconds = 0;
};

ParsedTimestamp parse_timestamp(std::string_view text);

} // namespace smc
