#include "smc/model.hpp"

#include <array>
#include <cctype>
#include <cstdlib>

namespace smc {

namespace {

constexpr std::array<InferenceType, 10> kInferenceTypes{
    InferenceType::TextGeneration,
    InferenceType::ImageGeneration,
    InferenceType::TextClassification,
    InferenceType::ImageClassification,
    InferenceType::ImageCaptioning,
    InferenceType::Summarization,
    InferenceType::AutomaticSpeechRecognition,
    InferenceType::ObjectDetection,
    InferenceType::SentenceSimilarity,
    InferenceType::ExtractiveQuestionAnswering,
};

constexpr std::array<std::string_view, 10> kInferenceTypeNames{
    "TextGeneration",
    "ImageGeneration",
    "TextClassification",
    "ImageClassification",
    "ImageCaptioning",
    "Summarization",
    "AutomaticSpeechRecognition",
    "ObjectDetection",
    "SentenceSimilarity",
    "ExtractiveQuestionAnswering",
};

constexpr std::array<EnergySourceType, 4> kSourceTypes{
    EnergySourceType::Fossil,
    EnergySourceType::Renewable,
    EnergySourceType::Nuclear,
    EnergySourceType::Mixed,
};

constexpr std::array<std::string_view, 4> kSourceTypeNames{
    "Fossil",
    "Renewable",
    "Nuclear",
    "Mixed",
};

} // namespace

std::optional<InferenceType> parse_inference_type(std::string_view text) {
    for (std::size_t i = 0; i < kInferenceTypeNames.size(); ++i)
        if (kInferenceTypeNames[i] == text)
            return kInferenceTypes[i];
    return std::nullopt;
}

std::string_view inference_type_name(InferenceType t) {
    return kInferenceTypeNames[static_cast<std::size_t>(t)];
}

std::span<const InferenceType> all_inference_types() { return kInferenceTypes; }

std::optional<EnergySourceType> parse_energy_source_type(std::string_view text) {
    for (std::size_t i = 0; i < kSourceTypeNames.size(); ++i)
        if (kSourceTypeNames[i] == text)
            return kSourceTypes[i];
    return std::nullopt;
}

std::string_view energy_source_type_name(EnergySourceType t) {
    return kSourceTypeNames[static_cast<std::size_t>(t)];
}

std::span<const EnergySourceType> all_energy_source_types() {
    return kSourceTypes;
}

units::MetricValue Metric::metric_value() const {
    const auto unit_enum = units::parse_unit(unit.value);
    return units::MetricValue{value.value,
                              unit_enum.value_or(units::Unit::Wh)};
}

const Platform* Card::find_platform(std::string_view name) const {
    for (const auto& p : platforms)
        if (p.name.value == name)
            return &p;
    return nullptr;
}

const EnergySource* Card::find_energy_source(std::string_view name) const {
    for (const auto& s : energy_sources)
        if (s.name.value == name)
            return &s;
    return nullptr;
}

// --- timestamps ---------------------------------------------------------

namespace {

bool read_digits(std::string_view& s, int count, int& out) {
    if (s.size() < static_cast<std::size_t>(count))
        return false;
    int v = 0;
    for (int i = 0; i < count; ++i) {
        const char c = s[static_cast<std::size_t>(i)];
        if (c < '0' || c > '9')
            return false;
        v = v * 10 + (c - '0');
    }
    s.remove_prefix(static_cast<std::size_t>(count));
    out = v;
    return true;
}

bool consume(std::string_view& s, char c) {
    if (s.empty() || s.front() != c)
        return false;
    s.remove_prefix(1);
    return true;
}

bool leap_year(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static constexpr int kDays[12] = {31, 28, 31, 30, 31, 30,
                                      31, 31, 30, 31, 30, 31};
    if (m == 2 && leap_year(y))
        return 29;
    return kDays[m - 1];
}

// Days since 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const int yoe = static_cast<int>(y - era * 400);
    const int doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const int doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

} // namespace

ParsedTimestamp parse_timestamp(std::string_view text) {
    ParsedTimestamp out;
    std::string_view s = text;

    int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
    if (!read_digits(s, 4, year) || !consume(s, '-') ||
        !read_digits(s, 2, month) || !consume(s, '-') ||
        !read_digits(s, 2, day) || !consume(s, 'T') ||
        !read_digits(s, 2, hour) || !consume(s, ':') ||
        !read_digits(s, 2, minute) || !consume(s, ':') ||
        !read_digits(s, 2, second))
        return out;

    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month) ||
        hour > 23 || minute > 59 || second > 59)
        return out;

    if (consume(s, '.')) {
        std::size_t digits = 0;
        while (!s.empty() && s.front() >= '0' && s.front() <= '9') {
            s.remove_prefix(1);
            ++digits;
        }
        if (digits == 0)
            return out;
    }

    std::int64_t offset_seconds = 0;
    bool has_offset = false;
    if (!s.empty()) {
        if (consume(s, 'Z')) {
            has_offset = true;
        } else if (s.front() == '+' || s.front() == '-') {
            const int sign = s.front() == '+' ? 1 : -1;
            s.remove_prefix(1);
            int oh = 0, om = 0;
            if (!read_digits(s, 2, oh) || !consume(s, ':') ||
                !read_digits(s, 2, om))
                return out;
            if (oh > 23 || om > 59)
                return out;
            offset_seconds = sign * (oh * 3600LL + om * 60LL);
            has_offset = true;
        }
    }
    if (!s.empty())
        return out;

    out.ok = true;
    out.has_offset = has_offset;
    out.epoch_seconds = days_from_civil(year, month, day) * 86400LL +
                        hour * 3600LL + minute * 60LL + second -
                        offset_seconds;
    return out;
}

} // namespace smc
