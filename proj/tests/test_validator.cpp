#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "smc/check.hpp"
#include "smc/validator.hpp"
#include "support/fixture.hpp"

using namespace smc;

namespace {

int count_code(const std::vector<Diagnostic>& diags, std::string_view code) {
    return static_cast<int>(
        std::count_if(diags.begin(), diags.end(),
                      [&](const Diagnostic& d) { return d.code == code; }));
}

/// Applies a single-field mutation and checks that the intended code is
/// the only error-severity code it triggers.
void expect_single_error(const std::string& from, const std::string& to,
                         const std::string& code) {
    CAPTURE(code);
    const std::string text =
        test::replace_once(test::fixture_text("golden_card.yaml"), from, to);
    const DocumentCheck check = check_document(text);
    const SeveritySummary summary = severity_summary(check.diagnostics);
    CHECK(summary.errors == 1);
    CHECK(count_code(check.diagnostics, code) == 1);
    for (const auto& d : check.diagnostics)
        if (d.severity == Severity::Error)
            CHECK(d.code == code);
}

} // namespace

TEST_CASE("golden fixture validates with zero errors, one warning") {
    const DocumentCheck check =
        check_document(test::fixture_text("golden_card.yaml"));
    const SeveritySummary summary = severity_summary(check.diagnostics);
    CHECK(summary.errors == 0);
    CHECK(summary.valid);
    CHECK(summary.warnings == 1);
    CHECK(count_code(check.diagnostics, "W105") == 1);
}

TEST_CASE("E003: metric without a unit key") {
    expect_single_error("      unit: kWh\n", "", "E003");
    const std::string text = test::replace_once(
        test::fixture_text("golden_card.yaml"), "      unit: kWh\n", "");
    const DocumentCheck check = check_document(text);
    bool found = false;
    for (const auto& d : check.diagnostics)
        if (d.code == "E003") {
            CHECK(d.path.str() ==
                  "sustainability_model_card/training/energy_consumption/"
                  "unit");
            found = true;
        }
    CHECK(found);
}

TEST_CASE("E004: unit outside the field's family") {
    expect_single_error("unit: kWh", "unit: Liters", "E004");
    // a valid unit from the wrong family is E004 as well
    expect_single_error("unit: kWh", "unit: L", "E004");

    const std::string text = test::replace_once(
        test::fixture_text("golden_card.yaml"), "unit: kWh", "unit: Liters");
    for (const auto& d : check_document(text).diagnostics)
        if (d.code == "E004")
            CHECK(d.path.str() ==
                  "sustainability_model_card/training/energy_consumption/"
                  "unit");
}

TEST_CASE("E005: unknown inference type") {
    expect_single_error("inference_type: TextGeneration",
                        "inference_type: Telepathy", "E005");
}

TEST_CASE("E006: unknown energy source type") {
    expect_single_error("type: Fossil", "type: Coal", "E006");
}

TEST_CASE("E007: offset percentage out of range") {
    expect_single_error("value: 100.0", "value: 150.0", "E007");
    expect_single_error("value: 100.0", "value: -3.0", "E007");
}

TEST_CASE("E007: mix ratio out of range") {
    expect_single_error("ratio: 100.0", "ratio: 130.0", "E007");
}

TEST_CASE("E008: dangling platform reference") {
    expect_single_error("        platform: Infrastructure",
                        "        platform: Cluster-X", "E008");
}

TEST_CASE("E009: unparseable timestamp") {
    expect_single_error("timestamp: 2025-01-02T09:00:00",
                        "timestamp: not-a-date", "E009");
    expect_single_error("timestamp: 2025-01-02T09:00:00",
                        "timestamp: 2025-13-40T09:00:00", "E009");
}

TEST_CASE("E010: duplicate declaration name") {
    expect_single_error(
        "  energy_sources:",
        "    - platform:\n        name: Infrastructure\n  energy_sources:",
        "E010");
}

TEST_CASE("E011: negative metric value") {
    expect_single_error("value: 25.0", "value: -25.0", "E011");
}

TEST_CASE("E011: negative duration") {
    expect_single_error("hour_duration: 100.0", "hour_duration: -1.0",
                        "E011");
}

TEST_CASE("W101: mix ratios short of 100%") {
    const std::string text =
        test::replace_once(test::fixture_text("golden_card.yaml"),
                           "ratio: 100.0", "ratio: 60.0");
    const DocumentCheck check = check_document(text);
    const SeveritySummary summary = severity_summary(check.diagnostics);
    CHECK(summary.errors == 0);
    CHECK(count_code(check.diagnostics, "W101") == 1);
}

TEST_CASE("W101 tolerance: 99.95 percent passes, 99.8 does not") {
    const std::string pass =
        test::replace_once(test::fixture_text("golden_card.yaml"),
                           "ratio: 100.0", "ratio: 99.95");
    CHECK(count_code(check_document(pass).diagnostics, "W101") == 0);

    const std::string fail =
        test::replace_once(test::fixture_text("golden_card.yaml"),
                           "ratio: 100.0", "ratio: 99.8");
    CHECK(count_code(check_document(fail).diagnostics, "W101") == 1);
}

TEST_CASE("W103: unknown key is a warning") {
    const std::string text = test::replace_once(
        test::fixture_text("golden_card.yaml"), "    model_type: LLM",
        "    model_type: LLM\n    flavor: vanilla");
    const DocumentCheck check = check_document(text);
    CHECK(severity_summary(check.diagnostics).errors == 0);
    CHECK(count_code(check.diagnostics, "W103") == 1);
}

TEST_CASE("offset in kgCO2eq accepts values above 100 but not below zero") {
    std::string text = test::fixture_text("golden_card.yaml");
    text = test::replace_once(text, "unit: PERCENTAGE", "unit: kgCO2eq");
    text = test::replace_once(text, "value: 100.0", "value: 450.0");
    CHECK(severity_summary(check_document(text).diagnostics).errors == 0);

    std::string negative = test::fixture_text("golden_card.yaml");
    negative = test::replace_once(negative, "unit: PERCENTAGE",
                                  "unit: kgCO2eq");
    negative = test::replace_once(negative, "value: 100.0", "value: -2.0");
    const DocumentCheck check = check_document(negative);
    CHECK(count_code(check.diagnostics, "E011") == 1);
}

TEST_CASE("offset unit outside PERCENTAGE/kgCO2eq is E004") {
    const std::string text =
        test::replace_once(test::fixture_text("golden_card.yaml"),
                           "unit: PERCENTAGE", "unit: Wh");
    CHECK(count_code(check_document(text).diagnostics, "E004") == 1);
}

TEST_CASE("validate is deterministic") {
    std::string text = test::fixture_text("golden_card.yaml");
    text = test::replace_once(text, "unit: kWh", "unit: Liters");
    text = test::replace_once(text, "type: Fossil", "type: Coal");
    const DocumentCheck a = check_document(text);
    const DocumentCheck b = check_document(text);
    REQUIRE(a.diagnostics.size() == b.diagnostics.size());
    for (std::size_t i = 0; i < a.diagnostics.size(); ++i) {
        CHECK(a.diagnostics[i].code == b.diagnostics[i].code);
        CHECK(a.diagnostics[i].path.str() == b.diagnostics[i].path.str());
        CHECK(a.diagnostics[i].message == b.diagnostics[i].message);
    }
}

TEST_CASE("diagnostics come back in document order") {
    std::string text = test::fixture_text("golden_card.yaml");
    text = test::replace_once(text, "type: Fossil", "type: Coal");
    text = test::replace_once(text, "unit: kWh", "unit: Liters");
    const DocumentCheck check = check_document(text);
    int last_line = -1;
    for (const auto& d : check.diagnostics) {
        CHECK(d.pos.line >= last_line);
        last_line = d.pos.line;
    }
    // the source-type mutation (line 24) precedes the unit mutation (line 35)
    std::vector<std::string> error_codes;
    for (const auto& d : check.diagnostics)
        if (d.severity == Severity::Error)
            error_codes.push_back(d.code);
    REQUIRE(error_codes.size() == 2);
    CHECK(error_codes[0] == "E006");
    CHECK(error_codes[1] == "E004");
}

TEST_CASE("severity_summary counts and validity") {
    CHECK(severity_summary({}).valid);
    CHECK(severity_summary({}).errors == 0);
    CHECK(severity_summary({}).warnings == 0);

    const auto e004 = make_diagnostic("E004", DocPath{}, SourcePos{},
                                      "bad unit");
    const auto w101 = make_diagnostic("W101", DocPath{}, SourcePos{},
                                      "bad mix sum");
    const SeveritySummary one = severity_summary({e004});
    CHECK(one.errors == 1);
    CHECK(one.warnings == 0);
    CHECK(!one.valid);

    const SeveritySummary mixed = severity_summary({e004, w101, w101});
    CHECK(mixed.errors == 1);
    CHECK(mixed.warnings == 2);
    CHECK(!mixed.valid);
}

TEST_CASE("parse-level failures surface as E012/E013 diagnostics") {
    const DocumentCheck syntax = check_document("a: [1, 2");
    CHECK(!syntax.card.has_value());
    REQUIRE(syntax.diagnostics.size() == 1);
    CHECK(syntax.diagnostics[0].code == "E012");

    const DocumentCheck empty = check_document("");
    CHECK(count_code(empty.diagnostics, "E012") == 1);

    const DocumentCheck dup = check_document(
        "sustainability_model_card:\n  meta_data: {}\n  meta_data: {}\n");
    CHECK(count_code(dup.diagnostics, "E013") == 1);
}

TEST_CASE("fatal structure surfaces as a root diagnostic") {
    const DocumentCheck check = check_document("wrong_root: 1\n");
    CHECK(!check.card.has_value());
    REQUIRE(check.diagnostics.size() == 1);
    CHECK(check.diagnostics[0].code == "E001");
    CHECK(check.diagnostics[0].path.str() == "sustainability_model_card");
}
