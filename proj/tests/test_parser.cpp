#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "smc/parser.hpp"
#include "smc/yaml_tree.hpp"
#include "support/fixture.hpp"
#include "support/tree_path.hpp"

using namespace smc;

namespace {

BuildResult build_text(const std::string& text) {
    return build_card(parse_document(text));
}

int count_code(const std::vector<Diagnostic>& diags, std::string_view code) {
    return static_cast<int>(
        std::count_if(diags.begin(), diags.end(),
                      [&](const Diagnostic& d) { return d.code == code; }));
}

int count_errors(const std::vector<Diagnostic>& diags) {
    return severity_summary(diags).errors;
}

} // namespace

TEST_CASE("golden fixture builds with full field fidelity") {
    const BuildResult result =
        build_text(test::fixture_text("golden_card.yaml"));
    CHECK(count_errors(result.diagnostics) == 0);

    const Card& card = result.card;
    CHECK(card.meta.name.value == "Model Name");
    CHECK(card.meta.version.value == "1.0.0");
    CHECK(card.meta.model_type.value == "LLM");
    CHECK(card.meta.provider.value == "Provider Name");
    CHECK(card.meta.license.value == "CC0");

    REQUIRE(card.platforms.size() == 1);
    const Platform& platform = card.platforms[0];
    CHECK(platform.name.value == "Infrastructure");
    CHECK(platform.hardware.value == "GTX 1080 Ti");
    CHECK(platform.provider.value == "Microsoft Azure");
    CHECK(platform.region.value == "West Europe");
    CHECK(platform.offset.present);
    CHECK(platform.offset.value.value == 100.0);
    CHECK(platform.offset.unit.value == "PERCENTAGE");
    REQUIRE(platform.energy_mix.size() == 1);
    CHECK(platform.energy_mix[0].ratio.value == 100.0);
    CHECK(platform.energy_mix[0].source_ref.value == "Azure EU-W");

    REQUIRE(card.energy_sources.size() == 1);
    CHECK(card.energy_sources[0].name.value == "Azure EU-W");
    CHECK(card.energy_sources[0].type.value == "Fossil");
    CHECK(card.energy_sources[0].intensity.value == 0.57);
    CHECK(card.energy_sources[0].unit.value == "kgCO2eq");

    REQUIRE(card.training.has_value());
    CHECK(card.training->hours.value == 100.0);
    CHECK(card.training->platform_ref.value == "Infrastructure");
    CHECK(card.training->carbon.value.value == 14.25);
    CHECK(card.training->carbon.unit.value == "kgCO2eq");
    CHECK(card.training->energy.value.value == 25.0);
    CHECK(card.training->energy.unit.value == "kWh");
    CHECK(card.training->water.value.value == 57.5);
    CHECK(card.training->water.unit.value == "L");
    CHECK(card.training->timestamp.text == "2025-01-02T09:00:00");
    CHECK(card.training->timestamp.parsed);
    CHECK(!card.training->timestamp.has_offset);

    REQUIRE(card.tasks.size() == 1);
    const Task& task = card.tasks[0];
    CHECK(task.inference_type.value == "TextGeneration");
    CHECK(task.platform_ref.value == "Infrastructure");
    CHECK(task.carbon.value.value == 7.12);
    CHECK(task.carbon.unit.value == "gCO2eq");
    CHECK(task.energy.value.value == 12.3);
    CHECK(task.energy.unit.value == "Wh");
    CHECK(task.water.value.value == 0.02);
    CHECK(task.water.unit.value == "L");
}

TEST_CASE("deleted training block leaves an error-free card without training") {
    // drop lines 27-39 of the fixture
    std::string text = test::fixture_text("golden_card.yaml");
    const auto start = text.find("  training:");
    const auto end = text.find("  inference:");
    REQUIRE(start != std::string::npos);
    REQUIRE(end != std::string::npos);
    text.erase(start, end - start);

    const BuildResult result = build_text(text);
    CHECK(count_errors(result.diagnostics) == 0);
    CHECK(!result.card.training.has_value());
    CHECK(result.card.tasks.size() == 1);
}

TEST_CASE("inference as a mapping is E002 at the inference path") {
    const std::string text = test::replace_once(
        test::fixture_text("golden_card.yaml"), "  inference:\n    - task:",
        "  inference:\n    task:");
    const BuildResult result = build_text(text);
    CHECK(count_code(result.diagnostics, "E002") == 1);
    bool found = false;
    for (const auto& d : result.diagnostics)
        if (d.code == "E002") {
            CHECK(d.path.str() == "sustainability_model_card/inference");
            found = true;
        }
    CHECK(found);
}

TEST_CASE("unknown keys produce W103 warnings, not errors") {
    const std::string text = test::replace_once(
        test::fixture_text("golden_card.yaml"), "    model_type: LLM",
        "    model_type: LLM\n    flavor: vanilla");
    const BuildResult result = build_text(text);
    CHECK(count_errors(result.diagnostics) == 0);
    CHECK(count_code(result.diagnostics, "W103") == 1);
}

TEST_CASE("quoted numbers are coerced with W104") {
    const std::string text =
        test::replace_once(test::fixture_text("golden_card.yaml"),
                           "value: 25.0", "value: \"25.0\"");
    const BuildResult result = build_text(text);
    CHECK(count_errors(result.diagnostics) == 0);
    CHECK(count_code(result.diagnostics, "W104") == 1);
    CHECK(result.card.training->energy.value.value == 25.0);
    CHECK(result.card.training->energy.value.quoted);
}

TEST_CASE("non-numeric scalar for a numeric field is E002") {
    const std::string text =
        test::replace_once(test::fixture_text("golden_card.yaml"),
                           "hour_duration: 100.0", "hour_duration: plenty");
    const BuildResult result = build_text(text);
    CHECK(count_code(result.diagnostics, "E002") == 1);
}

TEST_CASE("missing value key inside a metric is E001") {
    const std::string text = test::replace_once(
        test::fixture_text("golden_card.yaml"),
        "    energy_consumption:\n      value: 25.0\n      unit: kWh",
        "    energy_consumption:\n      unit: kWh");
    const BuildResult result = build_text(text);
    CHECK(count_code(result.diagnostics, "E001") == 1);
}

TEST_CASE("unwrapped sequence elements are E002") {
    const std::string text =
        "sustainability_model_card:\n"
        "  meta_data:\n"
        "    name: X\n"
        "    version: 1.0\n"
        "    model_type: T\n"
        "    provider: P\n"
        "    license: L\n"
        "  platforms:\n"
        "    - name: NoWrapper\n";
    const BuildResult result = build_text(text);
    CHECK(count_code(result.diagnostics, "E002") == 1);
    CHECK(result.card.platforms.empty());
    bool found = false;
    for (const auto& d : result.diagnostics)
        if (d.code == "E002") {
            CHECK(d.path.str() == "sustainability_model_card/platforms/0");
            found = true;
        }
    CHECK(found);
}

TEST_CASE("offset-free timestamps produce one aggregated W105") {
    const BuildResult result =
        build_text(test::fixture_text("golden_card.yaml"));
    CHECK(count_code(result.diagnostics, "W105") == 1);

    // with explicit offsets the note disappears
    std::string text = test::fixture_text("golden_card.yaml");
    text = test::replace_once(text, "timestamp: 2025-01-02T09:00:00",
                              "timestamp: 2025-01-02T09:00:00Z");
    text = test::replace_once(text, "timestamp: 2025-01-21T09:00:00",
                              "timestamp: 2025-01-21T09:00:00+01:00");
    const BuildResult with_offsets = build_text(text);
    CHECK(count_code(with_offsets.diagnostics, "W105") == 0);
}

TEST_CASE("omitted and empty inference sections are the same card") {
    std::string base = test::fixture_text("golden_card.yaml");
    base.erase(base.find("  inference:"));
    const BuildResult omitted = build_text(base);
    const BuildResult empty = build_text(base + "  inference: []\n");
    const BuildResult null_valued = build_text(base + "  inference:\n");
    CHECK(count_errors(omitted.diagnostics) == 0);
    CHECK(count_errors(empty.diagnostics) == 0);
    CHECK(count_errors(null_valued.diagnostics) == 0);
    CHECK(omitted.card.tasks.empty());
    CHECK(empty.card.tasks.empty());
    CHECK(null_valued.card.tasks.empty());
}

TEST_CASE("a metadata-only card is accepted") {
    const std::string text =
        "sustainability_model_card:\n"
        "  meta_data:\n"
        "    name: Tiny\n"
        "    version: 0.1\n"
        "    model_type: SVM\n"
        "    provider: Lab\n"
        "    license: MIT\n";
    const BuildResult result = build_text(text);
    CHECK(count_errors(result.diagnostics) == 0);
    CHECK(result.card.platforms.empty());
    CHECK(!result.card.training.has_value());
    CHECK(result.card.tasks.empty());
}

TEST_CASE("fatal structure: missing root key or non-mapping root") {
    CHECK_THROWS_AS(build_text("other_root: 1\n"), FatalStructure);
    CHECK_THROWS_AS(build_text("just a scalar\n"), FatalStructure);
    CHECK_THROWS_AS(build_text("sustainability_model_card: 42\n"),
                    FatalStructure);
}

TEST_CASE("resolve_references accepts the golden fixture") {
    const BuildResult result =
        build_text(test::fixture_text("golden_card.yaml"));
    CHECK(resolve_references(result.card).empty());
}

TEST_CASE("dangling platform reference is one E008 at the task path") {
    const std::string text =
        test::replace_once(test::fixture_text("golden_card.yaml"),
                           "        platform: Infrastructure",
                           "        platform: Cluster-X");
    const BuildResult result = build_text(text);
    const auto refs = resolve_references(result.card);
    REQUIRE(refs.size() == 1);
    CHECK(refs[0].code == "E008");
    CHECK(refs[0].path.str() ==
          "sustainability_model_card/inference/0/task/platform");
    CHECK(refs[0].related_value == "Cluster-X");
}

TEST_CASE("duplicate platform declarations are one E010") {
    const std::string text = test::replace_once(
        test::fixture_text("golden_card.yaml"), "  energy_sources:",
        "    - platform:\n        name: Infrastructure\n        hardware: "
        "Other\n        provider: Other\n        region: Other\n  "
        "energy_sources:");
    const BuildResult result = build_text(text);
    REQUIRE(result.card.platforms.size() == 2);
    const auto refs = resolve_references(result.card);
    REQUIRE(refs.size() == 1);
    CHECK(refs[0].code == "E010");
    CHECK(refs[0].related_value == "Infrastructure");
}

TEST_CASE("multiple independent mutations all surface") {
    std::string text = test::fixture_text("golden_card.yaml");
    text = test::replace_once(text, "    name: Model Name\n", "");
    text = test::replace_once(text, "hour_duration: 100.0",
                              "hour_duration: plenty");
    text = test::replace_once(text, "    model_type: LLM",
                              "    model_type: LLM\n    extra_key: 1");
    const BuildResult result = build_text(text);
    CHECK(result.diagnostics.size() >= 3);
    CHECK(count_code(result.diagnostics, "E001") == 1);
    CHECK(count_code(result.diagnostics, "E002") == 1);
    CHECK(count_code(result.diagnostics, "W103") == 1);
}

TEST_CASE("every diagnostic path anchors to the input tree") {
    std::string text = test::fixture_text("golden_card.yaml");
    text = test::replace_once(text, "    name: Model Name\n", "");
    text = test::replace_once(text, "      unit: kWh\n", "");
    text = test::replace_once(text, "    model_type: LLM",
                              "    model_type: LLM\n    extra_key: 1");
    const RawNode tree = parse_document(text);
    const BuildResult result = build_card(tree);
    for (const auto& d : result.diagnostics)
        CHECK(test::path_anchored(tree, d.path));
}
