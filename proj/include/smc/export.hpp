#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "smc/analysis.hpp"
#include "smc/model.hpp"

namespace smc {

struct MissingTraining : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RenderOptions {
    enum class Format { CanonicalYaml, Json, Markdown, HfFrontmatter };

    Format format = Format::CanonicalYaml;
    bool include_warnings = false;
    /// Markdown shows declared units with canonical values in parentheses
    /// by default; this switches to canonical units only.
    bool canonical_units_only = false;
};

/// Concrete syntax in the canonical ordering: meta_data, platforms,
/// energy_sources, training, inference; keys within each mapping in the
/// reference order; numbers in the shortest value-preserving form.
/// Output re-parses to an equal card. Precondition: card is valid.
std::string to_canonical_yaml(const Card& card);

/// Human-facing rendering: metadata header, one environmental-impact
/// table per computation, a platforms section with mix table and computed
/// intensity. Deterministic. Precondition: card is valid.
std::string to_markdown(const Card& card, const CardSummary& summary,
                        const RenderOptions& options = {});

/// YAML frontmatter fragment (mapping, no document markers) carrying the
/// training emissions in gCO2eq plus the platform context, in the shape
/// model-card headers use for emissions reporting.
/// Throws MissingTraining when the card has no training section.
std::string to_hf_frontmatter(const Card& card);

nlohmann::json card_to_json(const Card& card);
nlohmann::json diagnostic_to_json(const Diagnostic& d);
nlohmann::json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics);
nlohmann::json summary_to_json(const CardSummary& summary);
nlohmann::json consistency_to_json(const std::vector<ConsistencyReport>& reports);
nlohmann::json ranking_to_json(const Ranking& ranking);

} // namespace smc
