#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "smc/analysis.hpp"
#include "smc/check.hpp"
#include "smc/export.hpp"
#include "smc/format.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;

bool use_color() { return isatty(fileno(stdout)) != 0; }

std::string count_word(int n, const char* noun) {
    return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

std::string severity_word(smc::Severity s, bool color) {
    const bool err = s == smc::Severity::Error;
    const char* word = err ? "error" : "warning";
    if (!color)
        return word;
    return std::string(err ? "\x1b[31m" : "\x1b[33m") + word + "\x1b[0m";
}

std::optional<std::string> read_input(const std::string& path,
                                      std::string& error) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        error = "cannot open `" + path + "`";
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << f.rdbuf();
    if (f.bad()) {
        error = "failed reading `" + path + "`";
        return std::nullopt;
    }
    return buf.str();
}

void print_diagnostics(std::ostream& os, const std::string& path,
                       const std::vector<smc::Diagnostic>& diags, bool color) {
    for (const auto& d : diags) {
        os << "  ";
        if (d.pos.line >= 0)
            os << d.pos.line << ':' << d.pos.column << ' ';
        os << severity_word(d.severity, color) << '[' << d.code << ']';
        const std::string p = d.path.str();
        if (!p.empty())
            os << ' ' << p;
        os << ": " << d.message;
        if (!d.related_value.empty())
            os << " (`" << d.related_value << "`)";
        os << '\n';
    }
    (void)path;
}

struct CheckedFile {
    std::string path;
    smc::DocumentCheck check;
    smc::SeveritySummary summary;
};

/// Reads and checks one file; returns nullopt (and reports) on I/O failure.
std::optional<CheckedFile> load_file(const std::string& path) {
    std::string error;
    const auto text = read_input(path, error);
    if (!text) {
        std::cerr << "error: " << error << '\n';
        return std::nullopt;
    }
    CheckedFile out;
    out.path = path;
    out.check = smc::check_document(*text);
    out.summary = smc::severity_summary(out.check.diagnostics);
    return out;
}

int cmd_validate(const std::vector<std::string>& paths,
                 const std::string& format, bool strict) {
    const bool color = use_color() && format == "text";
    bool io_failure = false;
    bool any_errors = false;
    auto json_out = nlohmann::json::array();

    for (const auto& path : paths) {
        const auto loaded = load_file(path);
        if (!loaded) {
            io_failure = true;
            continue;
        }
        const auto& summary = loaded->summary;
        const bool failed =
            summary.errors > 0 || (strict && summary.warnings > 0);
        any_errors = any_errors || failed;

        if (format == "json") {
            nlohmann::json j{
                {"file", path},
                {"errors", summary.errors},
                {"warnings", summary.warnings},
                {"valid", !failed},
                {"diagnostics",
                 smc::diagnostics_to_json(loaded->check.diagnostics)},
            };
            json_out.push_back(std::move(j));
        } else {
            std::cout << path << ": " << count_word(summary.errors, "error")
                      << ", " << count_word(summary.warnings, "warning")
                      << (strict && summary.warnings > 0 ? " (strict)" : "")
                      << '\n';
            print_diagnostics(std::cout, path, loaded->check.diagnostics,
                              color);
        }
    }

    if (format == "json")
        std::cout << json_out.dump(2) << '\n';
    if (io_failure)
        return kExitUsage;
    return any_errors ? kExitInvalid : kExitOk;
}

void print_metric_line(const char* label, const smc::MetricSummary& m) {
    std::cout << "  " << label << smc::format_quantity(m.declared);
    if (m.declared.unit != m.canonical.unit)
        std::cout << " (" << smc::format_quantity(m.canonical) << ")";
    std::cout << '\n';
}

int cmd_inspect(const std::string& path, const std::string& format,
                double tolerance) {
    const auto loaded = load_file(path);
    if (!loaded)
        return kExitUsage;
    if (!loaded->summary.valid) {
        std::cout << path << ": " << count_word(loaded->summary.errors, "error")
                  << ", " << count_word(loaded->summary.warnings, "warning")
                  << '\n';
        print_diagnostics(std::cout, path, loaded->check.diagnostics,
                          use_color());
        return kExitInvalid;
    }

    const smc::Card& card = *loaded->check.card;
    const smc::CardSummary summary = smc::summarize(card);
    const smc::ConsistencyResult consistency =
        smc::check_consistency(card, tolerance);

    if (format == "json") {
        nlohmann::json j = smc::summary_to_json(summary);
        j["consistency"] = smc::consistency_to_json(consistency.reports);
        std::cout << j.dump(2) << '\n';
        return kExitOk;
    }

    std::cout << summary.name << ' ' << summary.version << " ("
              << summary.model_type << ")\n";
    std::cout << "provider: " << summary.provider << '\n';
    std::cout << "license: " << summary.license << '\n';

    if (summary.training) {
        std::cout << "\ntraining: platform " << summary.training->platform
                  << '\n';
        std::cout << "  duration: "
                  << smc::format_number(summary.training->hours) << " h\n";
        print_metric_line("energy:   ", summary.training->energy);
        print_metric_line("carbon:   ", summary.training->carbon);
        print_metric_line("water:    ", summary.training->water);
    }
    for (const auto& task : summary.tasks) {
        std::cout << "\ninference " << smc::inference_type_name(task.type)
                  << ": platform " << task.platform << '\n';
        print_metric_line("energy:   ", task.energy);
        print_metric_line("carbon:   ", task.carbon);
        print_metric_line("water:    ", task.water);
    }
    for (const auto& p : summary.platforms) {
        std::cout << "\nplatform " << p.name;
        std::string details;
        for (const std::string& part : {p.hardware, p.provider, p.region})
            if (!part.empty())
                details += (details.empty() ? "" : ", ") + part;
        if (!details.empty())
            std::cout << ": " << details;
        std::cout << '\n';
        if (p.intensity_g_per_kwh)
            std::cout << "  carbon intensity: "
                      << smc::format_number(*p.intensity_g_per_kwh)
                      << " gCO2eq/kWh\n";
        if (p.offset_fraction)
            std::cout << "  carbon offset credit: "
                      << smc::format_number(*p.offset_fraction * 100.0)
                      << "%\n";
        if (p.offset_absolute)
            std::cout << "  carbon offset credit: "
                      << smc::format_quantity(*p.offset_absolute) << '\n';
    }
    if (!consistency.reports.empty()) {
        std::cout << "\nconsistency (tolerance "
                  << smc::format_fraction_percent(tolerance) << "):\n";
        for (const auto& r : consistency.reports) {
            std::cout << "  " << r.subject << ": declared "
                      << smc::format_quantity(r.declared_carbon)
                      << ", implied "
                      << smc::format_quantity(r.implied_carbon)
                      << ", deviation "
                      << smc::format_fraction_percent(r.relative_deviation)
                      << (r.within_tolerance ? "" : " (above tolerance)")
                      << '\n';
        }
    }
    return kExitOk;
}

int cmd_compare(const std::vector<std::string>& paths,
                const std::string& criterion_name,
                const std::string& task_type, const std::string& format) {
    const auto criterion = smc::parse_criterion(
        criterion_name,
        task_type.empty() ? std::nullopt
                          : std::optional<std::string_view>(task_type));
    if (!criterion) {
        std::cerr << "error: unknown criterion `" << criterion_name << "`";
        if (task_type.empty())
            std::cerr << " (inference criteria also need --task)";
        else
            std::cerr << " / task `" << task_type << "`";
        std::cerr << '\n';
        return kExitUsage;
    }

    std::vector<smc::Card> cards;
    for (const auto& path : paths) {
        const auto loaded = load_file(path);
        if (!loaded)
            return kExitUsage;
        if (!loaded->summary.valid) {
            std::cout << path << ": "
                      << count_word(loaded->summary.errors, "error") << '\n';
            print_diagnostics(std::cout, path, loaded->check.diagnostics,
                              use_color());
            return kExitInvalid;
        }
        cards.push_back(std::move(*loaded->check.card));
    }

    smc::Ranking ranking;
    try {
        ranking = smc::compare_cards(cards, *criterion);
    } catch (const smc::EmptyComparison& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }

    if (format == "json") {
        std::cout << smc::ranking_to_json(ranking).dump(2) << '\n';
        return kExitOk;
    }

    std::cout << "ranking by " << smc::criterion_label(*criterion) << ":\n";
    std::size_t rank = 1;
    for (const auto& e : ranking.entries) {
        std::cout << "  " << rank++ << ". " << e.card_name << ' '
                  << e.card_version << "  "
                  << smc::format_number(e.score) << ' '
                  << smc::units::unit_name(e.unit) << '\n';
    }
    for (const auto& name : ranking.excluded)
        std::cout << "  excluded (criterion not reported): " << name << '\n';
    return kExitOk;
}

int cmd_export(const std::string& path, const std::string& target,
               const std::string& out_path, bool canonical_only,
               bool with_warnings) {
    const auto loaded = load_file(path);
    if (!loaded)
        return kExitUsage;
    if (!loaded->summary.valid) {
        std::cout << path << ": "
                  << count_word(loaded->summary.errors, "error") << '\n';
        print_diagnostics(std::cout, path, loaded->check.diagnostics,
                          use_color());
        return kExitInvalid;
    }
    const smc::Card& card = *loaded->check.card;

    std::string rendered;
    try {
        if (target == "yaml") {
            rendered = smc::to_canonical_yaml(card);
        } else if (target == "json") {
            rendered = smc::card_to_json(card).dump(2) + "\n";
        } else if (target == "markdown") {
            smc::RenderOptions options;
            options.format = smc::RenderOptions::Format::Markdown;
            options.canonical_units_only = canonical_only;
            options.include_warnings = with_warnings;
            rendered = smc::to_markdown(card, smc::summarize(card), options);
        } else if (target == "frontmatter") {
            rendered = smc::to_hf_frontmatter(card);
        }
    } catch (const smc::MissingTraining& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }

    if (out_path.empty()) {
        std::cout << rendered;
        return kExitOk;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot write `" << out_path << "`\n";
        return kExitUsage;
    }
    f << rendered;
    f.close();
    if (f.fail()) {
        std::cerr << "error: failed writing `" << out_path << "`\n";
        return kExitUsage;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sustainability model card toolkit"};
    app.require_subcommand(1);

    const auto format_check = CLI::IsMember({"text", "json"});

    auto* validate = app.add_subcommand(
        "validate", "Check card files against the metamodel");
    std::vector<std::string> validate_paths;
    std::string validate_format = "text";
    bool strict = false;
    validate->add_option("files", validate_paths, "card files (- for stdin)")
        ->required();
    validate->add_option("--format", validate_format, "output format")
        ->check(format_check);
    validate->add_flag("--strict", strict, "treat warnings as errors");

    auto* inspect = app.add_subcommand(
        "inspect", "Canonicalized summary with derived quantities");
    std::string inspect_path;
    std::string inspect_format = "text";
    double tolerance = smc::kDefaultConsistencyTolerance;
    inspect->add_option("file", inspect_path, "card file (- for stdin)")
        ->required();
    inspect->add_option("--format", inspect_format, "output format")
        ->check(format_check);
    inspect->add_option("--tolerance", tolerance,
                        "consistency tolerance (fraction)");

    auto* compare = app.add_subcommand(
        "compare", "Rank cards by an environmental-impact criterion");
    std::vector<std::string> compare_paths;
    std::string criterion_name;
    std::string task_type;
    std::string compare_format = "text";
    compare->add_option("files", compare_paths, "card files")->required();
    compare->add_option("--criterion", criterion_name,
                        "training-energy|training-carbon|training-water|"
                        "inference-energy|inference-carbon|inference-water")
        ->required();
    compare->add_option("--task", task_type,
                        "inference type for inference criteria");
    compare->add_option("--format", compare_format, "output format")
        ->check(format_check);

    auto* exporter =
        app.add_subcommand("export", "Render a card to another format");
    std::string export_path;
    std::string target;
    std::string out_path;
    bool canonical_only = false;
    bool with_warnings = false;
    exporter->add_option("file", export_path, "card file (- for stdin)")
        ->required();
    exporter->add_option("--to", target, "yaml|json|markdown|frontmatter")
        ->required()
        ->check(CLI::IsMember({"yaml", "json", "markdown", "frontmatter"}));
    exporter->add_option("--out", out_path, "output file (default stdout)");
    exporter->add_flag("--canonical-units", canonical_only,
                       "markdown: show canonical units only");
    exporter->add_flag("--with-warnings", with_warnings,
                       "markdown: include the consistency section");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (validate->parsed())
        return cmd_validate(validate_paths, validate_format, strict);
    if (inspect->parsed())
        return cmd_inspect(inspect_path, inspect_format, tolerance);
    if (compare->parsed())
        return cmd_compare(compare_paths, criterion_name, task_type,
                           compare_format);
    if (exporter->parsed())
        return cmd_export(export_path, target, out_path, canonical_only,
                          with_warnings);
    return kExitUsage;
}
