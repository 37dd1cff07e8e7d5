#include "smc/parser.hpp"

#include <cmath>
#include <cstdlib>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>

namespace smc {

namespace {

constexpr std::string_view kRootKey = "sustainability_model_card";

/// Plain decimal literal: optional sign, digits, fraction, exponent.
/// Rejects hex, inf and nan spellings strtod would otherwise accept.
bool parse_decimal(const std::string& text, double& out) {
    if (text.empty())
        return false;
    for (const char c : text) {
        const bool ok = (c >= '0' && c <= '9') || c == '+' || c == '-' ||
                        c == '.' || c == 'e' || c == 'E';
        if (!ok)
            return false;
    }
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + text.size() || !std::isfinite(v))
        return false;
    out = v;
    return true;
}

enum class Need { Required, Optional };

class CardBuilder {
public:
    BuildResult run(const RawNode& tree) {
        if (!tree.is_mapping())
            throw FatalStructure("E002", tree.pos,
                                 "document root must be a mapping");
        const RawNode::Entry* root = tree.find(kRootKey);
        if (root == nullptr)
            throw FatalStructure(
                "E001", tree.pos,
                "missing root key `sustainability_model_card`");
        check_unknown(tree, DocPath{}, {kRootKey});
        if (!root->value.is_mapping())
            throw FatalStructure(
                "E002", root->value.pos,
                "`sustainability_model_card` must be a mapping");

        const DocPath path = DocPath{}.child(kRootKey);
        const RawNode& body = root->value;
        card_.path = path;

        build_meta(body, path);
        build_platforms(body, path);
        build_energy_sources(body, path);
        build_training(body, path);
        build_inference(body, path);
        check_unknown(body, path,
                      {"meta_data", "platforms", "energy_sources", "training",
                        "inference"});
        note_offset_free_timestamps();

        sort_by_position(diags_);
        return BuildResult{std::move(card_), std::move(diags_)};
    }

private:
    Card card_;
    std::vector<Diagnostic> diags_;

    void diag(std::string code, DocPath path, SourcePos pos,
              std::string message, std::string related = {}) {
        diags_.push_back(make_diagnostic(std::move(code), std::move(path), pos,
                                         std::move(message),
                                         std::move(related)));
    }

    void check_unknown(const RawNode& mapping, const DocPath& path,
                       std::initializer_list<std::string_view> known) {
        for (const auto& entry : mapping.entries) {
            bool found = false;
            for (const auto& k : known)
                found = found || k == entry.key;
            if (!found)
                diag("W103", path.child(entry.key), entry.key_pos,
                     "unknown key `" + entry.key + "`", entry.key);
        }
    }

    TextField get_text(const RawNode& mapping, const DocPath& base,
                       std::string_view key, Need need) {
        TextField out;
        out.path = base.child(key);
        out.pos = mapping.pos;
        const RawNode::Entry* entry = mapping.find(key);
        if (entry == nullptr || entry->value.is_null()) {
            if (need == Need::Required)
                diag("E001", out.path, mapping.pos,
                     "missing required key `" + std::string(key) + "`");
            return out;
        }
        out.pos = entry->value.pos;
        if (!entry->value.is_scalar()) {
            diag("E002", out.path, entry->value.pos,
                 "expected a text scalar for `" + std::string(key) + "`");
            return out;
        }
        if (need == Need::Required && entry->value.scalar.empty()) {
            diag("E001", out.path, entry->value.pos,
                 "`" + std::string(key) + "` must be non-empty");
            return out;
        }
        out.value = entry->value.scalar;
        out.present = true;
        return out;
    }

    NumberField get_number(const RawNode& mapping, const DocPath& base,
                           std::string_view key, Need need) {
        NumberField out;
        out.path = base.child(key);
        out.pos = mapping.pos;
        const RawNode::Entry* entry = mapping.find(key);
        if (entry == nullptr || entry->value.is_null()) {
            if (need == Need::Required)
                diag("E001", out.path, mapping.pos,
                     "missing required key `" + std::string(key) + "`");
            return out;
        }
        out.pos = entry->value.pos;
        if (!entry->value.is_scalar()) {
            diag("E002", out.path, entry->value.pos,
                 "expected a decimal scalar for `" + std::string(key) + "`");
            return out;
        }
        double value = 0.0;
        if (!parse_decimal(entry->value.scalar, value)) {
            diag("E002", out.path, entry->value.pos,
                 "expected a plain decimal number for `" + std::string(key) +
                     "`",
                 entry->value.scalar);
            return out;
        }
        out.value = value;
        out.present = true;
        out.quoted = entry->value.quoted;
        if (out.quoted)
            diag("W104", out.path, entry->value.pos,
                 "quoted scalar coerced to a number for `" + std::string(key) +
                     "`",
                 entry->value.scalar);
        return out;
    }

    TimestampField get_timestamp(const RawNode& mapping, const DocPath& base) {
        TimestampField out;
        out.path = base.child("timestamp");
        out.pos = mapping.pos;
        const RawNode::Entry* entry = mapping.find("timestamp");
        if (entry == nullptr || entry->value.is_null())
            return out;
        out.pos = entry->value.pos;
        if (!entry->value.is_scalar()) {
            diag("E002", out.path, entry->value.pos,
                 "expected a date-time scalar for `timestamp`");
            return out;
        }
        out.text = entry->value.scalar;
        out.present = true;
        const ParsedTimestamp parsed = parse_timestamp(out.text);
        out.parsed = parsed.ok;
        out.has_offset = parsed.has_offset;
        out.epoch_seconds = parsed.epoch_seconds;
        return out;
    }

    Metric get_metric(const RawNode& mapping, const DocPath& base,
                      std::string_view key, Need need) {
        Metric out;
        out.path = base.child(key);
        out.pos = mapping.pos;
        const RawNode::Entry* entry = mapping.find(key);
        if (entry == nullptr || entry->value.is_null()) {
            if (need == Need::Required)
                diag("E001", out.path, mapping.pos,
                     "missing required key `" + std::string(key) + "`");
            return out;
        }
        out.pos = entry->value.pos;
        if (!entry->value.is_mapping()) {
            diag("E002", out.path, entry->value.pos,
                 "expected a mapping with `value` and `unit` for `" +
                     std::string(key) + "`");
            return out;
        }
        const RawNode& body = entry->value;
        out.present = true;
        out.value = get_number(body, out.path, "value", Need::Required);
        out.unit = get_text(body, out.path, "unit", Need::Optional);
        check_unknown(body, out.path, {"value", "unit"});
        return out;
    }

    /// Card sequence elements are single-key mappings wrapped in
    /// the element class name. Returns the wrapped mapping or nullptr
    /// after reporting E002.
    const RawNode* unwrap(const RawNode& element, const DocPath& elem_path,
                          std::string_view wrapper, DocPath& body_path) {
        if (!element.is_mapping()) {
            diag("E002", elem_path, element.pos,
                 "sequence element must be a mapping wrapped in `" +
                     std::string(wrapper) + "`");
            return nullptr;
        }
        const RawNode::Entry* entry = element.find(wrapper);
        if (entry == nullptr) {
            diag("E002", elem_path, element.pos,
                 "sequence element must be wrapped in the `" +
                     std::string(wrapper) + "` key");
            return nullptr;
        }
        check_unknown(element, elem_path, {wrapper});
        body_path = elem_path.child(wrapper);
        if (!entry->value.is_mapping()) {
            diag("E002", body_path, entry->value.pos,
                 "`" + std::string(wrapper) + "` must be a mapping");
            return nullptr;
        }
        return &entry->value;
    }

    void build_meta(const RawNode& body, const DocPath& path) {
        card_.meta.path = path.child("meta_data");
        card_.meta.pos = body.pos;
        const RawNode::Entry* entry = body.find("meta_data");
        if (entry == nullptr || entry->value.is_null()) {
            diag("E001", card_.meta.path, body.pos,
                 "missing required key `meta_data`");
            return;
        }
        card_.meta.pos = entry->value.pos;
        if (!entry->value.is_mapping()) {
            diag("E002", card_.meta.path, entry->value.pos,
                 "`meta_data` must be a mapping");
            return;
        }
        const RawNode& meta = entry->value;
        const DocPath& base = card_.meta.path;
        card_.meta.present = true;
        card_.meta.name = get_text(meta, base, "name", Need::Required);
        card_.meta.version = get_text(meta, base, "version", Need::Required);
        card_.meta.model_type =
            get_text(meta, base, "model_type", Need::Required);
        card_.meta.provider = get_text(meta, base, "provider", Need::Required);
        card_.meta.license = get_text(meta, base, "license", Need::Required);
        check_unknown(meta, base,
                      {"name", "version", "model_type", "provider",
                        "license"});
    }

    void build_platforms(const RawNode& body, const DocPath& path) {
        const RawNode::Entry* entry = body.find("platforms");
        if (entry == nullptr || entry->value.is_null())
            return;
        const DocPath list_path = path.child("platforms");
        if (!entry->value.is_sequence()) {
            diag("E002", list_path, entry->value.pos,
                 "`platforms` must be a sequence");
            return;
        }
        for (std::size_t i = 0; i < entry->value.items.size(); ++i) {
            DocPath body_path;
            const RawNode* node = unwrap(entry->value.items[i],
                                         list_path.child(i), "platform",
                                         body_path);
            if (node == nullptr)
                continue;
            card_.platforms.push_back(build_platform(*node, body_path));
        }
    }

    Platform build_platform(const RawNode& node, const DocPath& path) {
        Platform p;
        p.path = path;
        p.pos = node.pos;
        p.name = get_text(node, path, "name", Need::Required);
        p.hardware = get_text(node, path, "hardware", Need::Optional);
        p.provider = get_text(node, path, "provider", Need::Optional);
        p.region = get_text(node, path, "region", Need::Optional);
        p.offset = get_metric(node, path, "carbon_offset_credit",
                              Need::Optional);
        p.mix_path = path.child("energy_mix");
        p.mix_pos = node.pos;
        const RawNode::Entry* mix = node.find("energy_mix");
        if (mix != nullptr && !mix->value.is_null()) {
            p.mix_pos = mix->value.pos;
            if (!mix->value.is_sequence()) {
                diag("E002", p.mix_path, mix->value.pos,
                     "`energy_mix` must be a sequence");
            } else if (mix->value.items.empty()) {
                diag("E002", p.mix_path, mix->value.pos,
                     "`energy_mix` must be non-empty when present");
            } else {
                p.mix_present = true;
                for (std::size_t i = 0; i < mix->value.items.size(); ++i) {
                    DocPath entry_path;
                    const RawNode* entry_node =
                        unwrap(mix->value.items[i], p.mix_path.child(i),
                               "energy_mix", entry_path);
                    if (entry_node == nullptr)
                        continue;
                    EnergyMixEntry e;
                    e.path = entry_path;
                    e.pos = entry_node->pos;
                    e.ratio = get_number(*entry_node, entry_path, "ratio",
                                         Need::Required);
                    e.source_ref = get_text(*entry_node, entry_path,
                                            "energy_source", Need::Required);
                    check_unknown(*entry_node, entry_path,
                                  {"ratio", "energy_source"});
                    p.energy_mix.push_back(std::move(e));
                }
            }
        }
        check_unknown(node, path,
                      {"name", "hardware", "provider", "region",
                        "carbon_offset_credit", "energy_mix"});
        return p;
    }

    void build_energy_sources(const RawNode& body, const DocPath& path) {
        const RawNode::Entry* entry = body.find("energy_sources");
        if (entry == nullptr || entry->value.is_null())
            return;
        const DocPath list_path = path.child("energy_sources");
        if (!entry->value.is_sequence()) {
            diag("E002", list_path, entry->value.pos,
                 "`energy_sources` must be a sequence");
            return;
        }
        for (std::size_t i = 0; i < entry->value.items.size(); ++i) {
            DocPath body_path;
            const RawNode* node = unwrap(entry->value.items[i],
                                         list_path.child(i), "energy_source",
                                         body_path);
            if (node == nullptr)
                continue;
            EnergySource s;
            s.path = body_path;
            s.pos = node->pos;
            s.name = get_text(*node, body_path, "name", Need::Required);
            s.type = get_text(*node, body_path, "type", Need::Required);
            s.intensity = get_number(*node, body_path, "co2_per_kWh",
                                     Need::Required);
            s.unit = get_text(*node, body_path, "unit", Need::Optional);
            check_unknown(*node, body_path,
                          {"name", "type", "co2_per_kWh", "unit"});
            card_.energy_sources.push_back(std::move(s));
        }
    }

    void build_computation(const RawNode& node, const DocPath& path,
                           Computation& out) {
        out.path = path;
        out.pos = node.pos;
        out.platform_ref = get_text(node, path, "platform", Need::Required);
        out.energy = get_metric(node, path, "energy_consumption",
                                Need::Required);
        out.carbon = get_metric(node, path, "carbon_emissions",
                                Need::Required);
        out.water = get_metric(node, path, "water_consumption",
                               Need::Required);
        out.timestamp = get_timestamp(node, path);
    }

    void build_training(const RawNode& body, const DocPath& path) {
        const RawNode::Entry* entry = body.find("training");
        if (entry == nullptr || entry->value.is_null())
            return;
        const DocPath train_path = path.child("training");
        if (!entry->value.is_mapping()) {
            diag("E002", train_path, entry->value.pos,
                 "`training` must be a mapping");
            return;
        }
        Training t;
        build_computation(entry->value, train_path, t);
        t.hours = get_number(entry->value, train_path, "hour_duration",
                             Need::Required);
        check_unknown(entry->value, train_path,
                      {"hour_duration", "platform", "carbon_emissions",
                        "energy_consumption", "water_consumption",
                        "timestamp"});
        card_.training = std::move(t);
    }

    void build_inference(const RawNode& body, const DocPath& path) {
        const RawNode::Entry* entry = body.find("inference");
        if (entry == nullptr || entry->value.is_null())
            return;
        const DocPath list_path = path.child("inference");
        if (!entry->value.is_sequence()) {
            diag("E002", list_path, entry->value.pos,
                 "`inference` must be a sequence of task entries");
            return;
        }
        for (std::size_t i = 0; i < entry->value.items.size(); ++i) {
            DocPath body_path;
            const RawNode* node = unwrap(entry->value.items[i],
                                         list_path.child(i), "task",
                                         body_path);
            if (node == nullptr)
                continue;
            Task t;
            t.inference_type = get_text(*node, body_path, "inference_type",
                                        Need::Required);
            build_computation(*node, body_path, t);
            check_unknown(*node, body_path,
                          {"inference_type", "platform", "carbon_emissions",
                            "energy_consumption", "water_consumption",
                            "timestamp"});
            card_.tasks.push_back(std::move(t));
        }
    }

    // One aggregated note per document: the normalized instant of every
    // offset-free timestamp assumes UTC.
    void note_offset_free_timestamps() {
        std::vector<const TimestampField*> bare;
        if (card_.training && card_.training->timestamp.present &&
            card_.training->timestamp.parsed &&
            !card_.training->timestamp.has_offset)
            bare.push_back(&card_.training->timestamp);
        for (const auto& task : card_.tasks)
            if (task.timestamp.present && task.timestamp.parsed &&
                !task.timestamp.has_offset)
                bare.push_back(&task.timestamp);
        if (bare.empty())
            return;
        std::string message = "timestamp has no UTC offset; UTC assumed";
        if (bare.size() > 1)
            message += " (applies to " + std::to_string(bare.size()) +
                       " timestamps in this document)";
        diag("W105", bare.front()->path, bare.front()->pos, std::move(message),
             bare.front()->text);
    }
};

} // namespace

BuildResult build_card(const RawNode& tree) {
    CardBuilder builder;
    return builder.run(tree);
}

std::vector<Diagnostic> resolve_references(const Card& card) {
    std::vector<Diagnostic> out;

    std::unordered_set<std::string> platform_names;
    for (const auto& p : card.platforms) {
        if (!p.name.present)
            continue;
        if (!platform_names.insert(p.name.value).second)
            out.push_back(make_diagnostic(
                "E010", p.name.path, p.name.pos,
                "duplicate platform name `" + p.name.value + "`",
                p.name.value));
    }

    std::unordered_set<std::string> source_names;
    for (const auto& s : card.energy_sources) {
        if (!s.name.present)
            continue;
        if (!source_names.insert(s.name.value).second)
            out.push_back(make_diagnostic(
                "E010", s.name.path, s.name.pos,
                "duplicate energy source name `" + s.name.value + "`",
                s.name.value));
    }

    const auto check_platform_ref = [&](const TextField& ref) {
        if (ref.present && !platform_names.contains(ref.value))
            out.push_back(make_diagnostic(
                "E008", ref.path, ref.pos,
                "reference to undeclared platform `" + ref.value + "`",
                ref.value));
    };
    if (card.training)
        check_platform_ref(card.training->platform_ref);
    for (const auto& task : card.tasks)
        check_platform_ref(task.platform_ref);

    for (const auto& p : card.platforms)
        for (const auto& e : p.energy_mix)
            if (e.source_ref.present &&
                !source_names.contains(e.source_ref.value))
                out.push_back(make_diagnostic(
                    "E008", e.source_ref.path, e.source_ref.pos,
                    "reference to undeclared energy source `" +
                        e.source_ref.value + "`",
                    e.source_ref.value));

    sort_by_position(out);
    return out;
}

} // namespace smc
