#include "ecoroute/config_io.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "ecoroute/dispatch.hpp"

namespace ecoroute {

using nlohmann::json;

namespace {

// Leaf paths of the document schema; "*" stands for an array index.
constexpr std::array<std::string_view, 34> schema_leaves{
    "description",
    "hardware.memory_energy",
    "hardware.compute_energy",
    "hardware.bandwidth",
    "hardware.throughput",
    "models.*.name",
    "models.*.params",
    "models.*.layers",
    "models.*.attention_dim",
    "scaling.irreducible_loss",
    "scaling.loss_scale",
    "scaling.loss_exponent",
    "scaling.steepness",
    "scaling.tokens_per_skill",
    "scaling.hoffmann.A",
    "scaling.hoffmann.B",
    "scaling.hoffmann.alpha",
    "scaling.hoffmann.beta",
    "scaling.hoffmann.E",
    "arrivals.rate",
    "arrivals.catalog.*.difficulty",
    "arrivals.catalog.*.skills",
    "arrivals.catalog.*.tolerance",
    "arrivals.catalog.*.deadline",
    "arrivals.catalog.*.weight",
    "harvest.kind",
    "harvest.mean",
    "harvest.variance",
    "slot_seconds",
    "horizon",
    "initial_battery",
    "prediction_error",
    "dispatcher.energy",
    "dispatcher.latency",
};

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

bool is_index(const std::string& s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

bool segment_matches(const std::string& pattern, const std::string& segment) {
    return pattern == "*" ? is_index(segment) : pattern == segment;
}

// Whether `parts` is a leaf (or, with `prefix`, a prefix of a leaf) of the schema.
bool in_schema(const std::vector<std::string>& parts, bool prefix) {
    auto check = [&](std::string_view leaf) {
        const auto pattern = split(leaf, '.');
        if (parts.size() > pattern.size() || (!prefix && parts.size() != pattern.size())) return false;
        for (std::size_t i = 0; i < parts.size(); ++i)
            if (!segment_matches(pattern[i], parts[i])) return false;
        return true;
    };
    for (auto leaf : schema_leaves)
        if (check(leaf)) return true;
    return false;
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : ".") + p;
    return out;
}

void reject_unknown_keys(const json& node, std::vector<std::string>& parts) {
    if (node.is_object()) {
        for (auto it = node.begin(); it != node.end(); ++it) {
            parts.push_back(it.key());
            if (!in_schema(parts, true)) throw ValidationError(join(parts), "unknown key");
            reject_unknown_keys(it.value(), parts);
            parts.pop_back();
        }
    } else if (node.is_array()) {
        for (std::size_t i = 0; i < node.size(); ++i) {
            parts.push_back(std::to_string(i));
            if (!in_schema(parts, true)) throw ValidationError(join(parts), "unexpected array");
            reject_unknown_keys(node[i], parts);
            parts.pop_back();
        }
    }
}

double number(const json& obj, const char* key, const std::string& path) {
    const std::string full = path.empty() ? std::string(key) : path + "." + key;
    const auto it = obj.find(key);
    if (it == obj.end()) throw ValidationError(full, "required number is missing");
    if (!it->is_number()) throw ValidationError(full, "must be a number");
    return it->get<double>();
}

double number_or(const json& obj, const char* key, const std::string& path, double fallback) {
    return obj.contains(key) ? number(obj, key, path) : fallback;
}

long long integer(const json& obj, const char* key, const std::string& path) {
    const double v = number(obj, key, path);
    if (v != std::floor(v)) throw ValidationError(path.empty() ? std::string(key) : path + "." + key, "must be an integer");
    return static_cast<long long>(v);
}

const json& object(const json& parent, const char* key, const std::string& path = "") {
    const std::string full = path.empty() ? key : path + "." + key;
    const auto it = parent.find(key);
    if (it == parent.end()) throw ValidationError(full, "required section is missing");
    if (!it->is_object()) throw ValidationError(full, "must be an object");
    return *it;
}

std::string key_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

}  // namespace

void apply_overrides(json& doc, const std::vector<std::string>& overrides) {
    for (const auto& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw ValidationError(item, "override must look like key=value");
        const std::string key = item.substr(0, eq);
        const std::string text = item.substr(eq + 1);
        const auto parts = split(key, '.');
        if (!in_schema(parts, false)) throw ValidationError(key, "unknown override key");

        json value = json::parse(text, nullptr, false);
        if (value.is_discarded()) value = text;

        json* node = &doc;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const bool last = i + 1 == parts.size();
            if (is_index(parts[i])) {
                const auto idx = std::stoul(parts[i]);
                if (!node->is_array() || idx >= node->size())
                    throw ValidationError(key, "array index " + parts[i] + " out of range");
                node = &(*node)[idx];
            } else {
                if (node->is_null()) *node = json::object();
                if (!node->is_object()) throw ValidationError(key, "cannot descend into a non-object");
                node = &(*node)[parts[i]];
            }
            if (last) *node = value;
        }
    }
}

SystemConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ValidationError("", "config must be a JSON object");
    std::vector<std::string> parts;
    reject_unknown_keys(doc, parts);

    SystemConfig c;
    const json& hw = object(doc, "hardware");
    c.hardware.memory_energy = number(hw, "memory_energy", "hardware");
    c.hardware.compute_energy = number(hw, "compute_energy", "hardware");
    c.hardware.bandwidth = number(hw, "bandwidth", "hardware");
    c.hardware.throughput = number(hw, "throughput", "hardware");

    const auto models = doc.find("models");
    if (models == doc.end() || !models->is_array() || models->empty())
        throw ValidationError("models", "must be a non-empty array");
    for (std::size_t i = 0; i < models->size(); ++i) {
        const json& m = (*models)[i];
        const std::string path = key_path("models", i);
        if (!m.is_object()) throw ValidationError(path, "must be an object");
        ModelDims dims;
        dims.name = m.value("name", "model" + std::to_string(i));
        dims.params = number(m, "params", path);
        dims.layers = static_cast<int>(integer(m, "layers", path));
        dims.attention_dim = static_cast<int>(integer(m, "attention_dim", path));
        ModelProfile profile;
        profile.dims = dims;
        c.models.push_back(profile);  // coefficients are derived in validate_config
    }

    const json& sc = object(doc, "scaling");
    const double steepness = number(sc, "steepness", "scaling");
    const double tokens_per_skill = number(sc, "tokens_per_skill", "scaling");
    if (sc.contains("hoffmann")) {
        const json& h = object(sc, "hoffmann", "scaling");
        try {
            c.scaling = ScalingFit::from_hoffmann(number(h, "A", "scaling.hoffmann"), number(h, "B", "scaling.hoffmann"),
                                                  number(h, "alpha", "scaling.hoffmann"),
                                                  number(h, "beta", "scaling.hoffmann"),
                                                  number(h, "E", "scaling.hoffmann"), steepness, tokens_per_skill);
        } catch (const ValidationError& e) {
            if (e.path().rfind("scaling", 0) == 0) throw;
            throw ValidationError("scaling.hoffmann." + e.path(), "must be > 0");
        }
    } else {
        c.scaling.irreducible_loss = number(sc, "irreducible_loss", "scaling");
        c.scaling.loss_scale = number(sc, "loss_scale", "scaling");
        c.scaling.loss_exponent = number(sc, "loss_exponent", "scaling");
        c.scaling.steepness = steepness;
        c.scaling.tokens_per_skill = tokens_per_skill;
    }

    const json& ar = object(doc, "arrivals");
    c.arrivals.rate = number(ar, "rate", "arrivals");
    const auto catalog = ar.find("catalog");
    if (catalog == ar.end() || !catalog->is_array() || catalog->empty())
        throw ValidationError("arrivals.catalog", "must be a non-empty array");
    std::vector<bool> needs_deadline;
    std::size_t weighted = 0;
    for (std::size_t i = 0; i < catalog->size(); ++i) {
        const json& e = (*catalog)[i];
        const std::string path = key_path("arrivals.catalog", i);
        if (!e.is_object()) throw ValidationError(path, "must be an object");
        CatalogEntry entry;
        entry.descriptor.difficulty = number(e, "difficulty", path);
        entry.descriptor.skills = static_cast<int>(integer(e, "skills", path));
        entry.requirement.tolerance = number(e, "tolerance", path);
        const bool missing = !e.contains("deadline") || e["deadline"].is_null();
        needs_deadline.push_back(missing);
        entry.requirement.deadline = missing ? 1 : static_cast<Slot>(integer(e, "deadline", path));
        if (e.contains("weight")) {
            entry.weight = number(e, "weight", path);
            ++weighted;
        }
        c.arrivals.catalog.push_back(entry);
    }
    if (weighted == 0) {
        for (auto& e : c.arrivals.catalog) e.weight = 1.0 / static_cast<double>(c.arrivals.catalog.size());
    } else if (weighted != c.arrivals.catalog.size()) {
        throw ValidationError("arrivals.catalog", "give a weight for every entry or for none");
    }

    const json& hv = object(doc, "harvest");
    const std::string kind = hv.value("kind", "constant");
    if (kind == "constant")
        c.harvest.kind = HarvestKind::constant;
    else if (kind == "gamma")
        c.harvest.kind = HarvestKind::gamma;
    else
        throw ValidationError("harvest.kind", "must be \"constant\" or \"gamma\"");
    const auto mean = hv.find("mean");
    const bool critical = mean != hv.end() && mean->is_string() && mean->get<std::string>() == "critical";
    if (mean != hv.end() && mean->is_string() && !critical)
        throw ValidationError("harvest.mean", "must be a number or \"critical\"");
    c.harvest.mean = critical ? 1.0 : number(hv, "mean", "harvest");
    c.harvest.variance = number_or(hv, "variance", "harvest", 0.0);

    c.slot_seconds = number_or(doc, "slot_seconds", "", 1.0);
    if (!doc.contains("horizon")) throw ValidationError("horizon", "required number is missing");
    c.horizon = static_cast<Slot>(integer(doc, "horizon", ""));
    c.initial_battery = number_or(doc, "initial_battery", "", 0.0);
    c.prediction_error = number_or(doc, "prediction_error", "", 0.0);
    if (doc.contains("dispatcher")) {
        const json& d = object(doc, "dispatcher");
        c.dispatcher_energy = number_or(d, "energy", "dispatcher", 0.0);
        c.dispatcher_latency = d.contains("latency") ? static_cast<Slot>(integer(d, "latency", "dispatcher")) : 0;
    }

    c = validate_config(std::move(c));
    for (std::size_t i = 0; i < c.arrivals.catalog.size(); ++i) {
        if (!needs_deadline[i]) continue;
        auto& entry = c.arrivals.catalog[i];
        try {
            entry.requirement.deadline = default_deadline(entry.descriptor, entry.requirement.tolerance, c);
        } catch (const InfeasibleTask& e) {
            throw ValidationError(key_path("arrivals.catalog", i) + ".deadline",
                                  std::string("no default deadline: ") + e.what());
        }
    }
    if (critical) c.harvest.mean = cbar_lb(c.arrivals, c);
    return validate_config(std::move(c));
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(path.string(), "cannot open config file");
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw ValidationError(path.string(), "not valid JSON");
    return doc;
}

SystemConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
    json doc = read_json(path);
    apply_overrides(doc, overrides);
    return parse_config(doc);
}

}  // namespace ecoroute
