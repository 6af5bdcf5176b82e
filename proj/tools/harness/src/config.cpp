#include "lolab/harness/config.hpp"

#include "lolab/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace lolab::harness {

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error([&] {
          std::string msg = "invalid configuration:";
          for (const auto& e : errors) msg += "\n  " + e;
          return msg;
      }()),
      errors_(std::move(errors)) {}

const std::vector<KeySpec>& key_specs() {
    static const std::vector<KeySpec> specs = {
        {"seed", ValueType::integer, "master seed (64-bit)"},
        {"out", ValueType::text, "output directory"},
        {"trials", ValueType::integer, "number of Monte Carlo trials"},
        {"n", ValueType::integer, "dimension"},
        {"k", ValueType::integer, "number of rows (rectangular)"},
        {"a", ValueType::real_list, "coefficient vector"},
        {"eps", ValueType::real_list, "epsilon grid"},
        {"alpha", ValueType::real, "LCD accuracy, in (0,1)"},
        {"kappa", ValueType::real, "number of exceptional coordinates"},
        {"beta", ValueType::real, "kappa = beta n for the random normal"},
        {"family", ValueType::text, "rademacher | gaussian | discrete"},
        {"atoms", ValueType::atoms, "discrete law as value:prob,..."},
        {"shift", ValueType::real_list, "per-coordinate offsets"},
        {"method", ValueType::text, "exact | monte-carlo"},
        {"budget", ValueType::integer, "enumeration budget"},
        {"y", ValueType::real, "recurrence-set horizon"},
        {"K1", ValueType::real, "spread part lower level"},
        {"K2", ValueType::real, "spread part upper level"},
        {"K", ValueType::real, "upper bound on |a_k|"},
        {"B", ValueType::real, "moment constant"},
        {"C", ValueType::real, "theorem constant C"},
        {"c", ValueType::real, "theorem constant c"},
        {"C1", ValueType::real, "Berry-Esseen constant"},
        {"t-max", ValueType::real, "LCD search horizon"},
        {"grid-res", ValueType::integer, "curve resolution"},
        {"quad-points", ValueType::integer, "Simpson panels"},
        {"delta", ValueType::real, "sparsity fraction"},
        {"rho", ValueType::real, "compressibility radius"},
    };
    return specs;
}

const std::vector<std::string_view>& commands() {
    static const std::vector<std::string_view> names = {"lcd",      "smallball",   "bounds-compare",
                                                        "matrix-tail", "largest-sv", "singularity",
                                                        "distance", "normal-lcd",  "rectangular"};
    return names;
}

namespace {

const KeySpec* find_key(std::string_view name) {
    for (const auto& s : key_specs())
        if (s.name == name) return &s;
    return nullptr;
}

struct CommandSchema {
    std::vector<std::string_view> required;
    std::vector<std::string_view> optional;
    Json defaults;
};

const std::vector<std::string_view> law_keys = {"family", "atoms", "shift"};

const std::map<std::string_view, CommandSchema>& schemas() {
    static const std::map<std::string_view, CommandSchema> s = [] {
        std::map<std::string_view, CommandSchema> m;
        m["lcd"] = {{"a", "alpha"}, {"kappa", "t-max", "y", "grid-res"}, {{"kappa", 0.0}, {"t-max", 1e4}, {"y", 10.0}, {"grid-res", 200}}};
        m["smallball"] = {{"eps"},
                          {"a", "n", "method", "trials", "budget"},
                          {{"family", "rademacher"}, {"method", "exact"}, {"trials", 10000}, {"budget", 1ULL << 26}}};
        m["bounds-compare"] = {{"eps"},
                               {"a", "n", "budget", "B", "C1", "alpha", "kappa", "K", "C", "c", "t-max", "quad-points"},
                               {{"family", "rademacher"},
                                {"budget", 1ULL << 26},
                                {"C1", 0.56},
                                {"C", 1.0},
                                {"c", 1.0},
                                {"t-max", 1e4},
                                {"quad-points", 4096}}};
        m["matrix-tail"] = {{"n"},
                            {"trials", "eps"},
                            {{"family", "gaussian"}, {"trials", 1000}, {"eps", {0.05, 0.1, 0.2, 0.5, 1.0}}}};
        m["largest-sv"] = {{"n"}, {"trials"}, {{"family", "gaussian"}, {"trials", 200}}};
        m["singularity"] = {{"n"},
                            {"trials", "method", "budget"},
                            {{"family", "rademacher"}, {"trials", 10000}, {"method", "monte-carlo"}, {"budget", 4096}}};
        m["distance"] = {{"n"},
                         {"trials", "eps"},
                         {{"family", "gaussian"}, {"trials", 1000}, {"eps", {0.01, 0.02, 0.05, 0.1, 0.2, 0.3}}}};
        m["normal-lcd"] = {{"n"},
                           {"trials", "K1", "K2", "alpha", "beta", "t-max", "delta", "rho"},
                           {{"family", "gaussian"},
                            {"trials", 100},
                            {"K1", 0.5},
                            {"K2", 3.0},
                            {"alpha", 0.2},
                            {"beta", 0.1},
                            {"t-max", 1e4},
                            {"delta", 0.1},
                            {"rho", 0.1}}};
        m["rectangular"] = {{"n", "k"}, {"trials"}, {{"family", "gaussian"}, {"trials", 200}}};
        for (auto& [name, schema] : m) {
            if (name != "lcd") schema.optional.insert(schema.optional.end(), law_keys.begin(), law_keys.end());
            schema.optional.push_back("seed");
            schema.optional.push_back("out");
            schema.defaults["seed"] = 0;
            schema.defaults["out"] = "lolab-out";
        }
        return m;
    }();
    return s;
}

bool applicable(const CommandSchema& s, std::string_view key) {
    return std::find(s.required.begin(), s.required.end(), key) != s.required.end() ||
           std::find(s.optional.begin(), s.optional.end(), key) != s.optional.end();
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> parse_real(std::string_view s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
    return v;
}

std::optional<std::uint64_t> parse_unsigned(std::string_view s) {
    std::uint64_t v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
    return v;
}

// Converts a flag string into the JSON value a config file would carry.
std::optional<Json> flag_to_json(const KeySpec& spec, const std::string& raw, std::string& why) {
    switch (spec.type) {
    case ValueType::integer:
        if (auto v = parse_unsigned(trim(raw))) return Json(*v);
        why = "expected a non-negative integer, got '" + raw + "'";
        return std::nullopt;
    case ValueType::real:
        if (auto v = parse_real(trim(raw))) return Json(*v);
        why = "expected a number, got '" + raw + "'";
        return std::nullopt;
    case ValueType::real_list: {
        Json arr = Json::array();
        for (const auto& part : split(raw, ',')) {
            auto v = parse_real(part);
            if (!v) {
                why = "expected a comma-separated list of numbers, got '" + raw + "'";
                return std::nullopt;
            }
            arr.push_back(*v);
        }
        return arr;
    }
    case ValueType::text:
        return Json(raw);
    case ValueType::atoms: {
        Json arr = Json::array();
        for (const auto& part : split(raw, ',')) {
            const auto colon = part.find(':');
            std::optional<double> v, p;
            if (colon != std::string::npos) {
                v = parse_real(trim(std::string_view(part).substr(0, colon)));
                p = parse_real(trim(std::string_view(part).substr(colon + 1)));
            }
            if (!v || !p) {
                why = "expected value:prob pairs separated by commas, got '" + raw + "'";
                return std::nullopt;
            }
            arr.push_back(Json::array({*v, *p}));
        }
        return arr;
    }
    }
    return std::nullopt;
}

// Normalises a JSON value to the canonical representation of its key type.
std::optional<Json> normalise(const KeySpec& spec, const Json& v, std::string& why) {
    switch (spec.type) {
    case ValueType::integer:
        if (v.is_number_unsigned()) return v;
        if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return Json(v.get<std::uint64_t>());
        why = "expected a non-negative integer";
        return std::nullopt;
    case ValueType::real:
        if (v.is_number()) return Json(v.get<double>());
        why = "expected a number";
        return std::nullopt;
    case ValueType::real_list: {
        if (v.is_number()) return Json::array({v.get<double>()});
        if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_number(); })) {
            Json arr = Json::array();
            for (const auto& x : v) arr.push_back(x.get<double>());
            return arr;
        }
        why = "expected a number or an array of numbers";
        return std::nullopt;
    }
    case ValueType::text:
        if (v.is_string()) return v;
        why = "expected a string";
        return std::nullopt;
    case ValueType::atoms: {
        if (v.is_array()) {
            Json arr = Json::array();
            for (const auto& x : v) {
                if (!(x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number())) {
                    arr = nullptr;
                    break;
                }
                arr.push_back(Json::array({x[0].get<double>(), x[1].get<double>()}));
            }
            if (!arr.is_null()) return arr;
        }
        why = "expected an array of [value, prob] pairs";
        return std::nullopt;
    }
    }
    return std::nullopt;
}

Json parse_document(std::string_view text, std::vector<std::string>& errors) {
    std::vector<std::set<std::string>> seen;
    std::vector<std::string> path;
    std::string pending;
    auto cb = [&](int, Json::parse_event_t ev, Json& parsed) {
        switch (ev) {
        case Json::parse_event_t::object_start:
            seen.emplace_back();
            path.push_back(pending);
            break;
        case Json::parse_event_t::object_end:
            seen.pop_back();
            path.pop_back();
            break;
        case Json::parse_event_t::key: {
            pending = parsed.get<std::string>();
            if (!seen.back().insert(pending).second) {
                std::string where;
                for (const auto& p : path)
                    if (!p.empty()) where += p + ".";
                errors.push_back("duplicate key '" + where + pending + "'");
            }
            break;
        }
        default:
            break;
        }
        return true;
    };
    try {
        return Json::parse(text.begin(), text.end(), cb);
    } catch (const Json::parse_error& e) {
        errors.push_back(std::string("config file is not valid JSON: ") + e.what());
        return Json::object();
    }
}

void range_checks(const std::string& command, const Json& p, std::vector<std::string>& errors) {
    auto has = [&](const char* k) { return p.contains(k); };
    auto num = [&](const char* k) { return p.at(k).get<double>(); };
    auto uint = [&](const char* k) { return p.at(k).get<std::uint64_t>(); };
    auto open01 = [&](const char* k) {
        if (has(k) && !(num(k) > 0.0 && num(k) < 1.0)) errors.push_back(std::string(k) + " must be in (0,1)");
    };
    auto positive = [&](const char* k) {
        if (has(k) && !(num(k) > 0.0 && std::isfinite(num(k))))
            errors.push_back(std::string(k) + " must be a finite number > 0");
    };
    auto at_least = [&](const char* k, std::uint64_t lo) {
        if (has(k) && uint(k) < lo) errors.push_back(std::string(k) + " must be >= " + std::to_string(lo));
    };

    open01("alpha");
    open01("delta");
    open01("rho");
    if (has("beta") && !(num("beta") > 0.0 && num("beta") < 1.0)) errors.push_back("beta must be in (0,1)");
    if (has("kappa") && !(num("kappa") >= 0.0 && std::isfinite(num("kappa"))))
        errors.push_back("kappa must be a finite number >= 0");
    for (const char* k : {"K1", "K2", "B", "C", "c", "C1", "t-max", "y"}) positive(k);
    if (has("K") && !(num("K") >= 1.0 && std::isfinite(num("K")))) errors.push_back("K must be a finite number >= 1");
    if (has("K1") && has("K2") && !(num("K1") < num("K2"))) errors.push_back("K1 must be < K2");
    at_least("n", 1);
    at_least("k", 1);
    at_least("trials", 1);
    at_least("budget", 1);
    at_least("grid-res", 2);
    if (has("quad-points") && (uint("quad-points") < 4 || uint("quad-points") % 4 != 0))
        errors.push_back("quad-points must be a positive multiple of 4");

    for (const char* k : {"a", "eps", "shift"}) {
        if (!has(k)) continue;
        const auto& arr = p.at(k);
        if (arr.empty()) errors.push_back(std::string(k) + " must not be empty");
        for (const auto& x : arr) {
            if (!std::isfinite(x.get<double>())) {
                errors.push_back(std::string(k) + " entries must be finite");
                break;
            }
        }
    }
    if (has("eps")) {
        for (const auto& x : p.at("eps")) {
            if (x.get<double>() < 0.0) {
                errors.push_back("eps entries must be >= 0");
                break;
            }
        }
    }

    if (has("family")) {
        const auto f = p.at("family").get<std::string>();
        if (f != "rademacher" && f != "gaussian" && f != "discrete")
            errors.push_back("family must be one of rademacher, gaussian, discrete");
        if (f == "discrete" && !has("atoms")) errors.push_back("atoms is required when family is discrete");
        if (f != "discrete" && has("atoms")) errors.push_back("atoms is only valid when family is discrete");
    }
    if (has("atoms")) {
        double total = 0.0;
        bool bad = false;
        for (const auto& x : p.at("atoms")) {
            const double v = x[0].get<double>(), pr = x[1].get<double>();
            if (!std::isfinite(v) || !(pr > 0.0)) bad = true;
            total += pr;
        }
        if (p.at("atoms").empty() || bad) errors.push_back("atoms must have finite values and probabilities > 0");
        else if (std::abs(total - 1.0) > 1e-12) errors.push_back("atoms probabilities must sum to 1");
    }
    if (has("method")) {
        const auto m = p.at("method").get<std::string>();
        if (m != "exact" && m != "monte-carlo") errors.push_back("method must be one of exact, monte-carlo");
    }

    if (command == "smallball" || command == "bounds-compare") {
        if (has("a") == has("n")) errors.push_back("exactly one of a and n must be given");
        if (command == "smallball" && has("method") && p.at("method") == "monte-carlo")
            at_least("trials", 100);
        if (has("family") && p.at("family") == "gaussian" && command == "bounds-compare")
            errors.push_back("family gaussian has no exact small ball probability; bounds-compare needs finite support");
    }
    if (command == "bounds-compare" && has("alpha") != has("kappa"))
        errors.push_back("alpha and kappa must be given together");
    if (command == "matrix-tail") at_least("trials", 100);
    if (command == "distance" || command == "normal-lcd") at_least("n", 2);
    if (command == "rectangular" && has("n") && has("k") && uint("k") >= uint("n"))
        errors.push_back("k must be < n");
    if (has("shift") && (has("a") || has("n"))) {
        const std::size_t dim = has("a") ? p.at("a").size() : uint("n");
        const std::size_t len = p.at("shift").size();
        if (len != 1 && len != dim)
            errors.push_back(std::string("shift must have 1 or ") + (has("a") ? "len(a)" : "n") + " entries");
    }
}

} // namespace

bool ExperimentConfig::has(std::string_view key) const { return params.contains(std::string(key)); }

double ExperimentConfig::real(std::string_view key) const { return params.at(std::string(key)).get<double>(); }

std::uint64_t ExperimentConfig::integer(std::string_view key) const {
    return params.at(std::string(key)).get<std::uint64_t>();
}

std::vector<double> ExperimentConfig::reals(std::string_view key) const {
    return params.at(std::string(key)).get<std::vector<double>>();
}

std::string ExperimentConfig::text(std::string_view key) const { return params.at(std::string(key)).get<std::string>(); }

ExperimentConfig parse_config(std::string_view command, std::string_view json_text, const FlagList& flags) {
    std::vector<std::string> errors;
    const auto& all = schemas();
    const auto it = all.find(command);
    if (it == all.end()) throw ConfigError({"unknown command '" + std::string(command) + "'"});
    const auto& schema = it->second;

    Json given = Json::object();
    auto accept = [&](const std::string& key, const Json& raw, bool from_flag, const std::string& flag_text) {
        const auto* spec = find_key(key);
        if (!spec) {
            errors.push_back("unknown key '" + key + "'");
            return;
        }
        if (!applicable(schema, key)) {
            errors.push_back("key '" + key + "' does not apply to command " + std::string(command));
            return;
        }
        std::string why;
        auto value = from_flag ? flag_to_json(*spec, flag_text, why) : normalise(*spec, raw, why);
        if (!value) {
            errors.push_back(key + ": " + why);
            return;
        }
        given[key] = std::move(*value);
    };

    if (!json_text.empty()) {
        Json doc = parse_document(json_text, errors);
        if (!doc.is_object()) {
            errors.push_back("config file must contain a JSON object");
        } else {
            for (const auto& [key, value] : doc.items()) {
                if (key == "command") {
                    if (!value.is_string() || value.get<std::string>() != command)
                        errors.push_back("command: config file names a different command");
                    continue;
                }
                accept(key, value, false, {});
            }
        }
    }
    std::set<std::string> flag_seen;
    for (const auto& [key, text] : flags) {
        if (!flag_seen.insert(key).second) {
            errors.push_back("duplicate flag '--" + key + "'");
            continue;
        }
        accept(key, nullptr, true, text);
    }

    for (auto req : schema.required)
        if (!given.contains(std::string(req))) errors.push_back("missing required key '" + std::string(req) + "'");

    Json resolved = Json::object();
    for (const auto& spec : key_specs()) {
        const std::string k(spec.name);
        if (given.contains(k)) resolved[k] = given[k];
        else if (schema.defaults.contains(k) && applicable(schema, k)) {
            std::string why;
            resolved[k] = *normalise(spec, schema.defaults[k], why);
        }
    }
    range_checks(std::string(command), resolved, errors);
    if (!errors.empty()) throw ConfigError(std::move(errors));

    ExperimentConfig cfg;
    cfg.command = std::string(command);
    cfg.params = std::move(resolved);
    cfg.master_seed = cfg.integer("seed");
    cfg.output = cfg.text("out");
    return cfg;
}

DistributionSpec make_distribution(const ExperimentConfig& config) {
    const auto family = config.has("family") ? config.text("family") : std::string("rademacher");
    DistributionSpec d = DistributionSpec::rademacher();
    if (family == "gaussian") d = DistributionSpec::gaussian();
    else if (family == "discrete") {
        std::vector<Atom> atoms;
        for (const auto& x : config.params.at("atoms")) atoms.push_back({x[0].get<double>(), x[1].get<double>()});
        d = DistributionSpec::discrete(std::move(atoms));
    }
    if (config.has("shift")) d = d.shifted(config.reals("shift"));
    return d;
}

} // namespace lolab::harness
