#include "lolab/harness/config.hpp"
#include "lolab/harness/run.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

std::string type_label(lolab::harness::ValueType t) {
    using lolab::harness::ValueType;
    switch (t) {
    case ValueType::integer: return "INT";
    case ValueType::real: return "REAL";
    case ValueType::real_list: return "REAL,...";
    case ValueType::text: return "TEXT";
    case ValueType::atoms: return "V:P,...";
    }
    return "TEXT";
}

} // namespace

int main(int argc, char** argv) {
    using namespace lolab::harness;

    CLI::App app{"Monte Carlo and exact experiments on small ball probabilities and random matrices", "lolab"};
    app.set_version_flag("--version", tool_version);

    std::vector<std::string> names(commands().begin(), commands().end());
    std::string command;
    app.add_option("command", command, "experiment to run")->required()->check(CLI::IsMember(names));
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override its keys)");

    // Repeated flags and unknown flags are reported by parse_config together with every other problem.
    app.allow_extras();
    std::map<std::string, std::vector<std::string>> values;
    for (const auto& spec : key_specs()) {
        const std::string name(spec.name);
        app.add_option("--" + name, values[name], std::string(spec.help))
            ->expected(1)
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
            ->allow_extra_args(false)
            ->type_name(type_label(spec.type));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_validation;
    }

    std::string text;
    if (!config_path.empty()) {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot read config file " << config_path << '\n';
            return exit_validation;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }

    FlagList flags;
    for (const auto& spec : key_specs())
        for (const auto& v : values[std::string(spec.name)]) flags.emplace_back(std::string(spec.name), v);

    const auto extras = app.remaining();
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const auto& tok = extras[i];
        if (tok.rfind("--", 0) != 0) {
            std::cerr << "error: unexpected argument '" << tok << "'\n";
            return exit_validation;
        }
        const auto eq = tok.find('=');
        std::string name = tok.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
        std::string value;
        if (eq != std::string::npos) value = tok.substr(eq + 1);
        else if (i + 1 < extras.size() && extras[i + 1].rfind("--", 0) != 0) value = extras[++i];
        flags.emplace_back(std::move(name), std::move(value));
    }

    try {
        const auto cfg = parse_config(command, text, flags);
        return run(cfg, std::cerr);
    } catch (const ConfigError& e) {
        for (const auto& msg : e.errors()) std::cerr << "error: " << msg << '\n';
        return exit_validation;
    }
}
