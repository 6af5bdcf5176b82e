#pragma once

#include "lolab/distribution.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lolab::harness {

using Json = nlohmann::ordered_json;

/// Every validation problem found in a configuration, not just the first.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const { return errors_; }

private:
    std::vector<std::string> errors_;
};

enum class ValueType { integer, real, real_list, text, atoms };

struct KeySpec {
    std::string_view name;
    ValueType type;
    std::string_view help;
};

/// All recognised keys. CLI flags are `--<name>`; config files use the same names.
const std::vector<KeySpec>& key_specs();

/// The experiment commands, in documentation order.
const std::vector<std::string_view>& commands();

struct ExperimentConfig {
    std::string command;
    Json params;  // resolved parameters (user values + defaults), echoed into every output
    std::uint64_t master_seed = 0;
    std::filesystem::path output;

    bool has(std::string_view key) const;
    double real(std::string_view key) const;
    std::uint64_t integer(std::string_view key) const;
    std::vector<double> reals(std::string_view key) const;
    std::string text(std::string_view key) const;
};

using FlagList = std::vector<std::pair<std::string, std::string>>;

/// Builds a validated configuration from an optional JSON document and
/// command-line flag values (flags override the file). Throws ConfigError.
ExperimentConfig parse_config(std::string_view command, std::string_view json_text, const FlagList& flags);

/// Entry law described by `family`, `atoms` and `shift`.
DistributionSpec make_distribution(const ExperimentConfig& config);

} // namespace lolab::harness
