#ifndef CONJPAIR_CONFIG_HPP
#define CONJPAIR_CONFIG_HPP

#include "conjpair/solver.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace conjpair {

// Flat TOML-style config: top-level keys, [section] tables and repeatable
// [[section]] tables. Values are strings, numbers, booleans, or numeric
// arrays. Unknown keys are rejected when the config is interpreted.

struct ConfigValue {
    enum class Kind { String, Number, Boolean, NumberList };
    Kind kind = Kind::String;
    std::string str;
    double num = 0;
    bool boolean = false;
    std::vector<double> list;
};

struct ConfigTable {
    std::map<std::string, ConfigValue> entries;
    int line = 0;  // where the table header appeared
};

struct ParsedConfig {
    ConfigTable root;
    std::map<std::string, std::vector<ConfigTable>> tables;
};

ParsedConfig parse_config_text(const std::string& text);
ParsedConfig parse_config_file(const std::string& path);

/// Everything a CLI run needs, extracted with strict unknown-key rejection.
struct RunConfig {
    Domain domain = Domain::Cube;
    int level = 1;
    std::string out_dir = ".";

    std::optional<WSpec> w;
    std::vector<WSpec> w_list;          // repeated [[w]] tables, dtn experiments
    std::optional<GammaSpec> gamma;
    std::vector<GammaSpec> gamma_list;  // repeated [[gamma]] tables

    SolverConfig solver;
    std::string v0 = "default";         // "default" or "w"

    std::string study_case = "quadratic_pair";
    std::vector<int> study_levels;
};

RunConfig interpret_config(const ParsedConfig& parsed);

} // namespace conjpair

#endif
