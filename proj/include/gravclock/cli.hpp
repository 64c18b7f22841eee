#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace gravclock::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;  // selftest found a mismatch
inline constexpr int exit_validation = 2;
inline constexpr int exit_no_convergence = 3;
inline constexpr int exit_usage = 64;

using ConfigMap = std::map<std::string, std::string>;

// Flat `key = value` text; `#` starts a comment. Throws ConfigError on
// malformed lines, duplicate keys, or keys outside `allowed` (when given).
ConfigMap parse_config(std::istream& in, const std::string& source,
                       const std::vector<std::string>* allowed = nullptr);
ConfigMap load_config_file(const std::string& path, const std::vector<std::string>* allowed = nullptr);

// Every key accepted in config files and as --flag (underscores become dashes).
const std::vector<std::string>& config_keys();

using Value = std::variant<double, long long, bool, std::string, std::vector<std::string>>;
using Record = std::vector<std::pair<std::string, Value>>;

// %.16e, i.e. 17 significant digits; inf/nan spelled out.
std::string format_number(double x);
std::string csv_field(const std::string& s);
std::string json_string(const std::string& s);

struct Output {
    Record inputs;
    Record outputs;
    // Tabular commands fill these instead of outputs.
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
};

void write_csv(std::ostream& os, const Output& o);
void write_json(std::ostream& os, const Output& o, const Record& constants);

// Runs one CLI invocation; args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gravclock::cli
