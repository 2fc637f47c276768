#pragma once

// Command-line front end: configuration ingestion, validation and dispatch.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace frv::cli {

enum class ParamKind { Real, Integer, Text };

struct ParamSpec {
    std::string flag; // long flag without dashes, e.g. "omega-min"
    ParamKind kind = ParamKind::Real;
    std::string default_value; // empty: no default
    bool required = false;
    std::string help;
};

struct CommandSpec {
    std::string name;
    std::string help;
    std::vector<ParamSpec> params;
    std::string default_format; // csv or json
};

const std::vector<CommandSpec>& commands();
const CommandSpec* find_command(std::string_view name);

/// Lowercase with '-' and '_' removed: "a_init", "a-init", "AInit" all map
/// to "ainit".
std::string canonical_key(std::string_view key);

struct RunConfig {
    std::string command;
    std::map<std::string, std::string> parameters; // canonical key -> text
    std::string output_path = "-";                 // "-" is standard output
    std::string format;                            // csv | json; empty: command default
};

/// Malformed or invalid configuration; maps to exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RunConfig parse_config_json(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Fills defaults and checks every key; throws one UsageError that lists
/// all violations.
void validate(RunConfig& config);

/// Executes a validated config. Data goes to the configured output (or
/// `out` for "-"), diagnostics to `err`. Returns the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace frv::cli
