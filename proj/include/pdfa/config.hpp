#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pdfa/params.hpp"

namespace pdfa {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Settings = std::map<std::string, std::string>;

struct RunConfig {
    EvalParams params;
    std::string heuristic_name = "alergia";
    std::string data_name;
    std::string input_path;
    std::optional<std::string> apta_file;
    bool print_sinks = false;
};

/// Canonical key spelling: dashes become underscores, "aptafile" becomes "apta_file".
std::string normalize_key(std::string_view key);

/* Reads `key = value` lines. Only the [default] section is used; blank lines
 * and lines starting with ';' or '#' are skipped. */
Settings parse_ini(std::string_view text);

/// Applies defaults, then the ini settings, then the overrides. Throws ConfigError.
RunConfig load_config(const Settings& ini, const Settings& overrides = {});

/// Checks what a run needs: an input path, a known heuristic, a model for predict.
void validate(const RunConfig& config);

/// Executes one run; returns 0 only if every output file was written.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace pdfa
