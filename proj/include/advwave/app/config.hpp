// Run configuration for the command-line tool.
//
// File format: UTF-8 `key = value` lines, `#` starts a comment. Flags given on
// the command line override file values. Unset quantities fall back to
// per-command defaults at resolve time.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace advwave::app {

/// Bad flags, bad config values. Exit status 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable config or unwritable output. Exit status 3.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::optional<double> gamma;        // s^-1
    std::optional<double> omega0Ratio;  // w0 / Gamma
    std::optional<double> r0Gamma;      // Gamma r0 / c
    std::optional<double> tmaxGamma;    // Gamma tmax
    std::optional<int> points;
    std::optional<std::string> outDir;
    std::map<std::string, std::string> options;  // command-specific keys

    /// Reads a config file; keys already set are kept (flags win).
    void merge_file(const std::string& path);
    /// Sets a value from its textual form. Unknown keys throw UsageError.
    void set(const std::string& key, const std::string& value, bool overwrite = true);
};

struct Defaults {
    double gamma = 1e8;
    double omega0Ratio = 100;
    double r0Gamma = 1.0 / 3;
    double tmaxGamma = 10;
    int points = 2;
};

/// Fully resolved parameters; every field set.
struct Resolved {
    std::string command;
    double gamma = 0;
    double omega0Ratio = 0;
    double r0Gamma = 0;
    double tmaxGamma = 0;
    int points = 0;
    std::string outDir;
    std::map<std::string, std::string> options;

    /// Header lines (key, value) describing the run, deterministic order.
    std::vector<std::pair<std::string, std::string>> describe() const;
    double option(const std::string& key, double fallback) const;
};

/// Applies defaults and checks positivity. Throws UsageError.
Resolved resolve(const RunConfig& cfg, const std::string& command, const Defaults& d);

/// Keys accepted in config files and by set().
const std::vector<std::string>& known_keys();

/// %.17g formatting.
std::string fmt_double(double v);

}  // namespace advwave::app
