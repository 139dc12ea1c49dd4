// config.hpp: flat key=value parameter sets for the command-line front end.
//
// Keys use dotted namespaces (probe.xi, env.T, grid.w_points, ...). Every
// figure and the query command publish their full set of keys with default
// values; overrides for keys outside that set are rejected.

#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ohmprobe::cli {

// Invalid command line or configuration; exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParamSet {
public:
    ParamSet() = default;
    ParamSet(std::initializer_list<std::pair<const std::string, std::string>> init) : values_(init) {}

    // Replace the value of an existing key; UsageError if the key is unknown.
    void override_value(const std::string& key, const std::string& value);

    bool contains(const std::string& key) const { return values_.count(key) != 0; }
    const std::string& raw(const std::string& key) const;
    double number(const std::string& key) const;
    long integer(const std::string& key) const;
    std::vector<double> list(const std::string& key) const;

    const std::map<std::string, std::string>& values() const noexcept { return values_; }

private:
    std::map<std::string, std::string> values_;
};

// Parses "key=value" lines. Blank lines and lines starting with '#' are
// skipped; surrounding whitespace is trimmed.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text);

std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);

// Splits a single "key=value" token.
std::pair<std::string, std::string> parse_assignment(std::string_view token);

}  // namespace ohmprobe::cli
