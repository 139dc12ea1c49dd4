#include "ohmprobe/cli/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ohmprobe::cli {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v))
        throw UsageError("invalid number for " + key + ": '" + text + "'");
    return v;
}

}  // namespace

void ParamSet::override_value(const std::string& key, const std::string& value)
{
    auto it = values_.find(key);
    if (it == values_.end()) throw UsageError("unknown key: " + key);
    it->second = value;
}

const std::string& ParamSet::raw(const std::string& key) const
{
    auto it = values_.find(key);
    if (it == values_.end()) throw UsageError("missing key: " + key);
    return it->second;
}

double ParamSet::number(const std::string& key) const { return parse_double(key, raw(key)); }

long ParamSet::integer(const std::string& key) const
{
    const double v = number(key);
    if (v != std::floor(v) || std::abs(v) > 1e15) throw UsageError("expected an integer for " + key);
    return static_cast<long>(v);
}

std::vector<double> ParamSet::list(const std::string& key) const
{
    std::vector<double> out;
    std::stringstream ss(raw(key));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
    if (out.empty()) throw UsageError("empty list for " + key);
    return out;
}

std::pair<std::string, std::string> parse_assignment(std::string_view token)
{
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) throw UsageError("expected key=value, got '" + std::string(token) + "'");
    std::string key = trim(token.substr(0, eq));
    std::string value = trim(token.substr(eq + 1));
    if (key.empty()) throw UsageError("empty key in '" + std::string(token) + "'");
    return {std::move(key), std::move(value)};
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text)
{
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++line_no;
        const std::string t = trim(line);
        if (!t.empty() && t.front() != '#') {
            try {
                out.push_back(parse_assignment(t));
            } catch (const UsageError& e) {
                throw UsageError("config line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace ohmprobe::cli
