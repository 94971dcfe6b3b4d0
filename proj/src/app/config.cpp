#include "advwave/app/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace advwave::app {

namespace {

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw UsageError("config: '" + key + "' expects a number, got '" + v + "'");
    }
}

int parse_int(const std::string& key, const std::string& v) {
    double x = parse_double(key, v);
    if (x != std::floor(x) || std::abs(x) > 1e9) throw UsageError("config: '" + key + "' expects an integer");
    return static_cast<int>(x);
}

const std::vector<std::string> kCommandKeys{"count", "span", "x_gamma", "n2_half_width"};

}  // namespace

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k{"gamma", "omega0_ratio", "r0_gamma", "tmax_gamma", "points", "out"};
        k.insert(k.end(), kCommandKeys.begin(), kCommandKeys.end());
        return k;
    }();
    return keys;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void RunConfig::set(const std::string& key, const std::string& value, bool overwrite) {
    auto put = [&](auto& slot, auto v) {
        if (overwrite || !slot) slot = v;
    };
    if (key == "gamma")
        put(gamma, parse_double(key, value));
    else if (key == "omega0_ratio")
        put(omega0Ratio, parse_double(key, value));
    else if (key == "r0_gamma")
        put(r0Gamma, parse_double(key, value));
    else if (key == "tmax_gamma")
        put(tmaxGamma, parse_double(key, value));
    else if (key == "points")
        put(points, parse_int(key, value));
    else if (key == "out")
        put(outDir, value);
    else if (std::find(kCommandKeys.begin(), kCommandKeys.end(), key) != kCommandKeys.end()) {
        if (overwrite || !options.count(key)) options[key] = value;
    } else
        throw UsageError("config: unknown key '" + key + "'");
}

void RunConfig::merge_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(lineNo) + ": expected 'key = value'");
        set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), false);
    }
}

Resolved resolve(const RunConfig& cfg, const std::string& command, const Defaults& d) {
    Resolved r;
    r.command = command;
    r.gamma = cfg.gamma.value_or(d.gamma);
    r.omega0Ratio = cfg.omega0Ratio.value_or(d.omega0Ratio);
    r.r0Gamma = cfg.r0Gamma.value_or(d.r0Gamma);
    r.tmaxGamma = cfg.tmaxGamma.value_or(d.tmaxGamma);
    r.points = cfg.points.value_or(d.points);
    r.outDir = cfg.outDir.value_or(".");
    r.options = cfg.options;
    auto positive = [](double v, const char* name) {
        if (!(v > 0) || !std::isfinite(v)) throw UsageError(std::string(name) + " must be positive");
    };
    positive(r.gamma, "gamma");
    positive(r.omega0Ratio, "omega0_ratio");
    positive(r.r0Gamma, "r0_gamma");
    positive(r.tmaxGamma, "tmax_gamma");
    if (r.points < 2) throw UsageError("points must be at least 2");
    return r;
}

std::vector<std::pair<std::string, std::string>> Resolved::describe() const {
    std::vector<std::pair<std::string, std::string>> out{
        {"command", command},
        {"gamma", fmt_double(gamma)},
        {"omega0_ratio", fmt_double(omega0Ratio)},
        {"r0_gamma", fmt_double(r0Gamma)},
        {"tmax_gamma", fmt_double(tmaxGamma)},
        {"points", std::to_string(points)},
    };
    for (const auto& [k, v] : options) out.emplace_back(k, v);
    return out;
}

double Resolved::option(const std::string& key, double fallback) const {
    auto it = options.find(key);
    return it == options.end() ? fallback : parse_double(key, it->second);
}

}  // namespace advwave::app
