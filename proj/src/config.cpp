// SPDX-License-Identifier: Apache-2.0
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "cogbeam/scenario.hpp"

namespace cogbeam {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

int parse_int(const std::string& key, const std::string& text) {
    int value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError(key, "expected an integer, got '" + text + "'");
    }
    return value;
}

double parse_real(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(value)) {
        throw ConfigError(key, "expected a finite number, got '" + text + "'");
    }
    return value;
}

using Setter = std::function<void(SystemConfig&, const std::string&, const std::string&)>;

Setter int_field(int SystemConfig::*member) {
    return [member](SystemConfig& c, const std::string& k, const std::string& v) { c.*member = parse_int(k, v); };
}

Setter real_field(double SystemConfig::*member) {
    return [member](SystemConfig& c, const std::string& k, const std::string& v) { c.*member = parse_real(k, v); };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"m_t", int_field(&SystemConfig::m_t)},
        {"m_r", int_field(&SystemConfig::m_r)},
        {"m_1", int_field(&SystemConfig::m_1)},
        {"m_2", int_field(&SystemConfig::m_2)},
        {"d_1", int_field(&SystemConfig::d_1)},
        {"d_2", int_field(&SystemConfig::d_2)},
        {"alpha_1", real_field(&SystemConfig::alpha_1)},
        {"alpha_2", real_field(&SystemConfig::alpha_2)},
        {"p_1", real_field(&SystemConfig::p_1)},
        {"p_2", real_field(&SystemConfig::p_2)},
        {"p_cr", real_field(&SystemConfig::p_cr)},
        {"rho_0", real_field(&SystemConfig::rho_0)},
        {"rho_1", real_field(&SystemConfig::rho_1)},
        {"t_block", int_field(&SystemConfig::t_block)},
        {"tau_min", int_field(&SystemConfig::tau_min)},
    };
    return table;
}

}  // namespace

void validate(const SystemConfig& c) {
    if (c.m_t <= 1) throw ConfigError("m_t", "CR-Tx needs more than one antenna");
    if (c.m_r < 1) throw ConfigError("m_r", "must be at least 1");
    if (c.m_1 < 1) throw ConfigError("m_1", "must be at least 1");
    if (c.m_2 < 1) throw ConfigError("m_2", "must be at least 1");
    if (c.d_1 < 1 || c.d_1 > c.m_1) throw ConfigError("d_1", "must satisfy 1 <= d_1 <= m_1");
    if (c.d_2 < 1 || c.d_2 > c.m_2) throw ConfigError("d_2", "must satisfy 1 <= d_2 <= m_2");
    if (!(c.alpha_1 >= 0.0 && c.alpha_1 <= 1.0)) throw ConfigError("alpha_1", "must lie in [0, 1]");
    if (!(c.alpha_2 >= 0.0 && c.alpha_2 <= 1.0)) throw ConfigError("alpha_2", "must lie in [0, 1]");
    if (c.alpha_1 + c.alpha_2 > 1.0 + 1e-12) throw ConfigError("alpha_2", "alpha_1 + alpha_2 must not exceed 1");
    if (!(c.p_1 > 0.0)) throw ConfigError("p_1", "must be positive");
    if (!(c.p_2 > 0.0)) throw ConfigError("p_2", "must be positive");
    if (!(c.p_cr > 0.0)) throw ConfigError("p_cr", "must be positive");
    if (!(c.rho_0 > 0.0)) throw ConfigError("rho_0", "must be positive");
    if (!(c.rho_1 > 0.0)) throw ConfigError("rho_1", "must be positive");
    if (c.t_block < 2) throw ConfigError("t_block", "must be at least 2");
    if (c.tau_min < 1 || c.tau_min >= c.t_block) throw ConfigError("tau_min", "must satisfy 1 <= tau_min < t_block");
}

SystemConfig parse_config(std::istream& in, const SystemConfig& base) {
    SystemConfig cfg = base;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string body = trim(line);
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) {
            throw ConfigError(key, "unknown key (line " + std::to_string(line_no) + ")");
        }
        if (value.empty()) {
            throw ConfigError(key, "missing value");
        }
        it->second(cfg, key, value);
    }
    validate(cfg);
    return cfg;
}

SystemConfig load_config(const std::string& path, const SystemConfig& base) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("", "cannot open config file '" + path + "'");
    }
    return parse_config(in, base);
}

std::string format_config(const SystemConfig& c) {
    std::ostringstream out;
    out.precision(17);
    out << "m_t = " << c.m_t << "\nm_r = " << c.m_r << "\nm_1 = " << c.m_1 << "\nm_2 = " << c.m_2
        << "\nd_1 = " << c.d_1 << "\nd_2 = " << c.d_2 << "\nalpha_1 = " << c.alpha_1
        << "\nalpha_2 = " << c.alpha_2 << "\np_1 = " << c.p_1 << "\np_2 = " << c.p_2
        << "\np_cr = " << c.p_cr << "\nrho_0 = " << c.rho_0 << "\nrho_1 = " << c.rho_1
        << "\nt_block = " << c.t_block << "\ntau_min = " << c.tau_min << "\n";
    return out.str();
}

}  // namespace cogbeam
