#include "kerrint/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace kerrint {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for key '" + key + "': " + text);
    }
    if (pos != text.size()) {
        throw ConfigError("trailing junk in value for key '" + key + "': " + text);
    }
    return v;
}

}  // namespace

Config parse_config(std::istream& in) {
    std::map<std::string, double> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) {
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        }
        if (kv.count(key)) {
            throw ConfigError("duplicate key '" + key + "'");
        }
        kv[key] = parse_number(key, val);
    }

    auto take = [&kv](const std::string& key) -> double {
        auto it = kv.find(key);
        if (it == kv.end()) throw ConfigError("missing required key '" + key + "'");
        double v = it->second;
        kv.erase(it);
        return v;
    };
    auto take_optional = [&kv](const std::string& key) -> std::optional<double> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        double v = it->second;
        kv.erase(it);
        return v;
    };

    Config cfg;
    cfg.phys.l = take("l");
    cfg.phys.a_width = take("a_width");
    cfg.phys.m = take("m");
    cfg.phys.omega = take("omega");
    cfg.phys.d = take("d");
    cfg.phys.C0 = take("C0");
    cfg.phys.V0 = take("V0");
    cfg.phys.Q_factor = take("Q");
    cfg.phys.f = take_optional("f").value_or(1.0);
    cfg.phys.a_c = take_optional("a_c");
    cfg.phys.chi = take_optional("chi");
    cfg.phys.chi_b = take_optional("chi_b").value_or(0.0);
    cfg.n = take("n");
    cfg.t = take("t");
    if (auto v = take_optional("threshold_much_less")) cfg.thresholds.much_less = *v;
    if (auto v = take_optional("threshold_much_greater")) cfg.thresholds.much_greater = *v;

    if (!kv.empty()) {
        throw ConfigError("unknown key '" + kv.begin()->first + "'");
    }
    if (!cfg.phys.a_c && !cfg.phys.chi) {
        throw ConfigError("missing required key 'chi' (or 'a_c')");
    }
    try {
        cfg.phys.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (cfg.n < 0 || cfg.t < 0) throw ConfigError("n and t must be non-negative");

    if (cfg.phys.a_c && cfg.phys.chi) {
        double from_ac = chi_from_critical_amplitude(*cfg.phys.a_c, cfg.phys.Q_factor);
        double rel = std::abs(*cfg.phys.chi - from_ac) / *cfg.phys.chi;
        if (rel > 0.10) {
            std::ostringstream w;
            w << "chi and a_c disagree by " << rel * 100
              << "% (chi = " << *cfg.phys.chi << ", from a_c: " << from_ac
              << "); using the direct chi";
            cfg.warnings.push_back(w.str());
        }
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_config(in);
}

}  // namespace kerrint
