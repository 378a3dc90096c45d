#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dfpep/errors.hpp"
#include "dfpep/model.hpp"
#include "dfpep/oracle.hpp"
#include "dfpep/spectrum.hpp"

namespace dfpep::cli {

using nlohmann::json;

namespace detail {

inline void reject_unknown_keys(const json& node, const std::vector<std::string>& allowed,
                                const std::string& where) {
    for (auto it = node.begin(); it != node.end(); ++it) {
        bool ok = false;
        for (const auto& key : allowed) {
            if (it.key() == key) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
        }
    }
}

/// Numbers may be JSON numbers, decimal strings, or exact rationals "a/b"
/// (so c0 = "1/12" carries no decimal rounding beyond one division).
inline double parse_number(const json& v, const std::string& where) {
    if (v.is_number()) {
        return v.get<double>();
    }
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) {
                std::size_t used = 0;
                const double x = std::stod(s, &used);
                if (used != s.size()) {
                    throw std::invalid_argument(s);
                }
                return x;
            }
            std::size_t used_n = 0, used_d = 0;
            const double num = std::stod(s.substr(0, slash), &used_n);
            const std::string den_str = s.substr(slash + 1);
            const double den = std::stod(den_str, &used_d);
            if (used_n != slash || used_d != den_str.size() || den == 0.0) {
                throw std::invalid_argument(s);
            }
            return num / den;
        } catch (const std::exception&) {
            throw ConfigError("cannot parse number \"" + s + "\" in " + where);
        }
    }
    throw ConfigError("expected a number (or rational string) in " + where);
}

inline double number_or(const json& node, const std::string& key, double fallback,
                        const std::string& where) {
    if (!node.contains(key)) {
        return fallback;
    }
    return parse_number(node.at(key), where + "." + key);
}

inline int int_or(const json& node, const std::string& key, int fallback,
                  const std::string& where) {
    if (!node.contains(key)) {
        return fallback;
    }
    const json& v = node.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError("expected an integer at " + where + "." + key);
    }
    return v.get<int>();
}

} // namespace detail

struct StateRange {
    std::vector<StateLabel> states; // expanded, ordered (n, l, D)
};

struct SolverConfig {
    std::optional<double> window_lo;
    std::optional<double> window_hi;
    int grid = 200001;
};

struct WavefunctionConfig {
    StateLabel state{0, 0, 3};
    bool relativistic = true;
    std::optional<double> energy; // solved when absent
    std::string branch = "positive";
    int samples = 2000;
    std::optional<double> r_max;
};

struct ThermoConfig {
    double beta_min = 0.01;
    double beta_max = 10.0;
    int points_per_decade = 200;
    std::vector<double> eta_small = {2.0, 4.0, 6.0};
    std::vector<double> eta_large = {20.0, 30.0, 40.0, 50.0};
    double beta_low = 0.005;
    double beta_high = 50.0;
    double p2_min = -1.0;
    double p2_max = 1.0;
    int p2_points = 41;
    std::vector<std::string> figures; // empty = all supported
};

struct OracleConfig {
    double r_max = 0.0; // 0 = auto
    int n_points = 20000;
    int levels = 4;
    std::vector<double> alpha_scan; // empty = single alpha from the potential
};

struct RunConfig {
    PotentialParams potential = PotentialParams::rational(1.0, 2.0, 1.0, 1.0, 0.1);
    ApproxScheme scheme{};
    bool scheme_greene_aldrich = false; // retie lambda to 4 alpha^2 wherever alpha varies
    PhysicalConstants constants{};
    StateRange states;
    SolverConfig solver;
    WavefunctionConfig wavefunction;
    ThermoConfig thermo;
    OracleConfig oracle;
    std::string out_dir = "out";
};

namespace detail {

inline PotentialParams parse_potential(const json& node) {
    reject_unknown_keys(node, {"p1", "p2", "p3", "q", "alpha", "form"}, "potential");
    const double p1 = number_or(node, "p1", 0.0, "potential");
    const double p2 = number_or(node, "p2", 0.0, "potential");
    const double p3 = number_or(node, "p3", 0.0, "potential");
    const double alpha = number_or(node, "alpha", 1.0, "potential");
    std::string form = "rational";
    if (node.contains("form")) {
        form = node.at("form").get<std::string>();
    }
    if (form == "product") {
        if (node.contains("q")) {
            throw ConfigError("potential.form = product admits no q");
        }
        return PotentialParams::product_form(p1, p2, p3, alpha);
    }
    if (form != "rational") {
        throw ConfigError("potential.form must be \"rational\" or \"product\"");
    }
    const double q = number_or(node, "q", 1.0, "potential");
    try {
        return PotentialParams::rational(p1, p2, p3, q, alpha);
    } catch (const InvalidDomainError& e) {
        throw ConfigError(std::string("potential: ") + e.what());
    }
}

inline ApproxScheme parse_scheme(const json& node) {
    reject_unknown_keys(node, {"c0", "omega", "lambda", "greene_aldrich"}, "scheme");
    if (node.contains("greene_aldrich") && node.at("greene_aldrich").get<bool>()) {
        reject_unknown_keys(node, {"greene_aldrich"}, "scheme (greene_aldrich form)");
        return ApproxScheme{}; // alpha filled by caller
    }
    ApproxScheme s;
    s.c0 = number_or(node, "c0", 1.0 / 12.0, "scheme");
    s.omega = number_or(node, "omega", 0.0, "scheme");
    s.lambda = number_or(node, "lambda", 0.0, "scheme");
    return s;
}

inline PhysicalConstants parse_constants(const json& node) {
    reject_unknown_keys(node, {"mu", "m", "hbar", "kB"}, "constants");
    PhysicalConstants c;
    c.mu = number_or(node, "mu", 1.0, "constants");
    c.m = number_or(node, "m", 1.0, "constants");
    c.hbar = number_or(node, "hbar", 1.0, "constants");
    c.kB = number_or(node, "kB", 1.0, "constants");
    try {
        validate(c);
    } catch (const InvalidDomainError& e) {
        throw ConfigError(std::string("constants: ") + e.what());
    }
    return c;
}

inline std::pair<int, int> parse_span(const json& v, const std::string& where) {
    if (v.is_number_integer()) {
        const int x = v.get<int>();
        return {x, x};
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer()) {
        return {v[0].get<int>(), v[1].get<int>()};
    }
    throw ConfigError("expected an integer or [lo, hi] at " + where);
}

inline StateRange parse_states(const json& node) {
    StateRange out;
    if (node.is_array()) {
        for (const auto& item : node) {
            if (!item.is_array() || item.size() != 3) {
                throw ConfigError("states list entries must be [n, l, D]");
            }
            out.states.push_back(
                StateLabel{item[0].get<int>(), item[1].get<int>(), item[2].get<int>()});
        }
        return out;
    }
    reject_unknown_keys(node, {"n", "l", "D"}, "states");
    const auto [n_lo, n_hi] = node.contains("n") ? parse_span(node.at("n"), "states.n")
                                                 : std::pair<int, int>{0, 0};
    const auto [l_lo, l_hi] = node.contains("l") ? parse_span(node.at("l"), "states.l")
                                                 : std::pair<int, int>{0, 0};
    const auto [d_lo, d_hi] = node.contains("D") ? parse_span(node.at("D"), "states.D")
                                                 : std::pair<int, int>{3, 3};
    for (int n = n_lo; n <= n_hi; ++n) {
        for (int l = l_lo; l <= l_hi; ++l) {
            for (int D = d_lo; D <= d_hi; ++D) {
                out.states.push_back(StateLabel{n, l, D});
            }
        }
    }
    return out;
}

} // namespace detail

/// Parses and schema-checks a config document. Unknown keys anywhere are
/// rejected. Throws ConfigError.
inline RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) {
        throw ConfigError("config root must be a JSON object");
    }
    detail::reject_unknown_keys(doc,
                                {"potential", "scheme", "constants", "states", "solver",
                                 "wavefunction", "thermo", "oracle", "output"},
                                "config");
    RunConfig cfg;
    if (doc.contains("potential")) {
        cfg.potential = detail::parse_potential(doc.at("potential"));
    }
    if (doc.contains("scheme")) {
        const json& node = doc.at("scheme");
        if (node.contains("greene_aldrich") && node.at("greene_aldrich").get<bool>()) {
            cfg.scheme = ApproxScheme::greene_aldrich(cfg.potential.alpha);
            cfg.scheme_greene_aldrich = true;
        } else {
            cfg.scheme = detail::parse_scheme(node);
        }
    }
    if (doc.contains("constants")) {
        cfg.constants = detail::parse_constants(doc.at("constants"));
    }
    if (doc.contains("states")) {
        cfg.states = detail::parse_states(doc.at("states"));
    }
    if (doc.contains("solver")) {
        const json& node = doc.at("solver");
        detail::reject_unknown_keys(node, {"window", "grid"}, "solver");
        if (node.contains("window")) {
            const json& w = node.at("window");
            if (!w.is_array() || w.size() != 2) {
                throw ConfigError("solver.window must be [lo, hi]");
            }
            cfg.solver.window_lo = detail::parse_number(w[0], "solver.window[0]");
            cfg.solver.window_hi = detail::parse_number(w[1], "solver.window[1]");
        }
        cfg.solver.grid = detail::int_or(node, "grid", cfg.solver.grid, "solver");
        if (cfg.solver.grid < 100) {
            throw ConfigError("solver.grid must be >= 100");
        }
    }
    if (doc.contains("wavefunction")) {
        const json& node = doc.at("wavefunction");
        detail::reject_unknown_keys(
            node, {"n", "l", "D", "context", "energy", "branch", "samples", "r_max"},
            "wavefunction");
        cfg.wavefunction.state.n = detail::int_or(node, "n", 0, "wavefunction");
        cfg.wavefunction.state.l = detail::int_or(node, "l", 0, "wavefunction");
        cfg.wavefunction.state.D = detail::int_or(node, "D", 3, "wavefunction");
        if (node.contains("context")) {
            const std::string ctx = node.at("context").get<std::string>();
            if (ctx == "relativistic") {
                cfg.wavefunction.relativistic = true;
            } else if (ctx == "nonrelativistic") {
                cfg.wavefunction.relativistic = false;
            } else {
                throw ConfigError("wavefunction.context must be relativistic|nonrelativistic");
            }
        }
        if (node.contains("energy")) {
            cfg.wavefunction.energy = detail::parse_number(node.at("energy"),
                                                           "wavefunction.energy");
        }
        if (node.contains("branch")) {
            cfg.wavefunction.branch = node.at("branch").get<std::string>();
            if (cfg.wavefunction.branch != "positive" && cfg.wavefunction.branch != "negative") {
                throw ConfigError("wavefunction.branch must be positive|negative");
            }
        }
        cfg.wavefunction.samples = detail::int_or(node, "samples", 2000, "wavefunction");
        if (node.contains("r_max")) {
            cfg.wavefunction.r_max = detail::parse_number(node.at("r_max"),
                                                          "wavefunction.r_max");
        }
    }
    if (doc.contains("thermo")) {
        const json& node = doc.at("thermo");
        detail::reject_unknown_keys(node,
                                    {"beta_min", "beta_max", "points_per_decade", "eta_small",
                                     "eta_large", "beta_low", "beta_high", "p2_min", "p2_max",
                                     "p2_points", "figures"},
                                    "thermo");
        auto& t = cfg.thermo;
        t.beta_min = detail::number_or(node, "beta_min", t.beta_min, "thermo");
        t.beta_max = detail::number_or(node, "beta_max", t.beta_max, "thermo");
        t.points_per_decade =
            detail::int_or(node, "points_per_decade", t.points_per_decade, "thermo");
        t.beta_low = detail::number_or(node, "beta_low", t.beta_low, "thermo");
        t.beta_high = detail::number_or(node, "beta_high", t.beta_high, "thermo");
        t.p2_min = detail::number_or(node, "p2_min", t.p2_min, "thermo");
        t.p2_max = detail::number_or(node, "p2_max", t.p2_max, "thermo");
        t.p2_points = detail::int_or(node, "p2_points", t.p2_points, "thermo");
        if (node.contains("eta_small")) {
            t.eta_small.clear();
            for (const auto& v : node.at("eta_small")) {
                t.eta_small.push_back(detail::parse_number(v, "thermo.eta_small"));
            }
        }
        if (node.contains("eta_large")) {
            t.eta_large.clear();
            for (const auto& v : node.at("eta_large")) {
                t.eta_large.push_back(detail::parse_number(v, "thermo.eta_large"));
            }
        }
        if (node.contains("figures")) {
            for (const auto& v : node.at("figures")) {
                t.figures.push_back(v.get<std::string>());
            }
        }
        if (!(t.beta_min > 0.0) || !(t.beta_max > t.beta_min)) {
            throw ConfigError("thermo: need 0 < beta_min < beta_max");
        }
    }
    if (doc.contains("oracle")) {
        const json& node = doc.at("oracle");
        detail::reject_unknown_keys(node, {"r_max", "n_points", "levels", "alpha_scan"},
                                    "oracle");
        cfg.oracle.r_max = detail::number_or(node, "r_max", 0.0, "oracle");
        cfg.oracle.n_points = detail::int_or(node, "n_points", cfg.oracle.n_points, "oracle");
        cfg.oracle.levels = detail::int_or(node, "levels", cfg.oracle.levels, "oracle");
        if (node.contains("alpha_scan")) {
            for (const auto& v : node.at("alpha_scan")) {
                cfg.oracle.alpha_scan.push_back(detail::parse_number(v, "oracle.alpha_scan"));
            }
        }
    }
    if (doc.contains("output")) {
        const json& node = doc.at("output");
        detail::reject_unknown_keys(node, {"dir"}, "output");
        if (node.contains("dir")) {
            cfg.out_dir = node.at("dir").get<std::string>();
        }
    }
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

} // namespace dfpep::cli
