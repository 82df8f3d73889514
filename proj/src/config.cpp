#include "imcf/config.hpp"

#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

namespace imcf {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& s, double& out) {
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end != s.c_str() && *end == '\0' && std::isfinite(out);
}

bool parse_long(const std::string& s, long& out) {
    char* end = nullptr;
    out = std::strtol(s.c_str(), &end, 10);
    return end != s.c_str() && *end == '\0';
}

}  // namespace

ParseResult parse_config(const std::string& text) {
    ParseResult res;
    RunConfig& c = res.config;
    std::set<std::string> seen;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            res.errors.push_back({lineno, "expected `key = value`, got: " + trim(raw)});
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        auto err = [&](const std::string& msg) { res.errors.push_back({lineno, key + ": " + msg}); };
        if (val.empty()) {
            err("missing value");
            continue;
        }
        if (!seen.insert(key).second) {
            err("duplicate key");
            continue;
        }

        if (key == "command") {
            if (val != "flow" && val != "sphere" && val != "limit" && val != "example" &&
                val != "verify")
                err("must be one of flow|sphere|limit|example|verify");
            else
                c.command = val;
        } else if (key == "n") {
            long v;
            if (!parse_long(val, v)) err("expected an integer");
            else if (v < 2) err("complex dimension must be >= 2");
            else c.n = static_cast<int>(v);
        } else if (key == "grid_points") {
            long v;
            if (!parse_long(val, v)) err("expected an integer");
            else if (v < 33 || v % 2 == 0)
                err("must be an odd integer >= 33 (zeta = 0 must be a node)");
            else c.grid_points = static_cast<int>(v);
        } else if (key == "t_end") {
            double v;
            if (!parse_double(val, v)) err("expected a real number");
            else if (!(v > 0.0)) err("must be > 0");
            else c.t_end = v;
        } else if (key == "initial.kind") {
            if (val == "constant") c.initial_kind = InitialKind::Constant;
            else if (val == "poly") c.initial_kind = InitialKind::Poly;
            else if (val == "kzeta") c.initial_kind = InitialKind::KZeta;
            else err("must be one of constant|poly|kzeta");
        } else if (key == "initial.tau") {
            double v;
            if (!parse_double(val, v)) err("expected a real number");
            else if (!(v > 0.0)) err("must be > 0 (radial profile must stay positive)");
            else c.initial_tau = v;
        } else if (key == "initial.coeffs") {
            std::istringstream cs(val);
            std::string tok;
            std::vector<double> coeffs;
            bool bad = false;
            while (std::getline(cs, tok, ',')) {
                double v;
                if (!parse_double(trim(tok), v)) { bad = true; break; }
                coeffs.push_back(v);
            }
            if (bad || coeffs.empty()) err("expected comma-separated real numbers");
            else c.initial_coeffs = std::move(coeffs);
        } else if (key == "initial.k") {
            double v;
            if (!parse_double(val, v)) err("expected a real number");
            else { c.initial_k = v; }
        } else if (key == "stepper.safety") {
            double v;
            if (!parse_double(val, v)) err("expected a real number");
            else if (!(v > 0.0 && v <= 1.0)) err("must lie in (0, 1]");
            else c.stepper_safety = v;
        } else if (key == "output.dir") {
            c.output_dir = val;
        } else if (key == "seed") {
            long v;
            if (!parse_long(val, v)) err("expected an integer");
            else c.seed = v;
        } else {
            err("unknown key");
        }
    }

    if (c.initial_kind == InitialKind::KZeta && !seen.count("initial.k"))
        res.errors.push_back({0, "initial.k: required when initial.kind = kzeta"});
    if (c.initial_kind == InitialKind::Poly && !seen.count("initial.coeffs"))
        res.errors.push_back({0, "initial.coeffs: required when initial.kind = poly"});
    return res;
}

AxiProfile initial_profile(const RunConfig& cfg, const ZetaGrid& grid) {
    switch (cfg.initial_kind) {
        case InitialKind::Constant:
            return AxiProfile(grid, cfg.initial_tau);
        case InitialKind::Poly:
            return AxiProfile::from_function(grid, [&](double z) {
                double p = 0.0;
                for (auto it = cfg.initial_coeffs.rbegin(); it != cfg.initial_coeffs.rend(); ++it)
                    p = z * (p + *it);
                return cfg.initial_tau + p;
            });
        case InitialKind::KZeta:
            return AxiProfile::from_function(
                grid, [&](double z) { return cfg.initial_tau + cfg.initial_k * z; });
    }
    throw std::logic_error("initial_profile: unreachable");
}

}  // namespace imcf
