#pragma once

#include <string>
#include <vector>

#include "imcf/grid.hpp"

namespace imcf {

enum class InitialKind { Constant, Poly, KZeta };

struct RunConfig {
    std::string command;  // flow|sphere|limit|example|verify (set by the CLI)
    int n = 2;
    int grid_points = 201;
    double t_end = 10.0;
    InitialKind initial_kind = InitialKind::Constant;
    double initial_tau = 2.0;
    std::vector<double> initial_coeffs;
    double initial_k = 0.0;
    double stepper_safety = 0.5;
    std::string output_dir = "out";
    long seed = 12345;
};

struct ConfigError {
    int line;  // 0 for whole-file problems (e.g. missing required field)
    std::string message;
};

struct ParseResult {
    RunConfig config;
    std::vector<ConfigError> errors;
    bool ok() const { return errors.empty(); }
};

/// Parses line-oriented `key = value` text with `#` comments. Collects every
/// error (unknown key, type mismatch, range violation, missing field) with
/// its line number instead of stopping at the first.
ParseResult parse_config(const std::string& text);

/// Initial radial profile described by the config, sampled on the grid:
///   constant: rho = tau
///   poly:     rho = tau + sum_j coeffs[j] zeta^{j+1}
///   kzeta:    rho = tau + k zeta
AxiProfile initial_profile(const RunConfig& cfg, const ZetaGrid& grid);

}  // namespace imcf
