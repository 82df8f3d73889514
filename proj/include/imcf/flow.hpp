#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "imcf/grid.hpp"
#include "imcf/hypersurface.hpp"

namespace imcf {

struct MeanConvexityLost : std::runtime_error {
    int node;
    double time;
    MeanConvexityLost(int node_, double time_)
        : std::runtime_error("mean convexity lost at node " + std::to_string(node_) +
                             ", t = " + std::to_string(time_)),
          node(node_),
          time(time_) {}
};

struct StepFailed : std::runtime_error {
    double time;
    explicit StepFailed(double time_)
        : std::runtime_error("step failed after 10 halvings at t = " + std::to_string(time_)),
          time(time_) {}
};

struct FlowState {
    double t = 0.0;
    AxiProfile rho;
    double dt = 0.0;
    long step_count = 0;
};

struct StepperConfig {
    double safety = 0.5;     // in (0,1]
    double dt_max = 0.01;
    int output_every = 10;
    std::vector<double> snapshot_times;  // in addition to t_end
};

struct DiagnosticsRow {
    double t, dt, area, log_area_residual;
    double rho_min, rho_max, H_min, H_max, v_max;
    double sup_grad_phi2, sup_hess_phi2, sup_third_rho;
    double Q, dev_full_max, dev_horiz_max, theta_factor_mid, f_osc;
    // Terms of the Q evolution identity; retained for q_evolution_check, not
    // part of the series CSV.
    double q_term_geom, q_term_shape;
};

struct DiagnosticsSeries {
    std::vector<DiagnosticsRow> rows;
};

struct Snapshot {
    double t;
    AxiProfile rho;
    AxiProfile f_t;
    GeometryFields fields;
};

struct RunResult {
    DiagnosticsSeries series;
    std::vector<Snapshot> snapshots;
    FlowState final_state;
};

/// Right-hand side of the scalar flow: v/H nodewise. Throws
/// MeanConvexityLost if H <= 0 anywhere.
AxiProfile rhs(const FlowState& state);

/// One classical RK4 step with parabolic CFL
/// dt = min(dt_max, safety h^2 / D_max), D_max = max 4(1-z^2)/(H^2 v sinh^2 rho).
/// Halves dt and retries (up to 10 times) on NaN or loss of mean convexity.
FlowState step(const FlowState& state, const StepperConfig& cfg);

RunResult run(const AxiProfile& rho0, double t_end, const StepperConfig& cfg);

/// Geodesic-sphere radius at time t from the implicit relation
/// cosh(r) sinh^{2n-1}(r) = cosh(r0) sinh^{2n-1}(r0) e^t (safeguarded Newton).
double sphere_ode_solution(double rho0, double t, int n);

struct SphereComparison {
    std::vector<double> t;
    std::vector<double> delta;  // rho2(t) - rho1(t)
    double c_empirical;         // sup delta(t) / delta(0)
};
SphereComparison sphere_comparison(double rho1_0, double rho2_0,
                                   const std::vector<double>& t_grid, int n);

/// Radius of the geodesic sphere with the given area.
double rho_tilde(double area, int n);

/// f_t = rho - rho_tilde(area) nodewise.
AxiProfile limit_profile(const FlowState& state);

/// Least-squares slope of log(y) vs t over [t_begin, t_end].
double fit_decay_rate(const std::vector<double>& t, const std::vector<double>& y,
                      double t_begin, double t_end);

struct QEvolutionReport {
    double max_identity_mismatch;  // |dQ/dt - identity RHS| / max |RHS term|
    double neg_part_exponent;      // fitted decay of max(0, -dQ/dt); 0 if negligible
    bool neg_part_negligible;
};
/// Checks the Q evolution identity dQ/dt = Q/n + geometric term - shape term
/// against centered differences of the recorded Q series, for t >= t_min.
QEvolutionReport q_evolution_check(const DiagnosticsSeries& series, int n,
                                   double t_min = 2.0);

}  // namespace imcf
