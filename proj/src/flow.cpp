#include "imcf/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "imcf/ambient.hpp"
#include "imcf/sphere_calculus.hpp"

namespace imcf {

namespace {

struct RhsResult {
    AxiProfile speed;  // v/H
    AxiProfile v;
    AxiProfile H;
    double D_max;  // explicit-stability scale of the linearized diffusion
};

RhsResult evaluate_rhs(const AxiProfile& rho, double t) {
    const ZetaGrid& g = *rho.grid;
    const auto d = differentiate(rho);
    RhsResult out{AxiProfile(g), AxiProfile(g), AxiProfile(g), 0.0};
    for (int i = 0; i < g.num_nodes; ++i) {
        if (!(rho[i] > 0.0)) throw MeanConvexityLost(i, t);
        const double z = g.nodes[i];
        const double sh = std::sinh(rho[i]), ch = std::cosh(rho[i]);
        const double p1 = d.d1[i] / sh;
        const double p2 = d.d2[i] / sh - ch * d.d1[i] * d.d1[i] / (sh * sh);
        const double omz = 1.0 - z * z;
        const double phi_eta2 = 4.0 * omz * p1 * p1;
        const double phi_etaeta = 4.0 * omz * p2 - 4.0 * z * p1;
        const double v2 = 1.0 + phi_eta2;
        const double v = std::sqrt(v2);
        const double lap = 4.0 * omz * p2 + (4.0 * (g.n - 2) - 4.0 * g.n * z) * p1;
        const double contraction = lap - phi_eta2 * phi_etaeta / v2;
        const double hatH = (2.0 * g.n * ch * ch - 1.0) / (sh * ch);
        const double H = -contraction / (v * sh) + hatH / v;
        if (!(H > 0.0) || !std::isfinite(H)) throw MeanConvexityLost(i, t);
        out.speed[i] = v / H;
        out.v[i] = v;
        out.H[i] = H;
        out.D_max = std::max(out.D_max, 4.0 * omz / (H * H * v * sh * sh));
    }
    return out;
}

AxiProfile axpy(const AxiProfile& x, double a, const AxiProfile& y) {
    AxiProfile r = x;
    for (int i = 0; i < r.size(); ++i) r[i] += a * y[i];
    return r;
}

// One RK4 step of the given size; throws on NaN or mean-convexity loss.
AxiProfile rk4_advance(const AxiProfile& rho, double t, double dt) {
    const auto k1 = evaluate_rhs(rho, t).speed;
    const auto k2 = evaluate_rhs(axpy(rho, 0.5 * dt, k1), t).speed;
    const auto k3 = evaluate_rhs(axpy(rho, 0.5 * dt, k2), t).speed;
    const auto k4 = evaluate_rhs(axpy(rho, dt, k3), t).speed;
    AxiProfile next = rho;
    for (int i = 0; i < next.size(); ++i) {
        next[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (!std::isfinite(next[i])) throw std::runtime_error("rk4: NaN");
    }
    (void)evaluate_rhs(next, t + dt);  // reject steps that leave mean convexity
    return next;
}

}  // namespace

AxiProfile rhs(const FlowState& state) { return evaluate_rhs(state.rho, state.t).speed; }

FlowState step(const FlowState& state, const StepperConfig& cfg) {
    const auto r = evaluate_rhs(state.rho, state.t);
    const double h = state.rho.grid->h;
    double dt = std::min(cfg.dt_max, cfg.safety * h * h / r.D_max);
    for (int attempt = 0; attempt < 10; ++attempt) {
        try {
            AxiProfile next = rk4_advance(state.rho, state.t, dt);
            return FlowState{state.t + dt, std::move(next), dt, state.step_count + 1};
        } catch (const std::exception&) {
            dt *= 0.5;
        }
    }
    throw StepFailed(state.t);
}

namespace {

DiagnosticsRow make_row(const FlowState& state, double log_area0) {
    const ZetaGrid& g = *state.rho.grid;
    const auto fields = compute_geometry(state.rho);
    const auto d = differentiate(state.rho);
    const auto d3 = differentiate(d.d2);

    double sup_grad = 0.0, sup_hess = 0.0;
    for (int i = 0; i < g.num_nodes; ++i) {
        const double sh = std::sinh(state.rho[i]), ch = std::cosh(state.rho[i]);
        const double p1 = d.d1[i] / sh;
        const double p2 = d.d2[i] / sh - ch * d.d1[i] * d.d1[i] / (sh * sh);
        const double z = g.nodes[i];
        const double omz = 1.0 - z * z;
        const double phi_etaeta = 4.0 * omz * p2 - 4.0 * z * p1;
        sup_grad = std::max(sup_grad, 4.0 * omz * p1 * p1);
        sup_hess = std::max(sup_hess,
                            phi_etaeta * phi_etaeta +
                                (4.0 * (1.0 + z) * (1.0 + z) +
                                 4.0 * (2 * g.n - 3) * (1.0 - z) * (1.0 - z)) * p1 * p1);
    }

    const double rt = rho_tilde(fields.area, g.n);
    double f_min = std::numeric_limits<double>::infinity(), f_max = -f_min;
    for (int i = 0; i < g.num_nodes; ++i) {
        const double f = state.rho[i] - rt;
        f_min = std::min(f_min, f);
        f_max = std::max(f_max, f);
    }

    // Integral terms of the Q evolution identity.
    AxiProfile geom(g), shape(g);
    for (int i = 0; i < g.num_nodes; ++i) {
        const double sh = std::sinh(state.rho[i]), ch = std::cosh(state.rho[i]);
        const double coeff = (2 * g.n - 1) / (sh * sh) - 1.0 / (ch * ch);
        geom[i] = coeff * fields.v[i] / fields.H[i] * fields.area_density[i];
        shape[i] = (fields.A2[i] - 2.0 * (g.n + 1)) / fields.H[i] * fields.area_density[i];
    }
    const double vol_pow = std::pow(fields.area, -1.0 + 1.0 / g.n);

    DiagnosticsRow row{};
    row.t = state.t;
    row.dt = state.dt;
    row.area = fields.area;
    row.log_area_residual = std::log(fields.area) - log_area0 - state.t;
    row.rho_min = state.rho.min();
    row.rho_max = state.rho.max();
    row.H_min = fields.H.min();
    row.H_max = fields.H.max();
    row.v_max = fields.v.max();
    row.sup_grad_phi2 = sup_grad;
    row.sup_hess_phi2 = sup_hess;
    row.sup_third_rho = d3.d1.max_abs();
    row.Q = fields.Q;
    row.dev_full_max = fields.dev_full.max();
    row.dev_horiz_max = fields.dev_horiz.max();
    row.theta_factor_mid = fields.theta_factor[(g.num_nodes - 1) / 2];
    row.f_osc = f_max - f_min;
    row.q_term_geom = vol_pow * integrate_sphere(geom);
    row.q_term_shape = vol_pow * integrate_sphere(shape);
    return row;
}

}  // namespace

RunResult run(const AxiProfile& rho0, double t_end, const StepperConfig& cfg) {
    FlowState state{0.0, rho0, 0.0, 0};
    (void)evaluate_rhs(rho0, 0.0);  // validates rho > 0 and H > 0 up front

    const double area0 = compute_geometry(rho0).area;
    const double log_area0 = std::log(area0);

    std::vector<double> events = cfg.snapshot_times;
    events.push_back(t_end);
    std::sort(events.begin(), events.end());
    events.erase(std::remove_if(events.begin(), events.end(),
                                [t_end](double s) { return s <= 0.0 || s > t_end; }),
                 events.end());

    RunResult result;
    result.series.rows.push_back(make_row(state, log_area0));

    std::size_t next_event = 0;
    while (state.t < t_end - 1e-12) {
        StepperConfig capped = cfg;
        if (next_event < events.size())
            capped.dt_max = std::min(cfg.dt_max, events[next_event] - state.t);
        state = step(state, capped);

        const bool at_event =
            next_event < events.size() && state.t >= events[next_event] - 1e-12;
        if (at_event || state.step_count % cfg.output_every == 0)
            result.series.rows.push_back(make_row(state, log_area0));
        if (at_event) {
            Snapshot snap{state.t, state.rho, limit_profile(state), compute_geometry(state.rho)};
            result.snapshots.push_back(std::move(snap));
            ++next_event;
        }
    }
    result.final_state = std::move(state);
    return result;
}

namespace {

// Solves log cosh(r) + (2n-1) log sinh(r) = target on (0, inf); strictly
// increasing, so Newton with a bisection safeguard.
double solve_radius(double target, int n) {
    double lo = 1e-12, hi = 2.0;
    auto val = [&](double r) { return std::log(std::cosh(r)) + (2 * n - 1) * std::log(std::sinh(r)); };
    while (val(hi) < target) hi *= 2.0;
    double r = std::clamp(target / (2.0 * n), lo, hi);  // large-radius asymptote
    for (int it = 0; it < 200; ++it) {
        const double f = val(r) - target;
        if (f > 0.0) hi = r; else lo = r;
        const double fp = std::tanh(r) + (2 * n - 1) / std::tanh(r);
        double next = r - f / fp;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - r) < 1e-15 * std::max(1.0, r) && std::fabs(f) < 1e-12) return next;
        r = next;
    }
    return r;
}

}  // namespace

double sphere_ode_solution(double rho0, double t, int n) {
    if (rho0 <= 0.0) throw std::domain_error("sphere_ode_solution: rho0 must be positive");
    if (t < 0.0) throw std::domain_error("sphere_ode_solution: t must be nonnegative");
    const double target =
        std::log(std::cosh(rho0)) + (2 * n - 1) * std::log(std::sinh(rho0)) + t;
    return solve_radius(target, n);
}

SphereComparison sphere_comparison(double rho1_0, double rho2_0,
                                   const std::vector<double>& t_grid, int n) {
    if (!(rho1_0 > 0.0) || rho2_0 < rho1_0)
        throw std::domain_error("sphere_comparison: need 0 < rho1_0 <= rho2_0");
    SphereComparison out;
    out.t = t_grid;
    out.c_empirical = 0.0;
    const double delta0 = rho2_0 - rho1_0;
    for (double t : t_grid) {
        const double d = sphere_ode_solution(rho2_0, t, n) - sphere_ode_solution(rho1_0, t, n);
        out.delta.push_back(d);
        if (delta0 > 0.0) out.c_empirical = std::max(out.c_empirical, d / delta0);
    }
    return out;
}

double rho_tilde(double area, int n) {
    if (!(area > 0.0)) throw std::domain_error("rho_tilde: area must be positive");
    return solve_radius(std::log(area / sphere_volume(n)), n);
}

AxiProfile limit_profile(const FlowState& state) {
    const auto fields = area_and_Q(state.rho);
    const double rt = rho_tilde(fields.area, state.rho.grid->n);
    AxiProfile f = state.rho;
    for (int i = 0; i < f.size(); ++i) f[i] -= rt;
    return f;
}

double fit_decay_rate(const std::vector<double>& t, const std::vector<double>& y,
                      double t_begin, double t_end) {
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    int m = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_begin || t[i] > t_end) continue;
        if (!(y[i] > 0.0)) throw std::domain_error("fit_decay_rate: nonpositive sample");
        const double ly = std::log(y[i]);
        st += t[i];
        sy += ly;
        stt += t[i] * t[i];
        sty += t[i] * ly;
        ++m;
    }
    if (m < 2) throw std::domain_error("fit_decay_rate: not enough samples in window");
    return (m * sty - st * sy) / (m * stt - st * st);
}

QEvolutionReport q_evolution_check(const DiagnosticsSeries& series, int n, double t_min) {
    const auto& rows = series.rows;
    if (rows.size() < 5) throw std::domain_error("q_evolution_check: insufficient samples");

    double scale = 0.0;
    for (const auto& r : rows) {
        if (r.t < t_min) continue;
        scale = std::max(scale, std::fabs(r.Q / n) + std::fabs(r.q_term_geom) +
                                    std::fabs(r.q_term_shape));
    }

    QEvolutionReport rep{0.0, 0.0, true};
    std::vector<double> tneg, yneg;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        if (rows[i].t < t_min) continue;
        const double dqdt = (rows[i + 1].Q - rows[i - 1].Q) / (rows[i + 1].t - rows[i - 1].t);
        const double rhs_val = rows[i].Q / n + rows[i].q_term_geom - rows[i].q_term_shape;
        rep.max_identity_mismatch =
            std::max(rep.max_identity_mismatch, std::fabs(dqdt - rhs_val) / scale);
        const double neg = std::max(0.0, -dqdt);
        if (neg > 1e-4 * scale) {
            tneg.push_back(rows[i].t);
            yneg.push_back(neg);
        }
    }
    if (tneg.size() >= 5 && tneg.back() - tneg.front() > 2.0) {
        rep.neg_part_negligible = false;
        rep.neg_part_exponent = fit_decay_rate(tneg, yneg, tneg.front(), tneg.back());
    }
    return rep;
}

}  // namespace imcf
