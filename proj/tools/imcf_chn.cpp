// imcf-chn: batch front end for the CH^n inverse-mean-curvature-flow toolkit.
// Exit codes: 0 success, 1 config/verify failure, 2 monitor failure, 3 solver abort.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "imcf/ambient.hpp"
#include "imcf/config.hpp"
#include "imcf/flow.hpp"
#include "imcf/hypersurface.hpp"
#include "imcf/limit.hpp"
#include "imcf/sphere_calculus.hpp"

namespace {

using namespace imcf;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt3(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", x);
    return buf;
}

int worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("IMCF_THREADS")) {
        const long v = std::atol(env);
        if (v > 0 && v < static_cast<long>(hw)) hw = static_cast<unsigned>(v);
    }
    return static_cast<int>(hw);
}

template <class F>
void parallel_for(int m, F&& f) {
    const int w = std::min(worker_count(), m);
    if (w <= 1) {
        for (int i = 0; i < m; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < w; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < m; i = next.fetch_add(1)) f(i);
        });
    for (auto& th : pool) th.join();
}

void write_series_csv(const std::filesystem::path& path, const DiagnosticsSeries& series) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "t,dt,area,log_area_residual,rho_min,rho_max,H_min,H_max,v_max,"
           "sup_grad_phi2,sup_hess_phi2,sup_third_rho,Q,dev_full_max,dev_horiz_max,"
           "theta_factor_mid,f_osc\n";
    for (const auto& r : series.rows) {
        const double vals[] = {r.t, r.dt, r.area, r.log_area_residual, r.rho_min,
                               r.rho_max, r.H_min, r.H_max, r.v_max, r.sup_grad_phi2,
                               r.sup_hess_phi2, r.sup_third_rho, r.Q, r.dev_full_max,
                               r.dev_horiz_max, r.theta_factor_mid, r.f_osc};
        for (int i = 0; i < 17; ++i) out << (i ? "," : "") << fmt17(vals[i]);
        out << "\n";
    }
}

void write_snapshot_csv(const std::filesystem::path& path, const Snapshot& snap) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "zeta,rho,v,H,hatH,A2,dev_full,dev_horiz,theta_factor,f_t\n";
    const ZetaGrid& g = *snap.rho.grid;
    for (int i = 0; i < g.num_nodes; ++i) {
        const double vals[] = {g.nodes[i],          snap.rho[i],
                               snap.fields.v[i],    snap.fields.H[i],
                               snap.fields.hatH[i], snap.fields.A2[i],
                               snap.fields.dev_full[i], snap.fields.dev_horiz[i],
                               snap.fields.theta_factor[i], snap.f_t[i]};
        for (int j = 0; j < 10; ++j) out << (j ? "," : "") << fmt17(vals[j]);
        out << "\n";
    }
}

void write_qk_csv(const std::filesystem::path& path, const QkStudy& study) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "k,qk_paper,qk_quad_paper_density,qk_quad_derived_density\n";
    for (const auto& r : study.rows)
        out << fmt17(r.k) << "," << fmt17(r.qk_paper) << ","
            << fmt17(r.qk_quad_paper_density) << "," << fmt17(r.qk_quad_derived_density)
            << "\n";
    out << "exponent," << fmt17(study.exponent_paper) << ","
        << fmt17(study.exponent_paper_density) << ","
        << fmt17(study.exponent_derived_density) << "\n";
}

std::string snapshot_name(double t) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "snapshot_t%g.csv", t);
    return buf;
}

std::vector<double> geometric_snapshot_times(double t_end) {
    std::vector<double> out;
    for (double t = 1.0; t < t_end; t *= 2.0) out.push_back(t);
    return out;
}

// Shared flow monitors: volume law, mean convexity, star-shapedness.
struct MonitorOutcome {
    bool ok = true;
    std::vector<std::string> lines;
    void record(const std::string& name, bool pass, double value) {
        ok = ok && pass;
        lines.push_back(std::string(pass ? "pass " : "FLAG ") + name + " = " + fmt3(value));
    }
};

MonitorOutcome flow_monitors(const DiagnosticsSeries& series) {
    MonitorOutcome m;
    double max_vol = 0.0, min_H = std::numeric_limits<double>::infinity(), max_v = 0.0;
    for (const auto& r : series.rows) {
        max_vol = std::max(max_vol, std::fabs(r.log_area_residual));
        min_H = std::min(min_H, r.H_min);
        max_v = std::max(max_v, r.v_max);
    }
    const double v0 = series.rows.front().v_max;
    m.record("max |log area residual| (<= 1e-4)", max_vol <= 1e-4, max_vol);
    m.record("min H over run (> 0)", min_H > 0.0, min_H);
    m.record("v_max excess over initial (<= 1e-6)", max_v <= v0 + 1e-6, max_v - v0);
    return m;
}

double fitted_exponent(const DiagnosticsSeries& series, double t0, double t1,
                       double (*pick)(const DiagnosticsRow&)) {
    std::vector<double> t, y;
    for (const auto& r : series.rows) {
        t.push_back(r.t);
        y.push_back(pick(r));
    }
    return fit_decay_rate(t, y, t0, t1);
}

int run_flow_like(const RunConfig& cfg, bool limit_mode) {
    const ZetaGrid grid(cfg.n, cfg.grid_points);
    const AxiProfile rho0 = initial_profile(cfg, grid);
    std::filesystem::create_directories(cfg.output_dir);

    StepperConfig sc;
    sc.safety = cfg.stepper_safety;
    if (limit_mode) {
        for (double t = 1.0; t < cfg.t_end; t += 1.0) sc.snapshot_times.push_back(t);
    } else {
        sc.snapshot_times = geometric_snapshot_times(cfg.t_end);
    }

    RunResult result;
    try {
        result = run(rho0, cfg.t_end, sc);
    } catch (const MeanConvexityLost& e) {
        std::cerr << "solver abort: " << e.what() << "\n";
        return 3;
    } catch (const StepFailed& e) {
        std::cerr << "solver abort: " << e.what() << "\n";
        return 3;
    }

    const std::filesystem::path dir(cfg.output_dir);
    write_series_csv(dir / "series.csv", result.series);
    for (const auto& snap : result.snapshots)
        write_snapshot_csv(dir / snapshot_name(snap.t), snap);

    std::ofstream sum(dir / "summary.txt");
    sum << "command: " << (limit_mode ? "limit" : "flow") << "\n";
    sum << "n = " << cfg.n << ", N = " << cfg.grid_points << ", t_end = " << cfg.t_end
        << ", steps = " << result.final_state.step_count << "\n\n";

    const MonitorOutcome monitors = flow_monitors(result.series);
    for (const auto& line : monitors.lines) sum << line << "\n";

    const double t1 = cfg.t_end, t0 = 0.5 * cfg.t_end;
    const int n = cfg.n;
    sum << "\nfitted exponents over t in [" << t0 << ", " << t1 << "]:\n";
    try {
        sum << "  sup|grad phi|^2 : "
            << fmt3(fitted_exponent(result.series, t0, t1,
                                    [](const DiagnosticsRow& r) { return r.sup_grad_phi2; }))
            << "  (expected about -1/n)\n";
        std::vector<double> t, hdev;
        for (const auto& r : result.series.rows) {
            t.push_back(r.t);
            hdev.push_back(std::max(std::fabs(r.H_min - 2.0 * n), std::fabs(r.H_max - 2.0 * n)));
        }
        sum << "  sup|H - 2n|     : " << fmt3(fit_decay_rate(t, hdev, t0, t1))
            << "  (expected about -1/n)\n";
        sum << "  dev_full_max    : "
            << fmt3(fitted_exponent(result.series, t0, t1,
                                    [](const DiagnosticsRow& r) { return r.dev_full_max; }))
            << "\n";
        sum << "  dev_horiz_max   : "
            << fmt3(fitted_exponent(result.series, t0, t1,
                                    [](const DiagnosticsRow& r) { return r.dev_horiz_max; }))
            << "\n";
    } catch (const std::exception& e) {
        sum << "  (fit unavailable: " << e.what() << ")\n";
    }

    if (limit_mode && result.snapshots.size() >= 3) {
        // Cauchy decay of f_t and the limit conformal factor.
        std::vector<double> ct, cy;
        const auto& snaps = result.snapshots;
        for (std::size_t i = 0; i + 2 < snaps.size(); ++i) {
            double d = 0.0;
            for (int j = 0; j < snaps[i].f_t.size(); ++j)
                d = std::max(d, std::fabs(snaps[i + 2].f_t[j] - snaps[i].f_t[j]));
            ct.push_back(snaps[i].t);
            cy.push_back(d);
        }
        sum << "\nlimit extraction:\n";
        try {
            sum << "  ||f_{t+2} - f_t||_inf exponent : "
                << fmt3(fit_decay_rate(ct, cy, t0, t1)) << "\n";
        } catch (const std::exception& e) {
            sum << "  (Cauchy fit unavailable: " << e.what() << ")\n";
        }
        const ConformalFactor f_inf{limit_profile(result.final_state)};
        sum << "  webster_flatness_residual(f_end) = " << fmt3(webster_flatness_residual(f_inf))
            << "\n";
        sum << "  lq_functional(f_end) = " << fmt3(lq_functional(f_inf)) << "\n";
    }

    sum << "\nresult: " << (monitors.ok ? "all monitors pass" : "monitor failure") << "\n";
    return monitors.ok ? 0 : 2;
}

int cmd_flow(const RunConfig& cfg) { return run_flow_like(cfg, false); }
int cmd_limit(const RunConfig& cfg) { return run_flow_like(cfg, true); }

int cmd_sphere(const RunConfig& cfg) {
    const ZetaGrid grid(cfg.n, cfg.grid_points);
    const AxiProfile rho0(grid, cfg.initial_tau);
    std::filesystem::create_directories(cfg.output_dir);

    StepperConfig sc;
    sc.safety = cfg.stepper_safety;
    RunResult result;
    try {
        result = run(rho0, cfg.t_end, sc);
    } catch (const std::exception& e) {
        std::cerr << "solver abort: " << e.what() << "\n";
        return 3;
    }

    const std::filesystem::path dir(cfg.output_dir);
    write_series_csv(dir / "series.csv", result.series);

    double max_res = 0.0;
    for (const auto& r : result.series.rows) {
        const double exact = sphere_ode_solution(cfg.initial_tau, r.t, cfg.n);
        max_res = std::max(max_res, std::max(std::fabs(r.rho_min - exact),
                                             std::fabs(r.rho_max - exact)));
    }

    std::vector<double> tg;
    for (double t = 0.0; t <= 30.0; t += 0.5) tg.push_back(t);
    const auto comp = sphere_comparison(cfg.initial_tau, cfg.initial_tau + 0.5, tg, cfg.n);

    std::ofstream sum(dir / "summary.txt");
    sum << "command: sphere\n";
    sum << "n = " << cfg.n << ", rho0 = " << cfg.initial_tau << ", t_end = " << cfg.t_end
        << "\n";
    const bool ok = max_res <= 1e-6;
    sum << (ok ? "pass " : "FLAG ")
        << "max |rho_num - rho_implicit| (<= 1e-6) = " << fmt3(max_res) << "\n";
    sum << "comparison with the sphere of radius rho0 + 0.5 on t in [0,30]: "
        << "sup delta/delta(0) = " << fmt3(comp.c_empirical) << "\n";
    sum << "result: " << (ok ? "all monitors pass" : "monitor failure") << "\n";
    return ok ? 0 : 2;
}

int cmd_example(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.output_dir);
    std::vector<double> k_list = cfg.initial_coeffs;
    if (k_list.empty()) k_list = {1, 2, 4, 8, 16, 32, 64};
    const QkStudy study = qk_study(k_list);

    const std::filesystem::path dir(cfg.output_dir);
    write_qk_csv(dir / "qk_study.csv", study);

    const ZetaGrid grid(2, cfg.grid_points);
    const std::vector<double> fk_ks = {0.5, 1, 2, 4, 8};
    std::vector<double> fk_res(fk_ks.size());
    parallel_for(static_cast<int>(fk_ks.size()),
                 [&](int i) { fk_res[i] = fk_identity_residual(fk_ks[i], grid); });

    double ratio_min = std::numeric_limits<double>::infinity(), ratio_max = 0.0;
    bool monotone = true;
    for (std::size_t i = 0; i < study.rows.size(); ++i) {
        const double r = study.rows[i].qk_paper / study.rows[i].qk_quad_paper_density;
        ratio_min = std::min(ratio_min, r);
        ratio_max = std::max(ratio_max, r);
        if (i > 0 && study.rows[i].k >= 4.0 &&
            study.rows[i].qk_quad_paper_density <= study.rows[i - 1].qk_quad_paper_density)
            monotone = false;
    }
    const double bessel_ratio = bessel_I(1, 100.0) * std::sqrt(2.0 * M_PI * 100.0) /
                                std::exp(100.0);

    std::ofstream sum(dir / "summary.txt");
    sum << "command: example (f_k = k zeta family, n = 2)\n\n";
    bool ok = true;
    auto rec = [&](const std::string& name, bool pass, double value) {
        ok = ok && pass;
        sum << (pass ? "pass " : "FLAG ") << name << " = " << fmt3(value) << "\n";
    };
    double fk_max = 0.0;
    for (std::size_t i = 0; i < fk_ks.size(); ++i) fk_max = std::max(fk_max, fk_res[i]);
    rec("max closed-form identity residual, k in {0.5,1,2,4,8} (<= 1e-7)", fk_max <= 1e-7,
        fk_max);
    rec("closed form / quadrature ratio spread (<= 1%)",
        ratio_max / ratio_min - 1.0 <= 0.01, ratio_max / ratio_min - 1.0);
    rec("asymptotic ratio I_1(100) sqrt(2 pi 100)/e^100 (within 1%)",
        std::fabs(bessel_ratio - 1.0) <= 0.01, bessel_ratio);
    rec("columns monotone increasing for k >= 4", monotone, monotone ? 1.0 : 0.0);
    sum << "\nfitted growth exponents of Q_k vs k:\n";
    sum << "  closed form (gamma = 1)      : " << fmt3(study.exponent_paper) << "\n";
    sum << "  quadrature, density sqrt(1-z^2): " << fmt3(study.exponent_paper_density)
        << "  (expected 1/4)\n";
    sum << "  quadrature, derived density  : " << fmt3(study.exponent_derived_density)
        << "\n";
    sum << "\nnote on the density: the sqrt(1-z^2) weight reproduces the k^{1/4} growth\n"
           "rate, while the Monte-Carlo-validated reduction density for n = 2 is\n"
           "constant in zeta and yields a faster growth (about k^{1/2}). Both columns\n"
           "are reported; the qualitative conclusion Q_k -> infinity holds for either\n"
           "choice, so the discrepancy only affects the literal exponent.\n";
    sum << "\nresult: " << (ok ? "all monitors pass" : "monitor failure") << "\n";
    return ok ? 0 : 2;
}

// ---------------------------------------------------------------------------
// verify: the cross-module property battery, deterministic in the seed.

struct Verifier {
    std::ostringstream out;
    bool all_ok = true;
    void check(const std::string& name, bool ok, double residual) {
        all_ok = all_ok && ok;
        out << (ok ? "[PASS] " : "[FAIL] ") << name << "  (measured " << fmt3(residual)
            << ")\n";
    }
};

AmbientVector random_vector(std::mt19937_64& rng, int dim) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c(dim);
    for (auto& x : c) x = u(rng);
    return AmbientVector(std::move(c));
}

void verify_ambient(Verifier& v, std::mt19937_64& rng) {
    for (int n : {2, 3}) {
        double lo = 0.0, hi = -10.0;
        for (int s = 0; s < 1000; ++s) {
            const double K =
                sectional_curvature(random_vector(rng, 2 * n), random_vector(rng, 2 * n));
            lo = std::min(lo, K + 4.0);
            hi = std::max(hi, K + 1.0);
        }
        v.check("sectional curvature in [-4,-1], 1000 random planes, n=" + std::to_string(n),
                lo >= -1e-12 && hi <= 1e-12, std::max(-lo, hi));
    }
    double sym = 0.0, bianchi = 0.0;
    for (int s = 0; s < 200; ++s) {
        const auto x = random_vector(rng, 4), y = random_vector(rng, 4),
                   z = random_vector(rng, 4), w = random_vector(rng, 4);
        sym = std::max(sym, std::fabs(chn_curvature(x, y, z, w) - chn_curvature(z, w, x, y)));
        bianchi = std::max(bianchi, std::fabs(chn_curvature(x, y, z, w) +
                                              chn_curvature(y, z, x, w) +
                                              chn_curvature(z, x, y, w)));
    }
    v.check("curvature pair symmetry <= 1e-12", sym <= 1e-12, sym);
    v.check("first Bianchi identity <= 1e-12", bianchi <= 1e-12, bianchi);
    double er = 0.0;
    for (int n = 2; n <= 5; ++n) er = std::max(er, einstein_residual(n));
    v.check("Einstein residual, n = 2..5 <= 1e-12", er <= 1e-12, er);

    bool mono = true;
    double prev = std::numeric_limits<double>::infinity(), excess = 1.0;
    for (double rho = 0.2; rho <= 6.0; rho += 0.2) {
        const double h = hat_H(rho, 2);
        mono = mono && h < prev;
        prev = h;
        excess = std::min(excess, h - 4.0);
    }
    v.check("hat_H strictly decreasing with hat_H > 2n", mono && excess > 0.0, excess);

    // Small-radius Berger limit of the Bergman metric: the sphere block over
    // sinh^2(rho) approaches the round metric.
    const double rho = 1e-3, eta = 0.6;
    const auto gb = bergman_components({rho, eta, 0.0, 0.0});
    const double s2 = std::sinh(rho) * std::sinh(rho);
    const double c = std::cos(eta), s = std::sin(eta);
    double dev = std::max({std::fabs(gb[1][1] / s2 - 1.0),
                           std::fabs(gb[2][2] / s2 - c * c),
                           std::fabs(gb[3][3] / s2 - s * s), std::fabs(gb[2][3] / s2)});
    v.check("Bergman sphere block -> round metric as rho -> 0 (<= 1e-5)", dev <= 1e-5, dev);
}

void verify_sphere_calculus(Verifier& v) {
    std::vector<std::pair<std::string, double (*)(double)>> profiles = {
        {"zeta", [](double z) { return z; }},
        {"zeta^2", [](double z) { return z * z; }},
        {"exp(zeta)", [](double z) { return std::exp(z); }},
        {"sin(3 zeta)", [](double z) { return std::sin(3.0 * z); }}};

    for (int n : {2, 3}) {
        // N = 1601: both the stencil and the Simpson error are O(h^4) and the
        // sin(3z) profile needs the headroom to reach 1e-8.
        const ZetaGrid g(n, 1601);
        double div = 0.0;
        for (const auto& pr : profiles) {
            const auto u = AxiProfile::from_function(g, pr.second);
            div = std::max(div, std::fabs(integrate_sphere(laplacian_sigma(u))));
        }
        v.check("divergence theorem, 4 profiles, n=" + std::to_string(n) + " (<= 1e-8)",
                div <= 1e-8, div);
    }

    {
        const ZetaGrid g(2, 201);
        const auto u = AxiProfile::from_function(g, [](double z) { return std::exp(z); });
        const auto lap = laplacian_sigma(u);
        const double e = std::exp(1.0);
        const double r = std::max(std::fabs(lap[g.num_nodes - 1] - (4.0 * (2 - 2) - 8.0) * e),
                                  std::fabs(lap[0] - (8.0 * 2 - 8.0) / e));
        v.check("endpoint regular limits of the Laplacian (<= 1e-6)",
                std::isfinite(r) && r <= 1e-6, r);

        double gmin = 0.0;
        for (const auto& pr : profiles) {
            const auto g2 = gradient_sq_sigma(AxiProfile::from_function(g, pr.second));
            gmin = std::min(gmin, g2.min());
        }
        const auto gconst = gradient_sq_sigma(AxiProfile(g, 0.7));
        v.check("gradient_sq >= 0 and vanishes on constants",
                gmin >= 0.0 && gconst.max_abs() <= 1e-28, gmin);

        double br = 0.0;
        for (double mu : {1.0, 2.0, std::cosh(1.0) * std::cosh(1.0),
                          std::cosh(5.0) * std::cosh(5.0)})
            for (const auto& pr : profiles) {
                const auto res =
                    berger_identities_residual(AxiProfile::from_function(g, pr.second), mu);
                br = std::max({br, res.r1, res.r2});
            }
        v.check("Berger Hessian identities, 4 deformations (<= 1e-8)", br <= 1e-8, br);
    }

    {
        // Order consistency: fd-vs-closed-form gap shrinks at least 2x under
        // grid refinement.
        auto gap = [](int N) {
            const ZetaGrid g(2, N);
            const auto u =
                AxiProfile::from_function(g, [](double z) { return std::sin(3.0 * z); });
            double worst = 0.0;
            const auto lap = laplacian_sigma(u);
            const auto g2 = gradient_sq_sigma(u);
            // Multiples of 0.04: nodes of both the N = 101 and N = 201 grids.
            for (double z : {-0.8, -0.36, 0.0, 0.44, 0.84}) {
                const auto fd = fd_oracle(u, z);
                const int i = static_cast<int>(std::lround((z + 1.0) / g.h));
                worst = std::max({worst, std::fabs(fd.lap - lap[i]),
                                  std::fabs(fd.grad2 - g2[i])});
            }
            return worst;
        };
        const double coarse = gap(101), fine = gap(201);
        v.check("grid refinement shrinks fd gap >= 2x", fine * 2.0 <= coarse + 1e-12,
                coarse / std::max(fine, 1e-300));
    }

    for (int n : {2, 3}) {
        const ZetaGrid g(n, 201);
        const auto u = AxiProfile::from_function(g, [](double z) { return z * z + 0.5 * z; });
        const double quad = integrate_sphere(u);
        const double mc = monte_carlo_sphere_integral(u, 20240817u + n, 400000);
        const double rel = std::fabs(mc - quad) / std::fabs(quad);
        v.check("Monte Carlo validates the reduction density, n=" + std::to_string(n) +
                    " (<= 1%)",
                rel <= 0.01, rel);
    }
}

void verify_hypersurface(Verifier& v) {
    const ZetaGrid g(2, 201);
    std::vector<AxiProfile> battery;
    battery.push_back(AxiProfile(g, 2.0));
    battery.push_back(AxiProfile::from_function(g, [](double z) { return 2.0 + 0.3 * z; }));
    battery.push_back(AxiProfile::from_function(g, [](double z) { return 2.0 + 0.25 * z * z; }));
    battery.push_back(AxiProfile::from_function(
        g, [](double z) { return 1.5 + 0.2 * z + 0.1 * z * z; }));
    battery.push_back(
        AxiProfile::from_function(g, [](double z) { return 2.0 + 0.2 * std::sin(2.0 * z); }));

    double vdev = 0.0, cs = 0.0;
    for (const auto& rho : battery) {
        const auto f = compute_geometry(rho);
        vdev = std::min(vdev, f.v.min() - 1.0);
        for (int i = 0; i < g.num_nodes; ++i)
            cs = std::min(cs, f.A2[i] - f.H[i] * f.H[i] / (2.0 * g.n - 1.0));
    }
    v.check("v >= 1 on the battery", vdev >= -1e-14, vdev);
    v.check("|A|^2 >= H^2/(2n-1) - 1e-10", cs >= -1e-10, cs);

    const auto fsph = compute_geometry(battery[0]);
    double hdev = 0.0;
    for (int i = 0; i < g.num_nodes; ++i)
        hdev = std::max(hdev, std::fabs(fsph.H[i] - fsph.hatH[i]));
    v.check("H = hat_H on geodesic spheres (<= 1e-10)", hdev <= 1e-10, hdev);
    v.check("Q = 0 on geodesic spheres (<= 1e-10)", std::fabs(fsph.Q) <= 1e-10,
            std::fabs(fsph.Q));
    const double area_exact =
        sphere_volume(2) * std::pow(std::sinh(2.0), 3) * std::cosh(2.0);
    v.check("area of the geodesic sphere matches the closed form (<= 1e-8 rel)",
            std::fabs(fsph.area / area_exact - 1.0) <= 1e-8,
            std::fabs(fsph.area / area_exact - 1.0));

    std::vector<int> subset;
    for (int i = 10; i < g.num_nodes - 10; i += 12) subset.push_back(i);
    std::vector<double> errH(battery.size(), 0.0), errA(battery.size(), 0.0);
    parallel_for(static_cast<int>(battery.size()), [&](int b) {
        const auto f = compute_geometry(battery[b]);
        const auto oracle = extrinsic_oracle(battery[b], subset);
        for (std::size_t j = 0; j < subset.size(); ++j) {
            errH[b] = std::max(errH[b], std::fabs(oracle.H[j] - f.H[subset[j]]));
            errA[b] = std::max(errA[b], std::fabs(oracle.A2[j] - f.A2[subset[j]]));
        }
    });
    const double eH = *std::max_element(errH.begin(), errH.end());
    const double eA = *std::max_element(errA.begin(), errA.end());
    v.check("closed-form H vs embedding oracle, 5 profiles (<= 1e-4)", eH <= 1e-4, eH);
    v.check("closed-form |A|^2 vs embedding oracle, 5 profiles (<= 1e-3)", eA <= 1e-3, eA);

    // Sphere-calculus closed forms vs the coordinate finite-difference oracle.
    const auto u = AxiProfile::from_function(
        g, [](double z) { return std::exp(0.5 * z) + 0.3 * z * z; });
    const auto lap = laplacian_sigma(u);
    const auto g2 = gradient_sq_sigma(u);
    AxiProfile vfield(g);
    for (int i = 0; i < g.num_nodes; ++i) vfield[i] = std::sqrt(1.0 + g2[i]);
    const auto hc = hessian_contractions(u, vfield);
    double fd_err = 0.0;
    for (int j = 0; j < 20; ++j) {
        const int i = 10 + j * 9;
        const double z = g.nodes[i];
        const auto fd = fd_oracle(u, z);
        const double v2 = vfield[i] * vfield[i];
        const double s2_fd =
            fd.hess2 - fd.hgg * fd.hgg / std::max(fd.grad2, 1e-300) * (2.0 * v2 - fd.grad2) / (v2 * v2);
        fd_err = std::max({fd_err, std::fabs(fd.lap - lap[i]), std::fabs(fd.grad2 - g2[i]),
                           std::fabs(fd.hess2 - hc.hess2[i]), std::fabs(s2_fd - hc.s2[i])});
    }
    v.check("closed forms vs coordinate fd oracle at 20 nodes (<= 1e-5)", fd_err <= 1e-5,
            fd_err);
}

void verify_flow(Verifier& v) {
    {  // PDE/ODE consistency on a geodesic sphere.
        const ZetaGrid g(2, 201);
        StepperConfig sc;
        const auto result = run(AxiProfile(g, 2.0), 10.0, sc);
        double res = 0.0;
        for (const auto& r : result.series.rows) {
            const double exact = sphere_ode_solution(2.0, r.t, 2);
            res = std::max(res, std::max(std::fabs(r.rho_min - exact),
                                         std::fabs(r.rho_max - exact)));
        }
        v.check("constant data track the implicit sphere solution (<= 1e-6)", res <= 1e-6,
                res);
        const double dev_rate = fitted_exponent(
            result.series, 7.0, 10.0, [](const DiagnosticsRow& r) { return r.dev_full_max; });
        v.check("geodesic-sphere deviation decays at the doubled rate (-1 +- 0.2)",
                std::fabs(dev_rate + 1.0) <= 0.2, dev_rate);
    }

    const ZetaGrid g(2, 201);
    const auto rho0 =
        AxiProfile::from_function(g, [](double z) { return 8.0 + 0.5 * z; });
    StepperConfig sc;
    sc.output_every = 5;
    sc.snapshot_times = {1, 2, 4, 8};
    const auto result = run(rho0, 15.0, sc);

    const auto monitors = flow_monitors(result.series);
    double maxvol = 0.0, minH = 1e300;
    for (const auto& r : result.series.rows) {
        maxvol = std::max(maxvol, std::fabs(r.log_area_residual));
        minH = std::min(minH, r.H_min);
    }
    v.check("volume law |log area - t| <= 1e-4 over [0,15]", maxvol <= 1e-4, maxvol);
    v.check("mean convexity and star-shapedness preserved", monitors.ok, minH);

    std::vector<double> t, hdev;
    for (const auto& r : result.series.rows) {
        t.push_back(r.t);
        hdev.push_back(std::max(std::fabs(r.H_min - 4.0), std::fabs(r.H_max - 4.0)));
    }
    const double hrate = fit_decay_rate(t, hdev, 7.0, 15.0);
    v.check("sup|H - 2n| decay exponent -1/n +- 20%", std::fabs(hrate + 0.5) <= 0.1, hrate);
    const double hessrate = fitted_exponent(
        result.series, 7.0, 15.0, [](const DiagnosticsRow& r) { return r.sup_hess_phi2; });
    v.check("sup|Hess phi|^2 decay exponent <= -1/n + 20%", hessrate <= -0.4, hessrate);
    double third0 = result.series.rows.front().sup_third_rho, third_max = 0.0;
    for (const auto& r : result.series.rows) third_max = std::max(third_max, r.sup_third_rho);
    v.check("third radial derivative stays bounded", third_max <= 10.0 * third0 + 1.0,
            third_max);
    const double devfull = fitted_exponent(
        result.series, 7.0, 15.0, [](const DiagnosticsRow& r) { return r.dev_full_max; });
    const double devh = fitted_exponent(
        result.series, 7.0, 15.0, [](const DiagnosticsRow& r) { return r.dev_horiz_max; });
    v.check("generic dev_full decay exponent -1/n +- 0.1", std::fabs(devfull + 0.5) <= 0.1,
            devfull);
    v.check("horizontal deviation decays at the doubled rate (-2/n +- 0.2)",
            std::fabs(devh + 1.0) <= 0.2, devh);

    const auto q = q_evolution_check(result.series, 2);
    v.check("Q evolution identity mismatch <= 1% for t >= 2", q.max_identity_mismatch <= 0.01,
            q.max_identity_mismatch);
    v.check("negative part of dQ/dt decays slowly (exponent <= -0.4 or negligible)",
            q.neg_part_negligible || q.neg_part_exponent <= -0.4,
            q.neg_part_negligible ? 0.0 : q.neg_part_exponent);
}

void verify_limit(Verifier& v) {
    const ZetaGrid g(2, 201);
    const ConformalFactor c0{AxiProfile(g, 0.7)};
    v.check("J(constant) = 0 (<= 1e-10)", std::fabs(lq_functional(c0)) <= 1e-10,
            std::fabs(lq_functional(c0)));
    const auto f = AxiProfile::from_function(g, [](double z) { return 0.5 * z; });
    auto fs = f;
    for (int i = 0; i < fs.size(); ++i) fs[i] += 1.3;
    const double shift = std::fabs(lq_functional({f}) - lq_functional({fs}));
    v.check("J invariant under f -> f + const (<= 1e-10)", shift <= 1e-10, shift);

    double fk_max = 0.0;
    for (double k : {0.5, 1.0, 2.0, 4.0, 8.0})
        fk_max = std::max(fk_max, fk_identity_residual(k, g));
    v.check("f_k closed-form identity residual (<= 1e-7)", fk_max <= 1e-7, fk_max);

    double rec = 0.0;
    for (double x = 0.5; x <= 20.0; x += 0.5)
        for (int p = 1; p <= 4; ++p)
            rec = std::max(rec, std::fabs(bessel_I(p - 1, x) - bessel_I(p + 1, x) -
                                          2.0 * p / x * bessel_I(p, x)) /
                                    bessel_I(p - 1, x));
    v.check("Bessel recurrence on [0.5, 20] (<= 1e-9)", rec <= 1e-9, rec);

    const auto study = qk_study({4, 8, 16, 32, 64});
    bool mono = true;
    for (std::size_t i = 1; i < study.rows.size(); ++i)
        mono = mono && study.rows[i].qk_paper > study.rows[i - 1].qk_paper &&
               study.rows[i].qk_quad_paper_density > study.rows[i - 1].qk_quad_paper_density &&
               study.rows[i].qk_quad_derived_density > study.rows[i - 1].qk_quad_derived_density;
    v.check("Q_k columns monotone increasing for k >= 4", mono,
            study.exponent_paper_density);
}

int cmd_verify(long seed) {
    Verifier v;
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    v.out << "verify battery, seed = " << seed << "\n\n";
    verify_ambient(v, rng);
    verify_sphere_calculus(v);
    verify_hypersurface(v);
    verify_flow(v);
    verify_limit(v);
    v.out << "\nresult: " << (v.all_ok ? "all properties pass" : "FAILURES present") << "\n";
    std::cout << v.out.str();
    return v.all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inverse mean curvature flow of S^1-invariant hypersurfaces in CH^n"};
    app.require_subcommand(1);

    std::string config_path, out_override;
    long seed_override = -1;
    bool seed_given = false;

    for (const char* name : {"flow", "sphere", "limit", "example", "verify"}) {
        auto* sub = app.add_subcommand(name);
        auto* copt = sub->add_option("--config", config_path, "path to a key = value config");
        if (std::string(name) != "verify") copt->required();
        sub->add_option("--seed", seed_override, "RNG seed override")
            ->each([&](const std::string&) { seed_given = true; });
        sub->add_option("--out", out_override, "output directory override");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    RunConfig cfg;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot read config: " << config_path << "\n";
            return 1;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        const auto parsed = parse_config(buf.str());
        if (!parsed.ok()) {
            for (const auto& e : parsed.errors)
                std::cerr << "config:" << e.line << ": " << e.message << "\n";
            return 1;
        }
        cfg = parsed.config;
    }
    cfg.command = command;
    if (seed_given) cfg.seed = seed_override;
    if (!out_override.empty()) cfg.output_dir = out_override;

    try {
        if (command == "flow") return cmd_flow(cfg);
        if (command == "sphere") return cmd_sphere(cfg);
        if (command == "limit") return cmd_limit(cfg);
        if (command == "example") return cmd_example(cfg);
        return cmd_verify(cfg.seed);
    } catch (const MeanConvexityLost& e) {
        std::cerr << "solver abort: " << e.what() << "\n";
        return 3;
    } catch (const StepFailed& e) {
        std::cerr << "solver abort: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
