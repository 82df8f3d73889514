#include "imcf/limit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "imcf/sphere_calculus.hpp"

namespace imcf {

double lq_functional(const ConformalFactor& cf) {
    const AxiProfile& f = cf.f;
    const ZetaGrid& g = *f.grid;
    const int n = g.n;

    // e^{-f} Lap e^{-f} - n |grad e^{-f}|^2 = e^{-2f}(|grad f|^2 - Lap f
    //                                                - n |grad f|^2).
    const auto lap_f = laplacian_sigma(f);
    const auto grad2_f = gradient_sq_sigma(f);

    AxiProfile weight(g), integrand(g);
    for (int i = 0; i < g.num_nodes; ++i) {
        weight[i] = std::exp(2.0 * n * f[i]);
        integrand[i] =
            std::exp((2.0 * n - 2.0) * f[i]) * (-lap_f[i] - (n - 1) * grad2_f[i]);
    }
    const double denom = integrate_sphere(weight);
    const double numer = integrate_sphere(integrand);
    return std::pow(denom, -1.0 + 1.0 / n) * numer;
}

double webster_flatness_residual(const ConformalFactor& cf) {
    return cf.f.max() - cf.f.min();
}

double fk_identity_residual(double k, const ZetaGrid& grid) {
    if (grid.n != 2) throw std::invalid_argument("fk_identity_residual: n = 2 only");
    if (k < 0.0) throw std::invalid_argument("fk_identity_residual: k >= 0 required");

    AxiProfile f(grid);
    for (int i = 0; i < grid.num_nodes; ++i) f[i] = k * grid.nodes[i];
    const auto lap_f = laplacian_sigma(f);
    const auto grad2_f = gradient_sq_sigma(f);

    double max_abs = 0.0, sup_rhs = 0.0;
    for (int i = 0; i < grid.num_nodes; ++i) {
        const double z = grid.nodes[i];
        // lhs via the chain rule: e^{4f}e^{-2f}(|grad f|^2 - Lap f - 2|grad f|^2)
        const double lhs = std::exp(2.0 * f[i]) * (-lap_f[i] - grad2_f[i]);
        const double rhs = 4.0 * k * std::exp(2.0 * f[i]) * (k * z * z + 2.0 * z - k);
        max_abs = std::max(max_abs, std::fabs(lhs - rhs));
        sup_rhs = std::max(sup_rhs, std::fabs(rhs));
    }
    return max_abs / std::max(sup_rhs, 1e-300);
}

namespace {

double bessel_series_log(int p, double x) {
    // All terms positive: no cancellation; accumulate in log-safe form by
    // factoring out the leading term.
    if (x == 0.0) return p == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    const double y = 0.25 * x * x;
    double lead = p * std::log(0.5 * x) - std::lgamma(p + 1.0);
    double term = 1.0, sum = 1.0;
    for (int m = 1; m < 1000; ++m) {
        term *= y / (static_cast<double>(m) * (m + p));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return lead + std::log(sum);
}

double bessel_asymptotic_log(int p, double x) {
    // I_p(x) ~ e^x/sqrt(2 pi x) * sum_m (-1)^m a_m / x^m, truncated at the
    // smallest term.
    const double mu = 4.0 * p * p;
    double term = 1.0, sum = 1.0, prev = std::fabs(term);
    for (int m = 1; m < 200; ++m) {
        term *= -(mu - (2.0 * m - 1.0) * (2.0 * m - 1.0)) / (8.0 * m * x);
        if (std::fabs(term) > prev) break;
        prev = std::fabs(term);
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return x - 0.5 * std::log(2.0 * M_PI * x) + std::log(sum);
}

}  // namespace

double bessel_I_log(int p, double x) {
    if (p < 0 || x < 0.0) throw std::domain_error("bessel_I_log: need p >= 0, x >= 0");
    return x <= 30.0 ? bessel_series_log(p, x) : bessel_asymptotic_log(p, x);
}

double bessel_I(int p, double x) {
    if (p < 0 || x < 0.0) throw std::domain_error("bessel_I: need p >= 0, x >= 0");
    if (x > 500.0)
        throw std::overflow_error("bessel_I: x > 500 overflows; use bessel_I_log");
    if (x == 0.0) return p == 0 ? 1.0 : 0.0;
    return std::exp(bessel_I_log(p, x));
}

namespace {

// log of int_{-1}^{1} e^{a (z-1)} w(z) dz by composite Simpson; the shifted
// exponent keeps the integrand in [0, max w]. `w` may change sign; the
// integral must come out positive.
template <typename W>
double shifted_exp_integral_log(double a, W&& w) {
    const int N = 20001;
    const double h = 2.0 / (N - 1);
    double acc = 0.0;
    for (int i = 0; i < N; ++i) {
        const double z = -1.0 + i * h;
        const double wt = (i == 0 || i == N - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += wt * std::exp(a * (z - 1.0)) * w(z);
    }
    acc *= h / 3.0;
    if (!(acc > 0.0)) throw std::runtime_error("shifted_exp_integral_log: nonpositive");
    return a + std::log(acc);
}

double fit_loglog_slope(const std::vector<double>& k, const std::vector<double>& logq) {
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    const int m = static_cast<int>(k.size());
    for (int i = 0; i < m; ++i) {
        const double lk = std::log(k[i]);
        st += lk;
        sy += logq[i];
        stt += lk * lk;
        sty += lk * logq[i];
    }
    return (m * sty - st * sy) / (m * stt - st * st);
}

}  // namespace

QkStudy qk_study(const std::vector<double>& k_list) {
    for (std::size_t i = 0; i < k_list.size(); ++i) {
        if (!(k_list[i] > 0.0)) throw std::invalid_argument("qk_study: k must be positive");
        if (i > 0 && k_list[i] <= k_list[i - 1])
            throw std::invalid_argument("qk_study: k_list must be increasing");
    }

    QkStudy study;
    std::vector<double> lp, lqp, lqd;
    for (double k : k_list) {
        // Closed-form column, gamma = 1, in logs.
        const double log_pref = std::log(M_PI / (4.0 * k));
        const double log_paper = std::log(k) - 0.5 * (log_pref + bessel_I_log(1, 4.0 * k)) +
                                 log_pref + bessel_I_log(2, 2.0 * k);

        // Quadrature columns: q = D^{-1/2} N with
        //   D = int e^{4kz} w dz,  N = int 4k e^{2kz}(k z^2 + 2z - k) w dz.
        auto quad = [&](auto&& dens) {
            const double logD = shifted_exp_integral_log(4.0 * k, dens);
            const double logN = shifted_exp_integral_log(
                2.0 * k, [&](double z) {
                    return 4.0 * k * (k * z * z + 2.0 * z - k) * dens(z);
                });
            return -0.5 * logD + logN;
        };
        const double log_qp = quad([](double z) { return std::sqrt(std::max(0.0, 1.0 - z * z)); });
        const double log_qd = quad([](double) { return 1.0; });  // n = 2 derived density

        study.rows.push_back({k, std::exp(log_paper), std::exp(log_qp), std::exp(log_qd)});
        lp.push_back(log_paper);
        lqp.push_back(log_qp);
        lqd.push_back(log_qd);
    }
    study.exponent_paper = fit_loglog_slope(k_list, lp);
    study.exponent_paper_density = fit_loglog_slope(k_list, lqp);
    study.exponent_derived_density = fit_loglog_slope(k_list, lqd);
    return study;
}

}  // namespace imcf
