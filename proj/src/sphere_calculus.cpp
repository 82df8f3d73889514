#include "imcf/sphere_calculus.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace imcf {

AxiProfile laplacian_sigma(const AxiProfile& u) {
    const ZetaGrid& g = *u.grid;
    const auto d = differentiate(u);
    AxiProfile out(g);
    for (int i = 0; i < g.num_nodes; ++i) {
        const double z = g.nodes[i];
        out[i] = 4.0 * (1.0 - z * z) * d.d2[i] + (4.0 * (g.n - 2) - 4.0 * g.n * z) * d.d1[i];
    }
    return out;
}

AxiProfile gradient_sq_sigma(const AxiProfile& u) {
    const ZetaGrid& g = *u.grid;
    const auto d = differentiate(u);
    AxiProfile out(g);
    for (int i = 0; i < g.num_nodes; ++i) {
        const double z = g.nodes[i];
        out[i] = 4.0 * (1.0 - z * z) * d.d1[i] * d.d1[i];
    }
    return out;
}

HessianContractions hessian_contractions(const AxiProfile& u, const AxiProfile& v) {
    const ZetaGrid& g = *u.grid;
    const int m = g.n;
    const auto d = differentiate(u);
    HessianContractions out{AxiProfile(g), AxiProfile(g), AxiProfile(g)};
    for (int i = 0; i < g.num_nodes; ++i) {
        const double vi = v[i];
        if (vi < 1.0 - 1e-12)
            throw std::invalid_argument("hessian_contractions: slope factor below 1");
        const double z = g.nodes[i];
        const double up = d.d1[i];
        const double u_eta2 = 4.0 * (1.0 - z * z) * up * up;
        const double u_etaeta = 4.0 * (1.0 - z * z) * d.d2[i] - 4.0 * z * up;

        out.hgg[i] = u_eta2 * u_etaeta;
        out.hess2[i] = u_etaeta * u_etaeta + 4.0 * (1.0 + z) * (1.0 + z) * up * up +
                       4.0 * (2 * m - 3) * (1.0 - z) * (1.0 - z) * up * up;
        const double v2 = vi * vi;
        out.s2[i] = out.hess2[i] -
                    u_eta2 * u_etaeta * u_etaeta * (2.0 * v2 - u_eta2) / (v2 * v2);
    }
    return out;
}

BergerResiduals berger_identities_residual(const AxiProfile& u, double mu) {
    if (mu < 1.0) throw std::invalid_argument("berger_identities_residual: mu >= 1 required");
    const ZetaGrid& g = *u.grid;
    const int m = g.n;
    const auto d = differentiate(u);

    AxiProfile ones(g, 1.0);
    const auto lap = laplacian_sigma(u);
    const auto grad2 = gradient_sq_sigma(u);
    const auto hc = hessian_contractions(u, ones);

    // Independent route: sigma-Hessian of an axisymmetric function in the
    // frame {xi, e_eta, X = J e_eta, E_a}. Diagonal entries
    //   (0, u_etaeta, -4z u', 2(1-z) u' x (2n-4)),
    // the only mixed entry is (xi, X) = -u_eta.
    double r1 = 0.0, r2 = 0.0;
    for (int i = 0; i < g.num_nodes; ++i) {
        const double z = g.nodes[i];
        const double up = d.d1[i];
        const double u_etaeta = 4.0 * (1.0 - z * z) * d.d2[i] - 4.0 * z * up;
        const double a_x = -4.0 * z * up;
        const double a_e = 2.0 * (1.0 - z) * up;
        const double u_eta2 = 4.0 * (1.0 - z * z) * up * up;

        const double berger_lap = u_etaeta + a_x + (2 * m - 4) * a_e;
        const double horiz_block = u_etaeta * u_etaeta + a_x * a_x + (2 * m - 4) * a_e * a_e;
        const double berger_hess2 = horiz_block + 2.0 * mu * u_eta2;

        r1 = std::max(r1, std::fabs(berger_lap - lap[i]));
        r2 = std::max(r2, std::fabs(berger_hess2 -
                                    (hc.hess2[i] + 2.0 * (mu - 1.0) * grad2[i])));
    }
    return {r1, r2};
}

double zeta_density(int n, double zeta) {
    return std::pow((1.0 + zeta) / 2.0, n - 2);
}

double sphere_volume(int n) {
    return 2.0 * std::pow(M_PI, n) / std::tgamma(static_cast<double>(n));
}

double integrate_sphere(const AxiProfile& u) {
    const ZetaGrid& g = *u.grid;
    const int N = g.num_nodes;
    const double cn = std::pow(M_PI, g.n) / std::tgamma(static_cast<double>(g.n - 1));
    double acc = 0.0;
    for (int i = 0; i < N; ++i) {
        const double w = (i == 0 || i == N - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += w * u[i] * zeta_density(g.n, g.nodes[i]);
    }
    return cn * acc * g.h / 3.0;
}

double monte_carlo_sphere_integral(const AxiProfile& u, std::uint64_t seed, int samples) {
    const ZetaGrid& g = *u.grid;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int dim = 2 * g.n;
    double acc = 0.0;
    for (int s = 0; s < samples; ++s) {
        double norm2 = 0.0, z1sq = 0.0;
        for (int k = 0; k < dim; ++k) {
            const double x = gauss(rng);
            norm2 += x * x;
            if (k < 2) z1sq += x * x;
        }
        const double zeta = 1.0 - 2.0 * z1sq / norm2;
        acc += interpolate(u, zeta);
    }
    return sphere_volume(g.n) * acc / samples;
}

namespace {

// Round S^3 metric in coordinates (eta, xi1, xi2).
void round_metric(const double x[3], double gmat[3][3]) {
    const double c = std::cos(x[0]), s = std::sin(x[0]);
    gmat[0][0] = 1.0;
    gmat[1][1] = c * c;
    gmat[2][2] = s * s;
    gmat[0][1] = gmat[1][0] = gmat[0][2] = gmat[2][0] = gmat[1][2] = gmat[2][1] = 0.0;
}

}  // namespace

FdOracleValues fd_oracle(const AxiProfile& u, double zeta) {
    const ZetaGrid& g = *u.grid;
    if (g.n != 2) throw std::invalid_argument("fd_oracle: defined for n = 2 only");
    if (std::fabs(zeta) > 0.999)
        throw std::domain_error("fd_oracle: too close to zeta = +-1 (coordinate degeneracy)");

    const double eta0 = std::acos(std::sqrt((1.0 - zeta) / 2.0));
    const double x0[3] = {eta0, 0.7, 1.3};
    const double h = 1e-4;

    auto eval = [&](const double x[3]) { return interpolate(u, -std::cos(2.0 * x[0])); };

    // First and second coordinate derivatives of u, second-order central.
    double du[3], d2u[3][3];
    for (int a = 0; a < 3; ++a) {
        double xp[3] = {x0[0], x0[1], x0[2]}, xm[3] = {x0[0], x0[1], x0[2]};
        xp[a] += h;
        xm[a] -= h;
        du[a] = (eval(xp) - eval(xm)) / (2.0 * h);
        d2u[a][a] = (eval(xp) - 2.0 * eval(x0) + eval(xm)) / (h * h);
    }
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            double xpp[3] = {x0[0], x0[1], x0[2]}, xpm[3] = {x0[0], x0[1], x0[2]};
            double xmp[3] = {x0[0], x0[1], x0[2]}, xmm[3] = {x0[0], x0[1], x0[2]};
            xpp[a] += h; xpp[b] += h;
            xpm[a] += h; xpm[b] -= h;
            xmp[a] -= h; xmp[b] += h;
            xmm[a] -= h; xmm[b] -= h;
            d2u[a][b] = d2u[b][a] = (eval(xpp) - eval(xpm) - eval(xmp) + eval(xmm)) / (4.0 * h * h);
        }

    // Metric, inverse and numerically differentiated Christoffel symbols.
    double gmat[3][3], ginv[3][3] = {};
    round_metric(x0, gmat);
    for (int a = 0; a < 3; ++a) ginv[a][a] = 1.0 / gmat[a][a];

    double dg[3][3][3];  // dg[c][a][b] = d_c g_ab
    for (int c = 0; c < 3; ++c) {
        double xp[3] = {x0[0], x0[1], x0[2]}, xm[3] = {x0[0], x0[1], x0[2]};
        xp[c] += h;
        xm[c] -= h;
        double gp[3][3], gm[3][3];
        round_metric(xp, gp);
        round_metric(xm, gm);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) dg[c][a][b] = (gp[a][b] - gm[a][b]) / (2.0 * h);
    }
    double gamma[3][3][3];  // gamma[c][a][b] = Gamma^c_ab
    for (int c = 0; c < 3; ++c)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                double s = 0.0;
                for (int dgt = 0; dgt < 3; ++dgt)
                    s += ginv[c][dgt] * (dg[a][dgt][b] + dg[b][dgt][a] - dg[dgt][a][b]);
                gamma[c][a][b] = 0.5 * s;
            }

    double hess[3][3];
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            double s = d2u[a][b];
            for (int c = 0; c < 3; ++c) s -= gamma[c][a][b] * du[c];
            hess[a][b] = s;
        }

    FdOracleValues out{0.0, 0.0, 0.0, 0.0};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            out.lap += ginv[a][b] * hess[a][b];
            out.grad2 += ginv[a][b] * du[a] * du[b];
            for (int c = 0; c < 3; ++c)
                for (int e = 0; e < 3; ++e)
                    out.hess2 += ginv[a][c] * ginv[b][e] * hess[a][b] * hess[c][e];
        }
    double gradu[3];
    for (int a = 0; a < 3; ++a) {
        gradu[a] = 0.0;
        for (int b = 0; b < 3; ++b) gradu[a] += ginv[a][b] * du[b];
    }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) out.hgg += hess[a][b] * gradu[a] * gradu[b];
    return out;
}

}  // namespace imcf
