#include "imcf/hypersurface.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "imcf/ambient.hpp"
#include "imcf/sphere_calculus.hpp"

namespace imcf {

namespace {

void require_positive(const AxiProfile& rho, const char* who) {
    for (int i = 0; i < rho.size(); ++i)
        if (!(rho[i] > 0.0))
            throw std::domain_error(std::string(who) + ": rho <= 0 at node " + std::to_string(i));
}

// Per-node geometry assembled from rho and its two zeta-derivatives.
struct NodeGeometry {
    double v, H, hatH, Hmv;  // Hmv = H - hatH/v
    double A2, dev_full, dev_horiz;
    double grad_phi2, s2;
};

NodeGeometry node_geometry(int n, double z, double rho, double rp, double rpp) {
    const double sh = std::sinh(rho), ch = std::cosh(rho);
    const double p1 = rp / sh;                          // phi'
    const double p2 = rpp / sh - ch * rp * rp / (sh * sh);  // phi''
    const double omz = 1.0 - z * z;

    const double phi_eta2 = 4.0 * omz * p1 * p1;
    const double phi_etaeta = 4.0 * omz * p2 - 4.0 * z * p1;
    const double v2 = 1.0 + phi_eta2;
    const double v = std::sqrt(v2);

    const double lap = 4.0 * omz * p2 + (4.0 * (n - 2) - 4.0 * n * z) * p1;
    const double hgg = phi_eta2 * phi_etaeta;
    const double contraction = lap - hgg / v2;  // phi_ij sigma~^{ji}

    const double hatH = (2.0 * n * ch * ch - 1.0) / (sh * ch);
    const double Hmv = -contraction / (v * sh);
    // H - hatH written without cancellation: hatH (1/v - 1) = -hatH phi_eta2 / (v(v+1)).
    const double HmhatH = Hmv - hatH * phi_eta2 / (v2 * (1.0 + 1.0 / v));
    const double H = hatH + HmhatH;

    const double hess2 = phi_etaeta * phi_etaeta + 4.0 * (1.0 + z) * (1.0 + z) * p1 * p1 +
                         4.0 * (2 * n - 3) * (1.0 - z) * (1.0 - z) * p1 * p1;
    const double s2 = hess2 - phi_eta2 * phi_etaeta * phi_etaeta * (2.0 * v2 - phi_eta2) / (v2 * v2);

    const double A2 = (s2 + 2.0 * sh * sh * phi_eta2) / (v2 * sh * sh) +
                      (2.0 * ch / (v * sh)) * Hmv +
                      (2 * n - 1) * ch * ch / (v2 * sh * sh) +
                      sh * sh / (v2 * ch * ch) + 2.0 / v2;

    const double c_vs = ch / (v * sh) - 1.0;
    const double s_vc = sh / (v * ch) - 1.0;
    const double dev_full = s2 / (v2 * sh * sh) + 2.0 * phi_eta2 / v2 + 2.0 * Hmv * c_vs +
                            (2 * n - 1) * c_vs * c_vs + s_vc * s_vc + 2.0 * c_vs * s_vc;
    const double dev_horiz =
        s2 / (v2 * sh * sh) + 2.0 * Hmv * c_vs + (2 * n - 2) * c_vs * c_vs;

    return {v, H, hatH, Hmv, A2, dev_full, dev_horiz, phi_eta2, s2};
}

}  // namespace

PhiChain phi_chain(const AxiProfile& rho) {
    require_positive(rho, "phi_chain");
    const ZetaGrid& g = *rho.grid;
    const auto d = differentiate(rho);
    PhiChain out{AxiProfile(g), AxiProfile(g), AxiProfile(g)};
    for (int i = 0; i < g.num_nodes; ++i) {
        const double sh = std::sinh(rho[i]), ch = std::cosh(rho[i]);
        out.phi1[i] = d.d1[i] / sh;
        out.phi2[i] = d.d2[i] / sh - ch * d.d1[i] * d.d1[i] / (sh * sh);
        const double z = g.nodes[i];
        out.v[i] = std::sqrt(1.0 + 4.0 * (1.0 - z * z) * out.phi1[i] * out.phi1[i]);
    }
    return out;
}

MeanCurvature mean_curvature(const AxiProfile& rho) {
    require_positive(rho, "mean_curvature");
    const ZetaGrid& g = *rho.grid;
    const auto d = differentiate(rho);
    MeanCurvature out{AxiProfile(g), AxiProfile(g)};
    for (int i = 0; i < g.num_nodes; ++i) {
        const auto ng = node_geometry(g.n, g.nodes[i], rho[i], d.d1[i], d.d2[i]);
        if (!std::isfinite(ng.H))
            throw std::runtime_error("mean_curvature: NaN at node " + std::to_string(i));
        out.H[i] = ng.H;
        out.hatH[i] = ng.hatH;
    }
    return out;
}

AxiProfile norm_A_squared(const AxiProfile& rho) {
    require_positive(rho, "norm_A_squared");
    const ZetaGrid& g = *rho.grid;
    const auto d = differentiate(rho);
    AxiProfile out(g);
    for (int i = 0; i < g.num_nodes; ++i)
        out[i] = node_geometry(g.n, g.nodes[i], rho[i], d.d1[i], d.d2[i]).A2;
    return out;
}

DeviationNorms deviation_norms(const AxiProfile& rho) {
    require_positive(rho, "deviation_norms");
    const ZetaGrid& g = *rho.grid;
    const auto d = differentiate(rho);
    DeviationNorms out{AxiProfile(g), AxiProfile(g)};
    for (int i = 0; i < g.num_nodes; ++i) {
        const auto ng = node_geometry(g.n, g.nodes[i], rho[i], d.d1[i], d.d2[i]);
        out.dev_full[i] = ng.dev_full;
        out.dev_horiz[i] = ng.dev_horiz;
    }
    return out;
}

AreaAndQ area_and_Q(const AxiProfile& rho) {
    require_positive(rho, "area_and_Q");
    const ZetaGrid& g = *rho.grid;
    const auto d = differentiate(rho);
    AxiProfile density(g), integrand(g), theta(g);
    for (int i = 0; i < g.num_nodes; ++i) {
        const auto ng = node_geometry(g.n, g.nodes[i], rho[i], d.d1[i], d.d2[i]);
        const double sh = std::sinh(rho[i]), ch = std::cosh(rho[i]);
        density[i] = ng.v * std::pow(sh, 2 * g.n - 1) * ch;
        integrand[i] = (ng.H - ng.hatH) * density[i];
        theta[i] = sh * ch / ng.v;
    }
    const double area = integrate_sphere(density);
    const double q = std::pow(area, -1.0 + 1.0 / g.n) * integrate_sphere(integrand);
    return {area, q, theta};
}

GeometryFields compute_geometry(const AxiProfile& rho) {
    require_positive(rho, "compute_geometry");
    const ZetaGrid& g = *rho.grid;
    const auto d = differentiate(rho);
    GeometryFields f{AxiProfile(g), AxiProfile(g), AxiProfile(g), AxiProfile(g),
                     AxiProfile(g), AxiProfile(g), AxiProfile(g), AxiProfile(g)};
    AxiProfile integrand(g);
    for (int i = 0; i < g.num_nodes; ++i) {
        const auto ng = node_geometry(g.n, g.nodes[i], rho[i], d.d1[i], d.d2[i]);
        const double sh = std::sinh(rho[i]), ch = std::cosh(rho[i]);
        f.v[i] = ng.v;
        f.H[i] = ng.H;
        f.hatH[i] = ng.hatH;
        f.A2[i] = ng.A2;
        f.area_density[i] = ng.v * std::pow(sh, 2 * g.n - 1) * ch;
        f.dev_full[i] = ng.dev_full;
        f.dev_horiz[i] = ng.dev_horiz;
        f.theta_factor[i] = sh * ch / ng.v;
        integrand[i] = (ng.H - ng.hatH) * f.area_density[i];
    }
    f.area = integrate_sphere(f.area_density);
    f.Q = std::pow(f.area, -1.0 + 1.0 / g.n) * integrate_sphere(integrand);
    return f;
}

namespace {

using Mat4 = std::array<std::array<double, 4>, 4>;

Mat4 invert4(const Mat4& a) {
    Mat4 inv{};
    double aug[4][8] = {};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) aug[i][j] = a[i][j];
        aug[i][4 + i] = 1.0;
    }
    for (int c = 0; c < 4; ++c) {
        int p = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::fabs(aug[r][c]) > std::fabs(aug[p][c])) p = r;
        if (p != c)
            for (int j = 0; j < 8; ++j) std::swap(aug[c][j], aug[p][j]);
        const double piv = aug[c][c];
        for (int j = 0; j < 8; ++j) aug[c][j] /= piv;
        for (int r = 0; r < 4; ++r) {
            if (r == c) continue;
            const double fac = aug[r][c];
            for (int j = 0; j < 8; ++j) aug[r][j] -= fac * aug[c][j];
        }
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) inv[i][j] = aug[i][4 + j];
    return inv;
}

void invert3(const double a[3][3], double inv[3][3]) {
    const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                       a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                       a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    inv[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / det;
    inv[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / det;
    inv[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / det;
    inv[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / det;
    inv[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / det;
    inv[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / det;
    inv[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / det;
    inv[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / det;
    inv[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / det;
}

}  // namespace

ExtrinsicOracleValues extrinsic_oracle(const AxiProfile& rho,
                                       const std::vector<int>& node_subset) {
    require_positive(rho, "extrinsic_oracle");
    const ZetaGrid& g = *rho.grid;
    if (g.n != 2) throw std::invalid_argument("extrinsic_oracle: n = 2 only");
    const double h = 1e-4;

    ExtrinsicOracleValues out;
    auto metric_at = [](const double x[4]) {
        return bergman_components(PolarPoint{x[0], x[1], x[2], x[3]});
    };

    for (int idx : node_subset) {
        const double zeta = g.nodes[idx];
        if (std::fabs(zeta) > 0.999)
            throw std::domain_error("extrinsic_oracle: node too close to zeta = +-1");
        const double eta0 = std::acos(std::sqrt((1.0 - zeta) / 2.0));

        auto radial = [&](double eta) { return interpolate(rho, -std::cos(2.0 * eta)); };
        const double R0 = radial(eta0);
        const double R1 = (radial(eta0 + h) - radial(eta0 - h)) / (2.0 * h);
        const double R2 = (radial(eta0 + h) - 2.0 * R0 + radial(eta0 - h)) / (h * h);

        const double x0[4] = {R0, eta0, 0.7, 1.3};
        const Mat4 gbar = metric_at(x0);
        const Mat4 gbar_inv = invert4(gbar);

        // Christoffel symbols of the ambient metric from central differences.
        double dg[4][4][4];
        for (int c = 0; c < 4; ++c) {
            double xp[4] = {x0[0], x0[1], x0[2], x0[3]};
            double xm[4] = {x0[0], x0[1], x0[2], x0[3]};
            xp[c] += h;
            xm[c] -= h;
            const Mat4 gp = metric_at(xp), gm = metric_at(xm);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) dg[c][a][b] = (gp[a][b] - gm[a][b]) / (2.0 * h);
        }
        double gamma[4][4][4];
        for (int c = 0; c < 4; ++c)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    double s = 0.0;
                    for (int e = 0; e < 4; ++e)
                        s += gbar_inv[c][e] * (dg[a][e][b] + dg[b][e][a] - dg[e][a][b]);
                    gamma[c][a][b] = 0.5 * s;
                }

        // Tangents of the graph parametrized by (eta, xi1, xi2).
        double V[3][4] = {{R1, 1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}, {0.0, 0.0, 0.0, 1.0}};
        // Second coordinate derivatives of the embedding: only F^rho_{eta eta}.
        double d2F[3][3][4] = {};
        d2F[0][0][0] = R2;

        double gind[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) s += gbar[a][b] * V[i][a] * V[j][b];
                gind[i][j] = s;
            }
        double gind_inv[3][3];
        invert3(gind, gind_inv);

        // Outward unit normal from the co-normal d(rho) - R'(eta) d(eta).
        double ncov[4] = {1.0, -R1, 0.0, 0.0};
        double nu[4] = {};
        double nn = 0.0;
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) nu[a] += gbar_inv[a][b] * ncov[b];
        }
        for (int a = 0; a < 4; ++a) nn += nu[a] * ncov[a];
        const double scale = 1.0 / std::sqrt(nn) * (nu[0] > 0.0 ? 1.0 : -1.0);
        for (int a = 0; a < 4; ++a) nu[a] *= scale;

        double hform[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double acc[4];
                for (int a = 0; a < 4; ++a) {
                    acc[a] = d2F[i][j][a];
                    for (int b = 0; b < 4; ++b)
                        for (int c = 0; c < 4; ++c) acc[a] += gamma[a][b][c] * V[i][b] * V[j][c];
                }
                double s = 0.0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) s += gbar[a][b] * acc[a] * nu[b];
                hform[i][j] = -s;
            }

        double Hval = 0.0, A2val = 0.0;
        double hmix[3][3];  // h_i^j
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += hform[i][k] * gind_inv[k][j];
                hmix[i][j] = s;
            }
        for (int i = 0; i < 3; ++i) {
            Hval += hmix[i][i];
            for (int j = 0; j < 3; ++j) A2val += hmix[i][j] * hmix[j][i];
        }
        out.H.push_back(Hval);
        out.A2.push_back(A2val);
    }
    return out;
}

}  // namespace imcf
