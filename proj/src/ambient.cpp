#include "imcf/ambient.hpp"

#include <cmath>
#include <stdexcept>

namespace imcf {

AmbientVector::AmbientVector(std::vector<double> c) : coords(std::move(c)) {
    if (coords.size() < 4 || coords.size() % 2 != 0)
        throw std::invalid_argument("AmbientVector: need 2n components with n >= 2");
    for (double v : coords)
        if (!std::isfinite(v)) throw std::invalid_argument("AmbientVector: non-finite entry");
}

double frame_inner(const AmbientVector& x, const AmbientVector& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("frame_inner: dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < x.dim(); ++i) s += x.coords[i] * y.coords[i];
    return s;
}

AmbientVector apply_J(const AmbientVector& x) {
    std::vector<double> c(x.coords.size());
    for (std::size_t r = 0; r + 1 < c.size(); r += 2) {
        c[r] = -x.coords[r + 1];
        c[r + 1] = x.coords[r];
    }
    return AmbientVector(std::move(c));
}

double chn_curvature(const AmbientVector& x, const AmbientVector& y,
                     const AmbientVector& z, const AmbientVector& w) {
    if (x.dim() != y.dim() || x.dim() != z.dim() || x.dim() != w.dim())
        throw std::invalid_argument("chn_curvature: dimension mismatch");
    const AmbientVector jy = apply_J(y), jz = apply_J(z), jw = apply_J(w);
    return -frame_inner(x, z) * frame_inner(y, w) + frame_inner(x, w) * frame_inner(y, z) -
           frame_inner(x, jz) * frame_inner(y, jw) + frame_inner(x, jw) * frame_inner(y, jz) -
           2.0 * frame_inner(x, jy) * frame_inner(z, jw);
}

double sectional_curvature(const AmbientVector& x, const AmbientVector& y) {
    const double nx = std::sqrt(frame_inner(x, x));
    if (nx == 0.0) throw std::invalid_argument("sectional_curvature: zero vector");
    std::vector<double> e1(x.coords);
    for (double& v : e1) v /= nx;
    AmbientVector u1(std::move(e1));

    std::vector<double> e2(y.coords);
    const double proj = frame_inner(AmbientVector(e2), u1);
    for (int i = 0; i < u1.dim(); ++i) e2[i] -= proj * u1.coords[i];
    AmbientVector u2raw(std::move(e2));
    const double ny = std::sqrt(frame_inner(u2raw, u2raw));
    if (ny < 1e-13 * std::sqrt(frame_inner(y, y)) || ny == 0.0)
        throw std::invalid_argument("sectional_curvature: degenerate pair");
    for (double& v : u2raw.coords) v /= ny;

    const double c = frame_inner(u1, apply_J(u2raw));
    return -1.0 - 3.0 * c * c;
}

double einstein_residual(int n) {
    if (n < 2) throw std::invalid_argument("einstein_residual: n >= 2 required");
    const int d = 2 * n;
    auto basis = [d](int k) {
        std::vector<double> c(d, 0.0);
        c[k] = 1.0;
        return AmbientVector(std::move(c));
    };
    double worst = 0.0;
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            double ric = 0.0;
            for (int i = 0; i < d; ++i)
                ric += chn_curvature(basis(i), basis(a), basis(i), basis(b));
            const double expected = (a == b) ? -2.0 * (n + 1) : 0.0;
            worst = std::max(worst, std::fabs(ric - expected));
        }
    }
    return worst;
}

double hat_H(double rho, int n) {
    if (rho <= 0.0) throw std::domain_error("hat_H: rho must be positive");
    return (2.0 * n * std::cosh(rho) * std::cosh(rho) - 1.0) /
           (std::sinh(rho) * std::cosh(rho));
}

PrincipalCurvatures sphere_principal_curvatures(double rho) {
    if (rho <= 0.0) throw std::domain_error("sphere_principal_curvatures: rho must be positive");
    return {1.0 / std::tanh(rho), 2.0 / std::tanh(2.0 * rho)};
}

std::array<std::array<double, 4>, 4> bergman_components(const PolarPoint& p) {
    if (p.rho <= 0.0 || p.eta < 0.0 || p.eta > std::asin(1.0))
        throw std::domain_error("bergman_components: point out of range");
    const double s2 = std::sinh(p.rho) * std::sinh(p.rho);
    const double mu_minus_1 = std::cosh(p.rho) * std::cosh(p.rho) - 1.0;  // = sinh^2(rho)
    const double c2 = std::cos(p.eta) * std::cos(p.eta);
    const double n2 = std::sin(p.eta) * std::sin(p.eta);

    std::array<std::array<double, 4>, 4> g{};
    g[0][0] = 1.0;
    g[1][1] = s2;
    // Round block on (xi1, xi2) plus the Berger correction along the Hopf
    // one-form cos^2(eta) dxi1 + sin^2(eta) dxi2.
    g[2][2] = s2 * (c2 + mu_minus_1 * c2 * c2);
    g[3][3] = s2 * (n2 + mu_minus_1 * n2 * n2);
    g[2][3] = g[3][2] = s2 * mu_minus_1 * c2 * n2;
    return g;
}

}  // namespace imcf
