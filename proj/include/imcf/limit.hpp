#pragma once

#include <vector>

#include "imcf/grid.hpp"

namespace imcf {

/// S^1-invariant conformal factor on the sphere; the complex dimension is
/// carried by the underlying grid.
struct ConformalFactor {
    AxiProfile f;
};

/// J(f) = (int e^{2nf} dsigma)^{-1+1/n} int e^{2nf}(e^{-f} Lap e^{-f}
///        - n |grad e^{-f}|^2) dsigma,
/// evaluated through the chain rule on f so the quadrature error is not
/// amplified by e^{O(f)} factors.
double lq_functional(const ConformalFactor& f);

/// max f - min f; zero iff the associated limit contact form has constant
/// Webster scalar curvature (S^1-invariant case).
double webster_flatness_residual(const ConformalFactor& f);

/// Scale-free residual of the closed-form identity for f_k = k zeta (n = 2):
///   e^{4f_k}(e^{-f_k} Lap e^{-f_k} - 2|grad e^{-f_k}|^2)
///     = 4k e^{2f_k}(k zeta^2 + 2 zeta - k),
/// max over nodes of |lhs - rhs| / sup |rhs|.
double fk_identity_residual(double k, const ZetaGrid& grid);

/// Modified Bessel function of the first kind. Power series for x <= 30,
/// asymptotic expansion beyond. Throws std::overflow_error for x > 500;
/// use bessel_I_log there.
double bessel_I(int p, double x);

/// log I_p(x), valid for all x >= 0 where I_p(x) > 0.
double bessel_I_log(int p, double x);

struct QkRow {
    double k;
    double qk_paper;                // k (pi/(4k) I_1(4k))^{-1/2} (pi/(4k)) I_2(2k)
    double qk_quad_paper_density;   // direct quadrature, density sqrt(1-z^2)
    double qk_quad_derived_density; // direct quadrature, Hopf-derived density
};

struct QkStudy {
    std::vector<QkRow> rows;
    // Least-squares slopes of log q vs log k, one per column.
    double exponent_paper;
    double exponent_paper_density;
    double exponent_derived_density;
};

/// Growth study of Q along the f_k = k zeta family (n = 2). Integrands are
/// evaluated in exponent-shifted form, so large k does not overflow.
QkStudy qk_study(const std::vector<double>& k_list);

}  // namespace imcf
