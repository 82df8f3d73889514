#pragma once

#include <vector>

#include "imcf/grid.hpp"

namespace imcf {

/// Per-node extrinsic geometry of the star-shaped S^1-invariant hypersurface
/// with radial profile rho(zeta), plus the scalar aggregates area and Q.
struct GeometryFields {
    AxiProfile v;             // slope factor, >= 1
    AxiProfile H;             // mean curvature
    AxiProfile hatH;          // geodesic-sphere mean curvature at rho
    AxiProfile A2;            // |A|^2
    AxiProfile area_density;  // v sinh^{2n-1}(rho) cosh(rho)
    AxiProfile dev_full;      // |h - horosphere model|^2, full tangent space
    AxiProfile dev_horiz;     // same restricted to the horizontal distribution
    AxiProfile theta_factor;  // sinh(rho) cosh(rho) / v  (xi component of theta)
    double area = 0.0;
    double Q = 0.0;
};

struct PhiChain {
    AxiProfile phi1;  // d(phi)/d(zeta) = rho' / sinh(rho)
    AxiProfile phi2;  // second zeta-derivative of phi
    AxiProfile v;     // sqrt(1 + 4(1-z^2) phi'^2)
};

/// Chain rule from rho to the reparametrized radius phi (dphi/drho = 1/sinh).
PhiChain phi_chain(const AxiProfile& rho);

struct MeanCurvature {
    AxiProfile H;
    AxiProfile hatH;
};

/// H = -(Delta_sigma phi - Hess phi(grad phi, grad phi)/v^2)/(v sinh rho) + hatH/v.
MeanCurvature mean_curvature(const AxiProfile& rho);

AxiProfile norm_A_squared(const AxiProfile& rho);

struct DeviationNorms {
    AxiProfile dev_full;
    AxiProfile dev_horiz;
};
DeviationNorms deviation_norms(const AxiProfile& rho);

struct AreaAndQ {
    double area;
    double Q;
    AxiProfile theta_factor;
};
/// area = int v sinh^{2n-1} cosh dsigma;  Q = area^{-1+1/n} int (H - hatH) dmu.
AreaAndQ area_and_Q(const AxiProfile& rho);

/// All of the above in one pass.
GeometryFields compute_geometry(const AxiProfile& rho);

struct ExtrinsicOracleValues {
    std::vector<double> H;
    std::vector<double> A2;
};

/// Embedding-based oracle (n = 2): induced metric and second fundamental form
/// of (eta, xi1, xi2) -> (rho(zeta(eta)), eta, xi1, xi2) by second-order
/// finite differences, with Christoffel symbols from differencing the
/// Bergman metric components.
ExtrinsicOracleValues extrinsic_oracle(const AxiProfile& rho,
                                       const std::vector<int>& node_subset);

}  // namespace imcf
