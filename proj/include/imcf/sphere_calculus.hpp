#pragma once

#include <cstdint>
#include <utility>

#include "imcf/grid.hpp"

namespace imcf {

/// Laplacian of an axisymmetric function on the round S^{2n-1}:
///   4(1-z^2) u'' + (4(n-2) - 4n z) u'.
/// The (1-z^2) factor vanishes at the endpoints, so the regular limit is
/// evaluated directly; no ghost nodes.
AxiProfile laplacian_sigma(const AxiProfile& u);

/// |grad_sigma u|^2 = 4(1-z^2) u'^2.
AxiProfile gradient_sq_sigma(const AxiProfile& u);

struct HessianContractions {
    AxiProfile hgg;    // Hess u (grad u, grad u)
    AxiProfile hess2;  // |Hess_sigma u|^2
    AxiProfile s2;     // u_ij u_kh sigma~^{jk} sigma~^{hi}, sigma~ = sigma^{-1} - grad u x grad u / v^2
};

/// Closed-form contractions of the sigma-Hessian of an axisymmetric u, with
/// slope factor v >= 1 entering sigma~. In the colatitude variable:
///   u_eta = 2 sqrt(1-z^2) u',  u_etaeta = 4(1-z^2) u'' - 4z u'.
HessianContractions hessian_contractions(const AxiProfile& u, const AxiProfile& v);

struct BergerResiduals {
    double r1;  // Laplacian identity: trace of the Berger Hessian vs Delta_sigma
    double r2;  // |Hess|^2 identity: Berger norm vs |Hess_sigma|^2 + 2(mu-1)|grad|^2
};

/// Checks the two Berger-metric Hessian identities for an S^1-invariant
/// function. The Berger side is assembled from the block form (zero entry in
/// the Hopf direction, mixed entries mu J(grad u), frame-computed horizontal
/// block); the sigma side comes from the closed-form contractions.
BergerResiduals berger_identities_residual(const AxiProfile& u, double mu);

/// Integral over S^{2n-1} of an axisymmetric u, reduced to the zeta line:
///   C_n * int_{-1}^{1} u(z) ((1+z)/2)^{n-2} dz,  C_n = pi^n / Gamma(n-1),
/// by composite Simpson on the grid.
double integrate_sphere(const AxiProfile& u);

/// Same reduction density/normalization evaluated directly on a function of
/// zeta (composite Simpson on `samples` points, log-safe variant available
/// through qk_study).
double zeta_density(int n, double zeta);
double sphere_volume(int n);  // Vol(S^{2n-1}) = 2 pi^n / (n-1)!

/// Monte Carlo oracle: integral of u(zeta) over S^{2n-1} by uniform sampling
/// (Gaussian normalization). Validates the reduction density.
double monte_carlo_sphere_integral(const AxiProfile& u, std::uint64_t seed,
                                   int samples);

struct FdOracleValues {
    double lap;
    double grad2;
    double hess2;
    double hgg;  // Hess u (grad u, grad u), for assembling s2 in cross checks
};

/// Independent finite-difference oracle on S^3 (n = 2 only): evaluates the
/// operators at the point with eta = arccos(sqrt((1-z)/2)) by second-order
/// differences in explicit coordinates (eta, xi1, xi2), with Christoffel
/// symbols of the round metric obtained numerically.
FdOracleValues fd_oracle(const AxiProfile& u, double zeta);

}  // namespace imcf
