#pragma once

#include <array>
#include <vector>

namespace imcf {

/// Vector in an orthonormal frame of CH^n compatible with the complex
/// structure: J sends frame vector 2r to 2r+1.
struct AmbientVector {
    std::vector<double> coords;  // length 2n, n >= 2

    explicit AmbientVector(std::vector<double> c);
    int dim() const { return static_cast<int>(coords.size()); }
};

/// Point of CH^n in polar Hopf coordinates (rho, eta, xi1, xi2); n = 2 only.
struct PolarPoint {
    double rho;   // geodesic distance from the origin, > 0
    double eta;   // Hopf colatitude in [0, pi/2]
    double xi1;   // in [0, 2pi)
    double xi2;   // in [0, 2pi)
};

double frame_inner(const AmbientVector& x, const AmbientVector& y);
AmbientVector apply_J(const AmbientVector& x);

/// Closed-form curvature tensor of CH^n (holomorphic sectional curvature -4):
///   R(X,Y,Z,W) = -g(X,Z)g(Y,W) + g(X,W)g(Y,Z)
///                - g(X,JZ)g(Y,JW) + g(X,JW)g(Y,JZ) - 2 g(X,JY)g(Z,JW).
double chn_curvature(const AmbientVector& x, const AmbientVector& y,
                     const AmbientVector& z, const AmbientVector& w);

/// Sectional curvature of span(X,Y): Gram-Schmidt orthonormalizes, then
/// returns -1 - 3 g(X,JY)^2. Always in [-4,-1].
double sectional_curvature(const AmbientVector& x, const AmbientVector& y);

/// Max-entry deviation of the contracted Ricci tensor from -2(n+1) g.
double einstein_residual(int n);

/// Mean curvature of the geodesic sphere of radius rho:
///   (2n cosh^2(rho) - 1) / (sinh(rho) cosh(rho)).
double hat_H(double rho, int n);

struct PrincipalCurvatures {
    double lambda;  // coth(rho), multiplicity 2n-2
    double mu;      // 2 coth(2 rho), multiplicity 1 (Hopf direction)
};
PrincipalCurvatures sphere_principal_curvatures(double rho);

/// Bergman metric of CH^2 in coordinates (rho, eta, xi1, xi2):
/// drho^2 + sinh^2(rho) [round sphere block + (cosh^2(rho)-1) theta^2],
/// theta = cos^2(eta) dxi1 + sin^2(eta) dxi2.
std::array<std::array<double, 4>, 4> bergman_components(const PolarPoint& p);

}  // namespace imcf
