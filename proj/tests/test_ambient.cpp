#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "imcf/ambient.hpp"

using namespace imcf;

namespace {

AmbientVector rand_vec(std::mt19937_64& rng, int dim) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c(dim);
    for (auto& x : c) x = u(rng);
    return AmbientVector(std::move(c));
}

}  // namespace

TEST_CASE("complex structure: J^2 = -id and J is an isometry") {
    std::mt19937_64 rng(7);
    for (int n : {2, 3, 4}) {
        for (int s = 0; s < 50; ++s) {
            const auto x = rand_vec(rng, 2 * n), y = rand_vec(rng, 2 * n);
            const auto jjx = apply_J(apply_J(x));
            for (int i = 0; i < x.dim(); ++i)
                CHECK(jjx.coords[i] == doctest::Approx(-x.coords[i]).epsilon(1e-14));
            CHECK(frame_inner(apply_J(x), apply_J(y)) ==
                  doctest::Approx(frame_inner(x, y)).epsilon(1e-12));
            CHECK(std::fabs(frame_inner(apply_J(x), x)) < 1e-12 * (1.0 + frame_inner(x, x)));
        }
    }
}

TEST_CASE("curvature tensor symmetries and first Bianchi identity") {
    std::mt19937_64 rng(11);
    for (int s = 0; s < 200; ++s) {
        const auto x = rand_vec(rng, 4), y = rand_vec(rng, 4), z = rand_vec(rng, 4),
                   w = rand_vec(rng, 4);
        const double r = chn_curvature(x, y, z, w);
        CHECK(chn_curvature(y, x, z, w) == doctest::Approx(-r).epsilon(1e-12));
        CHECK(chn_curvature(x, y, w, z) == doctest::Approx(-r).epsilon(1e-12));
        CHECK(chn_curvature(z, w, x, y) == doctest::Approx(r).epsilon(1e-12));
        CHECK(std::fabs(chn_curvature(x, y, z, w) + chn_curvature(y, z, x, w) +
                        chn_curvature(z, x, y, w)) < 1e-12);
    }
}

TEST_CASE("holomorphic planes have curvature -4, totally real planes -1") {
    // e1 = J e0 spans a holomorphic plane; (e0, e2) is totally real.
    AmbientVector e0({1, 0, 0, 0}), e1({0, 1, 0, 0}), e2({0, 0, 1, 0});
    CHECK(sectional_curvature(e0, e1) == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK(sectional_curvature(e0, e2) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(chn_curvature(e0, e1, e0, e1) == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK(chn_curvature(e0, e2, e0, e2) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("sectional curvature pinched in [-4, -1] on random planes") {
    std::mt19937_64 rng(13);
    for (int n : {2, 3}) {
        for (int s = 0; s < 1000; ++s) {
            const double K = sectional_curvature(rand_vec(rng, 2 * n), rand_vec(rng, 2 * n));
            CHECK(K >= -4.0 - 1e-12);
            CHECK(K <= -1.0 + 1e-12);
        }
    }
    // Nearly collinear pair must be rejected.
    AmbientVector a({1, 0, 0, 0}), b({1.0 + 1e-15, 0, 0, 0});
    CHECK_THROWS(sectional_curvature(a, b));
}

TEST_CASE("Einstein constant -2(n+1)") {
    for (int n = 2; n <= 5; ++n) CHECK(einstein_residual(n) <= 1e-12);
}

TEST_CASE("geodesic sphere mean curvature hat_H") {
    for (int n : {2, 3}) {
        // hat_H = (2n-2) coth(rho) + 2 coth(2 rho): sum of the principal
        // curvatures with multiplicities.
        for (double rho : {0.3, 1.0, 2.5, 6.0}) {
            const auto pc = sphere_principal_curvatures(rho);
            CHECK(hat_H(rho, n) ==
                  doctest::Approx((2 * n - 2) * pc.lambda + pc.mu).epsilon(1e-13));
            CHECK(hat_H(rho, n) > 2.0 * n);
        }
        // Strictly decreasing, limit 2n at infinity.
        double prev = hat_H(0.05, n);
        for (double rho = 0.1; rho < 8.0; rho += 0.05) {
            const double h = hat_H(rho, n);
            CHECK(h < prev);
            prev = h;
        }
        CHECK(hat_H(25.0, n) == doctest::Approx(2.0 * n).epsilon(1e-12));
    }
    CHECK_THROWS(hat_H(0.0, 2));
    CHECK_THROWS(hat_H(-1.0, 2));
}

TEST_CASE("principal curvatures of geodesic spheres") {
    for (double rho : {0.5, 1.0, 3.0}) {
        const auto pc = sphere_principal_curvatures(rho);
        CHECK(pc.lambda == doctest::Approx(1.0 / std::tanh(rho)).epsilon(1e-14));
        CHECK(pc.mu == doctest::Approx(2.0 / std::tanh(2.0 * rho)).epsilon(1e-14));
        // Hopf curvature exceeds the real ones but stays below 2 lambda.
        CHECK(pc.mu > pc.lambda);
        CHECK(pc.mu < 2.0 * pc.lambda);
    }
}

TEST_CASE("Bergman metric components") {
    const double rho = 1.3, eta = 0.8;
    const auto g = bergman_components({rho, eta, 0.2, 1.1});
    const double s2 = std::sinh(rho) * std::sinh(rho);
    const double mu_m1 = s2;  // cosh^2 - 1
    const double c2 = std::cos(eta) * std::cos(eta), sn2 = std::sin(eta) * std::sin(eta);

    CHECK(g[0][0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g[1][1] == doctest::Approx(s2).epsilon(1e-14));
    CHECK(g[2][2] == doctest::Approx(s2 * (c2 + mu_m1 * c2 * c2)).epsilon(1e-13));
    CHECK(g[3][3] == doctest::Approx(s2 * (sn2 + mu_m1 * sn2 * sn2)).epsilon(1e-13));
    CHECK(g[2][3] == doctest::Approx(s2 * mu_m1 * c2 * sn2).epsilon(1e-13));
    CHECK(g[2][3] == g[3][2]);
    CHECK(g[0][1] == 0.0);
    CHECK(g[1][2] == 0.0);

    // Positive definite: leading principal minors.
    const double m2 = g[2][2] * g[3][3] - g[2][3] * g[2][3];
    CHECK(g[2][2] > 0.0);
    CHECK(m2 > 0.0);

    // Small-radius Berger limit: sphere block / sinh^2 -> round metric.
    const auto g0 = bergman_components({1e-4, eta, 0.0, 0.0});
    const double s0 = std::sinh(1e-4) * std::sinh(1e-4);
    CHECK(g0[2][2] / s0 == doctest::Approx(c2).epsilon(1e-6));
    CHECK(g0[3][3] / s0 == doctest::Approx(sn2).epsilon(1e-6));
    CHECK(std::fabs(g0[2][3] / s0) < 1e-7);
}

TEST_CASE("ambient vector validation") {
    CHECK_THROWS(AmbientVector({1.0, 2.0, 3.0}));        // odd dimension
    CHECK_THROWS(AmbientVector({1.0, 2.0}));             // n < 2
    CHECK_THROWS(AmbientVector({1.0, std::nan(""), 0.0, 0.0}));
}
