#include "imcf/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace imcf {

ZetaGrid::ZetaGrid(int complex_dim, int N) : n(complex_dim), num_nodes(N) {
    if (n < 2) throw std::invalid_argument("ZetaGrid: complex dimension must be >= 2");
    if (N < 9) throw std::invalid_argument("ZetaGrid: need at least 9 nodes");
    if (N % 2 == 0) throw std::invalid_argument("ZetaGrid: node count must be odd");
    h = 2.0 / (N - 1);
    nodes.resize(N);
    for (int i = 0; i < N; ++i) nodes[i] = -1.0 + h * i;
    nodes.front() = -1.0;
    nodes.back() = 1.0;
    nodes[(N - 1) / 2] = 0.0;
}

double AxiProfile::min() const {
    return *std::min_element(values.begin(), values.end());
}

double AxiProfile::max() const {
    return *std::max_element(values.begin(), values.end());
}

double AxiProfile::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::fabs(v));
    return m;
}

bool AxiProfile::all_finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

namespace {

// One-sided O(h^4) stencils (left boundary; mirrored with sign flip for d1
// on the right).
constexpr double kD1Edge[5] = {-25.0, 48.0, -36.0, 16.0, -3.0};
constexpr double kD1Near[5] = {-3.0, -10.0, 18.0, -6.0, 1.0};
constexpr double kD2Edge[6] = {45.0, -154.0, 214.0, -156.0, 61.0, -10.0};
constexpr double kD2Near[6] = {10.0, -15.0, -4.0, 14.0, -6.0, 1.0};

}  // namespace

Derivatives differentiate(const AxiProfile& u) {
    const ZetaGrid& g = *u.grid;
    const int N = g.num_nodes;
    if (N < 9) throw std::invalid_argument("differentiate: grid too small");
    const double h = g.h;
    const auto& f = u.values;

    Derivatives out{AxiProfile(g), AxiProfile(g)};
    auto& d1 = out.d1.values;
    auto& d2 = out.d2.values;

    for (int i = 2; i < N - 2; ++i) {
        d1[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
        d2[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) /
                (12.0 * h * h);
    }

    auto dot = [](const double* c, const double* v, int k, int stride) {
        double s = 0.0;
        for (int j = 0; j < k; ++j) s += c[j] * v[j * stride];
        return s;
    };

    d1[0] = dot(kD1Edge, &f[0], 5, 1) / (12.0 * h);
    d1[1] = dot(kD1Near, &f[0], 5, 1) / (12.0 * h);
    d1[N - 1] = -dot(kD1Edge, &f[N - 1], 5, -1) / (12.0 * h);
    d1[N - 2] = -dot(kD1Near, &f[N - 1], 5, -1) / (12.0 * h);

    // kD2Near is evaluated at the second node in, using offsets {-1,...,4}.
    d2[0] = dot(kD2Edge, &f[0], 6, 1) / (12.0 * h * h);
    d2[1] = dot(kD2Near, &f[0], 6, 1) / (12.0 * h * h);
    d2[N - 1] = dot(kD2Edge, &f[N - 1], 6, -1) / (12.0 * h * h);
    d2[N - 2] = dot(kD2Near, &f[N - 1], 6, -1) / (12.0 * h * h);

    return out;
}

double interpolate(const AxiProfile& u, double zeta) {
    const ZetaGrid& g = *u.grid;
    const int N = g.num_nodes;
    const int width = std::min(9, N);
    int center = static_cast<int>(std::lround((zeta + 1.0) / g.h));
    int lo = std::clamp(center - width / 2, 0, N - width);

    // Lagrange interpolation on `width` consecutive nodes.
    double result = 0.0;
    for (int j = 0; j < width; ++j) {
        double term = u.values[lo + j];
        for (int m = 0; m < width; ++m) {
            if (m == j) continue;
            term *= (zeta - g.nodes[lo + m]) / (g.nodes[lo + j] - g.nodes[lo + m]);
        }
        result += term;
    }
    return result;
}

}  // namespace imcf
