#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace imcf {

/// Uniform discretization of the axisymmetric coordinate zeta in [-1,1] on
/// S^{2n-1}. N is odd so that zeta = 0 is a node.
struct ZetaGrid {
    int n = 2;           // complex dimension, n >= 2
    int num_nodes = 0;   // odd, >= 33 for production grids (>= 9 accepted for tests)
    double h = 0.0;      // spacing 2/(N-1)
    std::vector<double> nodes;

    ZetaGrid() = default;
    ZetaGrid(int complex_dim, int N);

    bool operator==(const ZetaGrid& o) const {
        return n == o.n && num_nodes == o.num_nodes;
    }
};

/// Node values of an axisymmetric scalar on a ZetaGrid.
struct AxiProfile {
    const ZetaGrid* grid = nullptr;
    std::vector<double> values;

    AxiProfile() = default;
    AxiProfile(const ZetaGrid& g, double fill = 0.0)
        : grid(&g), values(static_cast<std::size_t>(g.num_nodes), fill) {}

    template <class F>
    static AxiProfile from_function(const ZetaGrid& g, F&& f) {
        AxiProfile p(g);
        for (int i = 0; i < g.num_nodes; ++i) p.values[i] = f(g.nodes[i]);
        return p;
    }

    double& operator[](int i) { return values[i]; }
    double operator[](int i) const { return values[i]; }
    int size() const { return grid ? grid->num_nodes : 0; }

    double min() const;
    double max() const;
    double max_abs() const;
    bool all_finite() const;
};

struct Derivatives {
    AxiProfile d1;
    AxiProfile d2;
};

/// First and second zeta-derivatives: 4th-order centered stencils in the
/// interior, 4th-order one-sided stencils on the two boundary bands.
/// Exact on polynomials of degree <= 4.
Derivatives differentiate(const AxiProfile& u);

/// Local polynomial interpolation (degree 8, 9 nearest nodes). Used by the
/// finite-difference oracles to evaluate a profile off the grid.
double interpolate(const AxiProfile& u, double zeta);

}  // namespace imcf
