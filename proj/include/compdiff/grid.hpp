#pragma once

#include <vector>

#include "compdiff/errors.hpp"

namespace compdiff {

// Uniform vertex-centered grid on the closed unit square.
// Vertex (i,j) sits at (x,y) = (i*h, j*h) with h = 1/(n-1).
struct Grid {
    int n = 0;      // points per side, n >= 3
    double h = 0.0; // spacing, exactly 1/(n-1)

    explicit Grid(int points_per_side);

    int num_vertices() const { return n * n; }
    int index(int i, int j) const { return i + j * n; }
    double x(int i) const { return i * h; }
    double y(int j) const { return j * h; }

    bool operator==(const Grid& other) const { return n == other.n; }
};

// Grid-sampled scalar function. Row-major storage with the x index fastest:
// values[i + j*n] holds the sample at (i*h, j*h).
struct ScalarField {
    Grid grid;
    std::vector<double> values;

    explicit ScalarField(const Grid& g, double fill = 0.0)
        : grid(g), values(static_cast<std::size_t>(g.num_vertices()), fill) {}

    double& at(int i, int j) { return values[static_cast<std::size_t>(grid.index(i, j))]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(grid.index(i, j))]; }
};

// Per-vertex trapezoidal quadrature weights (units of area): h^2 in the
// interior, h^2/2 on edges, h^2/4 at corners. Weights sum to 1.
struct QuadratureWeights {
    Grid grid;
    std::vector<double> weights;

    static QuadratureWeights make(const Grid& g);
};

// 1D trapezoid weight along one axis: h/2 at the ends, h inside.
inline double axis_weight(const Grid& g, int i) {
    return (i == 0 || i == g.n - 1) ? 0.5 * g.h : g.h;
}

// Standard 5-point Laplacian with homogeneous Neumann boundary imposed by
// ghost-point reflection (the ghost value equals the interior mirror value).
// Second-order accurate on smooth functions satisfying the boundary
// condition, and self-adjoint in the weighted inner product below.
ScalarField laplacian_neumann(const ScalarField& f);

// Trapezoidal quadrature over the unit square; exact on bilinear functions.
double integrate(const ScalarField& f);

// (1/2) * integral of f^2.
double energy(const ScalarField& f);

// Integral of f.
double total_mass(const ScalarField& f);

// Quadrature-weighted inner product and norms. l2_norm is the discrete
// L2(Omega) norm, sqrt(<f,f>_w).
double inner_weighted(const ScalarField& f, const ScalarField& g);
double l2_norm(const ScalarField& f);
double max_abs(const ScalarField& f);

bool all_finite(const ScalarField& f);

}  // namespace compdiff
