#include "compdiff/grid.hpp"

#include <cmath>

namespace compdiff {

Grid::Grid(int points_per_side) : n(points_per_side) {
    if (n < 3) {
        throw ConfigError("grid needs at least 3 points per side, got " +
                          std::to_string(n));
    }
    h = 1.0 / static_cast<double>(n - 1);
}

QuadratureWeights QuadratureWeights::make(const Grid& g) {
    QuadratureWeights q{g, std::vector<double>(static_cast<std::size_t>(g.num_vertices()))};
    for (int j = 0; j < g.n; ++j) {
        const double wy = axis_weight(g, j);
        for (int i = 0; i < g.n; ++i) {
            q.weights[static_cast<std::size_t>(g.index(i, j))] = axis_weight(g, i) * wy;
        }
    }
    return q;
}

ScalarField laplacian_neumann(const ScalarField& f) {
    const Grid& g = f.grid;
    ScalarField out(g);
    const double inv_h2 = 1.0 / (g.h * g.h);
    const int n = g.n;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double c = f.at(i, j);
            const double xm = (i == 0) ? f.at(1, j) : f.at(i - 1, j);
            const double xp = (i == n - 1) ? f.at(n - 2, j) : f.at(i + 1, j);
            const double ym = (j == 0) ? f.at(i, 1) : f.at(i, j - 1);
            const double yp = (j == n - 1) ? f.at(i, n - 2) : f.at(i, j + 1);
            out.at(i, j) = (xm + xp + ym + yp - 4.0 * c) * inv_h2;
        }
    }
    return out;
}

double integrate(const ScalarField& f) {
    const Grid& g = f.grid;
    double total = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const double wy = axis_weight(g, j);
        double row = 0.0;
        for (int i = 0; i < g.n; ++i) {
            row += axis_weight(g, i) * f.at(i, j);
        }
        total += wy * row;
    }
    return total;
}

double energy(const ScalarField& f) {
    const Grid& g = f.grid;
    double total = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const double wy = axis_weight(g, j);
        double row = 0.0;
        for (int i = 0; i < g.n; ++i) {
            const double v = f.at(i, j);
            row += axis_weight(g, i) * v * v;
        }
        total += wy * row;
    }
    return 0.5 * total;
}

double total_mass(const ScalarField& f) { return integrate(f); }

double inner_weighted(const ScalarField& f, const ScalarField& g) {
    const Grid& grid = f.grid;
    double total = 0.0;
    for (int j = 0; j < grid.n; ++j) {
        const double wy = axis_weight(grid, j);
        double row = 0.0;
        for (int i = 0; i < grid.n; ++i) {
            row += axis_weight(grid, i) * f.at(i, j) * g.at(i, j);
        }
        total += wy * row;
    }
    return total;
}

double l2_norm(const ScalarField& f) { return std::sqrt(inner_weighted(f, f)); }

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

bool all_finite(const ScalarField& f) {
    for (double v : f.values) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

}  // namespace compdiff
