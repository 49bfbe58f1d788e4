#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace compdiff::oracle {

State explicit_step(const State& s, const CoefficientSet& coeffs, const ModelParams& p,
                    double dt) {
    const Grid& g = s.u.grid;
    const double bound = g.h * g.h / (4.0 * std::max(p.d1, p.d2));
    if (dt > bound) {
        std::ostringstream msg;
        msg << "explicit stability bound violated: dt=" << dt << " > h^2/(4 max d)=" << bound;
        throw NumericError(msg.str());
    }

    const ScalarField K = coeffs.sample_K(g, s.t);
    const ScalarField r = coeffs.sample_r(g, s.t);
    const ScalarField lap_u = laplacian_neumann(s.u);
    const ScalarField lap_v = laplacian_neumann(s.v);

    State next{ScalarField(g), ScalarField(g), s.t + dt};
    for (std::size_t k = 0; k < next.u.values.size(); ++k) {
        const double crowd = (s.u.values[k] + s.v.values[k]) / K.values[k];
        next.u.values[k] =
            s.u.values[k] + dt * (p.d1 * lap_u.values[k] +
                                  r.values[k] * s.u.values[k] * (1.0 - crowd) -
                                  p.mu * r.values[k] * s.u.values[k]);
        next.v.values[k] =
            s.v.values[k] + dt * (p.d2 * lap_v.values[k] +
                                  r.values[k] * s.v.values[k] * (1.0 - crowd) -
                                  p.nu * r.values[k] * s.v.values[k]);
    }
    return next;
}

std::vector<double> dense_solve(DenseMatrix a, std::vector<double> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        }
        if (std::abs(a[pivot][col]) < 1e-14) {
            throw NumericError("dense_solve: singular matrix");
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double f = a[row][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
            b[row] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t row = n; row-- > 0;) {
        double acc = b[row];
        for (std::size_t k = row + 1; k < n; ++k) acc -= a[row][k] * x[k];
        x[row] = acc / a[row][row];
    }
    return x;
}

namespace {

double off_diagonal_norm(const DenseMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (i != j) s += a[i][j] * a[i][j];
        }
    }
    return std::sqrt(s);
}

}  // namespace

std::vector<double> dense_eigs(DenseMatrix a) {
    const std::size_t n = a.size();
    // rounding stalls the off-norm near eps*|A|, so the target scales with
    // the matrix (1e-12 absolute for unit-scale input)
    double fro = 0.0;
    for (const auto& row : a) {
        for (double v : row) fro += v * v;
    }
    const double target = 1e-12 * std::max(1.0, std::sqrt(fro));
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps && off_diagonal_norm(a) > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    if (off_diagonal_norm(a) > target) {
        throw NumericError("dense_eigs: Jacobi sweeps did not reach the off-diagonal target");
    }
    std::vector<double> eigs(n);
    for (std::size_t i = 0; i < n; ++i) eigs[i] = a[i][i];
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

DenseMatrix dense_from_sparse(const SparseMatrix& m) {
    DenseMatrix a(static_cast<std::size_t>(m.rows),
                  std::vector<double>(static_cast<std::size_t>(m.rows), 0.0));
    for (int row = 0; row < m.rows; ++row) {
        for (int k = m.row_ptr[static_cast<std::size_t>(row)];
             k < m.row_ptr[static_cast<std::size_t>(row) + 1]; ++k) {
            a[static_cast<std::size_t>(row)][static_cast<std::size_t>(
                m.cols[static_cast<std::size_t>(k)])] = m.vals[static_cast<std::size_t>(k)];
        }
    }
    return a;
}

DenseMatrix dense_eigen_operator(double d, const ScalarField& potential) {
    const Grid& g = potential.grid;
    const std::size_t N = potential.values.size();
    const QuadratureWeights w = QuadratureWeights::make(g);

    DenseMatrix b(N, std::vector<double>(N, 0.0));
    ScalarField basis(g);
    for (std::size_t col = 0; col < N; ++col) {
        basis.values.assign(N, 0.0);
        basis.values[col] = 1.0;
        const ScalarField column = laplacian_neumann(basis);
        for (std::size_t row = 0; row < N; ++row) {
            double v = d * column.values[row];
            if (row == col) v += potential.values[row];
            b[row][col] = v * std::sqrt(w.weights[row] / w.weights[col]);
        }
    }
    return b;
}

}  // namespace compdiff::oracle
