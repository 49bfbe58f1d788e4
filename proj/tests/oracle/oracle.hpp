#pragma once

// Independent reference implementations used only for cross-verification.
// Production code never links this; the dependency direction is tests -> oracle.

#include <vector>

#include "compdiff/stepper.hpp"

namespace compdiff::oracle {

// Forward-Euler step with the same spatial operator as the production grid:
// u1 = u0 + dt*(d1*L u0 + r*u0*(1-(u0+v0)/K) - mu*r*u0), coefficients at
// the old time level. Throws NumericError when dt exceeds the explicit
// diffusion stability bound h^2/(4*max(d1,d2)).
State explicit_step(const State& s, const CoefficientSet& coeffs, const ModelParams& p,
                    double dt);

using DenseMatrix = std::vector<std::vector<double>>;

// Gaussian elimination with partial pivoting. Throws on singular input.
std::vector<double> dense_solve(DenseMatrix a, std::vector<double> b);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, iterated
// until the off-diagonal Frobenius norm is <= 1e-12 relative to the matrix
// scale (absolute for unit-scale input). Ascending order.
std::vector<double> dense_eigs(DenseMatrix a);

// Dense form of a production step operator, for direct-solve comparisons.
DenseMatrix dense_from_sparse(const SparseMatrix& m);

// Dense symmetrized form of A = d*L + diag(q): B = W^(1/2) A W^(-1/2) with
// W the quadrature weights. Same spectrum as A, suitable for dense_eigs.
DenseMatrix dense_eigen_operator(double d, const ScalarField& potential);

}  // namespace compdiff::oracle
