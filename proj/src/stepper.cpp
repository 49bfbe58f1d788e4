#include "compdiff/stepper.hpp"

#include <cmath>
#include <sstream>

namespace compdiff {

void ModelParams::validate() const {
    std::ostringstream bad;
    if (!(d1 > 0.0)) bad << "params.d1 must be > 0 (got " << d1 << "); ";
    if (!(d2 > 0.0)) bad << "params.d2 must be > 0 (got " << d2 << "); ";
    if (!(mu >= 0.0)) bad << "params.mu must be >= 0 (got " << mu << "); ";
    if (!(nu >= 0.0)) bad << "params.nu must be >= 0 (got " << nu << "); ";
    const std::string msg = bad.str();
    if (!msg.empty()) throw ConfigError(msg);
}

void SparseMatrix::apply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(static_cast<std::size_t>(rows), 0.0);
    for (int row = 0; row < rows; ++row) {
        double acc = 0.0;
        for (int k = row_ptr[static_cast<std::size_t>(row)];
             k < row_ptr[static_cast<std::size_t>(row) + 1]; ++k) {
            acc += vals[static_cast<std::size_t>(k)] *
                   x[static_cast<std::size_t>(cols[static_cast<std::size_t>(k)])];
        }
        y[static_cast<std::size_t>(row)] = acc;
    }
}

StepOperator StepOperator::assemble(const Grid& g, double dt, double diffusion,
                                    const ScalarField& reaction, const ScalarField& previous) {
    const int n = g.n;
    const int N = g.num_vertices();
    const double inv_h = 1.0 / g.h;

    StepOperator op{SparseMatrix{}, std::vector<double>(static_cast<std::size_t>(N)), g, dt, 0.0};
    op.matrix.rows = N;
    op.matrix.row_ptr.reserve(static_cast<std::size_t>(N) + 1);
    op.matrix.cols.reserve(static_cast<std::size_t>(N) * 5);
    op.matrix.vals.reserve(static_cast<std::size_t>(N) * 5);
    op.matrix.row_ptr.push_back(0);

    double min_c = reaction.values[0];
    for (double c : reaction.values) min_c = std::min(min_c, c);
    op.min_reaction = min_c;

    for (int j = 0; j < n; ++j) {
        const double wy = axis_weight(g, j);
        for (int i = 0; i < n; ++i) {
            const double wx = axis_weight(g, i);
            const double mass = wx * wy;
            const double c = reaction.at(i, j);

            // 1D stiffness diagonal is 1/h per existing neighbor.
            const int x_neighbors = (i > 0) + (i < n - 1);
            const int y_neighbors = (j > 0) + (j < n - 1);
            const double diag = mass * (1.0 / dt + c) +
                                diffusion * inv_h * (x_neighbors * wy + y_neighbors * wx);
            const double off_x = -diffusion * inv_h * wy;
            const double off_y = -diffusion * inv_h * wx;

            // columns in ascending linear-index order
            if (j > 0) {
                op.matrix.cols.push_back(g.index(i, j - 1));
                op.matrix.vals.push_back(off_y);
            }
            if (i > 0) {
                op.matrix.cols.push_back(g.index(i - 1, j));
                op.matrix.vals.push_back(off_x);
            }
            op.matrix.cols.push_back(g.index(i, j));
            op.matrix.vals.push_back(diag);
            if (i < n - 1) {
                op.matrix.cols.push_back(g.index(i + 1, j));
                op.matrix.vals.push_back(off_x);
            }
            if (j < n - 1) {
                op.matrix.cols.push_back(g.index(i, j + 1));
                op.matrix.vals.push_back(off_y);
            }
            op.matrix.row_ptr.push_back(static_cast<int>(op.matrix.cols.size()));

            op.rhs[static_cast<std::size_t>(g.index(i, j))] = mass * previous.at(i, j) / dt;
        }
    }
    return op;
}

namespace {

ScalarField reaction_from_samples(const ScalarField& growth, const ScalarField& capacity,
                                  double harvest, const ScalarField& combined) {
    ScalarField c(growth.grid);
    const std::size_t N = c.values.size();
    for (std::size_t k = 0; k < N; ++k) {
        c.values[k] = growth.values[k] * (harvest - 1.0 + combined.values[k] / capacity.values[k]);
    }
    return c;
}

ScalarField combined_density(const State& s) {
    ScalarField sum(s.u.grid);
    for (std::size_t k = 0; k < sum.values.size(); ++k) {
        sum.values[k] = s.u.values[k] + s.v.values[k];
    }
    return sum;
}

void guard_definiteness(const StepOperator& op) {
    if (op.definite()) return;
    std::ostringstream msg;
    msg << "definiteness guard failed: 1/dt + min(c) = " << 1.0 / op.dt + op.min_reaction
        << " <= 0 with dt=" << op.dt;
    if (op.min_reaction < 0.0) {
        msg << "; maximal admissible dt is " << 1.0 / (-op.min_reaction) << " (exclusive)";
    }
    throw NumericError(msg.str());
}

// Round-off clamp after a guarded solve: the step matrix is an M-matrix, so
// the exact update of nonnegative data is nonnegative; anything below the
// round-off band signals a real failure.
void clamp_negative(ScalarField& f) {
    for (double& v : f.values) {
        if (v < 0.0) {
            if (v >= -1e-12) {
                v = 0.0;
            } else {
                std::ostringstream msg;
                msg << "solution lost positivity beyond round-off: value " << v;
                throw NumericError(msg.str());
            }
        }
    }
    if (!all_finite(f)) {
        throw NumericError("solution contains non-finite values");
    }
}

}  // namespace

ScalarField reaction_coefficient_u(const State& s, const CoefficientSet& coeffs,
                                   const ModelParams& p, double t_new) {
    const Grid& g = s.u.grid;
    return reaction_from_samples(coeffs.sample_r(g, t_new), coeffs.sample_K(g, t_new), p.mu,
                                 combined_density(s));
}

ScalarField reaction_coefficient_v(const State& s, const CoefficientSet& coeffs,
                                   const ModelParams& p, double t_new) {
    const Grid& g = s.u.grid;
    return reaction_from_samples(coeffs.sample_r(g, t_new), coeffs.sample_K(g, t_new), p.nu,
                                 combined_density(s));
}

ScalarField solve_spd(const StepOperator& op, const SolverSettings& settings,
                      const ScalarField* initial_guess) {
    if (settings.dt_guard) guard_definiteness(op);
    const int N = op.matrix.rows;
    const std::size_t Nz = static_cast<std::size_t>(N);

    std::vector<double> inv_diag(Nz);
    for (int row = 0; row < N; ++row) {
        double d = 0.0;
        for (int k = op.matrix.row_ptr[static_cast<std::size_t>(row)];
             k < op.matrix.row_ptr[static_cast<std::size_t>(row) + 1]; ++k) {
            if (op.matrix.cols[static_cast<std::size_t>(k)] == row) {
                d = op.matrix.vals[static_cast<std::size_t>(k)];
            }
        }
        if (!(d > 0.0)) {
            throw NumericError("nonpositive diagonal in the step matrix; system is not SPD");
        }
        inv_diag[static_cast<std::size_t>(row)] = 1.0 / d;
    }

    auto dot = [N](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (int k = 0; k < N; ++k) {
            s += a[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(k)];
        }
        return s;
    };

    ScalarField result(op.grid);
    std::vector<double>& x = result.values;
    if (initial_guess) x = initial_guess->values;

    // preconditioned norm of the rhs sets the termination scale
    double rho_b = 0.0;
    for (std::size_t k = 0; k < Nz; ++k) {
        rho_b += op.rhs[k] * op.rhs[k] * inv_diag[k];
    }
    if (rho_b == 0.0) {
        x.assign(Nz, 0.0);
        return result;
    }
    const double tol2 = settings.rel_tol * settings.rel_tol * rho_b;

    std::vector<double> r(Nz), z(Nz), p(Nz), q(Nz);
    op.matrix.apply(x, q);
    for (std::size_t k = 0; k < Nz; ++k) r[k] = op.rhs[k] - q[k];
    for (std::size_t k = 0; k < Nz; ++k) z[k] = r[k] * inv_diag[k];
    double rho = dot(r, z);
    if (rho <= tol2) return result;
    p = z;

    const int max_iters = settings.max_iters > 0 ? settings.max_iters : 10 * N;
    for (int it = 0; it < max_iters; ++it) {
        op.matrix.apply(p, q);
        const double pq = dot(p, q);
        if (!(pq > 0.0)) {
            throw NumericError("conjugate gradients broke down (matrix not positive definite)");
        }
        const double alpha = rho / pq;
        for (std::size_t k = 0; k < Nz; ++k) x[k] += alpha * p[k];
        for (std::size_t k = 0; k < Nz; ++k) r[k] -= alpha * q[k];
        for (std::size_t k = 0; k < Nz; ++k) z[k] = r[k] * inv_diag[k];
        const double rho_new = dot(r, z);
        if (rho_new <= tol2) return result;
        const double beta = rho_new / rho;
        rho = rho_new;
        for (std::size_t k = 0; k < Nz; ++k) p[k] = z[k] + beta * p[k];
    }

    std::ostringstream msg;
    msg << "conjugate gradients did not converge in " << max_iters
        << " iterations; preconditioned relative residual " << std::sqrt(rho / rho_b);
    throw NumericError(msg.str());
}

ScalarField advance_species(const ScalarField& previous, const ScalarField& growth,
                            const ScalarField& capacity, double harvest,
                            const ScalarField& combined, double diffusion, double dt,
                            const SolverSettings& settings) {
    const ScalarField c = reaction_from_samples(growth, capacity, harvest, combined);
    const StepOperator op = StepOperator::assemble(previous.grid, dt, diffusion, c, previous);
    ScalarField next = solve_spd(op, settings, &previous);
    clamp_negative(next);
    return next;
}

State step(const State& s, const CoefficientSet& coeffs, const ModelParams& p, double dt,
           const SolverSettings& settings) {
    const Grid& g = s.u.grid;
    const double t_new = s.t + dt;
    return step_sampled(s, coeffs.sample_K(g, t_new), coeffs.sample_r(g, t_new), p, dt,
                        settings);
}

State step_sampled(const State& s, const ScalarField& K, const ScalarField& r,
                   const ModelParams& p, double dt, const SolverSettings& settings) {
    if (!(dt > 0.0)) throw ConfigError("time step must be positive");
    const Grid& g = s.u.grid;
    const double t_new = s.t + dt;
    const ScalarField sum = combined_density(s);

    const ScalarField c_u = reaction_from_samples(r, K, p.mu, sum);
    const ScalarField c_v = reaction_from_samples(r, K, p.nu, sum);

    const StepOperator op_u = StepOperator::assemble(g, dt, p.d1, c_u, s.u);
    const StepOperator op_v = StepOperator::assemble(g, dt, p.d2, c_v, s.v);

    ScalarField u_new = solve_spd(op_u, settings, &s.u);
    ScalarField v_new = solve_spd(op_v, settings, &s.v);
    clamp_negative(u_new);
    clamp_negative(v_new);
    return State{std::move(u_new), std::move(v_new), t_new};
}

TransformedSystem transform_parameters(const ModelParams& p, const CoefficientSet& coeffs) {
    if (p.mu >= 1.0 || p.nu >= 1.0) {
        std::ostringstream msg;
        msg << "the zero-harvesting transform needs mu, nu in [0,1), got mu=" << p.mu
            << ", nu=" << p.nu;
        throw ConfigError(msg.str());
    }
    return TransformedSystem{coeffs.r.scaled_by(1.0 - p.mu), coeffs.r.scaled_by(1.0 - p.nu),
                             coeffs.K.scaled_by(1.0 - p.mu), coeffs.K.scaled_by(1.0 - p.nu)};
}

State step_transformed(const State& s, const TransformedSystem& sys, const ModelParams& p,
                       double dt, const SolverSettings& settings) {
    if (!(dt > 0.0)) throw ConfigError("time step must be positive");
    const Grid& g = s.u.grid;
    const double t_new = s.t + dt;
    const ScalarField sum = combined_density(s);

    ScalarField u_new =
        advance_species(s.u, sys.growth_u.sample(g, t_new), sys.capacity_u.sample(g, t_new), 0.0,
                        sum, p.d1, dt, settings);
    ScalarField v_new =
        advance_species(s.v, sys.growth_v.sample(g, t_new), sys.capacity_v.sample(g, t_new), 0.0,
                        sum, p.d2, dt, settings);
    return State{std::move(u_new), std::move(v_new), t_new};
}

}  // namespace compdiff
