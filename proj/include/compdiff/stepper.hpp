#pragma once

#include <vector>

#include "compdiff/coefficients.hpp"
#include "compdiff/grid.hpp"

namespace compdiff {

// Dispersal rates and harvesting coefficients of the two-species model.
// Harvesting is proportional to the growth rate: E1 = mu*r, E2 = nu*r.
struct ModelParams {
    double d1 = 1.0;
    double d2 = 1.0;
    double mu = 0.0;
    double nu = 0.0;

    void validate() const;  // d1,d2 > 0 and mu,nu >= 0, else ConfigError
};

struct State {
    ScalarField u;
    ScalarField v;
    double t = 0.0;
};

struct SolverSettings {
    double rel_tol = 1e-10;
    int max_iters = 0;     // 0 picks 10*n^2 at solve time
    bool dt_guard = true;  // check positive definiteness before solving
};

// Symmetric sparse matrix in compressed row form, columns ascending per row.
struct SparseMatrix {
    int rows = 0;
    std::vector<int> row_ptr;
    std::vector<int> cols;
    std::vector<double> vals;

    void apply(const std::vector<double>& x, std::vector<double>& y) const;
};

// One species' implicit update, rearranged into a linear system. The matrix
// is the mass-weighted form M/dt + d*S + M*diag(c) (M the lumped trapezoid
// mass, S the weighted stiffness -M*L), which represents the same equations
// as (1/dt)I - d*L + diag(c) row by row but is symmetric, and positive
// definite whenever 1/dt + min(c) > 0. rhs holds M*u_prev/dt.
struct StepOperator {
    SparseMatrix matrix;
    std::vector<double> rhs;
    Grid grid;
    double dt = 0.0;
    double min_reaction = 0.0;  // min of c, for the definiteness guard

    static StepOperator assemble(const Grid& g, double dt, double diffusion,
                                 const ScalarField& reaction, const ScalarField& previous);

    bool definite() const { return 1.0 / dt + min_reaction > 0.0; }
};

// Frozen reaction coefficient of the u update: c_u = r*(mu - 1 + (u+v)/K),
// with K and r sampled at t_new, so the update solves
// (1/dt) u1 - d1*L u1 + c_u.*u1 = u0/dt. Throws on nonpositive K samples.
ScalarField reaction_coefficient_u(const State& s, const CoefficientSet& coeffs,
                                   const ModelParams& p, double t_new);
ScalarField reaction_coefficient_v(const State& s, const CoefficientSet& coeffs,
                                   const ModelParams& p, double t_new);

// Jacobi-preconditioned conjugate gradients. Terminates when the
// preconditioned residual norm drops below rel_tol times that of the rhs.
// Throws NumericError if the definiteness check fails (when enabled) or the
// iteration budget runs out.
ScalarField solve_spd(const StepOperator& op, const SolverSettings& settings,
                      const ScalarField* initial_guess = nullptr);

// One step of the fully discrete, decoupled, linearized backward-Euler
// scheme. The two species' systems share the frozen u+v data and nothing
// else; coefficients are evaluated at the new time level. Values in
// [-1e-12, 0) after the solve are clamped to 0; anything more negative is a
// NumericError.
State step(const State& s, const CoefficientSet& coeffs, const ModelParams& p, double dt,
           const SolverSettings& settings);

// Same update with K and r already sampled at the new time level (the
// driver caches stationary samples instead of re-evaluating expressions
// every step).
State step_sampled(const State& s, const ScalarField& K, const ScalarField& r,
                   const ModelParams& p, double dt, const SolverSettings& settings);

// The zero-harvesting parameterization: K1 = (1-mu)K, K2 = (1-nu)K and
// growth rates (1-mu)r, (1-nu)r. Stepping it with step_transformed produces
// iterates algebraically identical to step() on the original form.
// Requires mu < 1 and nu < 1.
struct TransformedSystem {
    CoeffExpr growth_u;
    CoeffExpr growth_v;
    CoeffExpr capacity_u;
    CoeffExpr capacity_v;
};

TransformedSystem transform_parameters(const ModelParams& p, const CoefficientSet& coeffs);

State step_transformed(const State& s, const TransformedSystem& sys, const ModelParams& p,
                       double dt, const SolverSettings& settings);

// Internal building block shared by both step flavors; advances one species
// given its sampled growth/capacity, harvesting coefficient, and the frozen
// combined density. Exposed for the decoupling and ordering tests.
ScalarField advance_species(const ScalarField& previous, const ScalarField& growth,
                            const ScalarField& capacity, double harvest,
                            const ScalarField& combined, double diffusion, double dt,
                            const SolverSettings& settings);

}  // namespace compdiff
