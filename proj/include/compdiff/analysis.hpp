#pragma once

#include <optional>
#include <string>

#include "compdiff/stepper.hpp"
#include "compdiff/trajectory.hpp"

namespace compdiff {

enum class Species { U, V };

// Single-species stationary profile u* (or v*): the solution of
// d*Lap(w) + (1-harvest)*r*w*(1 - w/((1-harvest)K)) = 0 under Neumann
// conditions, found by time marching. trivial is set when the species'
// harvesting coefficient is >= 1 and only the zero limit exists.
struct SteadyState {
    ScalarField field;
    Species species = Species::U;
    double residual = 0.0;  // sup norm of the discrete elliptic residual
    long iterations = 0;    // marching steps taken
    bool trivial = false;
};

struct SteadyStateOptions {
    double dt = 0.1;
    long max_steps = 1000000;
    SolverSettings solver{1e-12, 0, true};
};

// Marches the single-species equation (the other species held at zero) from
// the sampled (1-harvest)*K until the update stalls:
// max|w_new - w| / dt < tol. Requires stationary K and r.
SteadyState steady_state_single(Species which, const CoefficientSet& coeffs,
                                const ModelParams& params, double tol, const Grid& g,
                                const SteadyStateOptions& options = {});

enum class InequalityStatus { Holds, Fails, NotApplicable };

struct IntegralInequality {
    double lhs = 0.0;  // integral of r*(1-harvest)*K
    double rhs = 0.0;  // integral of r*w_star
    InequalityStatus status = InequalityStatus::NotApplicable;
};

// The comparison integral r*K_i dx > integral r*w* dx for the steady
// state's species. NotApplicable when the sampled K is constant (the
// hypothesis d*Lap(K_i) != 0 fails and equality is expected).
IntegralInequality check_K_inequality(const SteadyState& ss, const CoefficientSet& coeffs,
                                      const ModelParams& params);

struct EigenPair {
    double lambda = 0.0;
    ScalarField eigenfunction;  // nonnegative, weighted-L2 norm 1
    double residual = 0.0;      // |A psi - lambda psi| in the weighted L2 norm
    long iterations = 0;
};

struct EigenOptions {
    double rq_tol = 1e-10;       // Rayleigh quotient stabilization
    double residual_tol = 1e-8;  // certified eigen-residual
    long max_iters = 5000000;
};

// Largest eigenvalue of A = d*L + diag(q) by shifted power iteration with
// shift s = |min q| + d*8/h^2 (making A + sI nonnegative and PSD-dominant).
// Iterates from the all-ones field, which has positive overlap with the
// principal eigenfunction; iterates stay nonnegative.
EigenPair principal_eigenvalue(double d, const ScalarField& potential,
                               const EigenOptions& options = {});

// Potential of the linearization at a semi-trivial state, for the species
// trying to invade it: q = (1-h_inv)*r - r*w_resident/K where h_inv is the
// invader's harvesting coefficient. With a trivial resident this reduces to
// the trivial-state potential (1-h_inv)*r.
ScalarField linearized_potential_at_semitrivial(Species invader, const SteadyState& resident,
                                                const CoefficientSet& coeffs,
                                                const ModelParams& params);

// Harvesting threshold nu_1 = 1 - (d2*Int|grad Psi|^2 + Int r Psi^2 u*/K)
//                               / Int r Psi^2
// with Psi the principal eigenfunction of the v-linearization at (u*,0).
// mu1_estimate exchanges the species roles. Gradients use centered
// differences with one-sided boundary stencils.
double nu1_estimate(const SteadyState& ss_u, const CoefficientSet& coeffs,
                    const ModelParams& params, const EigenOptions& options = {});
double mu1_estimate(const SteadyState& ss_v, const CoefficientSet& coeffs,
                    const ModelParams& params, const EigenOptions& options = {});

enum class Regime {
    Coexist,
    UExtinctVSurvives,
    VExtinctUSurvives,
    BothExtinct,
    CoexistConditional,
    Undetermined,
};

std::string to_string(Regime r);

struct Thresholds {
    std::optional<double> nu1;
    std::optional<double> mu1;
};

// Prediction from (mu, nu) alone:
//   mu,nu >= 1            -> BothExtinct
//   nu < 1 <= mu          -> UExtinctVSurvives
//   mu < 1 <= nu          -> VExtinctUSurvives
//   mu,nu in [0,1)        -> Coexist when the applicable threshold condition
//                            (nu < nu1 for mu <= nu, mu < mu1 for nu <= mu)
//                            is verified, else CoexistConditional.
Regime classify_regime(const ModelParams& params, const std::optional<Thresholds>& thresholds = {});

// Observed outcome from the recorded energies: a species is extinct when
// its energy stays below extinct_tol over the final `window` records;
// crossing the threshold inside the window is Undetermined.
Regime detect_outcome(const Trajectory& traj, double extinct_tol = 1e-8, int window = 50);

struct RegimeReport {
    Regime predicted = Regime::CoexistConditional;
    Regime observed = Regime::Undetermined;
    std::optional<double> nu1;
    std::optional<double> mu1;
};

}  // namespace compdiff
