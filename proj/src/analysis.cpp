#include "compdiff/analysis.hpp"

#include <cmath>
#include <sstream>

namespace compdiff {

namespace {

void require_stationary(const CoefficientSet& coeffs, const char* who) {
    if (!coeffs.stationary()) {
        std::ostringstream msg;
        msg << who << " requires time-independent K and r";
        throw ConfigError(msg.str());
    }
}

double harvest_of(Species s, const ModelParams& p) { return s == Species::U ? p.mu : p.nu; }
double diffusion_of(Species s, const ModelParams& p) { return s == Species::U ? p.d1 : p.d2; }

}  // namespace

SteadyState steady_state_single(Species which, const CoefficientSet& coeffs,
                                const ModelParams& params, double tol, const Grid& g,
                                const SteadyStateOptions& options) {
    require_stationary(coeffs, "steady_state_single");
    params.validate();
    const double harvest = harvest_of(which, params);
    const double d = diffusion_of(which, params);

    if (harvest >= 1.0) {
        // over-harvested branch: the only stationary limit is trivial
        return SteadyState{ScalarField(g, 0.0), which, 0.0, 0, true};
    }

    const ScalarField K = coeffs.sample_K(g, 0.0);
    const ScalarField r = coeffs.sample_r(g, 0.0);

    ScalarField w(g);
    for (std::size_t k = 0; k < w.values.size(); ++k) {
        w.values[k] = (1.0 - harvest) * K.values[k];
    }

    long steps = 0;
    bool converged = false;
    while (steps < options.max_steps) {
        ScalarField w_new =
            advance_species(w, r, K, harvest, /*combined=*/w, d, options.dt, options.solver);
        double diff = 0.0;
        for (std::size_t k = 0; k < w.values.size(); ++k) {
            diff = std::max(diff, std::abs(w_new.values[k] - w.values[k]));
        }
        w = std::move(w_new);
        ++steps;
        if (diff / options.dt < tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "steady-state marching did not converge in " << options.max_steps << " steps";
        throw NumericError(msg.str());
    }

    // discrete elliptic residual of d*Lw + r*w*(1 - harvest - w/K)
    const ScalarField lap = laplacian_neumann(w);
    double residual = 0.0;
    for (std::size_t k = 0; k < w.values.size(); ++k) {
        const double f = d * lap.values[k] +
                         r.values[k] * w.values[k] *
                             (1.0 - harvest - w.values[k] / K.values[k]);
        residual = std::max(residual, std::abs(f));
    }
    return SteadyState{std::move(w), which, residual, steps, false};
}

IntegralInequality check_K_inequality(const SteadyState& ss, const CoefficientSet& coeffs,
                                      const ModelParams& params) {
    require_stationary(coeffs, "check_K_inequality");
    const Grid& g = ss.field.grid;
    const double harvest = harvest_of(ss.species, params);
    const ScalarField K = coeffs.sample_K(g, 0.0);
    const ScalarField r = coeffs.sample_r(g, 0.0);

    ScalarField rK(g), rw(g);
    double k_min = K.values[0], k_max = K.values[0];
    for (std::size_t k = 0; k < K.values.size(); ++k) {
        rK.values[k] = r.values[k] * (1.0 - harvest) * K.values[k];
        rw.values[k] = r.values[k] * ss.field.values[k];
        k_min = std::min(k_min, K.values[k]);
        k_max = std::max(k_max, K.values[k]);
    }
    IntegralInequality out;
    out.lhs = integrate(rK);
    out.rhs = integrate(rw);
    if (k_max - k_min <= 1e-12 * std::abs(k_max)) {
        out.status = InequalityStatus::NotApplicable;  // constant K: equality expected
    } else {
        out.status = out.lhs > out.rhs ? InequalityStatus::Holds : InequalityStatus::Fails;
    }
    return out;
}

EigenPair principal_eigenvalue(double d, const ScalarField& potential,
                               const EigenOptions& options) {
    const Grid& g = potential.grid;
    const std::size_t N = potential.values.size();

    double q_min = potential.values[0];
    for (double q : potential.values) q_min = std::min(q_min, q);
    const double shift = std::abs(q_min) + d * 8.0 / (g.h * g.h);

    ScalarField w(g, 1.0);
    {
        const double norm = l2_norm(w);
        for (double& v : w.values) v /= norm;
    }

    double rq_prev = 0.0;
    bool have_prev = false;
    ScalarField y(g), resid(g);
    for (long it = 1; it <= options.max_iters; ++it) {
        // y = (A + shift I) w with A = d*L + diag(q)
        y = laplacian_neumann(w);
        for (std::size_t k = 0; k < N; ++k) {
            y.values[k] = d * y.values[k] + (potential.values[k] + shift) * w.values[k];
        }
        const double rq = inner_weighted(w, y) - shift;  // w has unit weighted norm
        for (std::size_t k = 0; k < N; ++k) {
            resid.values[k] = y.values[k] - (rq + shift) * w.values[k];
        }
        const double res = l2_norm(resid);
        if (have_prev && std::abs(rq - rq_prev) <= options.rq_tol * std::max(1.0, std::abs(rq)) &&
            res <= options.residual_tol) {
            return EigenPair{rq, w, res, it};
        }
        rq_prev = rq;
        have_prev = true;
        const double y_norm = l2_norm(y);
        if (!(y_norm > 0.0)) {
            throw NumericError("power iteration collapsed to the zero field");
        }
        for (std::size_t k = 0; k < N; ++k) w.values[k] = y.values[k] / y_norm;
    }
    std::ostringstream msg;
    msg << "power iteration did not reach residual " << options.residual_tol << " in "
        << options.max_iters << " iterations";
    throw NumericError(msg.str());
}

ScalarField linearized_potential_at_semitrivial(Species invader, const SteadyState& resident,
                                                const CoefficientSet& coeffs,
                                                const ModelParams& params) {
    require_stationary(coeffs, "linearized_potential_at_semitrivial");
    const Grid& g = resident.field.grid;
    const double h_inv = harvest_of(invader, params);
    const ScalarField K = coeffs.sample_K(g, 0.0);
    const ScalarField r = coeffs.sample_r(g, 0.0);

    // (1-h)*r*(1 - w/((1-h)K)) written as (1-h)*r - r*w/K, total in h
    ScalarField q(g);
    for (std::size_t k = 0; k < q.values.size(); ++k) {
        q.values[k] = (1.0 - h_inv) * r.values[k] -
                      r.values[k] * resident.field.values[k] / K.values[k];
    }
    return q;
}

namespace {

// centered interior, one-sided at the boundary
void gradient(const ScalarField& f, ScalarField& fx, ScalarField& fy) {
    const Grid& g = f.grid;
    const int n = g.n;
    const double inv_h = 1.0 / g.h;
    const double inv_2h = 0.5 * inv_h;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (i == 0) {
                fx.at(i, j) = (f.at(1, j) - f.at(0, j)) * inv_h;
            } else if (i == n - 1) {
                fx.at(i, j) = (f.at(n - 1, j) - f.at(n - 2, j)) * inv_h;
            } else {
                fx.at(i, j) = (f.at(i + 1, j) - f.at(i - 1, j)) * inv_2h;
            }
            if (j == 0) {
                fy.at(i, j) = (f.at(i, 1) - f.at(i, 0)) * inv_h;
            } else if (j == n - 1) {
                fy.at(i, j) = (f.at(i, n - 1) - f.at(i, n - 2)) * inv_h;
            } else {
                fy.at(i, j) = (f.at(i, j + 1) - f.at(i, j - 1)) * inv_2h;
            }
        }
    }
}

double threshold_from_eigenfunction(const SteadyState& resident, const CoefficientSet& coeffs,
                                    const ModelParams& params, Species invader,
                                    const EigenOptions& options) {
    const Grid& g = resident.field.grid;
    const ScalarField q = linearized_potential_at_semitrivial(invader, resident, coeffs, params);
    const EigenPair pair = principal_eigenvalue(diffusion_of(invader, params), q, options);
    const ScalarField& psi = pair.eigenfunction;

    ScalarField px(g), py(g);
    gradient(psi, px, py);

    const ScalarField K = coeffs.sample_K(g, 0.0);
    const ScalarField r = coeffs.sample_r(g, 0.0);
    ScalarField grad2(g), r_psi2_wK(g), r_psi2(g);
    for (std::size_t k = 0; k < grad2.values.size(); ++k) {
        const double p2 = psi.values[k] * psi.values[k];
        grad2.values[k] = px.values[k] * px.values[k] + py.values[k] * py.values[k];
        r_psi2_wK.values[k] = r.values[k] * p2 * resident.field.values[k] / K.values[k];
        r_psi2.values[k] = r.values[k] * p2;
    }
    const double denom = integrate(r_psi2);
    if (denom <= 1e-14) {
        throw NumericError("degenerate denominator in the threshold estimate (int r*Psi^2 ~ 0)");
    }
    const double numer =
        diffusion_of(invader, params) * integrate(grad2) + integrate(r_psi2_wK);
    return 1.0 - numer / denom;
}

}  // namespace

double nu1_estimate(const SteadyState& ss_u, const CoefficientSet& coeffs,
                    const ModelParams& params, const EigenOptions& options) {
    if (ss_u.species != Species::U) {
        throw ConfigError("nu1_estimate expects the steady state of species u");
    }
    return threshold_from_eigenfunction(ss_u, coeffs, params, Species::V, options);
}

double mu1_estimate(const SteadyState& ss_v, const CoefficientSet& coeffs,
                    const ModelParams& params, const EigenOptions& options) {
    if (ss_v.species != Species::V) {
        throw ConfigError("mu1_estimate expects the steady state of species v");
    }
    return threshold_from_eigenfunction(ss_v, coeffs, params, Species::U, options);
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::Coexist: return "Coexist";
        case Regime::UExtinctVSurvives: return "UExtinct_VSurvives";
        case Regime::VExtinctUSurvives: return "VExtinct_USurvives";
        case Regime::BothExtinct: return "BothExtinct";
        case Regime::CoexistConditional: return "CoexistConditional";
        case Regime::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

Regime classify_regime(const ModelParams& params, const std::optional<Thresholds>& thresholds) {
    params.validate();
    const double mu = params.mu;
    const double nu = params.nu;
    if (mu >= 1.0 && nu >= 1.0) return Regime::BothExtinct;
    if (mu >= 1.0) return Regime::UExtinctVSurvives;
    if (nu >= 1.0) return Regime::VExtinctUSurvives;
    if (thresholds) {
        if (mu <= nu && thresholds->nu1 && nu < *thresholds->nu1) return Regime::Coexist;
        if (nu <= mu && thresholds->mu1 && mu < *thresholds->mu1) return Regime::Coexist;
    }
    return Regime::CoexistConditional;
}

Regime detect_outcome(const Trajectory& traj, double extinct_tol, int window) {
    if (window < 1) throw ConfigError("detect_outcome window must be >= 1");
    if (traj.records.size() < static_cast<std::size_t>(window)) {
        throw ConfigError("trajectory has fewer records than the detection window");
    }
    const std::size_t begin = traj.records.size() - static_cast<std::size_t>(window);

    bool u_below = true, u_above = true, v_below = true, v_above = true;
    for (std::size_t k = begin; k < traj.records.size(); ++k) {
        const EnergyRecord& rec = traj.records[k];
        if (rec.energy_u < extinct_tol) {
            u_above = false;
        } else {
            u_below = false;
        }
        if (rec.energy_v < extinct_tol) {
            v_above = false;
        } else {
            v_below = false;
        }
    }
    if ((!u_below && !u_above) || (!v_below && !v_above)) {
        return Regime::Undetermined;  // crossing the threshold inside the window
    }
    if (u_below && v_below) return Regime::BothExtinct;
    if (u_below) return Regime::UExtinctVSurvives;
    if (v_below) return Regime::VExtinctUSurvives;
    return Regime::Coexist;
}

}  // namespace compdiff
