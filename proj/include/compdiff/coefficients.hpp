#pragma once

#include <utility>

#include "compdiff/expr.hpp"

namespace compdiff {

// Carrying capacity K, intrinsic growth rate r, and initial data for the
// two species. Model assumptions (K > 0, r >= 0, nonnegative initial data)
// are enforced when sampling, not at parse time, so violations of a
// time-dependent K are caught at the step where they occur.
struct CoefficientSet {
    CoeffExpr K;
    CoeffExpr r;
    CoeffExpr u0;
    CoeffExpr v0;

    static CoefficientSet from_strings(std::string_view K_src, std::string_view r_src,
                                       std::string_view u0_src, std::string_view v0_src);

    // Throws NumericError if any sample is <= 0.
    ScalarField sample_K(const Grid& g, double t) const;

    // Throws NumericError if any sample is < 0. Sets *touches_zero (when
    // given) if min r == 0, which some results assume away; the caller may
    // surface a warning.
    ScalarField sample_r(const Grid& g, double t, bool* touches_zero = nullptr) const;

    // Initial fields at t=0; throws NumericError if either is negative
    // anywhere.
    std::pair<ScalarField, ScalarField> sample_initial(const Grid& g) const;

    bool stationary() const { return !K.depends_on_time() && !r.depends_on_time(); }
};

}  // namespace compdiff
