#include "compdiff/coefficients.hpp"

#include <sstream>

namespace compdiff {

namespace {

[[noreturn]] void report_violation(const char* what, const Grid& g, int i, int j, double t,
                                   double value) {
    std::ostringstream msg;
    msg << what << " at vertex (" << i << "," << j << "), x=" << g.x(i) << ", y=" << g.y(j)
        << ", t=" << t << " (value " << value << ")";
    throw NumericError(msg.str());
}

}  // namespace

CoefficientSet CoefficientSet::from_strings(std::string_view K_src, std::string_view r_src,
                                            std::string_view u0_src, std::string_view v0_src) {
    return CoefficientSet{CoeffExpr::parse(K_src), CoeffExpr::parse(r_src),
                          CoeffExpr::parse(u0_src), CoeffExpr::parse(v0_src)};
}

ScalarField CoefficientSet::sample_K(const Grid& g, double t) const {
    ScalarField f = K.sample(g, t);
    for (int j = 0; j < g.n; ++j) {
        for (int i = 0; i < g.n; ++i) {
            if (!(f.at(i, j) > 0.0)) {
                report_violation("carrying capacity K must be positive", g, i, j, t, f.at(i, j));
            }
        }
    }
    return f;
}

ScalarField CoefficientSet::sample_r(const Grid& g, double t, bool* touches_zero) const {
    ScalarField f = r.sample(g, t);
    bool zero = false;
    for (int j = 0; j < g.n; ++j) {
        for (int i = 0; i < g.n; ++i) {
            const double v = f.at(i, j);
            if (v < 0.0) {
                report_violation("growth rate r must be nonnegative", g, i, j, t, v);
            }
            zero = zero || v == 0.0;
        }
    }
    if (touches_zero) *touches_zero = zero;
    return f;
}

std::pair<ScalarField, ScalarField> CoefficientSet::sample_initial(const Grid& g) const {
    ScalarField fu = u0.sample(g, 0.0);
    ScalarField fv = v0.sample(g, 0.0);
    for (int j = 0; j < g.n; ++j) {
        for (int i = 0; i < g.n; ++i) {
            if (fu.at(i, j) < 0.0) {
                report_violation("initial density u0 must be nonnegative", g, i, j, 0.0,
                                 fu.at(i, j));
            }
            if (fv.at(i, j) < 0.0) {
                report_violation("initial density v0 must be nonnegative", g, i, j, 0.0,
                                 fv.at(i, j));
            }
        }
    }
    return {std::move(fu), std::move(fv)};
}

}  // namespace compdiff
