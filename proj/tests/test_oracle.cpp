#include <cmath>

#include <doctest.h>

#include "oracle/oracle.hpp"

using namespace compdiff;

TEST_CASE("explicit step basics") {
    const Grid g(9);
    const CoefficientSet cs = CoefficientSet::from_strings("2", "0", "1.4", "0.7");
    auto [u0, v0] = cs.sample_initial(g);
    State s{std::move(u0), std::move(v0), 0.0};

    // r = 0: pure diffusion of constants changes nothing
    for (int n = 0; n < 5; ++n) {
        s = oracle::explicit_step(s, cs, ModelParams{1, 1, 0.5, 0.5}, 1e-3);
        for (double v : s.u.values) CHECK(v == 1.4);
        for (double v : s.v.values) CHECK(v == 0.7);
    }

    // fixed point shared with the implicit scheme
    const CoefficientSet fixed = CoefficientSet::from_strings("2", "1", "1", "0");
    auto [fu, fv] = fixed.sample_initial(g);
    State sf{std::move(fu), std::move(fv), 0.0};
    sf = oracle::explicit_step(sf, fixed, ModelParams{1, 1, 0.5, 0.0}, 1e-3);
    for (double v : sf.u.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));

    // stability bound h^2/(4 max d) is enforced
    CHECK_THROWS_AS(oracle::explicit_step(sf, fixed, ModelParams{1, 1, 0.5, 0.0}, 0.01),
                    NumericError);
}

TEST_CASE("dense solve and dense eigenvalues") {
    // identity
    {
        oracle::DenseMatrix eye(4, std::vector<double>(4, 0.0));
        for (int i = 0; i < 4; ++i) eye[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
        const std::vector<double> b = {1.0, -2.0, 3.5, 0.0};
        const std::vector<double> x = oracle::dense_solve(eye, b);
        for (int i = 0; i < 4; ++i) CHECK(x[static_cast<std::size_t>(i)] == b[static_cast<std::size_t>(i)]);
        const std::vector<double> eigs = oracle::dense_eigs(eye);
        for (double e : eigs) CHECK(e == doctest::Approx(1.0).epsilon(1e-14));
    }

    // diag(1..k)
    {
        oracle::DenseMatrix d(5, std::vector<double>(5, 0.0));
        for (int i = 0; i < 5; ++i) d[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = i + 1.0;
        const std::vector<double> eigs = oracle::dense_eigs(d);
        for (int i = 0; i < 5; ++i) {
            CHECK(eigs[static_cast<std::size_t>(i)] == doctest::Approx(i + 1.0).epsilon(1e-14));
        }
    }

    // singular matrix rejected
    {
        oracle::DenseMatrix zero(3, std::vector<double>(3, 0.0));
        CHECK_THROWS_AS(oracle::dense_solve(zero, {1.0, 1.0, 1.0}), NumericError);
    }

    // Neumann Laplacian on a 5x5 grid has the constant kernel
    {
        const Grid g(5);
        const oracle::DenseMatrix lap = oracle::dense_eigen_operator(1.0, ScalarField(g, 0.0));
        const std::vector<double> eigs = oracle::dense_eigs(lap);
        double smallest = eigs[0];
        for (double e : eigs) {
            if (std::abs(e) < std::abs(smallest)) smallest = e;
        }
        CHECK(std::abs(smallest) <= 1e-10);
        CHECK(eigs.back() <= 1e-10);  // the operator is negative semidefinite
    }
}
