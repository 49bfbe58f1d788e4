#include <cmath>
#include <cstring>
#include <random>

#include <doctest.h>

#include "compdiff/coefficients.hpp"
#include "compdiff/expr.hpp"

using namespace compdiff;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("parsing the experiment coefficients") {
    const CoeffExpr k1 = CoeffExpr::parse("2.1 + cos(pi*x)*cos(pi*y)");
    CHECK(k1.eval(0.0, 0.0, 0.0) == doctest::Approx(3.1).epsilon(1e-15));

    const CoeffExpr tfactor = CoeffExpr::parse("(1.1+cos(t))");
    CHECK(tfactor.eval(0.0, 0.0, 0.0) == doctest::Approx(2.1).epsilon(1e-15));

    const CoeffExpr peak = CoeffExpr::parse("1.2 + 2.5*pi^2*exp(-(x-0.5)^2-(y-0.5)^2)");
    CHECK(peak.eval(0.0, 0.5, 0.5) ==
          doctest::Approx(1.2 + 2.5 * kPi * kPi).epsilon(1e-15));
}

TEST_CASE("evaluation basics") {
    CHECK(CoeffExpr::parse("x").eval(9.0, 0.25, -3.0) == 0.25);
    CHECK(CoeffExpr::parse("1.5+sin(x)*sin(y)").eval(123.0, 0.0, 0.0) == 1.5);
    CHECK(CoeffExpr::parse("2^3").eval(0, 0, 0) == 8.0);
    CHECK(CoeffExpr::parse("2^-3").eval(0, 0, 0) == 0.125);
    CHECK(CoeffExpr::parse("2^0.5").eval(0, 0, 0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(CoeffExpr::parse("0^0").eval(0, 0, 0) == 1.0);
    CHECK(CoeffExpr::parse("pi").eval(0, 0, 0) == doctest::Approx(kPi).epsilon(1e-16));
}

TEST_CASE("precedence and associativity") {
    CHECK(CoeffExpr::parse("2+3*4^2").eval(0, 0, 0) == 50.0);
    CHECK(CoeffExpr::parse("-2^2").eval(0, 0, 0) == -4.0);
    CHECK(CoeffExpr::parse("(-2)^2").eval(0, 0, 0) == 4.0);
    CHECK(CoeffExpr::parse("2^3^2").eval(0, 0, 0) == 512.0);
    CHECK(CoeffExpr::parse("2--3").eval(0, 0, 0) == 5.0);
    CHECK(CoeffExpr::parse("2*-3").eval(0, 0, 0) == -6.0);
    CHECK(CoeffExpr::parse("10-4-3").eval(0, 0, 0) == 3.0);
    CHECK(CoeffExpr::parse("12/3/2").eval(0, 0, 0) == 2.0);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(CoeffExpr::parse("1/x").eval(0, 0.0, 0), ExprDomainError);
    CHECK_THROWS_AS(CoeffExpr::parse("(-2)^0.5").eval(0, 0, 0), ExprDomainError);
    CHECK_THROWS_AS(CoeffExpr::parse("0^-1").eval(0, 0, 0), ExprDomainError);
    CHECK_THROWS_AS(CoeffExpr::parse("exp(9000)").eval(0, 0, 0), ExprDomainError);
    CHECK(CoeffExpr::parse("1/x").eval(0, 2.0, 0) == 0.5);
}

TEST_CASE("syntax errors carry offsets and expectations") {
    try {
        CoeffExpr::parse("2+*3");
        FAIL("expected a parse error");
    } catch (const ExprParseError& e) {
        CHECK(e.offset() == 2);
        CHECK(std::string(e.what()).find("expected") != std::string::npos);
    }
    try {
        CoeffExpr::parse("foo(2)");
        FAIL("expected a parse error");
    } catch (const ExprParseError& e) {
        CHECK(e.offset() == 0);
        CHECK(std::string(e.what()).find("foo") != std::string::npos);
    }
    CHECK_THROWS_AS(CoeffExpr::parse("2+"), ExprParseError);
    CHECK_THROWS_AS(CoeffExpr::parse("(2"), ExprParseError);
    CHECK_THROWS_AS(CoeffExpr::parse("cos 2"), ExprParseError);
    CHECK_THROWS_AS(CoeffExpr::parse(""), ExprParseError);
    CHECK_THROWS_AS(CoeffExpr::parse("2 3"), ExprParseError);
}

TEST_CASE("print/parse round trip evaluates identically") {
    const char* sources[] = {
        "2.1+cos(pi*x)*cos(pi*y)",
        "(2.1+cos(pi*x)*cos(pi*y))*(1.1+cos(t))",
        "1.2 + 2.5*pi^2*exp(-(x-0.5)^2-(y-0.5)^2)",
        "(1.5+sin(x)*sin(y))*(1.2+sin(t))",
        "-2^2 + x*-y",
        "2^3^2/7 - t/(1+x)",
        "x^(y+1.5)^1.25",
        "1e-3*x + 2.5E2",
    };
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.01, 2.0);
    for (const char* src : sources) {
        const CoeffExpr a = CoeffExpr::parse(src);
        const CoeffExpr b = CoeffExpr::parse(a.print());
        const CoeffExpr c = CoeffExpr::parse(b.print());
        for (int k = 0; k < 100; ++k) {
            const double t = dist(rng), x = dist(rng), y = dist(rng);
            const double va = a.eval(t, x, y);
            CHECK(std::abs(va - b.eval(t, x, y)) <= 1e-12 * std::max(1.0, std::abs(va)));
            CHECK(std::abs(va - c.eval(t, x, y)) <= 1e-12 * std::max(1.0, std::abs(va)));
        }
    }
}

TEST_CASE("sampling") {
    const Grid g3(3);
    const ScalarField zeros = CoeffExpr::parse("0").sample(g3, 0.0);
    for (double v : zeros.values) CHECK(v == 0.0);

    const ScalarField s = CoeffExpr::parse("x+y").sample(g3, 0.0);
    const double expected[] = {0.0, 0.5, 1.0, 0.5, 1.0, 1.5, 1.0, 1.5, 2.0};
    for (int k = 0; k < 9; ++k) CHECK(s.values[static_cast<std::size_t>(k)] == expected[k]);

    // identical inputs must produce bitwise-identical samples
    const CoeffExpr k1 = CoeffExpr::parse("2.1+cos(pi*x)*cos(pi*y)");
    const ScalarField a = k1.sample(Grid(33), 0.5);
    const ScalarField b = k1.sample(Grid(33), 0.5);
    CHECK(std::memcmp(a.values.data(), b.values.data(), a.values.size() * sizeof(double)) == 0);

    // domain errors carry the offending vertex
    try {
        CoeffExpr::parse("1/(x-0.5)").sample(g3, 0.0);
        FAIL("expected a domain error");
    } catch (const ExprDomainError& e) {
        CHECK(std::string(e.what()).find("vertex (1,0)") != std::string::npos);
    }
}

TEST_CASE("time dependence detection") {
    CHECK(CoeffExpr::parse("(1.1+cos(t))*x").depends_on_time());
    CHECK(!CoeffExpr::parse("2.1+cos(pi*x)*cos(pi*y)").depends_on_time());
}

TEST_CASE("coefficient set positivity enforcement") {
    const Grid g(33);
    CoefficientSet exp1 = CoefficientSet::from_strings("2.1+cos(pi*x)*cos(pi*y)", "1.2",
                                                       "1.8", "1.8");
    const ScalarField k = exp1.sample_K(g, 0.0);
    double kmin = k.values[0];
    for (double v : k.values) kmin = std::min(kmin, v);
    CHECK(kmin >= 1.1 - 1e-12);

    // K dips to zero at t=pi for this time factor
    CoefficientSet bad_k = CoefficientSet::from_strings("(2.1+cos(pi*x)*cos(pi*y))*cos(t)",
                                                        "1.2", "1.8", "1.8");
    CHECK_THROWS_AS(bad_k.sample_K(g, kPi), NumericError);

    CoefficientSet neg_r = CoefficientSet::from_strings("2.1", "0-1.2", "1.8", "1.8");
    CHECK_THROWS_AS(neg_r.sample_r(g, 0.0), NumericError);

    CoefficientSet zero_r = CoefficientSet::from_strings("2.1", "sin(pi*x)", "1.8", "1.8");
    bool touches = false;
    zero_r.sample_r(g, 0.0, &touches);
    CHECK(touches);

    CoefficientSet neg_u0 = CoefficientSet::from_strings("2.1", "1.2", "x-0.5", "1.8");
    CHECK_THROWS_AS(neg_u0.sample_initial(g), NumericError);
}
