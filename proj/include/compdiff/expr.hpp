#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "compdiff/grid.hpp"

namespace compdiff {

// Parsed arithmetic expression in the variables t, x, y.
//
// Grammar (whitespace insignificant):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?
//   atom   := number | 'pi' | 't' | 'x' | 'y' | func '(' expr ')' | '(' expr ')'
//   func   := 'cos' | 'sin' | 'exp'
//
// '^' is right-associative and binds tighter than unary minus, so
// "-2^2" is -(2^2) = -4 while "(-2)^2" is 4.
class CoeffExpr {
public:
    struct Node;

    // the constant 0
    CoeffExpr();

    // Throws ExprParseError with the byte offset and expected-token set.
    static CoeffExpr parse(std::string_view src);

    static CoeffExpr literal(double value);

    // this expression multiplied by a constant factor (used by the
    // harvesting transform, which rescales growth and capacity).
    CoeffExpr scaled_by(double factor) const;

    // Throws ExprDomainError on division by zero, a non-integer power of a
    // non-positive base, or a non-finite result. a^b uses repeated
    // multiplication for integer b and exp(b*ln a) otherwise.
    double eval(double t, double x, double y) const;

    // Samples onto the grid: values[i + j*n] = eval(t, i*h, j*h).
    // Domain errors are rethrown with the offending vertex attached.
    ScalarField sample(const Grid& g, double t) const;

    // Text form that re-parses to an equivalent tree.
    std::string print() const;

    bool depends_on_time() const;

private:
    explicit CoeffExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

    std::shared_ptr<const Node> root_;
};

}  // namespace compdiff
