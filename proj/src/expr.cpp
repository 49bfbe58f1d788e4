#include "compdiff/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace compdiff {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

struct CoeffExpr::Node {
    enum class Kind { Number, Pi, VarT, VarX, VarY, Neg, Add, Sub, Mul, Div, Pow, Cos, Sin, Exp };

    Kind kind;
    double number = 0.0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using Node = CoeffExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_node(Node::Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Number;
    n->number = v;
    return n;
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over the raw bytes.
// ---------------------------------------------------------------------------

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr run() {
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) {
            fail("end of input or operator '+', '-', '*', '/', '^'");
        }
        return e;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& expected) {
        std::ostringstream msg;
        msg << "syntax error at byte " << pos_ << ": expected " << expected;
        throw ExprParseError(pos_, expected, msg.str());
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    bool consume(char c) {
        if (peek_is(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (consume('+')) {
                lhs = make_node(Node::Kind::Add, lhs, parse_term());
            } else if (consume('-')) {
                lhs = make_node(Node::Kind::Sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            if (consume('*')) {
                lhs = make_node(Node::Kind::Mul, lhs, parse_factor());
            } else if (consume('/')) {
                lhs = make_node(Node::Kind::Div, lhs, parse_factor());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_factor() {
        if (consume('-')) {
            return make_node(Node::Kind::Neg, parse_factor());
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (consume('^')) {
            return make_node(Node::Kind::Pow, base, parse_factor());
        }
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= src_.size()) {
            fail("number, 'pi', 't', 'x', 'y', function or '('");
        }
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_expr();
            if (!consume(')')) {
                fail("')'");
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return parse_identifier();
        }
        fail("number, 'pi', 't', 'x', 'y', function or '('");
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            } else {
                pos_ = mark;  // 'e' belongs to something else, not an exponent
            }
        }
        const std::string text(src_.substr(start, pos_ - start));
        char* end = nullptr;
        const double v = std::strtod(text.c_str(), &end);
        if (end != text.c_str() + text.size() || !std::isfinite(v)) {
            pos_ = start;
            fail("a finite numeric literal");
        }
        return make_number(v);
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "pi") return make_node(Node::Kind::Pi);
        if (name == "t") return make_node(Node::Kind::VarT);
        if (name == "x") return make_node(Node::Kind::VarX);
        if (name == "y") return make_node(Node::Kind::VarY);
        if (name == "cos" || name == "sin" || name == "exp") {
            if (!consume('(')) {
                fail("'(' after function name");
            }
            NodePtr arg = parse_expr();
            if (!consume(')')) {
                fail("')'");
            }
            Node::Kind k = name == "cos"   ? Node::Kind::Cos
                           : name == "sin" ? Node::Kind::Sin
                                           : Node::Kind::Exp;
            return make_node(k, arg);
        }
        std::ostringstream msg;
        msg << "unknown identifier '" << name << "' at byte " << start
            << " (known: pi, t, x, y, cos, sin, exp)";
        throw ExprParseError(start, "pi, t, x, y, cos, sin or exp", msg.str());
    }
};

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

double eval_pow(double a, double b) {
    if (b == std::floor(b) && std::abs(b) <= 1e9) {
        long long e = static_cast<long long>(b);
        const bool inverse = e < 0;
        if (inverse) {
            if (a == 0.0) {
                throw ExprDomainError("division by zero in '^' with negative exponent");
            }
            e = -e;
        }
        double result = 1.0;
        double base = a;
        while (e > 0) {
            if (e & 1) result *= base;
            base *= base;
            e >>= 1;
        }
        return inverse ? 1.0 / result : result;
    }
    if (a <= 0.0) {
        throw ExprDomainError("non-integer power of non-positive base " + std::to_string(a));
    }
    return std::exp(b * std::log(a));
}

double eval_node(const Node& n, double t, double x, double y) {
    switch (n.kind) {
        case Node::Kind::Number: return n.number;
        case Node::Kind::Pi: return kPi;
        case Node::Kind::VarT: return t;
        case Node::Kind::VarX: return x;
        case Node::Kind::VarY: return y;
        case Node::Kind::Neg: return -eval_node(*n.lhs, t, x, y);
        case Node::Kind::Add: return eval_node(*n.lhs, t, x, y) + eval_node(*n.rhs, t, x, y);
        case Node::Kind::Sub: return eval_node(*n.lhs, t, x, y) - eval_node(*n.rhs, t, x, y);
        case Node::Kind::Mul: return eval_node(*n.lhs, t, x, y) * eval_node(*n.rhs, t, x, y);
        case Node::Kind::Div: {
            const double denom = eval_node(*n.rhs, t, x, y);
            if (denom == 0.0) {
                throw ExprDomainError("division by zero");
            }
            return eval_node(*n.lhs, t, x, y) / denom;
        }
        case Node::Kind::Pow:
            return eval_pow(eval_node(*n.lhs, t, x, y), eval_node(*n.rhs, t, x, y));
        case Node::Kind::Cos: return std::cos(eval_node(*n.lhs, t, x, y));
        case Node::Kind::Sin: return std::sin(eval_node(*n.lhs, t, x, y));
        case Node::Kind::Exp: return std::exp(eval_node(*n.lhs, t, x, y));
    }
    throw ExprDomainError("corrupt expression tree");
}

// ---------------------------------------------------------------------------
// Printing. Parenthesizes by precedence so the output re-parses to an
// equivalent tree: add/sub=1, mul/div=2, unary minus=3, pow=4, atom=5.
// ---------------------------------------------------------------------------

int node_level(const Node& n) {
    switch (n.kind) {
        case Node::Kind::Add:
        case Node::Kind::Sub: return 1;
        case Node::Kind::Mul:
        case Node::Kind::Div: return 2;
        case Node::Kind::Neg: return 3;
        case Node::Kind::Pow: return 4;
        case Node::Kind::Number: return n.number < 0 ? 3 : 5;
        default: return 5;
    }
}

void print_node(const Node& n, int min_level, std::string& out) {
    const int level = node_level(n);
    const bool parens = level < min_level;
    if (parens) out += '(';
    switch (n.kind) {
        case Node::Kind::Number: {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", n.number);
            out += buf;
            break;
        }
        case Node::Kind::Pi: out += "pi"; break;
        case Node::Kind::VarT: out += 't'; break;
        case Node::Kind::VarX: out += 'x'; break;
        case Node::Kind::VarY: out += 'y'; break;
        case Node::Kind::Neg:
            out += '-';
            print_node(*n.lhs, 3, out);
            break;
        case Node::Kind::Add:
            print_node(*n.lhs, 1, out);
            out += '+';
            print_node(*n.rhs, 2, out);
            break;
        case Node::Kind::Sub:
            print_node(*n.lhs, 1, out);
            out += '-';
            print_node(*n.rhs, 2, out);
            break;
        case Node::Kind::Mul:
            print_node(*n.lhs, 2, out);
            out += '*';
            print_node(*n.rhs, 3, out);
            break;
        case Node::Kind::Div:
            print_node(*n.lhs, 2, out);
            out += '/';
            print_node(*n.rhs, 3, out);
            break;
        case Node::Kind::Pow:
            print_node(*n.lhs, 5, out);
            out += '^';
            print_node(*n.rhs, 3, out);
            break;
        case Node::Kind::Cos:
        case Node::Kind::Sin:
        case Node::Kind::Exp:
            out += n.kind == Node::Kind::Cos ? "cos(" : n.kind == Node::Kind::Sin ? "sin(" : "exp(";
            print_node(*n.lhs, 1, out);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

bool node_uses_t(const Node& n) {
    if (n.kind == Node::Kind::VarT) return true;
    if (n.lhs && node_uses_t(*n.lhs)) return true;
    if (n.rhs && node_uses_t(*n.rhs)) return true;
    return false;
}

}  // namespace

CoeffExpr::CoeffExpr() : root_(make_number(0.0)) {}

CoeffExpr CoeffExpr::parse(std::string_view src) {
    return CoeffExpr(Parser(src).run());
}

CoeffExpr CoeffExpr::literal(double value) {
    if (!std::isfinite(value)) {
        throw ExprDomainError("literal must be finite");
    }
    if (value < 0.0) {
        return CoeffExpr(make_node(Node::Kind::Neg, make_number(-value)));
    }
    return CoeffExpr(make_number(value));
}

CoeffExpr CoeffExpr::scaled_by(double factor) const {
    return CoeffExpr(make_node(Node::Kind::Mul, literal(factor).root_, root_));
}

double CoeffExpr::eval(double t, double x, double y) const {
    const double v = eval_node(*root_, t, x, y);
    if (!std::isfinite(v)) {
        throw ExprDomainError("expression evaluated to a non-finite value");
    }
    return v;
}

ScalarField CoeffExpr::sample(const Grid& g, double t) const {
    ScalarField out(g);
    for (int j = 0; j < g.n; ++j) {
        for (int i = 0; i < g.n; ++i) {
            try {
                out.at(i, j) = eval(t, g.x(i), g.y(j));
            } catch (const ExprDomainError& e) {
                std::ostringstream msg;
                msg << e.what() << " at vertex (" << i << "," << j << "), x=" << g.x(i)
                    << ", y=" << g.y(j) << ", t=" << t;
                throw ExprDomainError(msg.str());
            }
        }
    }
    return out;
}

std::string CoeffExpr::print() const {
    std::string out;
    print_node(*root_, 0, out);
    return out;
}

bool CoeffExpr::depends_on_time() const { return node_uses_t(*root_); }

}  // namespace compdiff
