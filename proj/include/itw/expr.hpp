#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "itw/rational.hpp"

namespace itw {

// Coordinate variables: the pseudo-spherical angles of the two geometries plus
// a generic polynomial dummy.
enum class Var { theta, xi, phi, psi, chi, beta, eta, x };

// Parameter symbols that may appear in an expression and must be bound before
// evaluation.
enum class Sym { l0, l1, l2, m0, m1, m2, alpha, energy };

enum class Fn { sin, cos, tan, cot, sec, csc, sinh, cosh, tanh, coth };

const char* name(Var v);
const char* name(Sym s);
const char* name(Fn f);

class Expr;
struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

enum class NodeKind { Constant, Symbol, Variable, Function, Sum, Product, Power };

struct ExprNode {
    NodeKind kind;
    Rat value;               // Constant payload, or Power exponent
    Sym sym = Sym::l0;       // Symbol payload
    Var var = Var::x;        // Variable payload
    Fn fn = Fn::sin;         // Function payload
    std::vector<Expr> kids;  // Sum/Product children; Function/Power operand
};

// Immutable expression tree with exact rational constants. Construction goes
// through the factory functions below, which flatten sums/products and fold
// rational constants but never rewrite transcendental structure.
class Expr {
  public:
    Expr();  // zero

    static Expr constant(const Rat& r);
    static Expr constant(long long n);
    static Expr symbol(Sym s);
    static Expr variable(Var v);
    static Expr fn(Fn f, const Expr& arg);
    static Expr sum(std::vector<Expr> terms);
    static Expr prod(std::vector<Expr> factors);
    static Expr pow(const Expr& base, const Rat& exponent);

    const ExprNode& node() const { return *node_; }
    bool is_constant() const;
    bool is_zero() const;  // structurally the constant 0
    Rat constant_value() const;

  private:
    explicit Expr(ExprNodePtr n) : node_(std::move(n)) {}
    ExprNodePtr node_;
    friend Expr make_expr(ExprNode&&);
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Rat& c, const Expr& e);
inline Expr inv(const Expr& e) { return Expr::pow(e, Rat(-1)); }
inline Expr operator/(const Expr& a, const Expr& b) { return a * inv(b); }

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnboundSymbolError : EvalError {
    using EvalError::EvalError;
};
struct DomainError : EvalError {
    using EvalError::EvalError;
};

// Numeric bindings for variables and parameter symbols. Evaluation fails
// loudly on unbound names; there are no silent defaults.
class Bindings {
  public:
    Bindings& set(Var v, double x) {
        vars_[v] = x;
        return *this;
    }
    Bindings& set(Sym s, double x) {
        syms_[s] = x;
        return *this;
    }
    Bindings& set(Sym s, const Rat& r) { return set(s, to_double(r)); }
    double get(Var v) const;
    double get(Sym s) const;

  private:
    std::map<Var, double> vars_;
    std::map<Sym, double> syms_;
};

double eval(const Expr& e, const Bindings& b);

// Exact derivative; total on admissible trees (the function set is closed
// under differentiation).
Expr differentiate(const Expr& e, Var v);

// Replace every occurrence of variable v by the expression g.
Expr substitute(const Expr& e, Var v, const Expr& g);

// Jacobi polynomial P_m^{(a,b)} in the dummy variable x, built by the
// three-term recurrence. Coefficients fold to exact rationals when a and b
// are rational constants.
Expr jacobi_poly(int m, const Expr& a, const Expr& b);
inline Expr jacobi_poly(int m, const Rat& a, const Rat& b) {
    return jacobi_poly(m, Expr::constant(a), Expr::constant(b));
}

// Plain-text prefix serialization, stable across releases. Format:
//   atom      := rational | symbol-name | variable-name
//   expr      := atom | (fname expr) | (+ expr...) | (* expr...) | (^ expr rational)
std::string to_prefix(const Expr& e);
Expr parse_prefix(const std::string& text);

}  // namespace itw
