#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "itw/expr.hpp"
#include "json.hpp"

namespace itw {

struct VarPair {
    Var v1, v2;
    bool operator==(const VarPair&) const = default;
};

struct OrderOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VariableMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Linear differential operator in two variables: a finite sum of terms
// coeff(v1,v2) * d^a/dv1^a d^b/dv2^b with total order a+b <= 4. Terms with an
// identical multi-index are merged on construction.
class DiffOp {
  public:
    struct Term {
        int a, b;
        Expr coeff;
    };

    static constexpr int kMaxOrder = 4;

    explicit DiffOp(VarPair vars) : vars_(vars) {}
    static DiffOp zero(VarPair vars) { return DiffOp(vars); }
    static DiffOp identity(VarPair vars);
    static DiffOp term(VarPair vars, int a, int b, Expr coeff);
    static DiffOp d1(VarPair vars) { return term(vars, 1, 0, Expr::constant(1)); }
    static DiffOp d2(VarPair vars) { return term(vars, 0, 1, Expr::constant(1)); }
    static DiffOp mul(VarPair vars, Expr f) { return term(vars, 0, 0, std::move(f)); }

    const VarPair& vars() const { return vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    int order() const;

    DiffOp& add_term(int a, int b, const Expr& coeff);

  private:
    VarPair vars_;
    std::vector<Term> terms_;  // sorted by (a,b)
};

DiffOp operator+(const DiffOp& p, const DiffOp& q);
DiffOp operator-(const DiffOp& p, const DiffOp& q);
DiffOp operator-(const DiffOp& p);
DiffOp operator*(const Rat& c, const DiffOp& p);
// Left multiplication by a function: f * (sum c_ab d^ab).
DiffOp left_mul(const Expr& f, const DiffOp& p);

// Apply the operator to a closed-form function of its two variables.
Expr apply(const DiffOp& op, const Expr& f);

// Exact Leibniz-rule expansion of p after q (p∘q). Throws OrderOverflow when
// the resulting total order would exceed kMaxOrder.
DiffOp compose(const DiffOp& p, const DiffOp& q);

enum class BracketKind { commutator, anticommutator };
DiffOp bracket(const DiffOp& p, const DiffOp& q, BracketKind kind = BracketKind::commutator);

// Probe-function flavor per axis: fractional powers of sin/cos on compact
// angles, of sinh/cosh on noncompact ones, times a low-degree Jacobi factor.
enum class AxisKind { trig, hyper };

struct SampleSpec {
    double lo1, hi1, lo2, hi2;        // open rectangle strictly inside the chart
    AxisKind ax1 = AxisKind::trig;
    AxisKind ax2 = AxisKind::trig;
    int points = 40;                  // sample points per probe
    int probes = 5;
    std::uint64_t seed = 0xC0FFEEULL;
    double tol = 1e-9;                // relative tolerance
};

struct EqReport {
    std::string lhs, rhs;
    std::uint64_t seed = 0;
    int samples = 0;
    double max_residual = 0;
    double scale = 1;
    bool pass = false;
    nlohmann::json to_json() const;
};

Expr random_probe(VarPair vars, AxisKind ax1, AxisKind ax2, std::mt19937_64& rng);

// Randomized operator-identity oracle: applies p - q to every probe at every
// sample point; passes iff max |residual| / (1 + max |p f|) < spec.tol.
EqReport equal_numeric(const DiffOp& p, const DiffOp& q, const SampleSpec& spec,
                       const std::string& lhs_label = "lhs", const std::string& rhs_label = "rhs");

}  // namespace itw
