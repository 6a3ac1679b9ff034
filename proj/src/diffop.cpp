#include "itw/diffop.hpp"

#include <algorithm>
#include <cmath>

namespace itw {

DiffOp DiffOp::identity(VarPair vars) { return term(vars, 0, 0, Expr::constant(1)); }

DiffOp DiffOp::term(VarPair vars, int a, int b, Expr coeff) {
    DiffOp op(vars);
    op.add_term(a, b, coeff);
    return op;
}

int DiffOp::order() const {
    int o = 0;
    for (const auto& t : terms_) o = std::max(o, t.a + t.b);
    return o;
}

DiffOp& DiffOp::add_term(int a, int b, const Expr& coeff) {
    if (a < 0 || b < 0) throw std::invalid_argument("DiffOp: negative derivative order");
    if (a + b > kMaxOrder) throw OrderOverflow("DiffOp: order above " + std::to_string(kMaxOrder));
    if (coeff.is_zero()) return *this;
    auto it = std::find_if(terms_.begin(), terms_.end(),
                           [&](const Term& t) { return t.a == a && t.b == b; });
    if (it != terms_.end()) {
        it->coeff = it->coeff + coeff;
        if (it->coeff.is_zero()) terms_.erase(it);
        return *this;
    }
    Term t{a, b, coeff};
    auto pos = std::lower_bound(terms_.begin(), terms_.end(), t, [](const Term& x, const Term& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    terms_.insert(pos, std::move(t));
    return *this;
}

namespace {
void check_vars(const DiffOp& p, const DiffOp& q) {
    if (!(p.vars() == q.vars()))
        throw VariableMismatch("DiffOp: operands declared over different variable pairs");
}
}  // namespace

DiffOp operator+(const DiffOp& p, const DiffOp& q) {
    check_vars(p, q);
    DiffOp r = p;
    for (const auto& t : q.terms()) r.add_term(t.a, t.b, t.coeff);
    return r;
}

DiffOp operator-(const DiffOp& p, const DiffOp& q) { return p + (Rat(-1) * q); }

DiffOp operator-(const DiffOp& p) { return Rat(-1) * p; }

DiffOp operator*(const Rat& c, const DiffOp& p) {
    DiffOp r(p.vars());
    if (c == Rat(0)) return r;
    for (const auto& t : p.terms()) r.add_term(t.a, t.b, c * t.coeff);
    return r;
}

DiffOp left_mul(const Expr& f, const DiffOp& p) {
    DiffOp r(p.vars());
    for (const auto& t : p.terms()) r.add_term(t.a, t.b, f * t.coeff);
    return r;
}

Expr apply(const DiffOp& op, const Expr& f) {
    std::vector<Expr> parts;
    for (const auto& t : op.terms()) {
        Expr g = f;
        for (int i = 0; i < t.a; ++i) g = differentiate(g, op.vars().v1);
        for (int j = 0; j < t.b; ++j) g = differentiate(g, op.vars().v2);
        if (!g.is_zero()) parts.push_back(t.coeff * g);
    }
    return Expr::sum(std::move(parts));
}

namespace {
long long binom(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}
}  // namespace

DiffOp compose(const DiffOp& p, const DiffOp& q) {
    check_vars(p, q);
    const Var v1 = p.vars().v1, v2 = p.vars().v2;
    DiffOp r(p.vars());
    for (const auto& tp : p.terms()) {
        for (const auto& tq : q.terms()) {
            // dp^(a,b) [ c(q) dq^(a',b') f ] expanded by the Leibniz rule.
            std::vector<Expr> dc_a;  // derivatives of tq.coeff in v1
            dc_a.push_back(tq.coeff);
            for (int i = 1; i <= tp.a; ++i) dc_a.push_back(differentiate(dc_a.back(), v1));
            for (int i = 0; i <= tp.a; ++i) {
                std::vector<Expr> dc_ab;  // then in v2
                dc_ab.push_back(dc_a[tp.a - i]);
                for (int j = 1; j <= tp.b; ++j) dc_ab.push_back(differentiate(dc_ab.back(), v2));
                for (int j = 0; j <= tp.b; ++j) {
                    Expr c = dc_ab[tp.b - j];
                    if (c.is_zero()) continue;
                    Rat w(binom(tp.a, i) * binom(tp.b, j));
                    r.add_term(i + tq.a, j + tq.b, w * (tp.coeff * c));
                }
            }
        }
    }
    return r;
}

DiffOp bracket(const DiffOp& p, const DiffOp& q, BracketKind kind) {
    DiffOp pq = compose(p, q);
    DiffOp qp = compose(q, p);
    return kind == BracketKind::commutator ? pq - qp : pq + qp;
}

nlohmann::json EqReport::to_json() const {
    return nlohmann::json{{"lhs", lhs},
                          {"rhs", rhs},
                          {"seed", seed},
                          {"samples", samples},
                          {"max_residual", max_residual},
                          {"pass", pass}};
}

namespace {

Expr axis_probe(Var v, AxisKind kind, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> idx3(0, 2);
    std::uniform_int_distribution<int> deg(0, 2);
    const Rat exps[3] = {Rat(1, 2), Rat(3, 2), Rat(5, 2)};
    Expr var = Expr::variable(v);
    Expr out;
    if (kind == AxisKind::trig) {
        Expr c = Expr::pow(Expr::fn(Fn::cos, var), exps[idx3(rng)]);
        Expr s = Expr::pow(Expr::fn(Fn::sin, var), exps[idx3(rng)]);
        Expr arg = Expr::fn(Fn::cos, Rat(2) * var);
        out = c * s * substitute(jacobi_poly(deg(rng), Rat(0), Rat(0)), Var::x, arg);
    } else {
        // Decaying fractional-power probe away from the hyperbolic poles.
        const Rat dexp[3] = {Rat(-3, 2), Rat(-2), Rat(-5, 2)};
        Expr c = Expr::pow(Expr::fn(Fn::cosh, var), dexp[idx3(rng)]);
        Expr s = Expr::pow(Expr::fn(Fn::sinh, var), exps[idx3(rng)]);
        Expr arg = Expr::fn(Fn::tanh, var);
        out = c * s * substitute(jacobi_poly(deg(rng), Rat(0), Rat(0)), Var::x, arg);
    }
    return out;
}

}  // namespace

Expr random_probe(VarPair vars, AxisKind ax1, AxisKind ax2, std::mt19937_64& rng) {
    return axis_probe(vars.v1, ax1, rng) * axis_probe(vars.v2, ax2, rng);
}

EqReport equal_numeric(const DiffOp& p, const DiffOp& q, const SampleSpec& spec,
                       const std::string& lhs_label, const std::string& rhs_label) {
    check_vars(p, q);
    if (spec.points < 20) throw std::invalid_argument("SampleSpec: sample count below 20");
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> u1(spec.lo1, spec.hi1), u2(spec.lo2, spec.hi2);

    EqReport rep;
    rep.lhs = lhs_label;
    rep.rhs = rhs_label;
    rep.seed = spec.seed;
    rep.samples = spec.points * spec.probes;

    double max_res = 0, max_lhs = 0;
    for (int i = 0; i < spec.probes; ++i) {
        Expr f = random_probe(p.vars(), spec.ax1, spec.ax2, rng);
        Expr pf = apply(p, f);
        Expr qf = apply(q, f);
        for (int j = 0; j < spec.points; ++j) {
            Bindings b;
            b.set(p.vars().v1, u1(rng)).set(p.vars().v2, u2(rng));
            double a = eval(pf, b);
            double c = eval(qf, b);
            max_res = std::max(max_res, std::fabs(a - c));
            max_lhs = std::max(max_lhs, std::fabs(a));
        }
    }
    rep.max_residual = max_res;
    rep.scale = 1.0 + max_lhs;
    rep.pass = max_res / rep.scale < spec.tol;
    return rep;
}

}  // namespace itw
