#include "itw/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace itw {

namespace {
constexpr double kPoleGuard = 1e-13;
}

const char* name(Var v) {
    switch (v) {
        case Var::theta: return "theta";
        case Var::xi: return "xi";
        case Var::phi: return "phi";
        case Var::psi: return "psi";
        case Var::chi: return "chi";
        case Var::beta: return "beta";
        case Var::eta: return "eta";
        case Var::x: return "x";
    }
    return "?";
}

const char* name(Sym s) {
    switch (s) {
        case Sym::l0: return "l0";
        case Sym::l1: return "l1";
        case Sym::l2: return "l2";
        case Sym::m0: return "m0";
        case Sym::m1: return "m1";
        case Sym::m2: return "m2";
        case Sym::alpha: return "alpha";
        case Sym::energy: return "E";
    }
    return "?";
}

const char* name(Fn f) {
    switch (f) {
        case Fn::sin: return "sin";
        case Fn::cos: return "cos";
        case Fn::tan: return "tan";
        case Fn::cot: return "cot";
        case Fn::sec: return "sec";
        case Fn::csc: return "csc";
        case Fn::sinh: return "sinh";
        case Fn::cosh: return "cosh";
        case Fn::tanh: return "tanh";
        case Fn::coth: return "coth";
    }
    return "?";
}

Expr make_expr(ExprNode&& n) { return Expr(std::make_shared<const ExprNode>(std::move(n))); }

Expr::Expr() : node_(constant(0).node_) {}

bool Expr::is_constant() const { return node_->kind == NodeKind::Constant; }
bool Expr::is_zero() const { return is_constant() && node_->value == Rat(0); }
Rat Expr::constant_value() const {
    if (!is_constant()) throw std::logic_error("Expr: not a constant");
    return node_->value;
}

Expr Expr::constant(const Rat& r) {
    ExprNode n;
    n.kind = NodeKind::Constant;
    n.value = r;
    return make_expr(std::move(n));
}

Expr Expr::constant(long long v) { return constant(Rat(v)); }

Expr Expr::symbol(Sym s) {
    ExprNode n;
    n.kind = NodeKind::Symbol;
    n.sym = s;
    return make_expr(std::move(n));
}

Expr Expr::variable(Var v) {
    ExprNode n;
    n.kind = NodeKind::Variable;
    n.var = v;
    return make_expr(std::move(n));
}

Expr Expr::fn(Fn f, const Expr& arg) {
    ExprNode n;
    n.kind = NodeKind::Function;
    n.fn = f;
    n.kids = {arg};
    return make_expr(std::move(n));
}

Expr Expr::sum(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    Rat c(0);
    for (auto& t : terms) {
        if (t.node().kind == NodeKind::Sum) {
            for (auto& k : t.node().kids) {
                if (k.is_constant())
                    c += k.constant_value();
                else
                    flat.push_back(k);
            }
        } else if (t.is_constant()) {
            c += t.constant_value();
        } else {
            flat.push_back(t);
        }
    }
    if (c != Rat(0) || flat.empty()) flat.push_back(constant(c));
    if (flat.size() == 1) return flat[0];
    ExprNode n;
    n.kind = NodeKind::Sum;
    n.kids = std::move(flat);
    return make_expr(std::move(n));
}

Expr Expr::prod(std::vector<Expr> factors) {
    std::vector<Expr> flat;
    Rat c(1);
    for (auto& f : factors) {
        if (f.node().kind == NodeKind::Product) {
            for (auto& k : f.node().kids) {
                if (k.is_constant())
                    c *= k.constant_value();
                else
                    flat.push_back(k);
            }
        } else if (f.is_constant()) {
            c *= f.constant_value();
        } else {
            flat.push_back(f);
        }
    }
    if (c == Rat(0)) return constant(0);
    if (c != Rat(1)) flat.insert(flat.begin(), constant(c));
    if (flat.empty()) return constant(1);
    if (flat.size() == 1) return flat[0];
    ExprNode n;
    n.kind = NodeKind::Product;
    n.kids = std::move(flat);
    return make_expr(std::move(n));
}

Expr Expr::pow(const Expr& base, const Rat& exponent) {
    if (exponent == Rat(0)) return constant(1);
    if (exponent == Rat(1)) return base;
    if (base.is_constant() && exponent.denominator() == 1)
        return constant(rat_pow(base.constant_value(), exponent.numerator()));
    ExprNode n;
    n.kind = NodeKind::Power;
    n.value = exponent;
    n.kids = {base};
    return make_expr(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, Rat(-1) * b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::prod({a, b}); }
Expr operator-(const Expr& a) { return Rat(-1) * a; }
Expr operator*(const Rat& c, const Expr& e) { return Expr::prod({Expr::constant(c), e}); }

double Bindings::get(Var v) const {
    auto it = vars_.find(v);
    if (it == vars_.end()) throw UnboundSymbolError(std::string("unbound variable ") + name(v));
    return it->second;
}

double Bindings::get(Sym s) const {
    auto it = syms_.find(s);
    if (it == syms_.end()) throw UnboundSymbolError(std::string("unbound symbol ") + name(s));
    return it->second;
}

namespace {

double eval_fn(Fn f, double u) {
    switch (f) {
        case Fn::sin: return std::sin(u);
        case Fn::cos: return std::cos(u);
        case Fn::tan: {
            double c = std::cos(u);
            if (std::fabs(c) < kPoleGuard) throw DomainError("tan evaluated at a pole");
            return std::sin(u) / c;
        }
        case Fn::cot: {
            double s = std::sin(u);
            if (std::fabs(s) < kPoleGuard) throw DomainError("cot evaluated at a pole");
            return std::cos(u) / s;
        }
        case Fn::sec: {
            double c = std::cos(u);
            if (std::fabs(c) < kPoleGuard) throw DomainError("sec evaluated at a pole");
            return 1.0 / c;
        }
        case Fn::csc: {
            double s = std::sin(u);
            if (std::fabs(s) < kPoleGuard) throw DomainError("csc evaluated at a pole");
            return 1.0 / s;
        }
        case Fn::sinh: return std::sinh(u);
        case Fn::cosh: return std::cosh(u);
        case Fn::tanh: return std::tanh(u);
        case Fn::coth: {
            double s = std::sinh(u);
            if (std::fabs(s) < kPoleGuard) throw DomainError("coth evaluated at a pole");
            return std::cosh(u) / s;
        }
    }
    throw std::logic_error("eval_fn: bad function tag");
}

double eval_rec(const ExprNode& n, const Bindings& b) {
    switch (n.kind) {
        case NodeKind::Constant: return to_double(n.value);
        case NodeKind::Symbol: return b.get(n.sym);
        case NodeKind::Variable: return b.get(n.var);
        case NodeKind::Function: return eval_fn(n.fn, eval_rec(n.kids[0].node(), b));
        case NodeKind::Sum: {
            double s = 0;
            for (const auto& k : n.kids) s += eval_rec(k.node(), b);
            return s;
        }
        case NodeKind::Product: {
            double p = 1;
            for (const auto& k : n.kids) p *= eval_rec(k.node(), b);
            return p;
        }
        case NodeKind::Power: {
            double base = eval_rec(n.kids[0].node(), b);
            const Rat& e = n.value;
            if (base == 0.0) {
                if (e > Rat(0)) return 0.0;
                throw DomainError("0 raised to a non-positive power");
            }
            if (base < 0.0) {
                if (e.denominator() != 1)
                    throw DomainError("negative base with fractional exponent");
                return std::pow(base, static_cast<double>(e.numerator()));
            }
            return std::pow(base, to_double(e));
        }
    }
    throw std::logic_error("eval: bad node kind");
}

}  // namespace

double eval(const Expr& e, const Bindings& b) {
    double v = eval_rec(e.node(), b);
    if (!std::isfinite(v)) throw DomainError("evaluation produced a non-finite value");
    return v;
}

namespace {

Expr d_fn(Fn f, const Expr& u) {
    using E = Expr;
    switch (f) {
        case Fn::sin: return E::fn(Fn::cos, u);
        case Fn::cos: return -E::fn(Fn::sin, u);
        case Fn::tan: return E::fn(Fn::sec, u) * E::fn(Fn::sec, u);
        case Fn::cot: return -(E::fn(Fn::csc, u) * E::fn(Fn::csc, u));
        case Fn::sec: return E::fn(Fn::sec, u) * E::fn(Fn::tan, u);
        case Fn::csc: return -(E::fn(Fn::csc, u) * E::fn(Fn::cot, u));
        case Fn::sinh: return E::fn(Fn::cosh, u);
        case Fn::cosh: return E::fn(Fn::sinh, u);
        case Fn::tanh: return E::constant(1) - E::fn(Fn::tanh, u) * E::fn(Fn::tanh, u);
        case Fn::coth: return E::constant(1) - E::fn(Fn::coth, u) * E::fn(Fn::coth, u);
    }
    throw std::logic_error("d_fn: bad function tag");
}

}  // namespace

Expr differentiate(const Expr& e, Var v) {
    const ExprNode& n = e.node();
    switch (n.kind) {
        case NodeKind::Constant:
        case NodeKind::Symbol: return Expr::constant(0);
        case NodeKind::Variable: return Expr::constant(n.var == v ? 1 : 0);
        case NodeKind::Function: {
            Expr du = differentiate(n.kids[0], v);
            if (du.is_zero()) return du;
            return d_fn(n.fn, n.kids[0]) * du;
        }
        case NodeKind::Sum: {
            std::vector<Expr> parts;
            for (const auto& k : n.kids) {
                Expr dk = differentiate(k, v);
                if (!dk.is_zero()) parts.push_back(dk);
            }
            return Expr::sum(std::move(parts));
        }
        case NodeKind::Product: {
            std::vector<Expr> parts;
            for (size_t i = 0; i < n.kids.size(); ++i) {
                Expr di = differentiate(n.kids[i], v);
                if (di.is_zero()) continue;
                std::vector<Expr> fs;
                for (size_t j = 0; j < n.kids.size(); ++j) fs.push_back(i == j ? di : n.kids[j]);
                parts.push_back(Expr::prod(std::move(fs)));
            }
            return Expr::sum(std::move(parts));
        }
        case NodeKind::Power: {
            Expr du = differentiate(n.kids[0], v);
            if (du.is_zero()) return du;
            return n.value * Expr::pow(n.kids[0], n.value - Rat(1)) * du;
        }
    }
    throw std::logic_error("differentiate: bad node kind");
}

Expr substitute(const Expr& e, Var v, const Expr& g) {
    const ExprNode& n = e.node();
    switch (n.kind) {
        case NodeKind::Constant:
        case NodeKind::Symbol: return e;
        case NodeKind::Variable: return n.var == v ? g : e;
        case NodeKind::Function: return Expr::fn(n.fn, substitute(n.kids[0], v, g));
        case NodeKind::Sum: {
            std::vector<Expr> kids;
            for (const auto& k : n.kids) kids.push_back(substitute(k, v, g));
            return Expr::sum(std::move(kids));
        }
        case NodeKind::Product: {
            std::vector<Expr> kids;
            for (const auto& k : n.kids) kids.push_back(substitute(k, v, g));
            return Expr::prod(std::move(kids));
        }
        case NodeKind::Power: return Expr::pow(substitute(n.kids[0], v, g), n.value);
    }
    throw std::logic_error("substitute: bad node kind");
}

Expr jacobi_poly(int m, const Expr& a, const Expr& b) {
    if (m < 0) throw std::invalid_argument("jacobi_poly: negative degree");
    using E = Expr;
    E x = E::variable(Var::x);
    E one = E::constant(1);
    E two = E::constant(2);
    if (m == 0) return one;
    E p_prev = one;
    // P_1 = (a - b)/2 + (a + b + 2) x / 2
    E p = half() * (a - b) + half() * (a + b + two) * x;
    for (int k = 2; k <= m; ++k) {
        E kk = E::constant(k);
        E s = a + b;  // a + b
        E c1 = (two * kk + s - one) * ((two * kk + s) * (two * kk + s - two) * x + a * a - b * b);
        E c2 = two * (kk + a - one) * (kk + b - one) * (two * kk + s);
        E den = two * kk * (kk + s) * (two * kk + s - two);
        E next = (c1 * p - c2 * p_prev) * inv(den);
        p_prev = p;
        p = next;
    }
    return p;
}

namespace {

void write_prefix(const ExprNode& n, std::ostream& os) {
    switch (n.kind) {
        case NodeKind::Constant: os << to_string(n.value); return;
        case NodeKind::Symbol: os << name(n.sym); return;
        case NodeKind::Variable: os << name(n.var); return;
        case NodeKind::Function:
            os << "(" << name(n.fn) << " ";
            write_prefix(n.kids[0].node(), os);
            os << ")";
            return;
        case NodeKind::Sum:
        case NodeKind::Product:
            os << "(" << (n.kind == NodeKind::Sum ? "+" : "*");
            for (const auto& k : n.kids) {
                os << " ";
                write_prefix(k.node(), os);
            }
            os << ")";
            return;
        case NodeKind::Power:
            os << "(^ ";
            write_prefix(n.kids[0].node(), os);
            os << " " << to_string(n.value) << ")";
            return;
    }
}

struct Tokenizer {
    std::string s;
    size_t pos = 0;
    std::string next() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos >= s.size()) return "";
        if (s[pos] == '(' || s[pos] == ')') return std::string(1, s[pos++]);
        size_t start = pos;
        while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '(' &&
               s[pos] != ')')
            ++pos;
        return s.substr(start, pos - start);
    }
};

Expr parse_rec(Tokenizer& tk);

Expr parse_atom(const std::string& tok) {
    for (Var v : {Var::theta, Var::xi, Var::phi, Var::psi, Var::chi, Var::beta, Var::eta, Var::x})
        if (tok == name(v)) return Expr::variable(v);
    for (Sym s : {Sym::l0, Sym::l1, Sym::l2, Sym::m0, Sym::m1, Sym::m2, Sym::alpha, Sym::energy})
        if (tok == name(s)) return Expr::symbol(s);
    return Expr::constant(parse_rational(tok));
}

Expr parse_rec(Tokenizer& tk) {
    std::string tok = tk.next();
    if (tok.empty()) throw std::invalid_argument("parse_prefix: unexpected end of input");
    if (tok != "(") return parse_atom(tok);
    std::string head = tk.next();
    if (head == "+" || head == "*") {
        std::vector<Expr> kids;
        for (;;) {
            size_t save = tk.pos;
            std::string peek = tk.next();
            if (peek == ")") break;
            tk.pos = save;
            kids.push_back(parse_rec(tk));
        }
        return head == "+" ? Expr::sum(std::move(kids)) : Expr::prod(std::move(kids));
    }
    if (head == "^") {
        Expr base = parse_rec(tk);
        std::string e = tk.next();
        Rat r = parse_rational(e);
        if (tk.next() != ")") throw std::invalid_argument("parse_prefix: expected ')'");
        return Expr::pow(base, r);
    }
    for (Fn f : {Fn::sin, Fn::cos, Fn::tan, Fn::cot, Fn::sec, Fn::csc, Fn::sinh, Fn::cosh, Fn::tanh,
                 Fn::coth})
        if (head == name(f)) {
            Expr arg = parse_rec(tk);
            if (tk.next() != ")") throw std::invalid_argument("parse_prefix: expected ')'");
            return Expr::fn(f, arg);
        }
    throw std::invalid_argument("parse_prefix: unknown operator '" + head + "'");
}

}  // namespace

std::string to_prefix(const Expr& e) {
    std::ostringstream os;
    write_prefix(e.node(), os);
    return os.str();
}

Expr parse_prefix(const std::string& text) {
    Tokenizer tk{text};
    Expr e = parse_rec(tk);
    std::string rest = tk.next();
    if (!rest.empty()) throw std::invalid_argument("parse_prefix: trailing tokens");
    return e;
}

}  // namespace itw
