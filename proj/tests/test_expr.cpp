#include <cmath>
#include <random>

#include "doctest.h"
#include "itw/expr.hpp"

using namespace itw;

namespace {
Expr V(Var v) { return Expr::variable(v); }
Expr F(Fn f, Var v) { return Expr::fn(f, V(v)); }
}  // namespace

TEST_CASE("rational parsing and arithmetic") {
    CHECK(parse_rational("3/4") == Rat(3, 4));
    CHECK(parse_rational("-5") == Rat(-5));
    CHECK(parse_rational("1.25") == Rat(5, 4));
    CHECK(parse_rational("-0.5") == Rat(-1, 2));
    CHECK(rat_pow(Rat(2, 3), -2) == Rat(9, 4));
    CHECK_THROWS(parse_rational("a"));
    CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("eval of basic closed forms") {
    Bindings b;
    b.set(Var::theta, M_PI / 2);
    CHECK(eval(F(Fn::sin, Var::theta), b) == doctest::Approx(1.0).epsilon(1e-14));

    Bindings b2;
    b2.set(Var::xi, std::log(2.0));
    // coth(ln 2) = (4+1)/(4-1)
    CHECK(eval(F(Fn::coth, Var::xi), b2) == doctest::Approx(5.0 / 3.0).epsilon(1e-14));

    // cos^2(phi) tan(phi) - sin(phi) cos(phi) == 0 identically
    Expr e = F(Fn::cos, Var::phi) * F(Fn::cos, Var::phi) * F(Fn::tan, Var::phi) -
             F(Fn::sin, Var::phi) * F(Fn::cos, Var::phi);
    Bindings b3;
    b3.set(Var::phi, 0.7);
    CHECK(std::fabs(eval(e, b3)) < 1e-15);
}

TEST_CASE("evaluation fails loudly") {
    Bindings empty;
    CHECK_THROWS_AS(eval(F(Fn::sin, Var::theta), empty), UnboundSymbolError);
    CHECK_THROWS_AS(eval(Expr::symbol(Sym::l0), empty), UnboundSymbolError);

    Bindings pole;
    pole.set(Var::theta, M_PI / 2);
    CHECK_THROWS_AS(eval(F(Fn::tan, Var::theta), pole), DomainError);
    Bindings zero;
    zero.set(Var::xi, 0.0);
    CHECK_THROWS_AS(eval(F(Fn::coth, Var::xi), zero), DomainError);
    CHECK_THROWS_AS(eval(Expr::pow(F(Fn::sin, Var::xi), Rat(1, 2)), Bindings().set(Var::xi, -0.5)),
                    DomainError);
}

TEST_CASE("differentiate: exact rules") {
    // d tan/dtheta at 0 is sec^2(0) = 1
    Expr dtan = differentiate(F(Fn::tan, Var::theta), Var::theta);
    Bindings b;
    b.set(Var::theta, 0.0);
    CHECK(eval(dtan, b) == doctest::Approx(1.0).epsilon(1e-14));

    // d coth/dxi + coth^2 - 1 == 0 for xi > 0
    Expr e = differentiate(F(Fn::coth, Var::xi), Var::xi) +
             F(Fn::coth, Var::xi) * F(Fn::coth, Var::xi) - Expr::constant(1);
    for (double xi : {0.3, 0.9, 1.7}) {
        Bindings bx;
        bx.set(Var::xi, xi);
        CHECK(std::fabs(eval(e, bx)) < 1e-12);
    }
}

TEST_CASE("differentiate matches central differences on a fuzz corpus") {
    // e = cos^(3/2) theta * sin^(1/2) theta at 40 random points in (0.1, 1.4)
    Expr e = Expr::pow(F(Fn::cos, Var::theta), Rat(3, 2)) *
             Expr::pow(F(Fn::sin, Var::theta), Rat(1, 2));
    Expr de = differentiate(e, Var::theta);
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(0.1, 1.4);
    const double h = 1e-5;
    for (int i = 0; i < 40; ++i) {
        double t = u(rng);
        Bindings bp, bm, b0;
        bp.set(Var::theta, t + h);
        bm.set(Var::theta, t - h);
        b0.set(Var::theta, t);
        double fd = (eval(e, bp) - eval(e, bm)) / (2 * h);
        CHECK(std::fabs(eval(de, b0) - fd) < 1e-7);
    }
}

TEST_CASE("differentiation closure: derivative reparses as an admissible tree") {
    std::vector<Expr> corpus = {
        F(Fn::tan, Var::theta) * Expr::pow(F(Fn::cos, Var::theta), Rat(5, 2)),
        F(Fn::coth, Var::xi) + F(Fn::tanh, Var::xi) * F(Fn::sinh, Var::xi),
        Expr::pow(F(Fn::sec, Var::theta) * F(Fn::csc, Var::theta), Rat(-1, 2)),
        jacobi_poly(3, Rat(1), Rat(0)),
    };
    for (const auto& e : corpus) {
        for (Var v : {Var::theta, Var::xi, Var::x}) {
            Expr d = differentiate(e, v);
            Expr round = parse_prefix(to_prefix(d));
            // Round-trip must evaluate identically.
            Bindings b;
            b.set(Var::theta, 0.7).set(Var::xi, 0.9).set(Var::x, 0.3);
            CHECK(eval(d, b) == doctest::Approx(eval(round, b)).epsilon(1e-14));
        }
    }
}

TEST_CASE("jacobi polynomials: recurrence against explicit forms") {
    // P_0 = 1 for symbolic a, b
    Expr p0 = jacobi_poly(0, Expr::symbol(Sym::l0), Expr::symbol(Sym::l1));
    CHECK(p0.is_constant());
    CHECK(p0.constant_value() == Rat(1));

    // P_1^(0,0)(x) = x (Legendre)
    Expr p1 = jacobi_poly(1, Rat(0), Rat(0));
    Bindings b;
    b.set(Var::x, 0.37);
    CHECK(eval(p1, b) == doctest::Approx(0.37).epsilon(1e-14));

    // P_2^(1,0)(0.3) against the direct hypergeometric series
    auto series = [](int m, double a, double bb, double x) {
        auto binom = [](double n, int k) {
            double r = 1;
            for (int i = 1; i <= k; ++i) r *= (n - k + i) / i;
            return r;
        };
        double s = 0;
        for (int k = 0; k <= m; ++k)
            s += binom(m + a, m - k) * binom(m + bb, k) * std::pow((x - 1) / 2, k) *
                 std::pow((x + 1) / 2, m - k);
        return s;
    };
    Expr p2 = jacobi_poly(2, Rat(1), Rat(0));
    Bindings b2;
    b2.set(Var::x, 0.3);
    CHECK(std::fabs(eval(p2, b2) - series(2, 1, 0, 0.3)) < 1e-12);

    // Symbolic parameters bind late
    Expr psym = jacobi_poly(2, Expr::symbol(Sym::l0), Expr::symbol(Sym::l1));
    Bindings b3;
    b3.set(Var::x, 0.3).set(Sym::l0, 1.0).set(Sym::l1, 0.0);
    CHECK(std::fabs(eval(psym, b3) - series(2, 1, 0, 0.3)) < 1e-12);
}

TEST_CASE("jacobi orthogonality spot check") {
    // integral of P1 P2 (1-x)^a (1+x)^b over [-1,1] vanishes
    for (auto [a, b] : {std::pair{0, 0}, {1, 0}, {1, 1}}) {
        Expr p1 = jacobi_poly(1, Rat(a), Rat(b));
        Expr p2 = jacobi_poly(2, Rat(a), Rat(b));
        auto f = [&](double x) {
            Bindings bb;
            bb.set(Var::x, x);
            return eval(p1, bb) * eval(p2, bb) * std::pow(1 - x, a) * std::pow(1 + x, b);
        };
        // Composite Simpson on a fine grid is enough at this smoothness.
        const int n = 4000;
        double s = 0, h = 2.0 / n;
        for (int i = 0; i < n; ++i) {
            double x0 = -1 + i * h, x1 = x0 + h;
            s += (f(x0) + 4 * f(0.5 * (x0 + x1)) + f(x1)) * h / 6;
        }
        CHECK(std::fabs(s) < 1e-8);
    }
}

TEST_CASE("prefix serialization round-trips and is stable") {
    Expr e = Expr::pow(F(Fn::cos, Var::theta), Rat(3, 2)) * F(Fn::sinh, Var::xi) +
             Rat(-1, 2) * Expr::symbol(Sym::l0);
    std::string s = to_prefix(e);
    Expr back = parse_prefix(s);
    CHECK(to_prefix(back) == s);
    // Golden form of a simple expression.
    CHECK(to_prefix(F(Fn::sin, Var::theta)) == "(sin theta)");
    CHECK(to_prefix(Expr::pow(F(Fn::sin, Var::theta), Rat(1, 2))) == "(^ (sin theta) 1/2)");
}

TEST_CASE("substitute replaces a variable by an expression") {
    Expr p = jacobi_poly(2, Rat(0), Rat(0));
    Expr arg = Expr::fn(Fn::cos, Rat(2) * V(Var::theta));
    Expr q = substitute(p, Var::x, arg);
    Bindings b;
    b.set(Var::theta, 0.4);
    double c2 = std::cos(0.8);
    CHECK(eval(q, b) == doctest::Approx(0.5 * (3 * c2 * c2 - 1)).epsilon(1e-13));
}
