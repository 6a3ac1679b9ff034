#include <cmath>

#include "doctest.h"
#include "itw/diffop.hpp"
#include "itw/ladders.hpp"
#include "itw/systems.hpp"

using namespace itw;

namespace {
const VarPair kTX{Var::theta, Var::xi};
Expr V(Var v) { return Expr::variable(v); }
Expr F(Fn f, Var v) { return Expr::fn(f, V(v)); }
SampleSpec hyp_spec(std::uint64_t seed = 0xC0FFEE) {
    return sample_spec(ChartId::HypThetaXi, seed);
}
}  // namespace

TEST_CASE("apply: derivative and multiplication terms") {
    DiffOp d = DiffOp::d1(kTX);
    Expr out = apply(d, F(Fn::sin, Var::theta));
    Bindings b;
    b.set(Var::theta, 0.3).set(Var::xi, 0.5);
    CHECK(eval(out, b) == doctest::Approx(std::cos(0.3)).epsilon(1e-14));
}

TEST_CASE("[multiplication by theta, d_theta] = -1 on probes") {
    DiffOp mul_theta = DiffOp::mul(kTX, V(Var::theta));
    DiffOp d = DiffOp::d1(kTX);
    DiffOp comm = bracket(mul_theta, d);
    EqReport rep = equal_numeric(comm, Rat(-1) * DiffOp::identity(kTX), hyp_spec());
    CHECK(rep.pass);
}

TEST_CASE("A-(1/2,1/2) annihilates cos(theta)sin(theta)") {
    DiffOp am = ladder_op(SystemId::HyperboloidU21,
                          {LadderFamily::A, OpSign::minus}, {Rat(1, 2), Rat(1, 2), Rat(0)});
    Expr f0 = F(Fn::cos, Var::theta) * F(Fn::sin, Var::theta);
    Expr out = apply(am, f0);
    for (double t : {0.3, 0.7, 1.1}) {
        Bindings b;
        b.set(Var::theta, t).set(Var::xi, 0.8);
        CHECK(std::fabs(eval(out, b)) < 1e-13);
    }
}

TEST_CASE("compose: d_theta twice gives the second derivative term") {
    DiffOp d = DiffOp::d1(kTX);
    DiffOp dd = compose(d, d);
    REQUIRE(dd.terms().size() == 1);
    CHECK(dd.terms()[0].a == 2);
    CHECK(dd.terms()[0].b == 0);
}

TEST_CASE("compose identity is neutral") {
    DiffOp any = ladder_op(SystemId::HyperboloidU21, {LadderFamily::B, OpSign::plus},
                           {Rat(1), Rat(0), Rat(-3)});
    DiffOp id = DiffOp::identity(kTX);
    CHECK(equal_numeric(compose(id, any), any, hyp_spec()).pass);
    CHECK(equal_numeric(compose(any, id), any, hyp_spec()).pass);
}

TEST_CASE("compose A+A- + lambda reproduces the separated Hamiltonian at (1,1)") {
    ParamTriple l{Rat(1), Rat(1), Rat(0)};
    DiffOp ap = ladder_op(SystemId::HyperboloidU21, {LadderFamily::A, OpSign::plus}, l);
    DiffOp am = ladder_op(SystemId::HyperboloidU21, {LadderFamily::A, OpSign::minus}, l);
    DiffOp lhs = compose(ap, am) + Rat(9) * DiffOp::identity(kTX);
    DiffOp h = separated_hamiltonian(SeparatedFamily::HThetaA, Rat(1), Rat(1));
    CHECK(equal_numeric(lhs, h, hyp_spec()).pass);
}

TEST_CASE("bracket of an operator with itself vanishes") {
    DiffOp j0 = generators(SystemId::HyperboloidU21, ChartId::HypThetaXi)[0];
    DiffOp z = bracket(j0, j0);
    CHECK(equal_numeric(z, DiffOp::zero(kTX), hyp_spec()).pass);
}

TEST_CASE("equal_numeric distinguishes distinct operators") {
    EqReport rep = equal_numeric(DiffOp::d1(kTX), DiffOp::d2(kTX), hyp_spec());
    CHECK(!rep.pass);
    CHECK(rep.max_residual > 0.01);
}

TEST_CASE("equal_numeric of an operator with itself reports zero residual") {
    DiffOp j1 = generators(SystemId::HyperboloidU21, ChartId::HypThetaXi)[1];
    EqReport rep = equal_numeric(j1, j1, hyp_spec());
    CHECK(rep.pass);
    CHECK(rep.max_residual == 0.0);
}

TEST_CASE("equal_numeric report serializes the required fields") {
    EqReport rep = equal_numeric(DiffOp::d1(kTX), DiffOp::d1(kTX), hyp_spec(), "d1", "d1");
    auto j = rep.to_json();
    CHECK(j.contains("lhs"));
    CHECK(j.contains("rhs"));
    CHECK(j.contains("seed"));
    CHECK(j.contains("samples"));
    CHECK(j.contains("max_residual"));
    CHECK(j.contains("pass"));
    CHECK(j["samples"].get<int>() == 200);
}

TEST_CASE("linearity of apply on probes") {
    DiffOp h = quantum_hamiltonian(SystemId::HyperboloidU21, ChartId::HypThetaXi,
                                   {Rat(1), Rat(0), Rat(-3)});
    std::mt19937_64 rng(7);
    Expr f = random_probe(kTX, AxisKind::trig, AxisKind::hyper, rng);
    Expr g = random_probe(kTX, AxisKind::trig, AxisKind::hyper, rng);
    Expr lhs = apply(h, f + g);
    Expr rhs = apply(h, f) + apply(h, g);
    for (double t : {0.3, 0.9}) {
        Bindings b;
        b.set(Var::theta, t).set(Var::xi, 0.7 + t);
        CHECK(eval(lhs, b) == doctest::Approx(eval(rhs, b)).epsilon(1e-12));
    }
}

TEST_CASE("associativity of compose on probes") {
    auto js = generators(SystemId::HyperboloidU21, ChartId::HypThetaXi);
    DiffOp left = compose(compose(js[0], js[1]), js[2]);
    DiffOp right = compose(js[0], compose(js[1], js[2]));
    CHECK(equal_numeric(left, right, hyp_spec()).pass);
}

TEST_CASE("bracket antisymmetry as operators") {
    auto js = generators(SystemId::HyperboloidU21, ChartId::HypThetaXi);
    DiffOp s = bracket(js[0], js[1]) + bracket(js[1], js[0]);
    CHECK(equal_numeric(s, DiffOp::zero(kTX), hyp_spec()).pass);
}

TEST_CASE("Jacobi identity for the generator triple") {
    auto js = generators(SystemId::HyperboloidU21, ChartId::HypThetaXi);
    DiffOp lhs = bracket(bracket(js[0], js[1]), js[2]) + bracket(bracket(js[1], js[2]), js[0]) +
                 bracket(bracket(js[2], js[0]), js[1]);
    SampleSpec spec = hyp_spec();
    spec.tol = 1e-10;
    CHECK(equal_numeric(lhs, DiffOp::zero(kTX), spec).pass);
}

TEST_CASE("order overflow is an error") {
    DiffOp d2 = compose(DiffOp::d1(kTX), DiffOp::d1(kTX));
    DiffOp d4 = compose(d2, d2);
    CHECK_THROWS_AS(compose(d4, DiffOp::d1(kTX)), OrderOverflow);
}

TEST_CASE("variable mismatch is an error") {
    DiffOp a = DiffOp::d1(kTX);
    DiffOp b = DiffOp::d1({Var::psi, Var::chi});
    CHECK_THROWS_AS(compose(a, b), VariableMismatch);
}

TEST_CASE("doubling the sample count never flips a pass at the same seed") {
    ParamTriple l{Rat(1), Rat(1), Rat(0)};
    DiffOp ap = ladder_op(SystemId::HyperboloidU21, {LadderFamily::A, OpSign::plus}, l);
    DiffOp am = ladder_op(SystemId::HyperboloidU21, {LadderFamily::A, OpSign::minus}, l);
    DiffOp lhs = compose(ap, am) + Rat(9) * DiffOp::identity(kTX);
    DiffOp h = separated_hamiltonian(SeparatedFamily::HThetaA, Rat(1), Rat(1));
    SampleSpec s1 = hyp_spec();
    SampleSpec s2 = hyp_spec();
    s2.points = 2 * s1.points;
    CHECK(equal_numeric(lhs, h, s1).pass);
    CHECK(equal_numeric(lhs, h, s2).pass);
}
