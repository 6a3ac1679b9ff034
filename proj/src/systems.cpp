#include "itw/systems.hpp"

#include <cmath>

namespace itw {

namespace {

constexpr double kPi2 = 1.5707963267948966;

Expr C(long long n) { return Expr::constant(n); }
Expr C(const Rat& r) { return Expr::constant(r); }
Expr F(Fn f, Var v) { return Expr::fn(f, Expr::variable(v)); }

// (p^2 - 1/4) / f(v)^2
Expr pt_term(const Rat& p, Fn f, Var v) {
    return C(p * p - Rat(1, 4)) * Expr::pow(F(f, v), Rat(-2));
}

const Chart kCharts[] = {
    {ChartId::HypThetaXi, SystemId::HyperboloidU21, "hyperboloid theta-xi",
     {Var::theta, Var::xi}, 0.08, kPi2 - 0.08, 0.15, 1.60, AxisKind::trig, AxisKind::hyper},
    {ChartId::HypPsiChi, SystemId::HyperboloidU21, "hyperboloid psi-chi",
     {Var::psi, Var::chi}, 0.12, 1.20, 0.15, 1.40, AxisKind::hyper, AxisKind::hyper},
    {ChartId::HypPhiBeta, SystemId::HyperboloidU21, "hyperboloid phi-beta",
     {Var::phi, Var::beta}, 0.12, 1.20, 0.15, 1.40, AxisKind::hyper, AxisKind::hyper},
    {ChartId::SphThetaPhi, SystemId::SphereU3, "sphere theta-phi",
     {Var::theta, Var::phi}, 0.08, kPi2 - 0.08, 0.08, kPi2 - 0.08, AxisKind::trig, AxisKind::trig},
    {ChartId::SphXiPsi, SystemId::SphereU3, "sphere xi-psi",
     {Var::xi, Var::psi}, 0.08, kPi2 - 0.08, 0.08, kPi2 - 0.08, AxisKind::trig, AxisKind::trig},
    {ChartId::SphEtaBeta, SystemId::SphereU3, "sphere eta-beta",
     {Var::eta, Var::beta}, 0.08, kPi2 - 0.08, 0.08, kPi2 - 0.08, AxisKind::trig, AxisKind::trig},
};

}  // namespace

const char* name(SystemId s) {
    return s == SystemId::SphereU3 ? "sphere" : "hyperboloid";
}

SystemId parse_system(const std::string& s) {
    if (s == "sphere") return SystemId::SphereU3;
    if (s == "hyperboloid") return SystemId::HyperboloidU21;
    throw std::invalid_argument("unknown system '" + s + "' (expected sphere|hyperboloid)");
}

const Chart& chart_info(ChartId id) { return kCharts[static_cast<int>(id)]; }

ChartId primary_chart(SystemId system) {
    return system == SystemId::HyperboloidU21 ? ChartId::HypThetaXi : ChartId::SphThetaPhi;
}

std::array<ChartId, 3> charts_of(SystemId system) {
    if (system == SystemId::HyperboloidU21)
        return {ChartId::HypThetaXi, ChartId::HypPsiChi, ChartId::HypPhiBeta};
    return {ChartId::SphThetaPhi, ChartId::SphXiPsi, ChartId::SphEtaBeta};
}

SampleSpec sample_spec(ChartId id, std::uint64_t seed, double tol) {
    const Chart& c = chart_info(id);
    SampleSpec s{c.lo1, c.hi1, c.lo2, c.hi2};
    s.ax1 = c.ax1;
    s.ax2 = c.ax2;
    s.seed = seed;
    s.tol = tol;
    return s;
}

Expr embedding(ChartId id, int i) {
    switch (id) {
        case ChartId::HypThetaXi: {
            const Expr s[3] = {F(Fn::sinh, Var::xi) * F(Fn::cos, Var::theta),
                               F(Fn::sinh, Var::xi) * F(Fn::sin, Var::theta),
                               F(Fn::cosh, Var::xi)};
            return s[i];
        }
        case ChartId::HypPsiChi: {
            const Expr s[3] = {F(Fn::cosh, Var::psi) * F(Fn::sinh, Var::chi),
                               F(Fn::sinh, Var::psi),
                               F(Fn::cosh, Var::psi) * F(Fn::cosh, Var::chi)};
            return s[i];
        }
        case ChartId::HypPhiBeta: {
            const Expr s[3] = {F(Fn::sinh, Var::phi),
                               F(Fn::cosh, Var::phi) * F(Fn::sinh, Var::beta),
                               F(Fn::cosh, Var::phi) * F(Fn::cosh, Var::beta)};
            return s[i];
        }
        case ChartId::SphThetaPhi: {
            const Expr s[3] = {F(Fn::cos, Var::phi) * F(Fn::cos, Var::theta),
                               F(Fn::cos, Var::phi) * F(Fn::sin, Var::theta),
                               F(Fn::sin, Var::phi)};
            return s[i];
        }
        case ChartId::SphXiPsi: {
            const Expr s[3] = {F(Fn::cos, Var::psi) * F(Fn::sin, Var::xi),
                               F(Fn::sin, Var::psi),
                               F(Fn::cos, Var::psi) * F(Fn::cos, Var::xi)};
            return s[i];
        }
        case ChartId::SphEtaBeta: {
            const Expr s[3] = {F(Fn::sin, Var::beta),
                               F(Fn::cos, Var::beta) * F(Fn::cos, Var::eta),
                               F(Fn::cos, Var::beta) * F(Fn::sin, Var::eta)};
            return s[i];
        }
    }
    throw std::logic_error("embedding: bad chart");
}

std::array<DiffOp, 3> generators(SystemId system, ChartId chart) {
    const Chart& c = chart_info(chart);
    if (c.system != system) throw ChartMismatch("generators: chart does not belong to system");
    const VarPair vp = c.vars;
    auto D1 = DiffOp::d1(vp);
    auto D2 = DiffOp::d2(vp);
    switch (chart) {
        case ChartId::HypThetaXi: {
            Expr cothxi = F(Fn::coth, Var::xi);
            DiffOp j0 = left_mul(F(Fn::sin, Var::theta), D2) +
                        left_mul(F(Fn::cos, Var::theta) * cothxi, D1);
            DiffOp j1 = left_mul(F(Fn::cos, Var::theta), D2) -
                        left_mul(F(Fn::sin, Var::theta) * cothxi, D1);
            DiffOp j2 = D1;
            return {j0, j1, j2};
        }
        case ChartId::HypPsiChi: {
            Expr th = F(Fn::tanh, Var::psi);
            DiffOp j0 = left_mul(F(Fn::cosh, Var::chi), D1) -
                        left_mul(th * F(Fn::sinh, Var::chi), D2);
            DiffOp j1 = D2;
            DiffOp j2 = left_mul(F(Fn::sinh, Var::chi), D1) -
                        left_mul(th * F(Fn::cosh, Var::chi), D2);
            return {j0, j1, j2};
        }
        case ChartId::HypPhiBeta: {
            Expr th = F(Fn::tanh, Var::phi);
            DiffOp j0 = D2;
            DiffOp j1 = left_mul(F(Fn::cosh, Var::beta), D1) -
                        left_mul(th * F(Fn::sinh, Var::beta), D2);
            DiffOp j2 = -left_mul(F(Fn::sinh, Var::beta), D1) +
                        left_mul(th * F(Fn::cosh, Var::beta), D2);
            return {j0, j1, j2};
        }
        case ChartId::SphThetaPhi: {
            Expr tf = F(Fn::tan, Var::phi);
            DiffOp j0 = left_mul(F(Fn::cos, Var::theta) * tf, D1) -
                        left_mul(F(Fn::sin, Var::theta), D2);
            DiffOp j1 = left_mul(F(Fn::sin, Var::theta) * tf, D1) +
                        left_mul(F(Fn::cos, Var::theta), D2);
            DiffOp j2 = -D1;
            return {j0, j1, j2};
        }
        case ChartId::SphXiPsi: {
            Expr tp = F(Fn::tan, Var::psi);
            DiffOp j0 = left_mul(F(Fn::sin, Var::xi) * tp, D1) +
                        left_mul(F(Fn::cos, Var::xi), D2);
            DiffOp j1 = -D1;
            DiffOp j2 = left_mul(F(Fn::cos, Var::xi) * tp, D1) -
                        left_mul(F(Fn::sin, Var::xi), D2);
            return {j0, j1, j2};
        }
        case ChartId::SphEtaBeta: {
            Expr tb = F(Fn::tan, Var::beta);
            DiffOp j0 = -D1;
            DiffOp j1 = left_mul(F(Fn::cos, Var::eta) * tb, D1) -
                        left_mul(F(Fn::sin, Var::eta), D2);
            DiffOp j2 = left_mul(F(Fn::sin, Var::eta) * tb, D1) +
                        left_mul(F(Fn::cos, Var::eta), D2);
            return {j0, j1, j2};
        }
    }
    throw std::logic_error("generators: bad chart");
}

DiffOp quantum_hamiltonian(SystemId system, ChartId chart, const ParamTriple& l) {
    const Chart& c = chart_info(chart);
    if (c.system != system) throw ChartMismatch("quantum_hamiltonian: chart/system mismatch");
    const VarPair vp = c.vars;
    DiffOp h(vp);
    switch (chart) {
        case ChartId::HypThetaXi: {
            // -d_xi^2 - coth(xi) d_xi - (l2^2-1/4)/cosh^2(xi)
            //   + sinh(xi)^-2 [ -d_theta^2 + (l1^2-1/4)/sin^2 + (l0^2-1/4)/cos^2 ]
            Expr inv_sinh2 = Expr::pow(F(Fn::sinh, Var::xi), Rat(-2));
            h.add_term(0, 2, C(-1));
            h.add_term(0, 1, Rat(-1) * F(Fn::coth, Var::xi));
            h.add_term(2, 0, Rat(-1) * inv_sinh2);
            h.add_term(0, 0, Rat(-1) * pt_term(l.l2, Fn::cosh, Var::xi) +
                                 inv_sinh2 * (pt_term(l.l1, Fn::sin, Var::theta) +
                                              pt_term(l.l0, Fn::cos, Var::theta)));
            return h;
        }
        case ChartId::HypPsiChi: {
            Expr inv_cosh2 = Expr::pow(F(Fn::cosh, Var::psi), Rat(-2));
            h.add_term(2, 0, C(-1));
            h.add_term(1, 0, Rat(-1) * F(Fn::tanh, Var::psi));
            h.add_term(0, 2, Rat(-1) * inv_cosh2);
            h.add_term(0, 0, pt_term(l.l1, Fn::sinh, Var::psi) +
                                 inv_cosh2 * (pt_term(l.l0, Fn::sinh, Var::chi) -
                                              pt_term(l.l2, Fn::cosh, Var::chi)));
            return h;
        }
        case ChartId::HypPhiBeta: {
            Expr inv_cosh2 = Expr::pow(F(Fn::cosh, Var::phi), Rat(-2));
            h.add_term(2, 0, C(-1));
            h.add_term(1, 0, Rat(-1) * F(Fn::tanh, Var::phi));
            h.add_term(0, 2, Rat(-1) * inv_cosh2);
            h.add_term(0, 0, pt_term(l.l0, Fn::sinh, Var::phi) +
                                 inv_cosh2 * (pt_term(l.l1, Fn::sinh, Var::beta) -
                                              pt_term(l.l2, Fn::cosh, Var::beta)));
            return h;
        }
        case ChartId::SphThetaPhi: {
            Expr inv_cos2 = Expr::pow(F(Fn::cos, Var::phi), Rat(-2));
            h.add_term(0, 2, C(-1));
            h.add_term(0, 1, F(Fn::tan, Var::phi));
            h.add_term(2, 0, Rat(-1) * inv_cos2);
            h.add_term(0, 0, pt_term(l.l2, Fn::sin, Var::phi) +
                                 inv_cos2 * (pt_term(l.l0, Fn::cos, Var::theta) +
                                             pt_term(l.l1, Fn::sin, Var::theta)));
            return h;
        }
        case ChartId::SphXiPsi: {
            Expr inv_cos2 = Expr::pow(F(Fn::cos, Var::psi), Rat(-2));
            h.add_term(0, 2, C(-1));
            h.add_term(0, 1, F(Fn::tan, Var::psi));
            h.add_term(2, 0, Rat(-1) * inv_cos2);
            h.add_term(0, 0, pt_term(l.l1, Fn::sin, Var::psi) +
                                 inv_cos2 * (pt_term(l.l2, Fn::cos, Var::xi) +
                                             pt_term(l.l0, Fn::sin, Var::xi)));
            return h;
        }
        case ChartId::SphEtaBeta: {
            Expr inv_cos2 = Expr::pow(F(Fn::cos, Var::beta), Rat(-2));
            h.add_term(0, 2, C(-1));
            h.add_term(0, 1, F(Fn::tan, Var::beta));
            h.add_term(2, 0, Rat(-1) * inv_cos2);
            h.add_term(0, 0, pt_term(l.l0, Fn::sin, Var::beta) +
                                 inv_cos2 * (pt_term(l.l1, Fn::cos, Var::eta) +
                                             pt_term(l.l2, Fn::sin, Var::eta)));
            return h;
        }
    }
    throw std::logic_error("quantum_hamiltonian: bad chart");
}

DiffOp quantum_hamiltonian_from_generators(SystemId system, ChartId chart, const ParamTriple& l) {
    auto [j0, j1, j2] = generators(system, chart);
    const VarPair vp = j0.vars();
    DiffOp kin(vp);
    if (system == SystemId::HyperboloidU21)
        kin = -compose(j0, j0) - compose(j1, j1) + compose(j2, j2);
    else
        kin = -(compose(j0, j0) + compose(j1, j1) + compose(j2, j2));
    const Rat cs[3] = {l.l0 * l.l0 - Rat(1, 4), l.l1 * l.l1 - Rat(1, 4), l.l2 * l.l2 - Rat(1, 4)};
    Expr pot = Expr::constant(0);
    for (int i = 0; i < 3; ++i) {
        Expr t = C(cs[i]) * Expr::pow(embedding(chart, i), Rat(-2));
        if (system == SystemId::HyperboloidU21 && i == 2) t = -t;
        pot = pot + t;
    }
    return kin + DiffOp::mul(vp, pot);
}

DiffOp separated_hamiltonian(SeparatedFamily family, const Rat& p1, const Rat& p2) {
    switch (family) {
        case SeparatedFamily::HThetaA:
        case SeparatedFamily::SphereHTheta: {
            // -d^2/dtheta^2 + (p2^2-1/4)/sin^2 + (p1^2-1/4)/cos^2, (p1,p2) = (l0,l1)
            VarPair vp{Var::theta, Var::xi};
            if (family == SeparatedFamily::SphereHTheta) vp = {Var::theta, Var::phi};
            DiffOp h(vp);
            h.add_term(2, 0, C(-1));
            h.add_term(0, 0, pt_term(p2, Fn::sin, Var::theta) + pt_term(p1, Fn::cos, Var::theta));
            return h;
        }
        case SeparatedFamily::HChiB: {
            // -d^2/dchi^2 + (p1^2-1/4)/sinh^2 - (p2^2-1/4)/cosh^2, (p1,p2) = (l0,l2)
            VarPair vp{Var::psi, Var::chi};
            DiffOp h(vp);
            h.add_term(0, 2, C(-1));
            h.add_term(0, 0, pt_term(p1, Fn::sinh, Var::chi) - pt_term(p2, Fn::cosh, Var::chi));
            return h;
        }
        case SeparatedFamily::HBetaC: {
            // Same hyperbolic shape in beta, (p1,p2) = (l1,l2).
            VarPair vp{Var::phi, Var::beta};
            DiffOp h(vp);
            h.add_term(0, 2, C(-1));
            h.add_term(0, 0, pt_term(p1, Fn::sinh, Var::beta) - pt_term(p2, Fn::cosh, Var::beta));
            return h;
        }
    }
    throw std::logic_error("separated_hamiltonian: bad family");
}

DiffOp separated_radial(SystemId system, const Rat& l_outer, const Rat& alpha) {
    if (system == SystemId::HyperboloidU21) {
        VarPair vp{Var::theta, Var::xi};
        DiffOp h(vp);
        h.add_term(0, 2, C(-1));
        h.add_term(0, 1, Rat(-1) * F(Fn::coth, Var::xi));
        h.add_term(0, 0, Rat(-1) * pt_term(l_outer, Fn::cosh, Var::xi) +
                             C(alpha) * Expr::pow(F(Fn::sinh, Var::xi), Rat(-2)));
        return h;
    }
    VarPair vp{Var::theta, Var::phi};
    DiffOp h(vp);
    h.add_term(0, 2, C(-1));
    h.add_term(0, 1, F(Fn::tan, Var::phi));
    h.add_term(0, 0, pt_term(l_outer, Fn::sin, Var::phi) +
                         C(alpha) * Expr::pow(F(Fn::cos, Var::phi), Rat(-2)));
    return h;
}

nlohmann::json charts_json() {
    nlohmann::json out = nlohmann::json::array();
    for (const Chart& c : kCharts) {
        out.push_back({{"name", c.name},
                       {"system", name(c.system)},
                       {"variables", {name(c.vars.v1), name(c.vars.v2)}},
                       {"domain", {{"lo", {c.lo1, c.lo2}}, {"hi", {c.hi1, c.hi2}}}}});
    }
    return out;
}

}  // namespace itw
