#include "itw/spectra.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

namespace itw {

namespace {

Expr C(const Rat& r) { return Expr::constant(r); }
Expr Fpow(Fn f, Var v, const Rat& e) { return Expr::pow(Expr::fn(f, Expr::variable(v)), e); }

Rat rabs(const Rat& r) { return r < Rat(0) ? -r : r; }

bool is_integer(const Rat& r) { return r.denominator() == 1; }

}  // namespace

StateForm ground_state(SystemId system, const ParamTriple& l) {
    if (l.l1 != Rat(0))
        throw ValidityError("ground state requires l1 = 0, got l1 = " + to_string(l.l1));
    if (system == SystemId::HyperboloidU21) {
        if (l.l0 < Rat(-1, 2))
            throw ValidityError("ground state requires l0 >= -1/2, got l0 = " + to_string(l.l0));
        if (!(l.l0 + l.l2 < Rat(-5, 2)))
            throw ValidityError("normalization requires l0+l2 < -5/2, got l0+l2 = " +
                                to_string(l.l0 + l.l2));
        Expr form = Fpow(Fn::cos, Var::theta, l.l0 + half()) * Fpow(Fn::sin, Var::theta, half()) *
                    Fpow(Fn::cosh, Var::xi, l.l2 + half()) * Fpow(Fn::sinh, Var::xi, l.l0 + 1);
        return {system, ChartId::HypThetaXi, form, l, ground_energy(system, l),
                {},     "l1=0, l0>=-1/2, l0+l2<-5/2", std::nullopt};
    }
    if (!is_integer(l.l0) || l.l0 < Rat(0))
        throw ValidityError("sphere ground state requires l0 = m a nonnegative integer, got " +
                            to_string(l.l0));
    if (!is_integer(l.l2) || l.l2 < Rat(0))
        throw ValidityError("sphere ground state requires l2 = n a nonnegative integer, got " +
                            to_string(l.l2));
    Expr form = Fpow(Fn::cos, Var::theta, l.l0 + half()) * Fpow(Fn::sin, Var::theta, half()) *
                Fpow(Fn::cos, Var::phi, l.l0 + 1) * Fpow(Fn::sin, Var::phi, l.l2 + half());
    return {system, ChartId::SphThetaPhi, form, l, ground_energy(system, l),
            {},     "l1=0, l0,l2 in Z>=0",           std::nullopt};
}

StateForm excited_1d(const Rat& l0, const Rat& l1, int n) {
    if (l0 < Rat(-1, 2) || l1 < Rat(-1, 2))
        throw ValidityError("excited_1d requires l0, l1 >= -1/2");
    Expr arg = Expr::fn(Fn::cos, Rat(2) * Expr::variable(Var::theta));
    Expr form = Fpow(Fn::sin, Var::theta, l1 + half()) * Fpow(Fn::cos, Var::theta, l0 + half()) *
                substitute(jacobi_poly(n, l1, l0), Var::x, arg);
    return {SystemId::HyperboloidU21, ChartId::HypThetaXi, form, {l0, l1, Rat(0)},
            separated_energy(l0, l1, n), {}, "l0,l1 >= -1/2", std::nullopt};
}

std::optional<StateForm> raise_state(const StateForm& state, LadderFamily family) {
    HatInstance inst = hat_instance(state.system, HatLetter{family, +1}, state.l);
    Expr raised = apply(inst.op, state.form);

    const Chart& c = chart_info(state.chart);
    double max_in = 0, max_out = 0;
    for (int i = 0; i < 12; ++i) {
        double t = (i % 4 + 1) / 5.0;
        double u = (i / 4 + 1) / 4.0;
        Bindings b;
        b.set(c.vars.v1, c.lo1 + t * (c.hi1 - c.lo1)).set(c.vars.v2, c.lo2 + u * (c.hi2 - c.lo2));
        max_in = std::max(max_in, std::fabs(eval(state.form, b)));
        max_out = std::max(max_out, std::fabs(eval(raised, b)));
    }
    if (max_out <= 1e-9 * (1.0 + max_in)) return std::nullopt;

    StateForm out = state;
    out.form = raised;
    out.l = inst.target;
    out.word.push_back(std::string(name(family)) + "+");
    out.norm_constant.reset();
    return out;
}

Rat ground_energy(SystemId system, const ParamTriple& l) {
    Rat s = l.l0 + l.l2;
    if (system == SystemId::HyperboloidU21) return -(s + Rat(3, 2)) * (s + Rat(5, 2));
    return (s + Rat(3, 2)) * (s + Rat(5, 2));
}

Rat sphere_iur_energy(int m, int n) {
    Rat s(m + n);
    return (s + Rat(3, 2)) * (s + Rat(5, 2));
}

Rat sphere_q_energy(int q) { return sphere_iur_energy(q, 0); }

Rat separated_energy(const Rat& l0, const Rat& l1, int n) {
    Rat t = l0 + l1 + 1 + Rat(2 * n);
    return t * t;
}

std::vector<LatticePoint> lattice(SystemId system, const IurDescriptor& iur) {
    using Alg = IurDescriptor::Algebra;
    std::vector<LatticePoint> pts;
    switch (iur.algebra) {
        case Alg::so6: {
            if (system != SystemId::SphereU3)
                throw std::invalid_argument("so(6) lattices belong to the sphere system");
            if (iur.q < 0) throw std::invalid_argument("so(6) label q must be >= 0");
            for (int k = 0; 2 * k <= iur.q; ++k) {
                int s = iur.q - 2 * k;  // shell radius
                for (int x = -s; x <= s; ++x)
                    for (int y = -(s - std::abs(x)); y <= s - std::abs(x); ++y) {
                        int z = s - std::abs(x) - std::abs(y);
                        pts.push_back({{Rat(x), Rat(y), Rat(z)}, k + 1});
                        if (z != 0) pts.push_back({{Rat(x), Rat(y), Rat(-z)}, k + 1});
                    }
            }
            return pts;
        }
        case Alg::su21: {
            if (system != SystemId::HyperboloidU21)
                throw std::invalid_argument("su(2,1) plane lattices belong to the hyperboloid");
            if (iur.base.l1 != Rat(0) || !is_integer(iur.base.l0) || iur.base.l0 < Rat(0))
                throw std::invalid_argument("su(2,1) base must be (l0, 0, l2) with integer l0 >= 0");
            long long m = iur.base.l0.numerator();
            for (int c = 0; c <= iur.depth; ++c)
                for (long long s = 0; s <= m + c; ++s)
                    pts.push_back({{iur.base.l0 - s, Rat(c) - Rat(s), iur.base.l2 - c}, 1});
            return pts;
        }
        case Alg::so42: {
            if (system != SystemId::HyperboloidU21)
                throw std::invalid_argument("so(4,2) pyramids belong to the hyperboloid");
            // Nested pyramids below the vertex (0,0,l2): the point (x,y,l2-d)
            // sits on inner-pyramid shell n = (d - |x| - |y|)/2 when that is a
            // nonnegative integer, with multiplicity n+1.
            for (int d = 0; d <= iur.depth; ++d)
                for (int x = -d; x <= d; ++x)
                    for (int y = -(d - std::abs(x)); y <= d - std::abs(x); ++y) {
                        int rem = d - std::abs(x) - std::abs(y);
                        if (rem % 2 != 0) continue;
                        pts.push_back({{Rat(x), Rat(y), iur.base.l2 - d}, rem / 2 + 1});
                    }
            return pts;
        }
        case Alg::su2: {
            Rat j2 = iur.base.l0 + iur.base.l1 + Rat(2 * iur.n);
            if (!is_integer(j2) || j2 < Rat(0))
                throw std::invalid_argument("su(2) tower requires l0+l1+2n a nonnegative integer");
            for (long long k = 0; k <= j2.numerator(); ++k)
                pts.push_back({{iur.base.l0 + iur.n - k, iur.base.l1 + iur.n - k, iur.base.l2}, 1});
            return pts;
        }
        case Alg::su11: {
            ParamTriple cur = iur.base;
            LadderKind up{iur.family, OpSign::plus};
            for (int k = 0; k <= iur.depth; ++k) {
                pts.push_back({cur, 1});
                cur = shift(system, up, cur);
            }
            return pts;
        }
    }
    throw std::logic_error("lattice: bad algebra");
}

std::optional<Rat> iur_energy(SystemId system, const IurDescriptor& iur) {
    using Alg = IurDescriptor::Algebra;
    switch (iur.algebra) {
        case Alg::so6: return sphere_q_energy(iur.q);
        case Alg::su21: return ground_energy(system, iur.base);
        case Alg::so42: return ground_energy(system, {Rat(0), Rat(0), iur.base.l2});
        case Alg::su2: return separated_energy(iur.base.l0, iur.base.l1, iur.n);
        case Alg::su11: return std::nullopt;
    }
    return std::nullopt;
}

std::string describe(const IurDescriptor& iur) {
    using Alg = IurDescriptor::Algebra;
    std::ostringstream os;
    switch (iur.algebra) {
        case Alg::so6: os << "so6 q=" << iur.q; break;
        case Alg::su21: os << "su21 base=" << to_string(iur.base) << " depth=" << iur.depth; break;
        case Alg::so42:
            os << "so42 vertex=(0,0," << to_string(iur.base.l2) << ") depth=" << iur.depth;
            break;
        case Alg::su2: os << "su2 base=" << to_string(iur.base) << " n=" << iur.n; break;
        case Alg::su11:
            os << "su11 family=" << name(iur.family) << " base=" << to_string(iur.base)
               << " depth=" << iur.depth;
            break;
    }
    return os.str();
}

namespace {
nlohmann::json rat_json(const Rat& r) {
    if (r.denominator() == 1) return nlohmann::json(r.numerator());
    return nlohmann::json(to_string(r));
}
}  // namespace

nlohmann::json lattice_json(SystemId system, const IurDescriptor& iur) {
    auto pts = lattice(system, iur);
    nlohmann::json jpts = nlohmann::json::array();
    for (const auto& p : pts)
        jpts.push_back({{"l0", rat_json(p.l.l0)},
                        {"l1", rat_json(p.l.l1)},
                        {"l2", rat_json(p.l.l2)},
                        {"mult", p.mult}});
    nlohmann::json out{{"system", name(system)}, {"iur", describe(iur)}, {"points", jpts}};
    if (auto e = iur_energy(system, iur)) {
        out["energy_num"] = e->numerator();
        out["energy_den"] = e->denominator();
    }
    return out;
}

double integrate_1d(const std::function<double(double)>& f, double a, double b, double tol) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    double error = 0;
    double v = GK::integrate(f, a, b, 15, tol, &error);
    return v;
}

double integrate_2d(const std::function<double(double, double)>& f, double ax, double bx,
                    double ay, double by, double tol) {
    auto outer = [&](double y) {
        return integrate_1d([&](double x) { return f(x, y); }, ax, bx, tol * 0.1);
    };
    return integrate_1d(outer, ay, by, tol);
}

namespace {

// |a*b| integrated against the system's invariant measure over its cell.
double measure_integral(const StateForm& a, const StateForm& b, double tol) {
    if (a.system != b.system || !(a.chart == b.chart))
        throw std::invalid_argument("inner_product: states live in different charts");
    Expr prod = a.form * b.form;
    if (a.system == SystemId::HyperboloidU21) {
        // Map xi = atanh(u) so the half-line becomes (0,1); the Jacobian is
        // 1/(1-u^2) and the integrand stays in a floating range where cosh
        // cannot overflow.
        Expr integrand = prod * Expr::fn(Fn::sinh, Expr::variable(Var::xi));
        auto f = [&](double th, double u) {
            double xi = std::atanh(u);
            Bindings bnd;
            bnd.set(Var::theta, th).set(Var::xi, xi);
            return eval(integrand, bnd) / (1.0 - u * u);
        };
        return integrate_2d(f, 0.0, 1.5707963267948966, 0.0, 1.0, tol);
    }
    Expr integrand = prod * Expr::fn(Fn::cos, Expr::variable(Var::phi));
    auto f = [&](double th, double ph) {
        Bindings bnd;
        bnd.set(Var::theta, th).set(Var::phi, ph);
        return eval(integrand, bnd);
    };
    return integrate_2d(f, 0.0, 1.5707963267948966, 0.0, 1.5707963267948966, tol);
}

}  // namespace

double inner_product(const StateForm& a, const StateForm& b, double tol) {
    return measure_integral(a, b, tol);
}

double squared_norm(const StateForm& a, double tol) { return measure_integral(a, a, tol); }

NormalizeResult normalize(StateForm& state, double tol) {
    double n2 = squared_norm(state, tol);
    if (!(n2 > 0) || !std::isfinite(n2))
        throw ValidityError("normalize: norm integral is not finite and positive");
    double n = 1.0 / std::sqrt(n2);
    // The numeric constant enters the tree as a rational approximation with a
    // denominator large enough to keep ~1e-14 relative accuracy.
    const long long den = 1LL << 40;
    Rat approx(static_cast<long long>(std::llround(n * static_cast<double>(den))), den);
    state.form = C(approx) * state.form;
    double check = squared_norm(state, tol);
    state.norm_constant = n;
    return {n, std::fabs(check - 1.0)};
}

double gram_det_scaled(const StateForm& a, const StateForm& b) {
    double g11 = squared_norm(a);
    double g22 = squared_norm(b);
    double g12 = inner_product(a, b);
    return (g11 * g22 - g12 * g12) / (g11 * g22);
}

double hyperboloid_norm_integral(const Expr& form, double xi_max) {
    Expr integrand = form * form * Expr::fn(Fn::sinh, Expr::variable(Var::xi));
    auto f = [&](double th, double u) {
        double xi = std::atanh(u);
        Bindings bnd;
        bnd.set(Var::theta, th).set(Var::xi, xi);
        return eval(integrand, bnd) / (1.0 - u * u);
    };
    return integrate_2d(f, 0.0, 1.5707963267948966, 0.0, std::tanh(xi_max), 1e-8);
}

std::vector<SpectrumRecord> spectrum(SystemId system, const ParamTriple& l, int max_levels) {
    if (!is_integer(l.l0) || !is_integer(l.l1))
        throw std::invalid_argument("spectrum: requires integer l0 and l1 offsets");
    std::vector<SpectrumRecord> out;
    if (system == SystemId::HyperboloidU21) {
        Rat w = l.l2 + rabs(l.l0) + rabs(l.l1);
        for (int n = 0; n < max_levels; ++n) {
            Rat vertex = w + Rat(2 * n);
            if (!(vertex < Rat(-5, 2))) break;  // representation no longer normalizable
            std::ostringstream words;
            words << "shell " << n << " of the pyramid with vertex (0,0," << to_string(vertex)
                  << ")";
            out.push_back({system, l, n, -(vertex + Rat(3, 2)) * (vertex + Rat(5, 2)), n + 1,
                           words.str()});
        }
        return out;
    }
    if (!is_integer(l.l2)) throw std::invalid_argument("spectrum: requires integer l2 offsets");
    Rat w = rabs(l.l0) + rabs(l.l1) + rabs(l.l2);
    for (int n = 0; n < max_levels; ++n) {
        Rat q = w + Rat(2 * n);
        std::ostringstream words;
        words << "shell " << n << " of the octahedron q=" << to_string(q);
        out.push_back({system, l, n, (q + Rat(3, 2)) * (q + Rat(5, 2)), n + 1, words.str()});
    }
    return out;
}

nlohmann::json spectrum_json(const std::vector<SpectrumRecord>& recs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : recs)
        arr.push_back({{"system", name(r.system)},
                       {"l0", rat_json(r.l.l0)},
                       {"l1", rat_json(r.l.l1)},
                       {"l2", rat_json(r.l.l2)},
                       {"level", r.level},
                       {"energy_num", r.energy.numerator()},
                       {"energy_den", r.energy.denominator()},
                       {"degeneracy", r.degeneracy},
                       {"words", r.words}});
    return arr;
}

std::string spectrum_csv(const std::vector<SpectrumRecord>& recs) {
    std::ostringstream os;
    os << "system,l0,l1,l2,level,energy,degeneracy,words\n";
    for (const auto& r : recs)
        os << name(r.system) << "," << to_string(r.l.l0) << "," << to_string(r.l.l1) << ","
           << to_string(r.l.l2) << "," << r.level << "," << to_string(r.energy) << ","
           << r.degeneracy << ",\"" << r.words << "\"\n";
    return os.str();
}

}  // namespace itw
