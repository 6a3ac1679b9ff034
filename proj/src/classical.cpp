#include "itw/classical.hpp"

#include <cmath>
#include <sstream>

namespace itw {

namespace {
double sq(double x) { return x * x; }
}  // namespace

double ClassicalSystem::q_signed_sum(const PhasePoint& x) const {
    double s0 = id == SystemId::HyperboloidU21 ? -1.0 : 1.0;
    return s0 * Q[0](x) + Q[1](x) + Q[2](x);
}

double ClassicalSystem::sum_rule_constant(const PhasePoint& reference) const {
    return H(reference) - q_signed_sum(reference);
}

ClassicalSystem make_classical(SystemId system, double m0, double m1, double m2) {
    ClassicalSystem sys;
    sys.id = system;
    sys.m = {m0, m1, m2};
    if (system == SystemId::SphereU3) {
        // Chart (phi1, phi2): s0 = cos(phi2)cos(phi1), s1 = cos(phi2)sin(phi1),
        // s2 = sin(phi2).
        sys.V = [=](double f1, double f2) {
            return (sq(m0) / sq(std::cos(f1)) + sq(m1) / sq(std::sin(f1))) / sq(std::cos(f2)) +
                   sq(m2) / sq(std::sin(f2));
        };
        sys.H = [=, V = sys.V](const PhasePoint& x) {
            return 0.5 * (sq(x.p2) + sq(x.p1) / sq(std::cos(x.q2))) + V(x.q1, x.q2);
        };
        sys.Q[0] = [=](const PhasePoint& x) {
            return 0.5 * sq(x.p1) + sq(m0) / sq(std::cos(x.q1)) + sq(m1) / sq(std::sin(x.q1));
        };
        sys.Q[1] = [=](const PhasePoint& x) {
            double t2 = std::tan(x.q2);
            return sq(t2) * (0.5 * sq(x.p1) * sq(std::sin(x.q1)) + sq(m0) / sq(std::cos(x.q1))) +
                   sq(std::cos(x.q1)) * (0.5 * sq(x.p2) + sq(m2) / sq(t2)) +
                   0.5 * x.p1 * x.p2 * std::sin(2 * x.q1) * t2;
        };
        sys.Q[2] = [=](const PhasePoint& x) {
            double t2 = std::tan(x.q2);
            return sq(t2) * (0.5 * sq(x.p1) * sq(std::cos(x.q1)) + sq(m1) / sq(std::sin(x.q1))) +
                   sq(std::sin(x.q1)) * (0.5 * sq(x.p2) + sq(m2) / sq(t2)) -
                   0.5 * x.p1 * x.p2 * std::sin(2 * x.q1) * t2;
        };
        return sys;
    }
    // Hyperboloid chart (theta, xi): s0 = sinh(xi)cos(theta),
    // s1 = sinh(xi)sin(theta), s2 = cosh(xi).
    sys.V = [=](double th, double xi) {
        return (sq(m0) / sq(std::cos(th)) + sq(m1) / sq(std::sin(th))) / sq(std::sinh(xi)) -
               sq(m2) / sq(std::cosh(xi));
    };
    sys.H = [=, V = sys.V](const PhasePoint& x) {
        return 0.5 * (sq(x.p2) + sq(x.p1) / sq(std::sinh(x.q2))) + V(x.q1, x.q2);
    };
    sys.Q[0] = [=](const PhasePoint& x) {
        return 0.5 * sq(x.p1) + sq(m0) / sq(std::cos(x.q1)) + sq(m1) / sq(std::sin(x.q1));
    };
    sys.Q[1] = [=](const PhasePoint& x) {
        double ct = 1.0 / std::tanh(x.q2);
        return sq(ct) * (0.5 * sq(x.p1) * sq(std::sin(x.q1)) + sq(m0) / sq(std::cos(x.q1))) +
               sq(std::cos(x.q1)) * (0.5 * sq(x.p2) + sq(m2) / sq(ct)) +
               0.5 * x.p1 * x.p2 * std::sin(2 * x.q1) * ct;
    };
    sys.Q[2] = [=](const PhasePoint& x) {
        double ct = 1.0 / std::tanh(x.q2);
        return sq(ct) * (0.5 * sq(x.p1) * sq(std::cos(x.q1)) + sq(m1) / sq(std::sin(x.q1))) +
               sq(std::sin(x.q1)) * (0.5 * sq(x.p2) + sq(m2) / sq(ct)) -
               0.5 * x.p1 * x.p2 * std::sin(2 * x.q1) * ct;
    };
    return sys;
}

double sphere_potential_min(double m0, double m1, double m2) { return sq(m0 + m1 + m2); }

std::array<double, 2> sphere_potential_argmin(double m0, double m1, double m2) {
    return {std::atan(std::sqrt(m1 / m0)), std::atan(std::sqrt(m2 / (m0 + m1)))};
}

std::array<double, 2> hyperboloid_saddle(double m0, double m1, double m2) {
    if (!(m0 + m1 > m2))
        throw std::domain_error("hyperboloid saddle exists only for m0+m1 > m2");
    return {std::atan(std::sqrt(m1 / m0)), std::atanh(std::sqrt(m2 / (m0 + m1)))};
}

namespace {

double poisson_once(const PhaseFunction& f, const PhaseFunction& g, const PhasePoint& x,
                    double h) {
    auto d = [&](const PhaseFunction& fn, int comp) {
        PhasePoint a = x, b = x;
        switch (comp) {
            case 0: a.q1 += h; b.q1 -= h; break;
            case 1: a.q2 += h; b.q2 -= h; break;
            case 2: a.p1 += h; b.p1 -= h; break;
            case 3: a.p2 += h; b.p2 -= h; break;
        }
        return (fn(a) - fn(b)) / (2 * h);
    };
    return d(f, 0) * d(g, 2) - d(f, 2) * d(g, 0) + d(f, 1) * d(g, 3) - d(f, 3) * d(g, 1);
}

}  // namespace

double poisson(const PhaseFunction& f, const PhaseFunction& g, const PhasePoint& x, double h) {
    double c1 = poisson_once(f, g, x, h);
    double c2 = poisson_once(f, g, x, h / 2);
    return (4 * c2 - c1) / 3;
}

void OrbitParams::validate() const {
    double vmin = sphere_potential_min(m0, m1, m2);
    if (E < vmin) {
        std::ostringstream os;
        os << "energy below the potential floor: E = " << E << " < (m0+m1+m2)^2 = " << vmin;
        throw DiscriminantError(os.str());
    }
    if (!(alpha1 > 0)) throw DiscriminantError("separation constant alpha1 must be positive");
    if (b2() * b2() - 4 * alpha1 * E < 0)
        throw DiscriminantError("discriminant b2^2 - 4*alpha1*E is negative");
    if (b1() * b1() - 4 * alpha1 * m0 * m0 < 0)
        throw DiscriminantError("discriminant b1^2 - 4*alpha1*m0^2 is negative");
}

double hj_phi2_period(const OrbitParams& p) { return M_PI / std::sqrt(2 * p.E); }

std::array<double, 2> hj_orbit(const OrbitParams& p, double t) {
    p.validate();
    const double b1 = p.b1(), b2 = p.b2();
    const double disc2 = b2 * b2 - 4 * p.alpha1 * p.E;
    const double c2 = (b2 + std::sqrt(disc2) * std::cos(2 * std::sqrt(2 * p.E) * t)) / (2 * p.E);

    const double disc1 = b1 * b1 - 4 * p.alpha1 * p.m0 * p.m0;
    double inner = (b2 - p.E * c2) * c2 - p.alpha1;
    if (inner < 0) {
        if (inner < -1e-9) throw DiscriminantError("inner square root negative along the orbit");
        inner = 0;  // turning point, clamped
    }
    const double ratio = disc2 > 0 ? std::sqrt(disc1 / disc2) : 0.0;
    const double w1 = 2 * std::sqrt(2 * p.alpha1) * p.beta1;
    const double c1 =
        (b1 + (ratio / c2) * ((b2 * c2 - 2 * p.alpha1) * std::sin(w1) +
                              2 * std::sqrt(p.alpha1) * std::sqrt(inner) * std::cos(w1))) /
        (2 * p.alpha1);

    auto clamp01 = [](double u) { return u < 0 ? 0.0 : (u > 1 ? 1.0 : u); };
    double phi2 = std::acos(std::sqrt(clamp01(c2)));
    double phi1 = std::acos(std::sqrt(clamp01(c1)));
    return {phi1, phi2};
}

PhasePoint hj_phase_point(const OrbitParams& p, double t, double h) {
    auto a = hj_orbit(p, t - h);
    auto b = hj_orbit(p, t + h);
    auto c = hj_orbit(p, t);
    double dphi1 = (b[0] - a[0]) / (2 * h);
    double dphi2 = (b[1] - a[1]) / (2 * h);
    // H = p2^2/2 + p1^2/(2 cos^2 phi2) + V: phi2' = p2, phi1' = p1/cos^2 phi2.
    double p2 = dphi2;
    double p1 = dphi1 * sq(std::cos(c[1]));
    return {c[0], c[1], p1, p2};
}

std::vector<TrajectorySample> rk4_orbit(const ClassicalSystem& sys, const PhasePoint& x0,
                                        double dt, int steps) {
    auto grad = [&](const PhasePoint& x) {
        const double h = 1e-6;
        auto at = [&](double dq1, double dq2, double dp1, double dp2) {
            return sys.H({x.q1 + dq1, x.q2 + dq2, x.p1 + dp1, x.p2 + dp2});
        };
        std::array<double, 4> g;
        g[0] = (at(h, 0, 0, 0) - at(-h, 0, 0, 0)) / (2 * h);
        g[1] = (at(0, h, 0, 0) - at(0, -h, 0, 0)) / (2 * h);
        g[2] = (at(0, 0, h, 0) - at(0, 0, -h, 0)) / (2 * h);
        g[3] = (at(0, 0, 0, h) - at(0, 0, 0, -h)) / (2 * h);
        return g;
    };
    auto rhs = [&](const PhasePoint& x) {
        auto g = grad(x);
        return PhasePoint{g[2], g[3], -g[0], -g[1]};
    };
    auto axpy = [](const PhasePoint& x, double a, const PhasePoint& d) {
        return PhasePoint{x.q1 + a * d.q1, x.q2 + a * d.q2, x.p1 + a * d.p1, x.p2 + a * d.p2};
    };

    std::vector<TrajectorySample> out;
    out.reserve(steps + 1);
    PhasePoint x = x0;
    out.push_back({0.0, x});
    for (int i = 1; i <= steps; ++i) {
        PhasePoint k1 = rhs(x);
        PhasePoint k2 = rhs(axpy(x, dt / 2, k1));
        PhasePoint k3 = rhs(axpy(x, dt / 2, k2));
        PhasePoint k4 = rhs(axpy(x, dt, k3));
        x = PhasePoint{x.q1 + dt / 6 * (k1.q1 + 2 * k2.q1 + 2 * k3.q1 + k4.q1),
                       x.q2 + dt / 6 * (k1.q2 + 2 * k2.q2 + 2 * k3.q2 + k4.q2),
                       x.p1 + dt / 6 * (k1.p1 + 2 * k2.p1 + 2 * k3.p1 + k4.p1),
                       x.p2 + dt / 6 * (k1.p2 + 2 * k2.p2 + 2 * k3.p2 + k4.p2)};
        out.push_back({i * dt, x});
    }
    return out;
}

std::string orbit_csv(const ClassicalSystem& sys, const OrbitParams& p, double dt, int steps) {
    std::ostringstream os;
    os.precision(12);
    os << "t,phi1,phi2,H,Q1,Q2,Q3\n";
    for (int i = 0; i <= steps; ++i) {
        if (steps == 0) break;  // header-only output for zero steps
        double t = i * dt;
        PhasePoint x = hj_phase_point(p, t);
        os << t << "," << x.q1 << "," << x.q2 << "," << sys.H(x) << "," << sys.Q[0](x) << ","
           << sys.Q[1](x) << "," << sys.Q[2](x) << "\n";
    }
    return os.str();
}

}  // namespace itw
