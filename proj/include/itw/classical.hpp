#pragma once

#include <array>
#include <functional>
#include <vector>

#include "itw/systems.hpp"

namespace itw {

struct PhasePoint {
    double q1, q2;  // chart coordinates (phi1, phi2) on the sphere, (theta, xi) on the hyperboloid
    double p1, p2;  // conjugate momenta
};

using PhaseFunction = std::function<double(const PhasePoint&)>;

// Classical Hamiltonian and the three quadratic invariants in the separating
// chart. The additive constant relating H to (+/-)Q1+Q2+Q3 is exposed for the
// conservation checks.
struct ClassicalSystem {
    SystemId id;
    std::array<double, 3> m;
    PhaseFunction H;
    std::array<PhaseFunction, 3> Q;
    std::function<double(double, double)> V;
    // H - (sign0*Q1 + Q2 + Q3), constant on phase space (sign0 = -1 on the
    // hyperboloid).
    double sum_rule_constant(const PhasePoint& reference) const;
    double q_signed_sum(const PhasePoint& x) const;
};

ClassicalSystem make_classical(SystemId system, double m0, double m1, double m2);

// Minimum of the sphere potential, (m0+m1+m2)^2, attained inside the cell.
double sphere_potential_min(double m0, double m1, double m2);
std::array<double, 2> sphere_potential_argmin(double m0, double m1, double m2);
// Saddle of the hyperboloid potential (exists when m0+m1 > m2).
std::array<double, 2> hyperboloid_saddle(double m0, double m1, double m2);

// Canonical Poisson bracket via central differences, Richardson-extrapolated
// once (h and h/2).
double poisson(const PhaseFunction& f, const PhaseFunction& g, const PhasePoint& x,
               double h = 1e-5);

struct DiscriminantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OrbitParams {
    double E, alpha1;
    double m0, m1, m2;
    double beta1 = 0.0;  // phase constant of the phi1 branch
    double b1() const { return alpha1 + m0 * m0 - m1 * m1; }
    double b2() const { return E + alpha1 - m2 * m2; }
    // Throws DiscriminantError naming the violated inequality.
    void validate() const;
};

// Closed-form separated orbit on the sphere, branch 0 < phi1, phi2 < pi/2.
std::array<double, 2> hj_orbit(const OrbitParams& p, double t);

double hj_phi2_period(const OrbitParams& p);

struct TrajectorySample {
    double t;
    PhasePoint x;
};

// Fixed-step RK4 integration of Hamilton's equations with finite-difference
// gradients of H.
std::vector<TrajectorySample> rk4_orbit(const ClassicalSystem& sys, const PhasePoint& x0,
                                        double dt, int steps);

// Positions and momenta of the closed-form orbit at time t, momenta
// reconstructed by differentiating the closed-form positions.
PhasePoint hj_phase_point(const OrbitParams& p, double t, double h = 1e-6);

std::string orbit_csv(const ClassicalSystem& sys, const OrbitParams& p, double dt, int steps);

}  // namespace itw
