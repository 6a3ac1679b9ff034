#pragma once

#include <functional>
#include <optional>

#include "itw/ladders.hpp"

namespace itw {

struct ValidityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed-form eigenfunction with its parameter point, energy and the raising
// word that produced it.
struct StateForm {
    SystemId system;
    ChartId chart;
    Expr form;
    ParamTriple l;
    Rat energy;
    std::vector<std::string> word;       // raising letters applied, outermost last
    std::string validity;                // human-readable predicate on l
    std::optional<double> norm_constant; // set by normalize()
};

// Fundamental state annihilated by the lowering operators. Hyperboloid:
// l1 = 0, l0 >= -1/2, l0+l2 < -5/2 (strict); sphere: l1 = 0 and l0, l2
// nonnegative integers. Throws ValidityError naming the failed inequality.
StateForm ground_state(SystemId system, const ParamTriple& l);

// One-dimensional excited state sin^(l1+1/2) cos^(l0+1/2) P_n^(l1,l0)(cos 2theta)
// with eigenvalue (l0+l1+1+2n)^2 recorded.
StateForm excited_1d(const Rat& l0, const Rat& l1, int n);

// Apply the family's raising hat operator. Returns nullopt when the result is
// identically zero (top of a finite su(2) tower).
std::optional<StateForm> raise_state(const StateForm& state, LadderFamily family);

Rat ground_energy(SystemId system, const ParamTriple& l);
Rat sphere_iur_energy(int m, int n);   // (m+n+3/2)(m+n+5/2)
Rat sphere_q_energy(int q);            // energy shared by the q-octahedron states
Rat separated_energy(const Rat& l0, const Rat& l1, int n);

struct LatticePoint {
    ParamTriple l;
    int mult;
};

struct IurDescriptor {
    enum class Algebra { su2, su11, su21, so42, so6 };
    Algebra algebra;
    ParamTriple base{};                     // su2/su11/su21 base; so42 uses (0,0,base.l2)
    LadderFamily family = LadderFamily::C;  // tower family for su11
    int n = 0;                              // su2 tower excitation index
    int q = 0;                              // so6 label
    int depth = 6;                          // truncation depth for infinite lattices
};

std::vector<LatticePoint> lattice(SystemId system, const IurDescriptor& iur);
std::optional<Rat> iur_energy(SystemId system, const IurDescriptor& iur);
nlohmann::json lattice_json(SystemId system, const IurDescriptor& iur);
std::string describe(const IurDescriptor& iur);

struct NormalizeResult {
    double constant;
    double residual;
};

// Rescale the state to unit norm in the invariant measure (sinh(xi) dtheta dxi
// on the hyperboloid cell, cos(phi) dtheta dphi on the sphere cell) via
// adaptive Gauss-Kronrod tensor quadrature.
NormalizeResult normalize(StateForm& state, double tol = 1e-10);

double inner_product(const StateForm& a, const StateForm& b, double tol = 1e-10);
double squared_norm(const StateForm& a, double tol = 1e-10);
// Scale-normalized Gram determinant det G / (G11 G22); > threshold means
// linearly independent.
double gram_det_scaled(const StateForm& a, const StateForm& b);

// Raw norm integral with the xi integration truncated at xi_max; used to
// detect divergence for parameter points outside the validity region.
double hyperboloid_norm_integral(const Expr& form, double xi_max);

struct SpectrumRecord {
    SystemId system;
    ParamTriple l;
    int level;
    Rat energy;
    int degeneracy;
    std::string words;
};

// Bound levels of H_l derived by enumerating the valid representation shells
// through l (requires integer l0, l1 offsets; hyperboloid lists the finitely
// many bound shells, the sphere the first max_levels).
std::vector<SpectrumRecord> spectrum(SystemId system, const ParamTriple& l, int max_levels = 8);
nlohmann::json spectrum_json(const std::vector<SpectrumRecord>& recs);
std::string spectrum_csv(const std::vector<SpectrumRecord>& recs);

// Adaptive Gauss-Kronrod helpers (b may be +infinity).
double integrate_1d(const std::function<double(double)>& f, double a, double b, double tol = 1e-10);
double integrate_2d(const std::function<double(double, double)>& f, double ax, double bx,
                    double ay, double by, double tol = 1e-10);

}  // namespace itw
