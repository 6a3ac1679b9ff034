#pragma once

#include <array>

#include "itw/diffop.hpp"

namespace itw {

enum class SystemId { SphereU3, HyperboloidU21 };

const char* name(SystemId s);
SystemId parse_system(const std::string& s);

// The six coordinate charts. Hyperboloid: (theta,xi) spherical-like,
// (psi,chi) and (phi,beta) pseudo-spherical around the other axes. Sphere:
// (theta,phi) polar, plus the charts around the s1 and s0 axes.
enum class ChartId {
    HypThetaXi,
    HypPsiChi,
    HypPhiBeta,
    SphThetaPhi,
    SphXiPsi,
    SphEtaBeta,
};

struct Chart {
    ChartId id;
    SystemId system;
    const char* name;
    VarPair vars;
    // Open sampling rectangle, shrunk from the chart's closed range so that
    // every sample stays off the potential's singular coordinate lines.
    double lo1, hi1, lo2, hi2;
    AxisKind ax1, ax2;
};

const Chart& chart_info(ChartId id);
ChartId primary_chart(SystemId system);
std::array<ChartId, 3> charts_of(SystemId system);

struct ChartMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sampling spec preloaded with the chart's domain rectangle.
SampleSpec sample_spec(ChartId id, std::uint64_t seed = 0xC0FFEEULL, double tol = 1e-9);

// Ambient coordinate s_i (i = 0,1,2) as a closed form in the chart variables.
Expr embedding(ChartId id, int i);

// The so(2,1) / so(3) generators (J0, J1, J2) in the chart's variables.
std::array<DiffOp, 3> generators(SystemId system, ChartId chart);

// Two-variable quantum Hamiltonian H_l in the given chart, closed form.
DiffOp quantum_hamiltonian(SystemId system, ChartId chart, const ParamTriple& l);

// Same operator assembled from the generators and the ambient potential,
// -J0^2-J1^2+J2^2 + sum_i (+/-)(l_i^2-1/4)/s_i^2; used as an independent
// construction route for cross-checks.
DiffOp quantum_hamiltonian_from_generators(SystemId system, ChartId chart, const ParamTriple& l);

// One-dimensional separated operators. HThetaA is the trigonometric form in
// theta; HChiB and HBetaC are the hyperbolic forms in chi and beta. The
// sphere's theta equation coincides with HThetaA and reuses it verbatim.
enum class SeparatedFamily { HThetaA, HChiB, HBetaC, SphereHTheta };

DiffOp separated_hamiltonian(SeparatedFamily family, const Rat& p1, const Rat& p2);

// The complementary separated equation in the chart's outer variable, with
// separation constant alpha substituted.
DiffOp separated_radial(SystemId system, const Rat& l_outer, const Rat& alpha);

nlohmann::json charts_json();

}  // namespace itw
