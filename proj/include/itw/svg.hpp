#pragma once

#include "itw/spectra.hpp"

namespace itw {

// Render a lattice as an annotated 2D oblique projection: u = l0 + k*l2*cos(a),
// v = l1 + k*l2*sin(a) with k = 0.45, a = 30 degrees. One circle marker per
// lattice point; multiplicity is encoded in the marker radius and, for
// mult > 1, an annotation. Sphere octahedra color the |D| = q su(3) faces.
std::string lattice_svg(SystemId system, const IurDescriptor& iur);

}  // namespace itw
