#include "itw/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace itw {

namespace {

struct Pt2 {
    double u, v;
};

Pt2 project(const ParamTriple& l) {
    const double k = 0.45, ang = M_PI / 6.0;
    double x = to_double(l.l0), y = to_double(l.l1), z = to_double(l.l2);
    return {x + k * z * std::cos(ang), y + k * z * std::sin(ang)};
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string lattice_svg(SystemId system, const IurDescriptor& iur) {
    auto pts = lattice(system, iur);
    double ulo = 1e18, uhi = -1e18, vlo = 1e18, vhi = -1e18;
    for (const auto& p : pts) {
        Pt2 q = project(p.l);
        ulo = std::min(ulo, q.u);
        uhi = std::max(uhi, q.u);
        vlo = std::min(vlo, q.v);
        vhi = std::max(vhi, q.v);
    }
    if (pts.empty()) ulo = uhi = vlo = vhi = 0;
    const double scale = 48.0, margin = 40.0;
    auto X = [&](double u) { return margin + (u - ulo) * scale; };
    auto Y = [&](double v) { return margin + (vhi - v) * scale; };
    const int w = static_cast<int>(2 * margin + (uhi - ulo) * scale);
    const int h = static_cast<int>(2 * margin + (vhi - vlo) * scale);

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    os << "  <title>" << name(system) << " lattice: " << describe(iur) << "</title>\n";

    // Sort for deterministic output.
    std::vector<LatticePoint> sorted = pts;
    std::sort(sorted.begin(), sorted.end(), [](const LatticePoint& a, const LatticePoint& b) {
        if (a.l.l2 != b.l.l2) return a.l.l2 < b.l.l2;
        if (a.l.l0 != b.l.l0) return a.l.l0 < b.l.l0;
        return a.l.l1 < b.l.l1;
    });

    for (const auto& p : sorted) {
        Pt2 q = project(p.l);
        const char* fill = "#4477aa";
        if (system == SystemId::SphereU3 && iur.algebra == IurDescriptor::Algebra::so6) {
            Rat d = p.l.l0 - p.l.l1 - p.l.l2;
            Rat qr(iur.q);
            if (d == qr || d == -qr) fill = "#cc6644";  // the two su(3) triangle faces
        }
        double r = 3.0 + 2.0 * (p.mult - 1);
        os << "  <circle cx=\"" << fmt(X(q.u)) << "\" cy=\"" << fmt(Y(q.v)) << "\" r=\"" << fmt(r)
           << "\" fill=\"" << fill << "\" fill-opacity=\"0.85\">"
           << "<title>(" << to_string(p.l.l0) << "," << to_string(p.l.l1) << ","
           << to_string(p.l.l2) << ") mult " << p.mult << "</title></circle>\n";
        if (p.mult > 1)
            os << "  <text x=\"" << fmt(X(q.u) + r + 2) << "\" y=\"" << fmt(Y(q.v) + 3)
               << "\" font-size=\"9\">x" << p.mult << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace itw
