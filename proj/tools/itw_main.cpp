// Command-line front end: verification reports, spectra, representation
// lattices, classical orbits, and SVG lattice figures.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "itw/classical.hpp"
#include "itw/svg.hpp"
#include "itw/verify.hpp"

namespace {

using namespace itw;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("ITW_SEED")) return std::strtoull(env, nullptr, 10);
    return 0xC0FFEEULL;
}

ParamTriple parse_triple(const std::string& s) {
    auto c1 = s.find(',');
    auto c2 = s.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("expected l as 'a,b,c' with rational entries, got '" + s + "'");
    return {parse_rational(s.substr(0, c1)), parse_rational(s.substr(c1 + 1, c2 - c1 - 1)),
            parse_rational(s.substr(c2 + 1))};
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + path);
    os << content;
}

std::string lattice_csv(SystemId system, const IurDescriptor& iur) {
    std::ostringstream os;
    os << "l0,l1,l2,mult\n";
    for (const auto& p : lattice(system, iur))
        os << to_string(p.l.l0) << "," << to_string(p.l.l1) << "," << to_string(p.l.l2) << ","
           << p.mult << "\n";
    return os.str();
}

int run(int argc, char** argv) {
    CLI::App app{"intertwining-operator toolkit for the u(3) and u(2,1) superintegrable systems"};
    app.require_subcommand(1);

    std::string system_str = "hyperboloid";
    std::string out_path;
    std::uint64_t seed = default_seed();
    std::string format = "json";

    // verify
    auto* sc_verify = app.add_subcommand("verify", "run the full identity suite");
    std::vector<std::string> l_args;
    sc_verify->add_option("--system", system_str, "sphere|hyperboloid");
    sc_verify->add_option("--l", l_args, "parameter triple a,b,c (repeatable)");
    sc_verify->add_option("--seed", seed, "sampling seed");
    sc_verify->add_option("--out", out_path, "output path (default stdout)");

    // spectrum
    auto* sc_spec = app.add_subcommand("spectrum", "bound levels of H_l");
    std::string spec_l = "0,0,-3";
    int levels = 8;
    sc_spec->add_option("--system", system_str, "sphere|hyperboloid");
    sc_spec->add_option("--l", spec_l, "parameter triple a,b,c");
    sc_spec->add_option("--levels", levels, "maximum number of levels");
    sc_spec->add_option("--format", format, "json|csv");
    sc_spec->add_option("--out", out_path, "output path");

    // lattice / plot
    auto add_lattice_opts = [&](CLI::App* sc, std::string& so6q, std::string& su21b,
                                std::string& so42l2, std::string& su2b, std::string& su11b,
                                int& depth, int& nopt, std::string& fam) {
        sc->add_option("--system", system_str, "sphere|hyperboloid");
        sc->add_option("--so6", so6q, "so(6) octahedron label, q=N");
        sc->add_option("--su21", su21b, "su(2,1) plane, base=a,b,c");
        sc->add_option("--so42", so42l2, "so(4,2) pyramid, l2=v");
        sc->add_option("--su2", su2b, "su(2) tower, base=a,b,c");
        sc->add_option("--su11", su11b, "su(1,1) tower, base=a,b,c");
        sc->add_option("--family", fam, "su(1,1) tower family (B|C)");
        sc->add_option("--n", nopt, "su(2) tower excitation index");
        sc->add_option("--depth", depth, "truncation depth for infinite lattices");
        sc->add_option("--out", out_path, "output path");
    };
    auto* sc_lat = app.add_subcommand("lattice", "representation lattice points");
    std::string so6q, su21b, so42l2, su2b, su11b, fam = "C";
    int depth = 6, nopt = 0;
    add_lattice_opts(sc_lat, so6q, su21b, so42l2, su2b, su11b, depth, nopt, fam);
    sc_lat->add_option("--format", format, "json|csv|svg");

    auto* sc_plot = app.add_subcommand("plot", "SVG figure of a representation lattice");
    add_lattice_opts(sc_plot, so6q, su21b, so42l2, su2b, su11b, depth, nopt, fam);

    // orbit
    auto* sc_orbit = app.add_subcommand("orbit", "closed-form classical orbit CSV");
    double E = 12, alpha1 = 5, beta1 = 0.1, dt = 1e-3;
    int steps = 1000;
    std::string m_str = "1,1,1";
    sc_orbit->add_option("--E", E, "energy");
    sc_orbit->add_option("--alpha1", alpha1, "separation constant");
    sc_orbit->add_option("--beta1", beta1, "phase constant");
    sc_orbit->add_option("--m", m_str, "potential strengths m0,m1,m2");
    sc_orbit->add_option("--dt", dt, "sample spacing");
    sc_orbit->add_option("--steps", steps, "number of samples");
    sc_orbit->add_option("--out", out_path, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (sc_verify->parsed()) {
        SystemId sys = parse_system(system_str);
        std::vector<ParamTriple> sweep;
        for (const auto& s : l_args) sweep.push_back(parse_triple(s));
        if (sweep.empty()) {
            if (sys == SystemId::HyperboloidU21)
                sweep = {{Rat(1), Rat(0), Rat(-4)},
                         {Rat(2), Rat(0), Rat(-5)},
                         {Rat(0), Rat(0), Rat(-3)},
                         {Rat(3, 2), Rat(1, 2), Rat(-5)}};
            else
                sweep = {{Rat(1), Rat(0), Rat(1)},
                         {Rat(2), Rat(1), Rat(1)},
                         {Rat(0), Rat(0), Rat(2)},
                         {Rat(1), Rat(1), Rat(0)}};
        }
        Report rep = run_full_suite(sys, sweep, seed);
        write_output(out_path, rep.to_json().dump(2) + "\n");
        int failed = 0;
        for (const auto& e : rep.entries)
            if (!e.pass) ++failed;
        std::cerr << "verify: " << rep.entries.size() - failed << "/" << rep.entries.size()
                  << " identities pass\n";
        return rep.pass() ? 0 : 1;
    }

    if (sc_spec->parsed()) {
        SystemId sys = parse_system(system_str);
        auto recs = spectrum(sys, parse_triple(spec_l), levels);
        if (format == "csv")
            write_output(out_path, spectrum_csv(recs));
        else
            write_output(out_path, spectrum_json(recs).dump(2) + "\n");
        return 0;
    }

    if (sc_lat->parsed() || sc_plot->parsed()) {
        SystemId sys = parse_system(system_str);
        IurDescriptor iur{};
        iur.depth = depth;
        if (!so6q.empty()) {
            iur.algebra = IurDescriptor::Algebra::so6;
            std::string v = so6q;
            if (v.rfind("q=", 0) == 0) v = v.substr(2);
            iur.q = std::stoi(v);
            sys = SystemId::SphereU3;
        } else if (!su21b.empty()) {
            iur.algebra = IurDescriptor::Algebra::su21;
            std::string v = su21b;
            if (v.rfind("base=", 0) == 0) v = v.substr(5);
            iur.base = parse_triple(v);
            sys = SystemId::HyperboloidU21;
        } else if (!so42l2.empty()) {
            iur.algebra = IurDescriptor::Algebra::so42;
            std::string v = so42l2;
            if (v.rfind("l2=", 0) == 0) v = v.substr(3);
            iur.base = {Rat(0), Rat(0), parse_rational(v)};
            sys = SystemId::HyperboloidU21;
        } else if (!su2b.empty()) {
            iur.algebra = IurDescriptor::Algebra::su2;
            std::string v = su2b;
            if (v.rfind("base=", 0) == 0) v = v.substr(5);
            iur.base = parse_triple(v);
            iur.n = nopt;
        } else if (!su11b.empty()) {
            iur.algebra = IurDescriptor::Algebra::su11;
            std::string v = su11b;
            if (v.rfind("base=", 0) == 0) v = v.substr(5);
            iur.base = parse_triple(v);
            iur.family = fam == "B" ? LadderFamily::B : LadderFamily::C;
        } else {
            std::cerr << "lattice: one of --so6/--su21/--so42/--su2/--su11 is required\n";
            return 2;
        }
        if (sc_plot->parsed() || format == "svg")
            write_output(out_path, lattice_svg(sys, iur));
        else if (format == "csv")
            write_output(out_path, lattice_csv(sys, iur));
        else
            write_output(out_path, lattice_json(sys, iur).dump(2) + "\n");
        return 0;
    }

    if (sc_orbit->parsed()) {
        auto m = parse_triple(m_str);
        OrbitParams p{E, alpha1, to_double(m.l0), to_double(m.l1), to_double(m.l2), beta1};
        try {
            p.validate();
        } catch (const DiscriminantError& e) {
            std::cerr << "orbit: " << e.what() << "\n";
            return 3;
        }
        auto sys = make_classical(SystemId::SphereU3, p.m0, p.m1, p.m2);
        write_output(out_path, orbit_csv(sys, p, dt, steps));
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const itw::DiscriminantError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
