#include "itw/verify.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

namespace itw {

namespace {

Expr C(const Rat& r) { return Expr::constant(r); }

std::uint64_t fnv1a(const std::string& s, std::uint64_t seed) {
    std::uint64_t h = 1469598103934665603ULL ^ seed;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

SampleSpec primary_spec(SystemId system, std::uint64_t seed, const std::string& label,
                        double tol = 1e-9) {
    return sample_spec(primary_chart(system), fnv1a(label, seed), tol);
}

CheckEntry entry_from(const EqReport& rep, const std::string& label, double tol,
                      std::string note = "") {
    return {label, rep.max_residual / rep.scale, tol, rep.pass, std::move(note)};
}

// Interior grid of the primary chart for state-level residuals.
std::vector<Bindings> state_grid(SystemId system, int n = 7) {
    const Chart& c = chart_info(primary_chart(system));
    std::vector<Bindings> out;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            Bindings b;
            b.set(c.vars.v1, c.lo1 + i * (c.hi1 - c.lo1) / (n + 1));
            b.set(c.vars.v2, c.lo2 + j * (c.hi2 - c.lo2) / (n + 1));
            out.push_back(b);
        }
    return out;
}

double grid_max(const Expr& e, const std::vector<Bindings>& grid) {
    double m = 0;
    for (const auto& b : grid) m = std::max(m, std::fabs(eval(e, b)));
    return m;
}

CheckEntry state_entry(SystemId system, const std::string& label, const Expr& residual_form,
                       const Expr& scale_form, double tol) {
    auto grid = state_grid(system);
    double r = grid_max(residual_form, grid);
    double s = 1.0 + grid_max(scale_form, grid);
    return {label, r / s, tol, r / s < tol, ""};
}

struct BracketRule {
    HatLetter x, y;
    std::vector<std::pair<Rat, HatLetter>> rhs;
};

std::string letter_name(const HatLetter& h) {
    std::string base = name(h.family);
    if (h.sgn > 0) return base + "+";
    if (h.sgn < 0) return base + "-";
    return base;
}

std::string rule_label(const BracketRule& r) {
    std::ostringstream os;
    os << "[" << letter_name(r.x) << "," << letter_name(r.y) << "] = ";
    if (r.rhs.empty()) {
        os << "0";
        return os.str();
    }
    bool first = true;
    for (const auto& [c, h] : r.rhs) {
        Rat a = c < Rat(0) ? -c : c;
        os << (c < Rat(0) ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (a != Rat(1)) os << to_string(a) << "*";
        os << letter_name(h);
        first = false;
    }
    return os.str();
}

HatLetter L(LadderFamily f, int s) { return {f, s}; }

std::vector<BracketRule> su2_type_rules(LadderFamily f) {
    return {
        {L(f, 0), L(f, +1), {{Rat(1), L(f, +1)}}},
        {L(f, 0), L(f, -1), {{Rat(-1), L(f, -1)}}},
        {L(f, +1), L(f, -1), {{Rat(2), L(f, 0)}}},
    };
}

std::vector<BracketRule> su11_B_rules() {
    using LF = LadderFamily;
    return {
        {L(LF::B, +1), L(LF::B, -1), {{Rat(-2), L(LF::B, 0)}}},
        {L(LF::B, 0), L(LF::B, +1), {{Rat(1), L(LF::B, +1)}}},
        {L(LF::B, 0), L(LF::B, -1), {{Rat(-1), L(LF::B, -1)}}},
    };
}

std::vector<BracketRule> su11_C_rules() {
    using LF = LadderFamily;
    return {
        {L(LF::C, -1), L(LF::C, +1), {{Rat(2), L(LF::C, 0)}}},
        {L(LF::C, 0), L(LF::C, +1), {{Rat(1), L(LF::C, +1)}}},
        {L(LF::C, 0), L(LF::C, -1), {{Rat(-1), L(LF::C, -1)}}},
    };
}

// The crossed su(2,1) table (hyperboloid).
std::vector<BracketRule> su21_crossed_rules() {
    using LF = LadderFamily;
    const Rat h(1, 2);
    return {
        {L(LF::A, +1), L(LF::B, +1), {}},
        {L(LF::A, +1), L(LF::B, -1), {{Rat(-1), L(LF::C, -1)}}},
        {L(LF::A, +1), L(LF::B, 0), {{-h, L(LF::A, +1)}}},
        {L(LF::A, +1), L(LF::C, +1), {{Rat(1), L(LF::B, +1)}}},
        {L(LF::A, +1), L(LF::C, -1), {}},
        {L(LF::A, +1), L(LF::C, 0), {{h, L(LF::A, +1)}}},
        {L(LF::A, -1), L(LF::B, +1), {{Rat(1), L(LF::C, +1)}}},
        {L(LF::A, -1), L(LF::B, -1), {}},
        {L(LF::A, -1), L(LF::B, 0), {{h, L(LF::A, -1)}}},
        {L(LF::A, -1), L(LF::C, +1), {}},
        {L(LF::A, -1), L(LF::C, -1), {{Rat(-1), L(LF::B, -1)}}},
        {L(LF::A, -1), L(LF::C, 0), {{-h, L(LF::A, -1)}}},
        {L(LF::A, 0), L(LF::B, +1), {{h, L(LF::B, +1)}}},
        {L(LF::A, 0), L(LF::B, -1), {{-h, L(LF::B, -1)}}},
        {L(LF::A, 0), L(LF::B, 0), {}},
        {L(LF::A, 0), L(LF::C, +1), {{-h, L(LF::C, +1)}}},
        {L(LF::A, 0), L(LF::C, -1), {{h, L(LF::C, -1)}}},
        {L(LF::A, 0), L(LF::C, 0), {}},
        {L(LF::B, +1), L(LF::C, +1), {}},
        {L(LF::B, +1), L(LF::C, -1), {{Rat(-1), L(LF::A, +1)}}},
        {L(LF::B, +1), L(LF::C, 0), {{-h, L(LF::B, +1)}}},
        {L(LF::B, -1), L(LF::C, +1), {{Rat(1), L(LF::A, -1)}}},
        {L(LF::B, -1), L(LF::C, -1), {}},
        {L(LF::B, -1), L(LF::C, 0), {{h, L(LF::B, -1)}}},
        {L(LF::B, 0), L(LF::C, +1), {{h, L(LF::C, +1)}}},
        {L(LF::B, 0), L(LF::C, -1), {{-h, L(LF::C, -1)}}},
        {L(LF::B, 0), L(LF::C, 0), {}},
    };
}

// The sphere su(3) table: three su(2)-type rows plus the crossed table.
std::vector<BracketRule> su3_rules() {
    using LF = LadderFamily;
    const Rat h(1, 2);
    std::vector<BracketRule> rules;
    for (LF f : {LF::A, LF::B, LF::C}) {
        rules.push_back({L(f, +1), L(f, -1), {{Rat(2), L(f, 0)}}});
        rules.push_back({L(f, 0), L(f, +1), {{Rat(1), L(f, +1)}}});
        rules.push_back({L(f, 0), L(f, -1), {{Rat(-1), L(f, -1)}}});
    }
    std::vector<BracketRule> crossed = {
        {L(LF::A, +1), L(LF::B, +1), {}},
        {L(LF::A, +1), L(LF::B, -1), {{Rat(1), L(LF::C, -1)}}},
        {L(LF::A, +1), L(LF::B, 0), {{-h, L(LF::A, +1)}}},
        {L(LF::A, +1), L(LF::C, +1), {{Rat(-1), L(LF::B, +1)}}},
        {L(LF::A, +1), L(LF::C, -1), {}},
        {L(LF::A, +1), L(LF::C, 0), {{h, L(LF::A, +1)}}},
        {L(LF::A, -1), L(LF::B, +1), {{Rat(-1), L(LF::C, +1)}}},
        {L(LF::A, -1), L(LF::B, -1), {}},
        {L(LF::A, -1), L(LF::B, 0), {{h, L(LF::A, -1)}}},
        {L(LF::A, -1), L(LF::C, +1), {}},
        {L(LF::A, -1), L(LF::C, -1), {{Rat(1), L(LF::B, -1)}}},
        {L(LF::A, -1), L(LF::C, 0), {{-h, L(LF::A, -1)}}},
        {L(LF::A, 0), L(LF::B, +1), {{h, L(LF::B, +1)}}},
        {L(LF::A, 0), L(LF::B, -1), {{-h, L(LF::B, -1)}}},
        {L(LF::A, 0), L(LF::B, 0), {}},
        {L(LF::A, 0), L(LF::C, +1), {{-h, L(LF::C, +1)}}},
        {L(LF::A, 0), L(LF::C, -1), {{h, L(LF::C, -1)}}},
        {L(LF::A, 0), L(LF::C, 0), {}},
        {L(LF::B, +1), L(LF::C, +1), {}},
        {L(LF::B, +1), L(LF::C, -1), {{Rat(-1), L(LF::A, +1)}}},
        {L(LF::B, +1), L(LF::C, 0), {{-h, L(LF::B, +1)}}},
        {L(LF::B, -1), L(LF::C, +1), {{Rat(1), L(LF::A, -1)}}},
        {L(LF::B, -1), L(LF::C, -1), {}},
        {L(LF::B, -1), L(LF::C, 0), {{h, L(LF::B, -1)}}},
        {L(LF::B, 0), L(LF::C, +1), {{h, L(LF::C, +1)}}},
        {L(LF::B, 0), L(LF::C, -1), {{-h, L(LF::C, -1)}}},
        {L(LF::B, 0), L(LF::C, 0), {}},
    };
    rules.insert(rules.end(), crossed.begin(), crossed.end());
    return rules;
}

CheckEntry check_bracket_rule(SystemId system, const BracketRule& rule, const ParamTriple& l,
                              std::uint64_t seed, const std::string& label_prefix) {
    const VarPair vp = chart_info(primary_chart(system)).vars;
    DiffOp lhs = compose_word(system, {rule.x, rule.y}, l).op -
                 compose_word(system, {rule.y, rule.x}, l).op;
    DiffOp rhs = DiffOp::zero(vp);
    for (const auto& [c, h] : rule.rhs) rhs = rhs + c * hat_instance(system, h, l).op;
    std::string label = label_prefix + rule_label(rule);
    EqReport rep = equal_numeric(lhs, rhs, primary_spec(system, seed, label), label, "rhs");
    return entry_from(rep, label, 1e-9);
}

// One-dimensional separated operator a ladder family factorizes, in its own
// chart variables.
DiffOp family_separated(SystemId system, LadderFamily family, const ParamTriple& l) {
    auto pt = [](const Rat& p, Fn f, Var v) {
        return C(p * p - Rat(1, 4)) * Expr::pow(Expr::fn(f, Expr::variable(v)), Rat(-2));
    };
    if (system == SystemId::HyperboloidU21) {
        switch (family) {
            case LadderFamily::A:
            case LadderFamily::TildeA:
                return separated_hamiltonian(SeparatedFamily::HThetaA, l.l0, l.l1);
            case LadderFamily::B:
            case LadderFamily::TildeB:
                return separated_hamiltonian(SeparatedFamily::HChiB, l.l0, l.l2);
            case LadderFamily::C:
            case LadderFamily::TildeC:
                return separated_hamiltonian(SeparatedFamily::HBetaC, l.l1, l.l2);
        }
    }
    switch (family) {
        case LadderFamily::A:
        case LadderFamily::TildeA:
            return separated_hamiltonian(SeparatedFamily::SphereHTheta, l.l0, l.l1);
        case LadderFamily::B:
        case LadderFamily::TildeB: {
            VarPair vp = chart_info(ChartId::SphXiPsi).vars;
            DiffOp h(vp);
            h.add_term(2, 0, C(Rat(-1)));
            h.add_term(0, 0, pt(l.l2, Fn::cos, Var::xi) + pt(l.l0, Fn::sin, Var::xi));
            return h;
        }
        case LadderFamily::C:
        case LadderFamily::TildeC: {
            VarPair vp = chart_info(ChartId::SphEtaBeta).vars;
            DiffOp h(vp);
            h.add_term(2, 0, C(Rat(-1)));
            h.add_term(0, 0, pt(l.l1, Fn::cos, Var::eta) + pt(l.l2, Fn::sin, Var::eta));
            return h;
        }
    }
    throw std::logic_error("family_separated: bad family");
}

ChartId family_chart(SystemId system, LadderFamily family) {
    if (system == SystemId::HyperboloidU21) {
        switch (family) {
            case LadderFamily::A:
            case LadderFamily::TildeA: return ChartId::HypThetaXi;
            case LadderFamily::B:
            case LadderFamily::TildeB: return ChartId::HypPsiChi;
            default: return ChartId::HypPhiBeta;
        }
    }
    switch (family) {
        case LadderFamily::A:
        case LadderFamily::TildeA: return ChartId::SphThetaPhi;
        case LadderFamily::B:
        case LadderFamily::TildeB: return ChartId::SphXiPsi;
        default: return ChartId::SphEtaBeta;
    }
}

}  // namespace

const char* name(AlgebraSuite s) {
    switch (s) {
        case AlgebraSuite::su2_A: return "su2_A";
        case AlgebraSuite::su2_tildeA: return "su2_tildeA";
        case AlgebraSuite::su11_B: return "su11_B";
        case AlgebraSuite::su11_C: return "su11_C";
        case AlgebraSuite::su21: return "su21";
        case AlgebraSuite::su3: return "su3";
        case AlgebraSuite::so6_derived: return "so6_derived";
    }
    return "?";
}

bool Report::pass() const {
    for (const auto& e : entries)
        if (!e.pass) return false;
    return true;
}

void Report::merge(const Report& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
    for (const auto& p : other.params) params.push_back(p);
    wall_seconds += other.wall_seconds;
}

nlohmann::json Report::to_json(bool include_timing) const {
    nlohmann::json jent = nlohmann::json::array();
    for (const auto& e : entries) {
        nlohmann::json je{{"label", e.label},
                          {"max_residual", e.max_residual},
                          {"tol", e.tol},
                          {"pass", e.pass}};
        if (!e.note.empty()) je["note"] = e.note;
        jent.push_back(je);
    }
    nlohmann::json jparams = nlohmann::json::array();
    for (const auto& p : params)
        jparams.push_back({{"l0", to_string(p.l0)}, {"l1", to_string(p.l1)}, {"l2", to_string(p.l2)}});
    nlohmann::json out{{"suite", suite}, {"system", name(system)}, {"params", jparams},
                       {"seed", seed},   {"entries", jent},        {"pass", pass()}};
    if (include_timing) out["wall_seconds"] = wall_seconds;
    return out;
}

Report check_algebra(AlgebraSuite suite, SystemId system, const ParamTriple& l,
                     std::uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep{name(suite), system, {l}, seed, 0, {}};
    std::vector<BracketRule> rules;
    switch (suite) {
        case AlgebraSuite::su2_A: rules = su2_type_rules(LadderFamily::A); break;
        case AlgebraSuite::su2_tildeA: rules = su2_type_rules(LadderFamily::TildeA); break;
        case AlgebraSuite::su11_B: rules = su11_B_rules(); break;
        case AlgebraSuite::su11_C: rules = su11_C_rules(); break;
        case AlgebraSuite::su21: rules = su21_crossed_rules(); break;
        case AlgebraSuite::su3: rules = su3_rules(); break;
        case AlgebraSuite::so6_derived: {
            Report j = check_jacobi_identity(system, l, 12, seed);
            for (auto& e : j.entries) e.label = "so6_derived " + e.label;
            rep.merge(j);
            rep.wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return rep;
        }
    }
    std::string prefix = std::string(name(suite)) + ": ";
    for (const auto& r : rules) rep.entries.push_back(check_bracket_rule(system, r, l, seed, prefix));
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

Report check_factorization(SystemId system, const ParamTriple& l, std::uint64_t seed) {
    Report rep{"factorization", system, {l}, seed, 0, {}};
    std::vector<LadderFamily> fams = {LadderFamily::A, LadderFamily::B, LadderFamily::C,
                                      LadderFamily::TildeA};
    for (LadderFamily f : fams) {
        ChartId chart = family_chart(system, f);
        SampleSpec spec = sample_spec(chart, fnv1a(name(f), seed));
        DiffOp hsep = family_separated(system, f, l);
        LadderKind plus{f, OpSign::plus}, minus{f, OpSign::minus};

        DiffOp kplus = ladder_op_1d(system, plus, l);
        DiffOp kminus = ladder_op_1d(system, minus, l);
        Rat lam = lambda_const(system, f, l).value;
        DiffOp lhs = compose(kplus, kminus) + lam * DiffOp::identity(kplus.vars());
        std::string label = std::string("factorization ") + name(f) + "+" + name(f) +
                            "- + lambda == H_sep @ " + to_string(l);
        rep.entries.push_back(
            entry_from(equal_numeric(lhs, hsep, spec, label, "H_sep"), label, 1e-9));

        ParamTriple lp = shift(system, plus, l);
        DiffOp kplus2 = ladder_op_1d(system, plus, lp);
        DiffOp kminus2 = ladder_op_1d(system, minus, lp);
        Rat lam2 = lambda_const(system, f, lp).value;
        DiffOp lhs2 = compose(kminus2, kplus2) + lam2 * DiffOp::identity(kplus.vars());
        std::string label2 = std::string("refactorization ") + name(f) + "-" + name(f) +
                             "+ at shifted + lambda' == H_sep @ " + to_string(l);
        rep.entries.push_back(
            entry_from(equal_numeric(lhs2, hsep, spec, label2, "H_sep"), label2, 1e-9));
    }
    return rep;
}

Report check_intertwining(SystemId system, const ParamTriple& l, std::uint64_t seed) {
    Report rep{"intertwining", system, {l}, seed, 0, {}};
    ChartId pc = primary_chart(system);
    for (LadderFamily f : {LadderFamily::A, LadderFamily::B, LadderFamily::C, LadderFamily::TildeA,
                           LadderFamily::TildeB, LadderFamily::TildeC}) {
        for (int s : {+1, -1}) {
            HatInstance inst = hat_instance(system, {f, s}, l);
            DiffOp h_src = quantum_hamiltonian(system, pc, l);
            DiffOp h_dst = quantum_hamiltonian(system, pc, inst.target);
            std::string label = std::string("intertwining ") + name(f) + (s > 0 ? "+" : "-") +
                                ": K H = H' K @ " + to_string(l);
            EqReport er = equal_numeric(compose(inst.op, h_src), compose(h_dst, inst.op),
                                        primary_spec(system, seed, label), label, "H' K");
            rep.entries.push_back(entry_from(er, label, 1e-9));
        }
    }
    return rep;
}

Expr apply_word_to_state(SystemId system, const Word& word, const Expr& form,
                         const ParamTriple& at, ParamTriple* target) {
    Expr cur = form;
    ParamTriple l = at;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        HatInstance inst = hat_instance(system, *it, l);
        cur = apply(inst.op, cur);
        l = inst.target;
    }
    if (target) *target = l;
    return cur;
}

namespace {

// Casimir of the full intertwining algebra instantiated at l, as a
// second-order operator in the primary chart.
DiffOp casimir_operator(SystemId system, const ParamTriple& l) {
    using LF = LadderFamily;
    const VarPair vp = chart_info(primary_chart(system)).vars;
    DiffOp aa = compose_word(system, {L(LF::A, +1), L(LF::A, -1)}, l).op;
    DiffOp bb = compose_word(system, {L(LF::B, +1), L(LF::B, -1)}, l).op;
    DiffOp cc = compose_word(system, {L(LF::C, +1), L(LF::C, -1)}, l).op;
    Rat a = family_weight(system, LF::A, l);
    Rat b = family_weight(system, LF::B, l);
    Rat c = family_weight(system, LF::C, l);
    if (system == SystemId::HyperboloidU21) {
        Rat diag = Rat(2, 3) * (a * a + b * b + c * c) - (a + b + c);
        return aa - bb - cc + diag * DiffOp::identity(vp);
    }
    Rat diag = Rat(2, 3) * (a * (a - Rat(3, 2)) + b * (b - Rat(3, 2)) + c * (c - Rat(3, 2)));
    return aa + bb + cc + diag * DiffOp::identity(vp);
}

Rat casimir_value(SystemId system, const ParamTriple& l_base) {
    Rat e = ground_energy(system, l_base);
    if (system == SystemId::HyperboloidU21) {
        Rat cp = diagonal_eigenvalue(DiagonalKind::CPrime, l_base, system);
        return (Rat(1, 3) * cp * cp - Rat(15, 4) - e) / 4;
    }
    Rat d = diagonal_eigenvalue(DiagonalKind::D, l_base, system);
    return (e + Rat(1, 3) * d * d - Rat(15, 4)) / 4;
}

}  // namespace

Report check_casimir(SystemId system, const ParamTriple& l, std::uint64_t seed) {
    Report rep{"casimir", system, {l}, seed, 0, {}};
    ChartId pc = primary_chart(system);
    const VarPair vp = chart_info(pc).vars;
    DiffOp h = quantum_hamiltonian(system, pc, l);
    DiffOp cas = casimir_operator(system, l);

    if (system == SystemId::HyperboloidU21) {
        Rat cp = diagonal_eigenvalue(DiagonalKind::CPrime, l, system);
        DiffOp rhs = Rat(-4) * cas + (Rat(1, 3) * cp * cp - Rat(15, 4)) * DiffOp::identity(vp);
        std::string label = "H == -4*C + C'^2/3 - 15/4 @ " + to_string(l);
        rep.entries.push_back(
            entry_from(equal_numeric(h, rhs, primary_spec(system, seed, label), label, "rhs"),
                       label, 1e-9));
    } else {
        Rat d = diagonal_eigenvalue(DiagonalKind::D, l, system);
        DiffOp rhs = Rat(4) * cas + (Rat(-1, 3) * d * d + Rat(15, 4)) * DiffOp::identity(vp);
        std::string label = "H == 4*C - D^2/3 + 15/4 @ " + to_string(l);
        rep.entries.push_back(
            entry_from(equal_numeric(h, rhs, primary_spec(system, seed, label), label, "rhs"),
                       label, 1e-9));
    }

    {
        // Separated theta operator against the su(2) Casimir: H^theta = 4(C+1/4).
        using LF = LadderFamily;
        DiffOp aa = compose_word(system, {L(LF::A, +1), L(LF::A, -1)}, l).op;
        Rat a = family_weight(system, LF::A, l);
        DiffOp c2 = aa + (a * (a - 1)) * DiffOp::identity(vp);
        DiffOp rhs = Rat(4) * c2 + Rat(1) * DiffOp::identity(vp);
        DiffOp hsep = family_separated(system, LF::A, l);
        // Both live on the primary chart variable pair already.
        std::string label = "H^theta == 4*(C_su2 + 1/4) @ " + to_string(l);
        rep.entries.push_back(entry_from(
            equal_numeric(hsep, rhs, primary_spec(system, seed, label), label, "4(C+1/4)"), label,
            1e-9));
    }

    // Casimir eigenvalue is constant across one representation's states.
    std::vector<std::pair<ParamTriple, const char*>> bases;
    if (system == SystemId::HyperboloidU21)
        bases = {{{Rat(0), Rat(0), Rat(-3)}, "(0,0,-3)"}, {{Rat(1), Rat(0), Rat(-4)}, "(1,0,-4)"}};
    else
        bases = {{{Rat(1), Rat(0), Rat(0)}, "(1,0,0)"}, {{Rat(0), Rat(0), Rat(1)}, "(0,0,1)"}};
    for (const auto& [base, bname] : bases) {
        Rat cv = casimir_value(system, base);
        StateForm phi = ground_state(system, base);
        std::vector<StateForm> states = {phi};
        if (auto up = raise_state(phi, LadderFamily::C)) states.push_back(*up);
        if (auto up = raise_state(phi, LadderFamily::A)) {
            states.push_back(*up);
            if (auto up2 = raise_state(*up, LadderFamily::C)) states.push_back(*up2);
        }
        double worst = 0;
        auto grid = state_grid(system);
        for (const auto& st : states) {
            DiffOp cop = casimir_operator(system, st.l);
            Expr resid = apply(cop, st.form) - C(cv) * st.form;
            double r = grid_max(resid, grid) / (1.0 + grid_max(st.form, grid));
            worst = std::max(worst, r);
        }
        std::ostringstream os;
        os << "Casimir eigenvalue " << to_string(cv) << " constant on IUR " << bname << " ("
           << states.size() << " states)";
        rep.entries.push_back({os.str(), worst, 1e-9, worst < 1e-9, ""});
    }
    return rep;
}

Report check_states(SystemId system, std::uint64_t seed) {
    Report rep{"states", system, {}, seed, 0, {}};
    ChartId pc = primary_chart(system);
    auto grid = state_grid(system);

    auto annihilation = [&](const StateForm& st, LadderFamily f, const char* opname) {
        DiffOp low = ladder_op(system, {f, OpSign::minus}, st.l);
        Expr resid = apply(low, st.form);
        std::string label = std::string(opname) + "- annihilates ground state @ " +
                            to_string(st.l);
        rep.entries.push_back(state_entry(system, label, resid, st.form, 1e-10));
    };
    auto eigencheck = [&](const StateForm& st, const Rat& e, std::string label) {
        DiffOp h = quantum_hamiltonian(system, pc, st.l);
        Expr resid = apply(h, st.form) - C(e) * st.form;
        rep.entries.push_back(state_entry(system, label, resid, st.form, 1e-8));
    };

    if (system == SystemId::HyperboloidU21) {
        for (const ParamTriple base :
             {ParamTriple{Rat(0), Rat(0), Rat(-3)}, ParamTriple{Rat(1), Rat(0), Rat(-4)}}) {
            StateForm phi = ground_state(system, base);
            annihilation(phi, LadderFamily::A, "A");
            annihilation(phi, LadderFamily::B, "B");
            annihilation(phi, LadderFamily::C, "C");
            eigencheck(phi, phi.energy,
                       "(H - E) ground state == 0 @ " + to_string(base) + ", E = " +
                           to_string(phi.energy));
        }
        // Validity rejection outside the normalizable region.
        bool rejected = false;
        std::string why;
        try {
            ground_state(system, {Rat(0), Rat(0), Rat(-2)});
        } catch (const ValidityError& e) {
            rejected = true;
            why = e.what();
        }
        rep.entries.push_back({"ground state at (0,0,-2) rejected (l0+l2 >= -5/2)",
                               rejected ? 0.0 : 1.0, 0.5, rejected, why});

        // Two independent raising words land on (0,0,-5) at the same energy.
        StateForm base = ground_state(system, {Rat(1), Rat(0), Rat(-4)});
        auto s1 = raise_state(base, LadderFamily::A);
        auto phi2 = s1 ? raise_state(*s1, LadderFamily::C) : std::nullopt;
        auto s2 = raise_state(base, LadderFamily::C);
        auto phi2t = s2 ? raise_state(*s2, LadderFamily::A) : std::nullopt;
        ParamTriple target{Rat(0), Rat(0), Rat(-5)};
        bool landed = phi2 && phi2t && phi2->l == target && phi2t->l == target;
        rep.entries.push_back({"C+A+ and A+C+ from (1,0,-4) both land at (0,0,-5)",
                               landed ? 0.0 : 1.0, 0.5, landed, ""});
        if (landed) {
            eigencheck(*phi2, base.energy, "(H - (-3/4)) C+A+ state == 0 @ (0,0,-5)");
            eigencheck(*phi2t, base.energy, "(H - (-3/4)) A+C+ state == 0 @ (0,0,-5)");
            double gram = gram_det_scaled(*phi2, *phi2t);
            rep.entries.push_back({"Gram determinant of the (0,0,-5) pair > 1e-6", gram, 1e-6,
                                   gram > 1e-6, "scaled det = " + std::to_string(gram)});
        }

        // su(2) tower from (l0,l1) = (1,0): dimension 2.
        StateForm f0 = excited_1d(Rat(1), Rat(0), 0);
        auto up1 = raise_state(f0, LadderFamily::A);
        auto up2 = up1 ? raise_state(*up1, LadderFamily::A) : std::nullopt;
        bool dim2 = up1.has_value() && !up2.has_value();
        rep.entries.push_back(
            {"su(2) tower from (1,0) terminates after 2 states", dim2 ? 0.0 : 1.0, 0.5, dim2, ""});
        return rep;
    }

    for (int n = 0; n <= 2; ++n) {
        ParamTriple base{Rat(0), Rat(0), Rat(n)};
        StateForm phi = ground_state(system, base);
        annihilation(phi, LadderFamily::A, "A");
        annihilation(phi, LadderFamily::TildeA, "~A");
        annihilation(phi, LadderFamily::C, "C");
        eigencheck(phi, phi.energy,
                   "(H - E) ground state == 0 @ " + to_string(base) + ", E = " +
                       to_string(phi.energy));
    }
    {
        StateForm phi = ground_state(system, {Rat(1), Rat(0), Rat(1)});
        annihilation(phi, LadderFamily::A, "A");
        annihilation(phi, LadderFamily::C, "C");
        eigencheck(phi, phi.energy, "(H - E) ground state == 0 @ (1,0,1), E = 63/4");
    }
    bool rejected = false;
    try {
        ground_state(system, {Rat(1, 2), Rat(0), Rat(0)});
    } catch (const ValidityError&) {
        rejected = true;
    }
    rep.entries.push_back({"sphere ground state requires integer (m,n): (1/2,0,0) rejected",
                           rejected ? 0.0 : 1.0, 0.5, rejected, ""});
    return rep;
}

namespace {

Word word_concat(std::initializer_list<Word> parts) {
    Word w;
    for (const auto& p : parts) w.insert(w.end(), p.begin(), p.end());
    return w;
}

}  // namespace

Report check_quadratic_algebra(const ParamTriple& l, std::uint64_t seed) {
    const SystemId system = SystemId::SphereU3;
    Report rep{"quadratic_algebra", system, {l}, seed, 0, {}};
    using LF = LadderFamily;
    const Word X1 = {L(LF::A, +1), L(LF::A, -1)};
    const Word X2 = {L(LF::B, +1), L(LF::B, -1)};
    const Word X3 = {L(LF::C, +1), L(LF::C, -1)};
    const Word Y1 = {L(LF::A, +1), L(LF::C, +1), L(LF::B, -1)};
    const Word Y2 = {L(LF::B, +1), L(LF::C, -1), L(LF::A, -1)};

    // Basis of the q=1 energy level: the two three-state representations.
    std::vector<StateForm> states;
    {
        StateForm g10 = ground_state(system, {Rat(1), Rat(0), Rat(0)});
        states.push_back(g10);
        auto s = raise_state(g10, LF::A);
        states.push_back(*s);
        states.push_back(*raise_state(*s, LF::C));
        StateForm g01 = ground_state(system, {Rat(0), Rat(0), Rat(1)});
        states.push_back(g01);
        auto t = raise_state(g01, LF::C);
        states.push_back(*t);
        states.push_back(*raise_state(*t, LF::A));
    }

    auto grid = state_grid(system);

    struct Term {
        std::function<Rat(const ParamTriple&)> coeff;
        Word word;
    };
    auto cst = [](const Rat& r) {
        return [r](const ParamTriple&) { return r; };
    };
    auto wa = [system](const ParamTriple& p) { return family_weight(system, LF::A, p); };
    auto wb = [system](const ParamTriple& p) { return family_weight(system, LF::B, p); };
    auto wc = [system](const ParamTriple& p) { return family_weight(system, LF::C, p); };

    struct QRule {
        std::string label;
        Word x, y;
        std::vector<Term> rhs;
        double tol;
    };

    std::vector<QRule> rules;
    rules.push_back({"[X1,X2] = -Y1 + Y2", X1, X2, {{cst(Rat(-1)), Y1}, {cst(Rat(1)), Y2}}, 1e-8});
    rules.push_back({"[X2,X3] = -Y1 + Y2", X2, X3, {{cst(Rat(-1)), Y1}, {cst(Rat(1)), Y2}}, 1e-8});
    rules.push_back({"[X1,X3] = Y1 - Y2", X1, X3, {{cst(Rat(1)), Y1}, {cst(Rat(-1)), Y2}}, 1e-8});
    rules.push_back({"[X1,Y1] = X1X2 - X1X3 - 2(A-1)Y1",
                     X1,
                     Y1,
                     {{cst(Rat(1)), word_concat({X1, X2})},
                      {cst(Rat(-1)), word_concat({X1, X3})},
                      {[=](const ParamTriple& p) { return Rat(-2) * (wa(p) - 1); }, Y1}},
                     1e-7});
    rules.push_back({"[X1,Y2] = -X2X1 + X3X1 + 2(A-1)Y2",
                     X1,
                     Y2,
                     {{cst(Rat(-1)), word_concat({X2, X1})},
                      {cst(Rat(1)), word_concat({X3, X1})},
                      {[=](const ParamTriple& p) { return Rat(2) * (wa(p) - 1); }, Y2}},
                     1e-7});
    rules.push_back({"[X2,Y1] = X1X2 - X2X3 - (1+2B)Y1 + Y2 - 2C X2",
                     X2,
                     Y1,
                     {{cst(Rat(1)), word_concat({X1, X2})},
                      {cst(Rat(-1)), word_concat({X2, X3})},
                      {[=](const ParamTriple& p) { return -(Rat(1) + Rat(2) * wb(p)); }, Y1},
                      {cst(Rat(1)), Y2},
                      {[=](const ParamTriple& p) { return Rat(-2) * wc(p); }, X2}},
                     1e-7});
    rules.push_back({"[X2,Y2] = -X2X1 + X3X2 + (1+2B)Y2 - Y1 + 2C X2",
                     X2,
                     Y2,
                     {{cst(Rat(-1)), word_concat({X2, X1})},
                      {cst(Rat(1)), word_concat({X3, X2})},
                      {[=](const ParamTriple& p) { return Rat(1) + Rat(2) * wb(p); }, Y2},
                      {cst(Rat(-1)), Y1},
                      {[=](const ParamTriple& p) { return Rat(2) * wc(p); }, X2}},
                     1e-7});
    rules.push_back({"[X3,Y1] = -X1X3 - X2X3 + 2C Y1 - 2C X2 + Y2",
                     X3,
                     Y1,
                     {{cst(Rat(-1)), word_concat({X1, X3})},
                      {cst(Rat(-1)), word_concat({X2, X3})},
                      {[=](const ParamTriple& p) { return Rat(2) * wc(p); }, Y1},
                      {[=](const ParamTriple& p) { return Rat(-2) * wc(p); }, X2},
                      {cst(Rat(1)), Y2}},
                     1e-7});
    rules.push_back({"[X3,Y2] = X3X1 + X3X2 - 2C Y2 + 2C X2 - Y1",
                     X3,
                     Y2,
                     {{cst(Rat(1)), word_concat({X3, X1})},
                      {cst(Rat(1)), word_concat({X3, X2})},
                      {[=](const ParamTriple& p) { return Rat(-2) * wc(p); }, Y2},
                      {[=](const ParamTriple& p) { return Rat(2) * wc(p); }, X2},
                      {cst(Rat(-1)), Y1}},
                     1e-7});
    rules.push_back(
        {"[Y1,Y2] = 2(-C X1X2 + B X1X3 + A X2X3 + (B+C)Y1 - A Y2 + 2AC X2)",
         Y1,
         Y2,
         {{[=](const ParamTriple& p) { return Rat(-2) * wc(p); }, word_concat({X1, X2})},
          {[=](const ParamTriple& p) { return Rat(2) * wb(p); }, word_concat({X1, X3})},
          {[=](const ParamTriple& p) { return Rat(2) * wa(p); }, word_concat({X2, X3})},
          {[=](const ParamTriple& p) { return Rat(2) * (wb(p) + wc(p)); }, Y1},
          {[=](const ParamTriple& p) { return Rat(-2) * wa(p); }, Y2},
          {[=](const ParamTriple& p) { return Rat(4) * wa(p) * wc(p); }, X2}},
         1e-7});

    for (const auto& rule : rules) {
        double worst = 0;
        for (const auto& st : states) {
            Expr xy = apply_word_to_state(system, rule.x, apply_word_to_state(system, rule.y,
                                                                              st.form, st.l),
                                          st.l);
            Expr yx = apply_word_to_state(system, rule.y, apply_word_to_state(system, rule.x,
                                                                              st.form, st.l),
                                          st.l);
            Expr lhs = xy - yx;
            std::vector<Expr> rhs_parts;
            for (const auto& term : rule.rhs)
                rhs_parts.push_back(C(term.coeff(st.l)) *
                                    apply_word_to_state(system, term.word, st.form, st.l));
            Expr rhs = Expr::sum(std::move(rhs_parts));
            double r = grid_max(lhs - rhs, grid) / (1.0 + grid_max(lhs, grid));
            worst = std::max(worst, r);
        }
        rep.entries.push_back({"quadratic: " + rule.label + " on q=1 states", worst, rule.tol,
                               worst < rule.tol, ""});
    }

    // [X_i, H] = 0: X_i maps an energy eigenstate to one of the same energy.
    const Word* xs[3] = {&X1, &X2, &X3};
    const char* xnames[3] = {"X1", "X2", "X3"};
    ChartId pc = primary_chart(system);
    for (int i = 0; i < 3; ++i) {
        double worst = 0;
        for (const auto& st : states) {
            ParamTriple tgt;
            Expr xi = apply_word_to_state(system, *xs[i], st.form, st.l, &tgt);
            DiffOp h = quantum_hamiltonian(system, pc, tgt);
            Expr resid = apply(h, xi) - C(st.energy) * xi;
            double r = grid_max(resid, grid) / (1.0 + grid_max(xi, grid));
            worst = std::max(worst, r);
        }
        rep.entries.push_back({std::string("quadratic: [") + xnames[i] +
                                   ",H] = 0 (energy preserved on q=1 states)",
                               worst, 1e-7, worst < 1e-7, ""});
    }
    return rep;
}

Report check_lattice_counts(SystemId system, std::uint64_t seed) {
    Report rep{"lattice_counts", system, {}, seed, 0, {}};
    if (system == SystemId::SphereU3) {
        // Independent oracle: scan the integer cube and count shell members.
        auto oracle_count = [](int q) {
            long total = 0;
            for (int x = -q; x <= q; ++x)
                for (int y = -q; y <= q; ++y)
                    for (int z = -q; z <= q; ++z) {
                        int r = std::abs(x) + std::abs(y) + std::abs(z);
                        if (r > q || (q - r) % 2 != 0) continue;
                        total += (q - r) / 2 + 1;
                    }
            return total;
        };
        const long expected[4] = {1, 6, 20, 50};
        for (int q = 0; q <= 3; ++q) {
            auto pts = lattice(system, {IurDescriptor::Algebra::so6, {}, LadderFamily::C, 0, q, 0});
            long total = 0;
            for (const auto& p : pts) total += p.mult;
            bool ok = total == oracle_count(q) && (q > 3 || total == expected[q]);
            std::ostringstream os;
            os << "so(6) q=" << q << " state count == " << expected[q] << " (oracle "
               << oracle_count(q) << ")";
            rep.entries.push_back({os.str(), double(std::labs(total - expected[q])), 0.5, ok,
                                   "counted " + std::to_string(total)});
        }
        for (int q = 1; q <= 6; ++q) {
            long surf = 0;
            for (int x = -q; x <= q; ++x)
                for (int y = -q; y <= q; ++y)
                    for (int z = -q; z <= q; ++z)
                        if (std::abs(x) + std::abs(y) + std::abs(z) == q) ++surf;
            bool ok = surf == 4L * q * q + 2;
            std::ostringstream os;
            os << "octahedron surface count |x|+|y|+|z|=" << q << " equals 4q^2+2";
            rep.entries.push_back({os.str(), double(std::labs(surf - (4L * q * q + 2))), 0.5, ok, ""});
        }
        return rep;
    }
    // Hyperboloid: the (0,0,-5) point of the (1,0,-4) plane carries the
    // 2-dimensional first-excited level; the so(4,2) pyramid agrees.
    auto pts = lattice(system, {IurDescriptor::Algebra::so42, {Rat(0), Rat(0), Rat(-3)},
                                LadderFamily::C, 0, 0, 2});
    int mult = 0;
    for (const auto& p : pts)
        if (p.l == ParamTriple{Rat(0), Rat(0), Rat(-5)}) mult = p.mult;
    rep.entries.push_back({"so(4,2) pyramid: (0,0,-5) carries multiplicity 2",
                           double(std::abs(mult - 2)), 0.5, mult == 2, ""});
    auto tri = lattice(system, {IurDescriptor::Algebra::su21, {Rat(1), Rat(0), Rat(-4)},
                                LadderFamily::C, 0, 0, 1});
    bool found = false;
    for (const auto& p : tri)
        if (p.l == ParamTriple{Rat(0), Rat(0), Rat(-5)}) found = true;
    rep.entries.push_back({"su(2,1) plane of (1,0,-4) contains (0,0,-5)", found ? 0.0 : 1.0, 0.5,
                           found, ""});
    return rep;
}

Report check_jacobi_identity(SystemId system, const ParamTriple& l, int triples,
                             std::uint64_t seed) {
    Report rep{"jacobi", system, {l}, seed, 0, {}};
    using LF = LadderFamily;
    std::vector<HatLetter> pool;
    for (LF f : {LF::A, LF::B, LF::C, LF::TildeA, LF::TildeB, LF::TildeC})
        for (int s : {+1, -1, 0}) pool.push_back({f, s});
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    const VarPair vp = chart_info(primary_chart(system)).vars;

    auto dbracket = [&](const HatLetter& x, const HatLetter& y, const HatLetter& z) {
        // [[x,y],z] = xyz - yxz - zxy + zyx
        DiffOp r = compose_word(system, {x, y, z}, l).op - compose_word(system, {y, x, z}, l).op -
                   compose_word(system, {z, x, y}, l).op + compose_word(system, {z, y, x}, l).op;
        return r;
    };

    for (int i = 0; i < triples; ++i) {
        HatLetter x = pool[pick(rng)], y = pool[pick(rng)], z = pool[pick(rng)];
        DiffOp lhs = dbracket(x, y, z) + dbracket(y, z, x) + dbracket(z, x, y);
        std::string label = "Jacobi identity on (" + letter_name(x) + "," + letter_name(y) + "," +
                            letter_name(z) + ") @ " + to_string(l);
        EqReport er = equal_numeric(lhs, DiffOp::zero(vp),
                                    primary_spec(system, seed + i, label, 1e-8), label, "0");
        rep.entries.push_back(entry_from(er, label, 1e-8));
    }
    return rep;
}

std::vector<std::string> expected_identity_labels(SystemId system) {
    std::vector<std::string> labels;
    if (system == SystemId::HyperboloidU21) {
        for (const auto& r : su2_type_rules(LadderFamily::A))
            labels.push_back("su2_A: " + rule_label(r));
        for (const auto& r : su2_type_rules(LadderFamily::TildeA))
            labels.push_back("su2_tildeA: " + rule_label(r));
        for (const auto& r : su11_B_rules()) labels.push_back("su11_B: " + rule_label(r));
        for (const auto& r : su11_C_rules()) labels.push_back("su11_C: " + rule_label(r));
        for (const auto& r : su21_crossed_rules()) labels.push_back("su21: " + rule_label(r));
    } else {
        for (const auto& r : su3_rules()) labels.push_back("su3: " + rule_label(r));
    }
    return labels;
}

Report run_full_suite(SystemId system, const std::vector<ParamTriple>& sweep,
                      std::uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep{"full", system, sweep, seed, 0, {}};
    if (sweep.empty()) return rep;  // empty passing report

    const ParamTriple canonical = system == SystemId::HyperboloidU21
                                      ? ParamTriple{Rat(1), Rat(0), Rat(-4)}
                                      : ParamTriple{Rat(2), Rat(1), Rat(1)};

    // Parameterized suites over the sweep.
    for (const auto& l : sweep) {
        rep.merge(check_factorization(system, l, seed));
        rep.merge(check_intertwining(system, l, seed));
    }

    // Canonical identity tables, exactly once each (coverage lock below).
    if (system == SystemId::HyperboloidU21) {
        for (AlgebraSuite s : {AlgebraSuite::su2_A, AlgebraSuite::su2_tildeA, AlgebraSuite::su11_B,
                               AlgebraSuite::su11_C, AlgebraSuite::su21})
            rep.merge(check_algebra(s, system, canonical, seed));
    } else {
        rep.merge(check_algebra(AlgebraSuite::su3, system, canonical, seed));
        rep.merge(check_quadratic_algebra(canonical, seed));
    }
    rep.merge(check_jacobi_identity(system, canonical, 20, seed));
    rep.merge(check_casimir(system, canonical, seed));
    rep.merge(check_states(system, seed));
    rep.merge(check_lattice_counts(system, seed));

    // Coverage lock: every registered identity label appears exactly once.
    std::map<std::string, int> seen;
    for (const auto& e : rep.entries) seen[e.label]++;
    bool covered = true;
    std::string missing;
    for (const auto& lbl : expected_identity_labels(system)) {
        if (seen[lbl] != 1) {
            covered = false;
            missing = lbl + " (count " + std::to_string(seen[lbl]) + ")";
            break;
        }
    }
    rep.entries.push_back({"identity coverage lock", covered ? 0.0 : 1.0, 0.5, covered, missing});

    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace itw
