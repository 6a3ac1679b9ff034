#include "itw/ladders.hpp"

namespace itw {

namespace {

Expr C(const Rat& r) { return Expr::constant(r); }
Expr F(Fn f, Var v) { return Expr::fn(f, Expr::variable(v)); }

LadderFamily base_family(LadderFamily f) {
    switch (f) {
        case LadderFamily::TildeA: return LadderFamily::A;
        case LadderFamily::TildeB: return LadderFamily::B;
        case LadderFamily::TildeC: return LadderFamily::C;
        default: return f;
    }
}

bool is_tilde(LadderFamily f) {
    return f == LadderFamily::TildeA || f == LadderFamily::TildeB || f == LadderFamily::TildeC;
}

// Reflection through which each tilde family is defined (the label-preserving
// rows of the conjugation tables).
ParamTriple tilde_params(SystemId system, LadderFamily f, const ParamTriple& l) {
    if (system == SystemId::HyperboloidU21) {
        switch (f) {
            case LadderFamily::TildeA:
            case LadderFamily::TildeB: return {-l.l0, l.l1, l.l2};
            case LadderFamily::TildeC: return {l.l0, -l.l1, l.l2};
            default: return l;
        }
    }
    switch (f) {
        case LadderFamily::TildeA:
        case LadderFamily::TildeC: return {l.l0, -l.l1, l.l2};
        case LadderFamily::TildeB: return {l.l0, l.l1, -l.l2};
        default: return l;
    }
}

int sgn_of(OpSign s) { return s == OpSign::plus ? 1 : -1; }

}  // namespace

const char* name(LadderFamily f) {
    switch (f) {
        case LadderFamily::A: return "A";
        case LadderFamily::B: return "B";
        case LadderFamily::C: return "C";
        case LadderFamily::TildeA: return "~A";
        case LadderFamily::TildeB: return "~B";
        case LadderFamily::TildeC: return "~C";
    }
    return "?";
}

std::string name(LadderKind k) {
    return std::string(name(k.family)) + (k.sign == OpSign::plus ? "+" : "-");
}

DiffOp ladder_op(SystemId system, LadderKind kind, const ParamTriple& l_in) {
    const ParamTriple l = tilde_params(system, kind.family, l_in);
    const LadderFamily fam = base_family(kind.family);
    const Rat s(sgn_of(kind.sign));
    const VarPair vp = chart_info(primary_chart(system)).vars;
    auto D1 = DiffOp::d1(vp);
    auto D2 = DiffOp::d2(vp);

    if (system == SystemId::HyperboloidU21) {
        switch (fam) {
            case LadderFamily::A:
                // +/- d_theta - (l0+1/2) tan(theta) + (l1+1/2) cot(theta)
                return s * D1 +
                       DiffOp::mul(vp, C(-(l.l0 + half())) * F(Fn::tan, Var::theta) +
                                           C(l.l1 + half()) * F(Fn::cot, Var::theta));
            case LadderFamily::B: {
                // +/- (cos(theta) d_xi - sin(theta) coth(xi) d_theta)
                //   + (l2+1/2) tanh(xi) cos(theta) + (l0+1/2) coth(xi) sec(theta)
                DiffOp deriv = left_mul(F(Fn::cos, Var::theta), D2) -
                               left_mul(F(Fn::sin, Var::theta) * F(Fn::coth, Var::xi), D1);
                Expr w = C(l.l2 + half()) * F(Fn::tanh, Var::xi) * F(Fn::cos, Var::theta) +
                         C(l.l0 + half()) * F(Fn::coth, Var::xi) * F(Fn::sec, Var::theta);
                return s * deriv + DiffOp::mul(vp, w);
            }
            case LadderFamily::C: {
                // +/- (sin(theta) d_xi + cos(theta) coth(xi) d_theta)
                //   + (l2+1/2) tanh(xi) sin(theta) + (1/2-l1) coth(xi) csc(theta)
                DiffOp deriv = left_mul(F(Fn::sin, Var::theta), D2) +
                               left_mul(F(Fn::cos, Var::theta) * F(Fn::coth, Var::xi), D1);
                Expr w = C(l.l2 + half()) * F(Fn::tanh, Var::xi) * F(Fn::sin, Var::theta) +
                         C(half() - l.l1) * F(Fn::coth, Var::xi) * F(Fn::csc, Var::theta);
                return s * deriv + DiffOp::mul(vp, w);
            }
            default: break;
        }
    } else {
        switch (fam) {
            case LadderFamily::A:
                return s * D1 +
                       DiffOp::mul(vp, C(-(l.l0 + half())) * F(Fn::tan, Var::theta) +
                                           C(l.l1 + half()) * F(Fn::cot, Var::theta));
            case LadderFamily::B: {
                // -/+ (sin(theta) tan(phi) d_theta + cos(theta) d_phi)
                //   - (l2+1/2) cos(theta) cot(phi) + (l0+1/2) sec(theta) tan(phi)
                // (the derivative part is -d_xi of the chart around s1)
                DiffOp deriv = left_mul(F(Fn::sin, Var::theta) * F(Fn::tan, Var::phi), D1) +
                               left_mul(F(Fn::cos, Var::theta), D2);
                Expr w = C(-(l.l2 + half())) * F(Fn::cos, Var::theta) * F(Fn::cot, Var::phi) +
                         C(l.l0 + half()) * F(Fn::sec, Var::theta) * F(Fn::tan, Var::phi);
                return (Rat(-1) * s) * deriv + DiffOp::mul(vp, w);
            }
            case LadderFamily::C: {
                // -/+ (cos(theta) tan(phi) d_theta - sin(theta) d_phi)
                //   + (l1-1/2) csc(theta) tan(phi) + (l2+1/2) sin(theta) cot(phi)
                DiffOp deriv = left_mul(F(Fn::cos, Var::theta) * F(Fn::tan, Var::phi), D1) -
                               left_mul(F(Fn::sin, Var::theta), D2);
                Expr w = C(l.l1 - half()) * F(Fn::csc, Var::theta) * F(Fn::tan, Var::phi) +
                         C(l.l2 + half()) * F(Fn::sin, Var::theta) * F(Fn::cot, Var::phi);
                return (Rat(-1) * s) * deriv + DiffOp::mul(vp, w);
            }
            default: break;
        }
    }
    throw std::logic_error("ladder_op: unhandled kind");
}

DiffOp ladder_op_1d(SystemId system, LadderKind kind, const ParamTriple& l_in) {
    const ParamTriple l = tilde_params(system, kind.family, l_in);
    const LadderFamily fam = base_family(kind.family);
    const Rat s(sgn_of(kind.sign));

    if (system == SystemId::HyperboloidU21) {
        switch (fam) {
            case LadderFamily::A: return ladder_op(system, {kind.family, kind.sign}, l_in);
            case LadderFamily::B: {
                VarPair vp = chart_info(ChartId::HypPsiChi).vars;  // (psi, chi)
                return s * DiffOp::d2(vp) +
                       DiffOp::mul(vp, C(l.l2 + half()) * F(Fn::tanh, Var::chi) +
                                           C(l.l0 + half()) * F(Fn::coth, Var::chi));
            }
            case LadderFamily::C: {
                VarPair vp = chart_info(ChartId::HypPhiBeta).vars;  // (phi, beta)
                return s * DiffOp::d2(vp) +
                       DiffOp::mul(vp, C(l.l2 + half()) * F(Fn::tanh, Var::beta) +
                                           C(half() - l.l1) * F(Fn::coth, Var::beta));
            }
            default: break;
        }
    } else {
        switch (fam) {
            case LadderFamily::A: return ladder_op(system, {kind.family, kind.sign}, l_in);
            case LadderFamily::B: {
                VarPair vp = chart_info(ChartId::SphXiPsi).vars;  // (xi, psi)
                return s * DiffOp::d1(vp) +
                       DiffOp::mul(vp, C(-(l.l2 + half())) * F(Fn::tan, Var::xi) +
                                           C(l.l0 + half()) * F(Fn::cot, Var::xi));
            }
            case LadderFamily::C: {
                VarPair vp = chart_info(ChartId::SphEtaBeta).vars;  // (eta, beta)
                return s * DiffOp::d1(vp) +
                       DiffOp::mul(vp, C(l.l1 - half()) * F(Fn::tan, Var::eta) +
                                           C(l.l2 + half()) * F(Fn::cot, Var::eta));
            }
            default: break;
        }
    }
    throw std::logic_error("ladder_op_1d: unhandled kind");
}

LambdaConst lambda_const(SystemId system, LadderFamily family, const ParamTriple& l_in) {
    const ParamTriple l = tilde_params(system, family, l_in);
    const LadderFamily fam = base_family(family);
    const bool tilde = is_tilde(family);
    if (system == SystemId::HyperboloidU21) {
        switch (fam) {
            case LadderFamily::A: {
                Rat v = (l.l0 + l.l1 + 1) * (l.l0 + l.l1 + 1);
                // lambda for A is printed; the I0-conjugated form (tilde A) as well.
                return {v, true};
            }
            case LadderFamily::B: {
                Rat t = Rat(1) + l.l0 + l.l2;
                return {-(t * t), !tilde};
            }
            case LadderFamily::C: {
                Rat t = Rat(1) - l.l1 + l.l2;
                return {-(t * t), !tilde};
            }
            default: break;
        }
    } else {
        switch (fam) {
            case LadderFamily::A: {
                Rat t = l.l0 + l.l1 + 1;
                return {t * t, !tilde};
            }
            case LadderFamily::B: {
                Rat t = l.l0 + l.l2 + 1;
                return {t * t, false};
            }
            case LadderFamily::C: {
                Rat t = Rat(1) - l.l1 + l.l2;
                return {t * t, false};
            }
            default: break;
        }
    }
    throw std::logic_error("lambda_const: unhandled family");
}

namespace {

// Shift of the minus operator; plus is the inverse.
ParamTriple minus_shift(SystemId system, LadderFamily f) {
    const Rat o(1);
    if (system == SystemId::HyperboloidU21) {
        switch (f) {
            case LadderFamily::A: return {o, o, 0};
            case LadderFamily::B: return {o, 0, o};
            case LadderFamily::C: return {0, -o, o};
            case LadderFamily::TildeA: return {-o, o, 0};
            case LadderFamily::TildeB: return {-o, 0, o};
            case LadderFamily::TildeC: return {0, o, o};
        }
    } else {
        switch (f) {
            case LadderFamily::A: return {o, o, 0};
            case LadderFamily::B: return {o, 0, o};
            case LadderFamily::C: return {0, -o, o};
            case LadderFamily::TildeA: return {o, -o, 0};
            case LadderFamily::TildeB: return {o, 0, -o};
            case LadderFamily::TildeC: return {0, o, o};
        }
    }
    throw std::logic_error("minus_shift: bad family");
}

}  // namespace

ParamTriple shift(SystemId system, LadderKind kind, const ParamTriple& l) {
    ParamTriple d = minus_shift(system, kind.family);
    if (kind.sign == OpSign::minus) return {l.l0 + d.l0, l.l1 + d.l1, l.l2 + d.l2};
    return {l.l0 - d.l0, l.l1 - d.l1, l.l2 - d.l2};
}

Rat diagonal_eigenvalue(DiagonalKind kind, const ParamTriple& l, SystemId system) {
    (void)system;
    switch (kind) {
        case DiagonalKind::A: return -(l.l0 + l.l1) / 2;
        case DiagonalKind::B: return -(l.l0 + l.l2) / 2;
        case DiagonalKind::C: return -(l.l2 - l.l1) / 2;
        case DiagonalKind::D: return l.l0 - l.l1 - l.l2;
        case DiagonalKind::CPrime: return l.l1 + l.l2 - l.l0;
        case DiagonalKind::L0: return l.l0;
        case DiagonalKind::L1: return l.l1;
        case DiagonalKind::L2: return l.l2;
    }
    throw std::logic_error("diagonal_eigenvalue: bad kind");
}

Rat family_weight(SystemId system, LadderFamily family, const ParamTriple& l) {
    const ParamTriple t = tilde_params(system, family, l);
    switch (base_family(family)) {
        case LadderFamily::A: return diagonal_eigenvalue(DiagonalKind::A, t, system);
        case LadderFamily::B: return diagonal_eigenvalue(DiagonalKind::B, t, system);
        case LadderFamily::C: return diagonal_eigenvalue(DiagonalKind::C, t, system);
        default: break;
    }
    throw std::logic_error("family_weight: bad family");
}

ParamTriple reflect(const ParamTriple& l, ReflectionAxis axis) {
    switch (axis) {
        case ReflectionAxis::I0: return {-l.l0, l.l1, l.l2};
        case ReflectionAxis::I1: return {l.l0, -l.l1, l.l2};
        case ReflectionAxis::I2: return {l.l0, l.l1, -l.l2};
    }
    throw std::logic_error("reflect: bad axis");
}

SignedKind reflect_conjugate(SystemId system, ReflectionAxis axis, LadderKind kind) {
    using LF = LadderFamily;
    const LF f = kind.family;
    const OpSign s = kind.sign;
    const OpSign flip = s == OpSign::plus ? OpSign::minus : OpSign::plus;
    if (f != LF::A && f != LF::B && f != LF::C)
        throw std::invalid_argument("reflect_conjugate: tables are given for the base kinds");
    if (system == SystemId::HyperboloidU21) {
        switch (axis) {
            case ReflectionAxis::I0:
                if (f == LF::A) return {{LF::TildeA, s}, +1};
                if (f == LF::B) return {{LF::TildeB, s}, +1};
                return {{LF::C, s}, +1};
            case ReflectionAxis::I1:
                if (f == LF::A) return {{LF::TildeA, flip}, +1};
                if (f == LF::B) return {{LF::B, s}, +1};
                return {{LF::TildeC, s}, +1};
            case ReflectionAxis::I2:
                if (f == LF::A) return {{LF::A, s}, +1};
                if (f == LF::B) return {{LF::TildeB, flip}, +1};
                return {{LF::TildeC, flip}, -1};
        }
    } else {
        switch (axis) {
            case ReflectionAxis::I0:
                if (f == LF::A) return {{LF::TildeA, flip}, +1};
                if (f == LF::B) return {{LF::TildeB, flip}, +1};
                return {{LF::C, s}, +1};
            case ReflectionAxis::I1:
                if (f == LF::A) return {{LF::TildeA, s}, +1};
                if (f == LF::B) return {{LF::B, s}, +1};
                return {{LF::TildeC, s}, +1};
            case ReflectionAxis::I2:
                if (f == LF::A) return {{LF::A, s}, +1};
                if (f == LF::B) return {{LF::TildeB, s}, +1};
                return {{LF::TildeC, flip}, +1};
        }
    }
    throw std::logic_error("reflect_conjugate: bad axis");
}

HatInstance hat_instance(SystemId system, HatLetter letter, const ParamTriple& at) {
    const VarPair vp = chart_info(primary_chart(system)).vars;
    if (letter.sgn == 0) {
        Rat w = family_weight(system, letter.family, at);
        return {w * DiffOp::identity(vp), at};
    }
    LadderKind k{letter.family, letter.sgn > 0 ? OpSign::plus : OpSign::minus};
    ParamTriple target = shift(system, k, at);
    // Minus letters instantiate the printed operator at the acting point,
    // plus letters at the target point.
    const ParamTriple& subscript = letter.sgn > 0 ? target : at;
    DiffOp op = Rat(1, 2) * ladder_op(system, k, subscript);
    return {op, target};
}

HatInstance compose_word(SystemId system, const Word& word, const ParamTriple& at) {
    const VarPair vp = chart_info(primary_chart(system)).vars;
    DiffOp acc = DiffOp::identity(vp);
    ParamTriple cur = at;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        HatInstance inst = hat_instance(system, *it, cur);
        acc = compose(inst.op, acc);
        cur = inst.target;
    }
    return {acc, cur};
}

}  // namespace itw
