#pragma once

#include "itw/systems.hpp"

namespace itw {

enum class LadderFamily { A, B, C, TildeA, TildeB, TildeC };
enum class OpSign { plus, minus };

struct LadderKind {
    LadderFamily family;
    OpSign sign;
    bool operator==(const LadderKind&) const = default;
};

const char* name(LadderFamily f);
std::string name(LadderKind k);

// First-order intertwining operator with the printed parameter subscript l,
// written in the system's primary chart ((theta,xi) resp. (theta,phi)).
// Tilde kinds are the reflection conjugates: the base operator with the
// reflected parameter sign substituted.
DiffOp ladder_op(SystemId system, LadderKind kind, const ParamTriple& l);

// One-variable form in the family's own separated variable (A in theta, B in
// chi/xi, C in beta/eta), over that chart's variable pair.
DiffOp ladder_op_1d(SystemId system, LadderKind kind, const ParamTriple& l);

struct LambdaConst {
    Rat value;
    bool printed;  // false: derived by conjugating the factorization
};

LambdaConst lambda_const(SystemId system, LadderFamily family, const ParamTriple& l);

// Parameter shift induced on eigenfunctions: where K_l sends a state living
// at l. Plus and minus shifts of one family are mutually inverse.
ParamTriple shift(SystemId system, LadderKind kind, const ParamTriple& l);

enum class DiagonalKind { A, B, C, D, CPrime, L0, L1, L2 };

// Exact rational weight of the diagonal (free-index) operators.
Rat diagonal_eigenvalue(DiagonalKind kind, const ParamTriple& l, SystemId system);

// Diagonal weight of a ladder family's free-index companion (including the
// tilde families, whose weights follow by conjugation).
Rat family_weight(SystemId system, LadderFamily family, const ParamTriple& l);

enum class ReflectionAxis { I0, I1, I2 };

ParamTriple reflect(const ParamTriple& l, ReflectionAxis axis);

struct SignedKind {
    LadderKind kind;
    int scalar;  // +1 or -1
};

// The printed conjugation tables: which (signed) operator I K I is.
SignedKind reflect_conjugate(SystemId system, ReflectionAxis axis, LadderKind kind);

// A letter of a free-index operator word: sgn = +1/-1 for the raising and
// lowering hats (carrying the conventional 1/2 factor), sgn = 0 for the
// diagonal hat.
struct HatLetter {
    LadderFamily family;
    int sgn;
};

struct HatInstance {
    DiffOp op;          // concrete operator (or weight * identity) at the acting point
    ParamTriple target; // where the result lives
};

// Concrete instantiation of a hat letter on states at l. Minus letters use
// the printed operator at l itself, plus letters the one at shift(+)(l); this
// is the unique convention under which the printed commutator tables hold as
// shifted-instance operator identities.
HatInstance hat_instance(SystemId system, HatLetter letter, const ParamTriple& at);

using Word = std::vector<HatLetter>;  // applied right to left

// Compose a word of hat letters acting on states at l into a single operator
// (subject to the order-4 cap). Returns the composed operator and the final
// parameter point.
HatInstance compose_word(SystemId system, const Word& word, const ParamTriple& at);

}  // namespace itw
