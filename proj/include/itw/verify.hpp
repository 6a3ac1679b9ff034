#pragma once

#include "itw/spectra.hpp"

namespace itw {

struct CheckEntry {
    std::string label;
    double max_residual = 0;
    double tol = 1e-9;
    bool pass = false;
    std::string note;
};

struct Report {
    std::string suite;
    SystemId system;
    std::vector<ParamTriple> params;
    std::uint64_t seed = 0;
    double wall_seconds = 0;
    std::vector<CheckEntry> entries;

    bool pass() const;
    void merge(const Report& other);
    // include_timing=false keeps CLI output byte-identical across runs.
    nlohmann::json to_json(bool include_timing = false) const;
};

enum class AlgebraSuite { su2_A, su2_tildeA, su11_B, su11_C, su21, su3, so6_derived };

const char* name(AlgebraSuite s);

// Every printed bracket of the chosen table, verified as a shifted-instance
// operator identity at l via the randomized probe oracle.
Report check_algebra(AlgebraSuite suite, SystemId system, const ParamTriple& l,
                     std::uint64_t seed = 0xC0FFEEULL);

// Factorizations K+K- + lambda = H_sep and the shifted refactorizations, for
// the A, B, C families (and the reflected A family) in their own variables.
Report check_factorization(SystemId system, const ParamTriple& l,
                           std::uint64_t seed = 0xC0FFEEULL);

// K H_l = H_l' K for all six signed base ladders and the six conjugated ones.
Report check_intertwining(SystemId system, const ParamTriple& l,
                          std::uint64_t seed = 0xC0FFEEULL);

// Casimir-Hamiltonian identities and Casimir-eigenvalue constancy on states.
Report check_casimir(SystemId system, const ParamTriple& l, std::uint64_t seed = 0xC0FFEEULL);

// Ground-state annihilation, eigen-residuals, and the two-dimensional
// degenerate eigenspace built by raising words.
Report check_states(SystemId system, std::uint64_t seed = 0xC0FFEEULL);

// The sphere's quadratic algebra of second- and third-order integrals,
// verified on the q=1 level states.
Report check_quadratic_algebra(const ParamTriple& l, std::uint64_t seed = 0xC0FFEEULL);

// Lattice state counts against the independent enumeration oracle.
Report check_lattice_counts(SystemId system, std::uint64_t seed = 0xC0FFEEULL);

// Jacobi identity on random letter triples.
Report check_jacobi_identity(SystemId system, const ParamTriple& l, int triples,
                             std::uint64_t seed = 0xC0FFEEULL);

// Aggregates every suite; the identity-coverage lock fails the report if a
// registered identity is missing or duplicated.
Report run_full_suite(SystemId system, const std::vector<ParamTriple>& sweep,
                      std::uint64_t seed = 0xC0FFEEULL);

// Canonical list of identity labels the full suite must cover exactly once.
std::vector<std::string> expected_identity_labels(SystemId system);

// Apply a hat-letter word to a closed-form state, threading the parameter
// point; diagonal letters multiply by their rational weight at the point
// where they act.
Expr apply_word_to_state(SystemId system, const Word& word, const Expr& form,
                         const ParamTriple& at, ParamTriple* target = nullptr);

}  // namespace itw
