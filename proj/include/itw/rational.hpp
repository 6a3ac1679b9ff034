#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace itw {

// Exact rational scalar. All operator coefficients, parameter triples and
// energies are carried as rationals; conversion to double happens only at
// evaluation leaves.
using Rat = boost::rational<long long>;

inline double to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline Rat half() { return Rat(1, 2); }

Rat rat_pow(const Rat& base, long exponent);

// Accepts "p/q", integers, and finite decimal strings ("1.25" -> 5/4).
Rat parse_rational(const std::string& text);

std::string to_string(const Rat& r);

struct ParamTriple {
    Rat l0, l1, l2;
    bool operator==(const ParamTriple&) const = default;
};

std::string to_string(const ParamTriple& l);

}  // namespace itw
