#include "itw/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace itw {

Rat rat_pow(const Rat& base, long exponent) {
    if (exponent == 0) return Rat(1);
    if (exponent < 0) {
        if (base.numerator() == 0) throw std::domain_error("rat_pow: 0 to a negative power");
        return rat_pow(Rat(base.denominator(), base.numerator()), -exponent);
    }
    Rat acc(1);
    Rat b = base;
    long e = exponent;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

Rat parse_rational(const std::string& text) {
    std::string s = text;
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto parse_ll = [](const std::string& t) -> long long {
        size_t pos = 0;
        long long v = std::stoll(t, &pos);
        if (pos != t.size()) throw std::invalid_argument("parse_rational: trailing characters in '" + t + "'");
        return v;
    };
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        long long num = parse_ll(s.substr(0, slash));
        long long den = parse_ll(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
        return Rat(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string head = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (frac.empty()) throw std::invalid_argument("parse_rational: bad decimal '" + s + "'");
        if (frac.size() > 15) throw std::invalid_argument("parse_rational: too many decimal digits");
        bool neg = !head.empty() && head[0] == '-';
        long long ip = head.empty() || head == "-" || head == "+" ? 0 : std::llabs(parse_ll(head));
        for (char c : frac)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::invalid_argument("parse_rational: bad decimal '" + s + "'");
        long long den = 1;
        for (size_t i = 0; i < frac.size(); ++i) den *= 10;
        long long fp = frac.empty() ? 0 : parse_ll(frac);
        Rat r = Rat(ip) + Rat(fp, den);
        return neg ? -r : r;
    }
    return Rat(parse_ll(s));
}

std::string to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_string(const ParamTriple& l) {
    return "(" + to_string(l.l0) + "," + to_string(l.l1) + "," + to_string(l.l2) + ")";
}

}  // namespace itw
