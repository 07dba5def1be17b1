#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace msp {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

// Degrees in this calculus live in (1/3)Z.
inline bool is_third_integer(const Rat& r) {
    const Int d = denominator(r);
    return d == 1 || d == 3;
}

// "p" for integers, "p/q" otherwise.
inline std::string rat_str(const Rat& r) {
    if (is_integer(r)) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

// Accepts "p" or "p/q" with q > 0 after normalization.
inline std::optional<Rat> parse_rat(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) return std::nullopt;
        if (den < 0) { // keep the denominator positive for the constructor
            num = -num;
            den = -den;
        }
        return Rat(num, den);
    } catch (...) {
        return std::nullopt;
    }
}

} // namespace msp
