// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace necklace {

// Exact arithmetic kernel. Rat is always in lowest terms with positive
// denominator; both invariants are maintained by the backend.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

inline Int to_int(const Rat& r) {
    if (!is_integer(r)) throw std::domain_error("rational is not an integer: " + r.str());
    return numerator(r);
}

/// "num" or "num/den", denominator positive after normalization.
inline std::string rat_to_string(const Rat& r) {
    if (is_integer(r)) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in \"" + s + "\"");
    return Rat(num, den);
}

}  // namespace necklace
