// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "rational.hpp"

namespace necklace {

/// Fold target for reduction modulo x^m -+ 1.
enum class XmSign { minus, plus };

/// Sparse univariate polynomial over Q. Invariant: no zero coefficients are
/// stored; the zero polynomial is the empty map. Exponents are kept sparse
/// because the polynomials this library cares about (S_d, differences of
/// them, P_{d,n} numerators) have very few terms at very high degree.
class Poly {
public:
    // degree() of the zero polynomial; stands in for "-infinity"
    static constexpr long long kZeroDegree = -1;

    Poly() = default;
    explicit Poly(const Rat& c) {
        if (c != 0) terms_[0] = c;
    }
    Poly(std::initializer_list<std::pair<long long, Rat>> ts) {
        for (const auto& [e, c] : ts) add_term(e, c);
    }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(Rat(1)); }
    static Poly x() { return monomial(1, 1); }
    static Poly monomial(long long e, const Rat& c) {
        if (e < 0) throw std::invalid_argument("Poly: negative exponent");
        Poly p;
        if (c != 0) p.terms_[e] = c;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    long long degree() const { return terms_.empty() ? kZeroDegree : terms_.rbegin()->first; }
    long long trailing_exponent() const {
        if (terms_.empty()) throw std::domain_error("trailing_exponent of zero polynomial");
        return terms_.begin()->first;
    }
    std::size_t term_count() const { return terms_.size(); }

    Rat coeff(long long e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }
    Rat leading_coeff() const { return terms_.empty() ? Rat(0) : terms_.rbegin()->second; }

    const std::map<long long, Rat>& terms() const { return terms_; }

    bool has_integer_coeffs() const {
        for (const auto& [e, c] : terms_)
            if (!is_integer(c)) return false;
        return true;
    }

    void add_term(long long e, const Rat& c) {
        if (e < 0) throw std::invalid_argument("Poly: negative exponent");
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    Poly operator-() const {
        Poly r;
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly& scale(const Rat& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, v] : terms_) v *= c;
        return *this;
    }
    friend Poly operator*(const Rat& c, Poly p) { return p.scale(c); }

    /// f(x^k). k = 0 collapses every term onto x^0, i.e. evaluates at 1.
    Poly compose_power(long long k) const {
        if (k < 0) throw std::invalid_argument("compose_power: negative k");
        Poly r;
        for (const auto& [e, c] : terms_) r.add_term(e * k, c);
        return r;
    }

    Rat evaluate(const Rat& v) const {
        Rat acc = 0;
        for (const auto& [e, c] : terms_) {
            Rat pw = 1, base = v;
            for (long long k = e; k > 0; k >>= 1) {
                if (k & 1) pw *= base;
                if (k > 1) base *= base;
            }
            acc += c * pw;
        }
        return acc;
    }

    Poly derivative() const {
        Poly r;
        for (const auto& [e, c] : terms_)
            if (e > 0) r.terms_[e - 1] = c * Rat(e);
        return r;
    }

    /// Canonical representative modulo x^m - 1 (exponents folded mod m) or
    /// x^m + 1 (exponents folded mod 2m with x^{b+m} -> -x^b). Degree < m.
    Poly reduce_mod_xm(std::uint64_t m, XmSign sign) const {
        if (m == 0) throw std::invalid_argument("reduce_mod_xm: m must be positive");
        Poly r;
        const long long mm = static_cast<long long>(m);
        for (const auto& [e, c] : terms_) {
            if (sign == XmSign::minus) {
                r.add_term(e % mm, c);
            } else {
                long long b = e % (2 * mm);
                if (b < mm)
                    r.add_term(b, c);
                else
                    r.add_term(b - mm, -c);
            }
        }
        return r;
    }

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            if (!s.empty()) s += c > 0 ? " + " : " - ";
            else if (c < 0) s += "-";
            Rat ab = c < 0 ? Rat(-c) : c;
            bool show_coeff = ab != 1 || e == 0;
            if (show_coeff) s += rat_to_string(ab);
            if (e > 0) {
                if (show_coeff) s += "*";
                s += "x";
                if (e > 1) s += "^" + std::to_string(e);
            }
        }
        return s;
    }

private:
    std::map<long long, Rat> terms_;
};

struct DivRem {
    Poly quotient;
    Poly remainder;
};

/// Exact schoolbook division: f = q*g + r with deg r < deg g.
inline DivRem poly_divrem(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw std::invalid_argument("poly_divrem: division by zero polynomial");
    DivRem out;
    out.remainder = f;
    const long long dg = g.degree();
    const Rat lead = g.leading_coeff();
    while (!out.remainder.is_zero() && out.remainder.degree() >= dg) {
        long long shift = out.remainder.degree() - dg;
        Rat q = out.remainder.leading_coeff() / lead;
        out.quotient.add_term(shift, q);
        for (const auto& [e, c] : g.terms()) out.remainder.add_term(e + shift, -(q * c));
    }
    return out;
}

inline Poly poly_mul(const Poly& a, const Poly& b) { return a * b; }

/// Exact quotient; throws if the division leaves a remainder.
inline Poly poly_div_exact(const Poly& f, const Poly& g) {
    DivRem dr = poly_divrem(f, g);
    if (!dr.remainder.is_zero()) throw std::domain_error("poly_div_exact: division is not exact");
    return dr.quotient;
}

inline bool divides(const Poly& g, const Poly& f) {
    if (g.is_zero()) return f.is_zero();
    return poly_divrem(f, g).remainder.is_zero();
}

}  // namespace necklace
