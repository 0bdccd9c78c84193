// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "numtheory.hpp"
#include "poly.hpp"

namespace necklace {

/// Element of the Frobenius algebra Psi = Z[N^x]: a finite integer
/// combination sum a_k [k] of symbols with [m][n] = [mn]. [1] is the
/// identity; [0] is a legitimate nonzero element ([0]f = f(1)).
class FrobElt {
public:
    FrobElt() = default;

    static FrobElt symbol(std::uint64_t k) {
        FrobElt e;
        e.terms_[k] = 1;
        return e;
    }
    static FrobElt identity() { return symbol(1); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<std::uint64_t, Int>& terms() const { return terms_; }

    void add_term(std::uint64_t k, const Int& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    FrobElt& operator+=(const FrobElt& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    FrobElt& operator-=(const FrobElt& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    friend FrobElt operator+(FrobElt a, const FrobElt& b) { return a += b; }
    friend FrobElt operator-(FrobElt a, const FrobElt& b) { return a -= b; }

    friend FrobElt operator*(const FrobElt& a, const FrobElt& b) {
        FrobElt r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                if (kb != 0 && ka > UINT64_MAX / kb)
                    throw std::overflow_error("FrobElt: symbol index overflow");
                r.add_term(ka * kb, ca * cb);
            }
        return r;
    }
    FrobElt& operator*=(const FrobElt& o) { return *this = *this * o; }

    bool operator==(const FrobElt& o) const { return terms_ == o.terms_; }
    bool operator!=(const FrobElt& o) const { return !(*this == o); }

private:
    std::map<std::uint64_t, Int> terms_;
};

/// Image of a FrobElt in Psi[m]: coefficients accumulated over k mod m.
/// Zero here is exactly "annihilates x modulo x^m - 1".
struct PsiModM {
    std::uint64_t modulus = 1;
    std::vector<Int> coeffs;  // indexed by residue 0..m-1

    bool is_zero() const {
        for (const Int& c : coeffs)
            if (c != 0) return false;
        return true;
    }
};

/// Image in Psi[m]_(+/-): residues mod 2m folded by [b + m] = -[b].
struct PsiModMSigned {
    std::uint64_t modulus = 1;
    std::vector<Int> coeffs;

    bool is_zero() const {
        for (const Int& c : coeffs)
            if (c != 0) return false;
        return true;
    }
};

inline PsiModM reduce(const FrobElt& a, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("reduce: m must be positive");
    PsiModM r{m, std::vector<Int>(m, Int(0))};
    for (const auto& [k, c] : a.terms()) r.coeffs[k % m] += c;
    return r;
}

/// Folding is defined for every symbol index; the divisibility consequence
/// (x^m + 1 | alpha f) only holds when alpha is applied to odd polynomials,
/// which is the caller's obligation.
inline PsiModMSigned reduce_signed(const FrobElt& a, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("reduce_signed: m must be positive");
    PsiModMSigned r{m, std::vector<Int>(m, Int(0))};
    for (const auto& [k, c] : a.terms()) {
        std::uint64_t b = k % (2 * m);
        if (b < m)
            r.coeffs[b] += c;
        else
            r.coeffs[b - m] -= c;
    }
    return r;
}

/// f = sum a_k x^k  |->  [f] = sum a_k [k]. Requires integer coefficients.
inline FrobElt frob_of_poly(const Poly& f) {
    FrobElt r;
    for (const auto& [e, c] : f.terms()) {
        if (!is_integer(c)) throw std::invalid_argument("frob_of_poly: non-integer coefficient");
        r.add_term(static_cast<std::uint64_t>(e), numerator(c));
    }
    return r;
}

/// alpha f(x) = sum a_k f(x^k).
inline Poly frob_apply(const FrobElt& a, const Poly& f) {
    Poly r;
    for (const auto& [k, c] : a.terms()) {
        Poly piece = f.compose_power(static_cast<long long>(k));
        piece.scale(Rat(c));
        r += piece;
    }
    return r;
}

/// phi[d] = prod_{p|d} ([p^{e_p}] - [p^{e_p - 1}]) = sum_{e|d} mu(e)[d/e].
/// Applied to x it yields S_d(x).
inline FrobElt phi_op(std::uint64_t d) {
    if (d == 0) throw std::invalid_argument("phi_op: d must be positive");
    FrobElt r = FrobElt::identity();
    for (const auto& [p, e] : factorize(d)) {
        std::uint64_t pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        FrobElt factor = FrobElt::symbol(pe);
        factor -= FrobElt::symbol(pe / p);
        r *= factor;
    }
    return r;
}

}  // namespace necklace
