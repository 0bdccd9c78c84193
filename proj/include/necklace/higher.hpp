// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cyclotomic.hpp"
#include "euler_product.hpp"
#include "numtheory.hpp"
#include "poly.hpp"

namespace necklace {

/// n written as an alternating sum of decreasing powers of b with
/// coefficients +-1 (the top coefficient is +1). Exists iff the base-b
/// digits of n are all 0 or b-1, except that the lowest nonzero digit may
/// instead be 1 (contributing an unpaired trailing +b^k; for b = 2 the two
/// readings coincide).
struct BalancedExpansion {
    std::uint64_t n = 0;
    std::uint64_t base = 2;
    std::map<std::uint64_t, int> coeffs;  // power k -> +-1, alternating from the top
    std::vector<std::uint64_t> digits;    // plain base-b digits, least significant first

    int coeff(std::uint64_t k) const {
        auto it = coeffs.find(k);
        return it == coeffs.end() ? 0 : it->second;
    }
};

inline std::optional<BalancedExpansion> balanced_expansion(std::uint64_t n, std::uint64_t b) {
    if (n == 0 || b < 2) throw std::invalid_argument("balanced_expansion: need n >= 1, b >= 2");
    BalancedExpansion be;
    be.n = n;
    be.base = b;
    for (std::uint64_t v = n; v > 0; v /= b) be.digits.push_back(v % b);
    std::size_t low = 0;
    while (be.digits[low] == 0) ++low;
    std::size_t start = low;
    if (be.digits[low] == 1 && b > 2) {
        be.coeffs[low] = 1;  // unpaired trailing +b^low
        start = low + 1;
    }
    for (std::size_t k = start; k < be.digits.size(); ++k) {
        if (be.digits[k] == 0) continue;
        if (be.digits[k] != b - 1) return std::nullopt;
        // (b-1) b^k = b^{k+1} - b^k; adjacent runs telescope on their own
        be.coeffs[k] -= 1;
        be.coeffs[k + 1] += 1;
        if (be.coeffs[k] == 0) be.coeffs.erase(k);
    }
    // nonzero coefficients alternate in sign, +1 on top; anything else is a bug
    int expect = 1;
    for (auto it = be.coeffs.rbegin(); it != be.coeffs.rend(); ++it) {
        if (it->second != expect) throw std::logic_error("balanced_expansion: alternation broken");
        expect = -expect;
    }
    return be;
}

/// P_{d,n}(x) = (x^binom(d+n,n) - x^binom(d+n-1,n)) / (x - 1): the count of
/// total-degree-d monic polynomials in n variables, as a polynomial in the
/// field size. The division is exact: x^a - x^b = x^b (x^{a-b} - 1).
inline Poly P_dn(std::uint64_t d, std::uint64_t n, std::uint64_t exponent_budget = 100000) {
    if (n == 0) throw std::invalid_argument("P_dn: n must be positive");
    Int a = binomial(d + n, n);
    if (a > Int(exponent_budget))
        throw std::invalid_argument("P_dn: binomial exponent " + a.str() + " exceeds budget " +
                                    std::to_string(exponent_budget));
    Int b = d == 0 ? Int(0) : binomial(d + n - 1, n);
    Poly p;
    for (long long i = static_cast<long long>(b); i < static_cast<long long>(a); ++i)
        p.add_term(i, 1);
    return p;
}

/// M_{1,n}..M_{d_max,n} by Euler-product inversion of the P_{d,n} series;
/// M_{d,1} recovers the classic necklace polynomials.
inline std::vector<Poly> M_dn(std::uint64_t d_max, std::uint64_t n,
                              std::uint64_t exponent_budget = 100000) {
    PolySeries a;
    a.coeffs.reserve(d_max + 1);
    for (std::uint64_t d = 0; d <= d_max; ++d) a.coeffs.push_back(P_dn(d, n, exponent_budget));
    return euler_invert(a);
}

/// M_{d,n}(zeta_p) from the balanced base-p expansion of n: the coefficient
/// of p^k when d = p^k, and 0 otherwise. Returned as the canonical
/// representative in Q[x]/Phi_p (a constant). Requires the expansion to
/// exist.
inline Poly eval_at_zeta_p(std::uint64_t d, std::uint64_t n, std::uint64_t p) {
    if (d == 0) throw std::invalid_argument("eval_at_zeta_p: d must be positive");
    if (!is_prime(p)) throw std::invalid_argument("eval_at_zeta_p: p must be prime");
    auto be = balanced_expansion(n, p);
    if (!be)
        throw std::domain_error("eval_at_zeta_p: " + std::to_string(n) +
                                " has no balanced base-" + std::to_string(p) + " expansion");
    std::uint64_t v = d, k = 0;
    while (v % p == 0) {
        v /= p;
        ++k;
    }
    if (v != 1) return Poly::zero();  // d is not a power of p
    return Poly(Rat(be->coeff(k)));
}

/// chi_c of the space of degree-d irreducible monic polynomials in n
/// variables over R or C: M_{d,n}(-1) resp. M_{d,n}(1) in closed form.
enum class BaseField { R, C };

inline long long euler_char(std::uint64_t d, std::uint64_t n, BaseField field) {
    if (d == 0 || n == 0) throw std::invalid_argument("euler_char: arguments must be positive");
    if (field == BaseField::C) return d == 1 ? static_cast<long long>(n) : 0;
    auto be = balanced_expansion(n, 2);  // balanced binary always exists
    std::uint64_t v = d, k = 0;
    while (v % 2 == 0) {
        v /= 2;
        ++k;
    }
    return v == 1 ? be->coeff(k) : 0;
}

/// P_{d,n}(zeta_m) for a primitive m-th root of unity, without constructing
/// P: [N]_zeta depends only on N mod m, so the two binomial exponents are
/// needed only as residues.
inline Poly P_dn_at_zeta(std::uint64_t d, std::uint64_t n, std::uint64_t m) {
    Int a = binomial(d + n, n);
    Int b = d == 0 ? Int(0) : binomial(d + n - 1, n);
    std::uint64_t ra = static_cast<std::uint64_t>(a % Int(m));
    std::uint64_t rb = static_cast<std::uint64_t>(b % Int(m));
    if (m == 1) return Poly::zero();
    Poly val = qint(ra) - qint(rb);
    return poly_divrem(val.reduce_mod_xm(m, XmSign::minus), cyclotomic(m)).remainder;
}

/// Certificate that d -> P_{d,n}(zeta_m) is periodic: the smallest period,
/// verified exactly over two further periods. For prime m the binomial
/// residues go through Lucas' congruence and are cross-checked against the
/// exact big-integer route.
struct PeriodCertificate {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t period = 0;
    std::uint64_t verified_prefix = 0;  // R(d) = R(d + period) checked for d < verified_prefix
};

inline PeriodCertificate P_eval_periodicity(std::uint64_t n, std::uint64_t m,
                                            std::uint64_t search_limit = 1 << 14) {
    if (n == 0 || m == 0) throw std::invalid_argument("P_eval_periodicity: arguments positive");
    const bool prime_m = is_prime(m);
    auto residues = [&](std::uint64_t d) -> std::pair<std::uint64_t, std::uint64_t> {
        if (prime_m) {
            std::uint64_t ra = binomial_mod_lucas(d + n, n, m);
            std::uint64_t rb = d == 0 ? 0 : binomial_mod_lucas(d + n - 1, n, m);
            return {ra, rb};
        }
        Int a = binomial(d + n, n), b = d == 0 ? Int(0) : binomial(d + n - 1, n);
        return {static_cast<std::uint64_t>(a % Int(m)), static_cast<std::uint64_t>(b % Int(m))};
    };
    std::vector<std::pair<std::uint64_t, std::uint64_t>> seq;
    auto at = [&](std::uint64_t d) {
        while (seq.size() <= d) seq.push_back(residues(seq.size()));
        return seq[d];
    };
    for (std::uint64_t t = 1; t <= search_limit; ++t) {
        bool ok = true;
        for (std::uint64_t d = 0; d < 2 * t && ok; ++d) ok = at(d) == at(d + t);
        if (!ok) continue;
        // verify over two more periods beyond the detection window
        for (std::uint64_t d = 0; d < 4 * t && ok; ++d) ok = at(d) == at(d + t);
        if (ok) return PeriodCertificate{n, m, t, 5 * t};
    }
    throw std::runtime_error("P_eval_periodicity: no period up to " + std::to_string(search_limit));
}

}  // namespace necklace
