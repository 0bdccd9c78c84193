// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "numtheory.hpp"
#include "poly.hpp"

namespace necklace {

inline Poly xm_minus_one(std::uint64_t m) {
    Poly p = Poly::monomial(static_cast<long long>(m), 1);
    p.add_term(0, -1);
    return p;
}

inline Poly xm_plus_one(std::uint64_t m) {
    Poly p = Poly::monomial(static_cast<long long>(m), 1);
    p.add_term(0, 1);
    return p;
}

/// [m]_x = (x^m - 1)/(x - 1) = x^{m-1} + ... + x + 1.
inline Poly qint(std::uint64_t m) {
    Poly p;
    for (std::uint64_t i = 0; i < m; ++i) p.add_term(static_cast<long long>(i), 1);
    return p;
}

/// The m-th cyclotomic polynomial, via Phi_m = prod_{n|m} (x^{m/n} - 1)^{mu(n)}:
/// all numerator binomials are multiplied first, then the denominator
/// binomials are divided out exactly. Results are memoized per process; the
/// cache fill is idempotent so concurrent callers always agree.
inline const Poly& cyclotomic(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("cyclotomic: m must be positive");
    static std::map<std::uint64_t, Poly> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
    }
    Poly num = Poly::one();
    std::vector<std::uint64_t> dens;
    for (std::uint64_t n : divisors(m)) {
        int mob = mobius(n);
        if (mob == 1)
            num *= xm_minus_one(m / n);
        else if (mob == -1)
            dens.push_back(m / n);
    }
    for (std::uint64_t k : dens) num = poly_div_exact(num, xm_minus_one(k));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(m, std::move(num)).first->second;
}

/// Divisibility of f by Phi_m through the spec'd route: fold f modulo
/// x^m - 1 (Phi_m divides x^m - 1, so this changes nothing mod Phi_m), then
/// exact divrem against Phi_m. Integer inputs take a dense remainder-only
/// division over Int; Phi_m is monic, so no denominators can appear.
inline bool cyclotomic_divides_divrem(const Poly& f, std::uint64_t m) {
    Poly folded = f.reduce_mod_xm(m, XmSign::minus);
    if (folded.is_zero()) return true;
    const Poly& phi = cyclotomic(m);
    const long long dp = phi.degree();
    if (folded.degree() < dp) return false;
    if (!folded.has_integer_coeffs()) return poly_divrem(folded, phi).remainder.is_zero();
    std::vector<Int> r(m, Int(0));
    for (const auto& [e, c] : folded.terms()) r[static_cast<std::size_t>(e)] = numerator(c);
    std::vector<std::pair<long long, Int>> lower;  // phi without its leading term
    for (const auto& [e, c] : phi.terms())
        if (e != dp) lower.emplace_back(e, numerator(c));
    for (long long i = folded.degree(); i >= dp; --i) {
        if (r[static_cast<std::size_t>(i)] == 0) continue;
        Int q = std::move(r[static_cast<std::size_t>(i)]);
        r[static_cast<std::size_t>(i)] = 0;
        for (const auto& [e, c] : lower) r[static_cast<std::size_t>(i - dp + e)] -= q * c;
    }
    for (long long i = 0; i < dp; ++i)
        if (r[static_cast<std::size_t>(i)] != 0) return false;
    return true;
}

/// Divisibility of f by Phi_m via the tensor power basis of Q(zeta_m).
///
/// Q(zeta_m) is the compositum of the Q(zeta_{p^a}) over the prime powers
/// p^a || m; products of power-basis elements of the factors form a basis.
/// A term x^k maps to the coordinate tuple c_i = k * (m/p^a)^{-1} mod p^a,
/// and a coordinate in the top block [phi(p^a), p^a) is rewritten once with
/// the relation sum_{s<p} x^{s p^{a-1}} = 0. The folded sum vanishes in
/// every basis coordinate iff Phi_m | f. Equivalent to the divrem route but
/// costs O(terms) instead of O(m * phi(m)), which is what makes full factor
/// scans over phi(m) <= deg f feasible.
inline bool cyclotomic_divides_tensor(const Poly& f, std::uint64_t m) {
    struct Coord {
        std::uint64_t pa;        // p^a
        std::uint64_t pa1;       // p^{a-1}
        std::uint64_t p;
        std::uint64_t phi;       // phi(p^a)
        std::uint64_t inv;       // (m/p^a)^{-1} mod p^a
        std::uint64_t stride;    // mixed-radix stride in the key space
    };
    std::vector<Coord> coords;
    {
        std::uint64_t stride = 1;
        for (const auto& [p, e] : factorize(m)) {
            Coord c;
            c.p = p;
            c.pa = 1;
            for (int i = 0; i < e; ++i) c.pa *= p;
            c.pa1 = c.pa / p;
            c.phi = c.pa - c.pa1;
            std::uint64_t cof = (m / c.pa) % c.pa;
            c.inv = detail::powmod_u64(cof, (c.pa / p) * (p - 1) - 1, c.pa);  // unit in (Z/p^a)*
            c.stride = stride;
            stride *= c.phi;
            coords.push_back(c);
        }
    }
    std::unordered_map<std::uint64_t, Rat> acc;
    std::vector<std::pair<std::uint64_t, Rat>> work, next;
    for (const auto& [e, cf] : f.terms()) {
        std::uint64_t r = static_cast<std::uint64_t>(e) % m;
        work.assign(1, {0, cf});
        for (const Coord& c : coords) {
            std::uint64_t ci = detail::mulmod_u64(r % c.pa, c.inv, c.pa);
            next.clear();
            for (const auto& [key, w] : work) {
                if (ci < c.phi) {
                    next.emplace_back(key + ci * c.stride, w);
                } else {
                    std::uint64_t t = ci - c.phi;  // ci = (p-1)p^{a-1} + t
                    for (std::uint64_t s = 0; s + 1 < c.p; ++s)
                        next.emplace_back(key + (s * c.pa1 + t) * c.stride, -w);
                }
            }
            work.swap(next);
        }
        for (const auto& [key, w] : work) {
            auto [it, inserted] = acc.emplace(key, w);
            if (!inserted) it->second += w;
        }
    }
    for (const auto& [key, w] : acc)
        if (w != 0) return false;
    return true;
}

/// Default strategy: exact divrem for small moduli (the spec's stated
/// route), tensor basis beyond, where divrem's dense quotient would dominate
/// whole-range scans. Both are exact; tests pin their agreement.
inline bool cyclotomic_divides(const Poly& f, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("cyclotomic_divides: m must be positive");
    if (f.is_zero()) return true;
    if (m <= 512) return cyclotomic_divides_divrem(f, m);
    return cyclotomic_divides_tensor(f, m);
}

}  // namespace necklace
