// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace necklace {

// Prime -> multiplicity map of a positive integer. Keys are prime, the
// product of p^e recovers the input.
using Factorization = std::map<std::uint64_t, int>;

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // This witness set decides primality for all n < 3.3 * 10^24.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

inline Factorization factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    Factorization f;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) { ++f[p]; n /= p; }
    }
    if (n > 1) ++f[n];
    return f;
}

inline int mobius(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("mobius: n must be positive");
    Factorization f = factorize(n);
    for (const auto& [p, e] : f)
        if (e > 1) return 0;
    return f.size() % 2 == 0 ? 1 : -1;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("euler_phi: n must be positive");
    std::uint64_t r = n;
    for (const auto& [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> ds{1};
    for (const auto& [p, e] : factorize(n)) {
        std::size_t prev = ds.size();
        std::uint64_t pk = 1;
        for (int i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < prev; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

inline std::uint64_t squarefree_part(std::uint64_t n) {
    std::uint64_t c = 1;
    for (const auto& [p, e] : factorize(n)) c *= p;
    return c;
}

inline bool is_squarefree(std::uint64_t n) { return squarefree_part(n) == n; }

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<std::uint64_t> ps;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        ps.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
    }
    return ps;
}

/// All m >= 1 with phi(m) <= bound, plus their phi values, sorted by m.
/// Enumerated by DFS over ascending primes; avoids sieving up to the
/// worst-case m ~ 2*bound^2.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> phi_bounded(std::uint64_t bound) {
    std::vector<std::uint64_t> ps = primes_up_to(bound + 1);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    auto dfs = [&](auto&& self, std::size_t idx, std::uint64_t m, std::uint64_t phi) -> void {
        out.emplace_back(m, phi);
        for (std::size_t i = idx; i < ps.size(); ++i) {
            std::uint64_t p = ps[i];
            if (phi * (p - 1) > bound) break;  // primes ascend, so no later p fits
            std::uint64_t mm = m * p, ph = phi * (p - 1);
            while (ph <= bound) {
                self(self, i + 1, mm, ph);
                if (ph > bound / p) break;
                ph *= p;
                mm *= p;
            }
        }
    };
    dfs(dfs, 0, 1, 1);
    std::sort(out.begin(), out.end());
    return out;
}

inline Int binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    Int r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= Int(n - k + i);
        r /= Int(i);  // exact at every step
    }
    return r;
}

/// binom(n, k) mod p for prime p via Lucas' congruence.
inline std::uint64_t binomial_mod_lucas(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("binomial_mod_lucas: p must be prime");
    std::uint64_t r = 1;
    while (n > 0 || k > 0) {
        std::uint64_t nd = n % p, kd = k % p;
        if (kd > nd) return 0;
        std::uint64_t b = 1;
        for (std::uint64_t i = 1; i <= kd; ++i) {
            b = detail::mulmod_u64(b, (nd - kd + i) % p, p);
            b = detail::mulmod_u64(b, detail::powmod_u64(i, p - 2, p), p);
        }
        r = detail::mulmod_u64(r, b, p);
        n /= p;
        k /= p;
    }
    return r;
}

}  // namespace necklace
