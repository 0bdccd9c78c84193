// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "frobenius.hpp"
#include "numtheory.hpp"

namespace necklace {

/// Prime content of the residue class value mod modulus: infinitely many
/// primes (Dirichlet), exactly one, or none. Decided analytically, never by
/// bounded search.
struct ResidueClass {
    enum class Availability { infinite, isolated, empty };

    std::uint64_t value = 0;
    std::uint64_t modulus = 1;
    Availability availability = Availability::empty;
    std::uint64_t isolated_prime = 0;  // set when availability == isolated

    static ResidueClass classify(std::uint64_t value, std::uint64_t modulus) {
        if (modulus == 0) throw std::invalid_argument("ResidueClass: modulus must be positive");
        value %= modulus;
        ResidueClass rc{value, modulus, Availability::empty, 0};
        if (modulus == 1) {
            rc.availability = Availability::infinite;  // the single class holds every prime
        } else if (value == 0) {
            if (is_prime(modulus)) {
                rc.availability = Availability::isolated;
                rc.isolated_prime = modulus;
            }
        } else if (std::gcd(value, modulus) == 1) {
            rc.availability = Availability::infinite;
        } else if (is_prime(value) && modulus % value == 0) {
            // Every element of the class is divisible by gcd(value, modulus)
            // = value, so value itself is the only prime it can contain.
            rc.availability = Availability::isolated;
            rc.isolated_prime = value;
        }
        return rc;
    }
};

/// Multiset of residue classes (mod m unsigned, mod 2m signed) whose subset
/// products cancel in the sense of the necklace-system condition. Residues
/// are kept sorted as the canonical form.
struct NecklaceSystem {
    bool signed_system = false;
    std::uint64_t m = 1;
    std::vector<std::uint64_t> residues;  // sorted; values mod m, or mod 2m when signed

    std::uint64_t class_modulus() const { return signed_system ? 2 * m : m; }

    static NecklaceSystem make(bool signed_system, std::uint64_t m,
                               std::vector<std::uint64_t> residues) {
        if (m == 0) throw std::invalid_argument("NecklaceSystem: m must be positive");
        NecklaceSystem s{signed_system, m, std::move(residues)};
        for (auto& r : s.residues) r %= s.class_modulus();
        std::sort(s.residues.begin(), s.residues.end());
        return s;
    }
};

/// Throws with the offending class when the structural invariants fail
/// (empty class present, or an isolated class repeated).
inline void validate_system_classes(const NecklaceSystem& s) {
    const std::uint64_t mod = s.class_modulus();
    for (std::size_t i = 0; i < s.residues.size(); ++i) {
        ResidueClass rc = ResidueClass::classify(s.residues[i], mod);
        if (rc.availability == ResidueClass::Availability::empty)
            throw std::invalid_argument("necklace system: class " + std::to_string(s.residues[i]) +
                                        " mod " + std::to_string(mod) + " contains no primes");
        if (rc.availability == ResidueClass::Availability::isolated && i + 1 < s.residues.size() &&
            s.residues[i + 1] == s.residues[i])
            throw std::invalid_argument("necklace system: isolated class " +
                                        std::to_string(s.residues[i]) + " mod " +
                                        std::to_string(mod) + " repeated");
    }
}

namespace detail {

// Subset-sign cancellation over an explicit residue list, without the
// structural validation. Subsets of a multiset are indexed by bitmask.
inline bool subset_products_cancel(const std::vector<std::uint64_t>& rs, bool signed_system,
                                   std::uint64_t m) {
    const std::uint64_t mod = signed_system ? 2 * m : m;
    std::vector<long long> bucket(m, 0);
    const std::size_t n = rs.size();
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        std::uint64_t prod = 1 % mod;
        int size = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) {
                prod = detail::mulmod_u64(prod, rs[i] % mod, mod);
                ++size;
            }
        if (signed_system) {
            int sgn = prod >= m ? 1 : 0;
            bucket[prod >= m ? prod - m : prod] += ((size + sgn) % 2 == 0) ? 1 : -1;
        } else {
            bucket[prod] += (size % 2 == 0) ? 1 : -1;
        }
    }
    for (long long b : bucket)
        if (b != 0) return false;
    return true;
}

}  // namespace detail

/// The defining condition of Definition "necklace system": every residue
/// class is hit by equally many even- and odd-signed subset products.
inline bool is_system(const NecklaceSystem& s) {
    validate_system_classes(s);
    if (s.residues.size() > 24)
        throw std::invalid_argument("is_system: multiset too large for subset enumeration");
    return detail::subset_products_cancel(s.residues, s.signed_system, s.m);
}

/// No proper sub-multiset is itself a system.
inline bool is_primitive(const NecklaceSystem& s) {
    if (!is_system(s)) throw std::invalid_argument("is_primitive: not a necklace system");
    const std::size_t n = s.residues.size();
    for (std::uint64_t mask = 0; mask + 1 < (1ull << n); ++mask) {
        std::vector<std::uint64_t> sub;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) sub.push_back(s.residues[i]);
        if (detail::subset_products_cancel(sub, s.signed_system, s.m)) return false;
    }
    return true;
}

/// Exhaustive enumeration of primitive systems modulo m with at most
/// max_size classes, in lexicographic order of the sorted residue lists.
inline std::vector<NecklaceSystem> search_primitive(std::uint64_t m, bool signed_system,
                                                    std::size_t max_size) {
    if (m == 0) throw std::invalid_argument("search_primitive: m must be positive");
    if (max_size == 0 || max_size > 6)
        throw std::invalid_argument("search_primitive: max_size must be in 1..6");
    const std::uint64_t mod = signed_system ? 2 * m : m;
    std::vector<std::uint64_t> classes;
    std::vector<bool> isolated;
    for (std::uint64_t v = 0; v < mod; ++v) {
        ResidueClass rc = ResidueClass::classify(v, mod);
        if (rc.availability == ResidueClass::Availability::empty) continue;
        classes.push_back(v);
        isolated.push_back(rc.availability == ResidueClass::Availability::isolated);
    }
    std::vector<NecklaceSystem> out;
    std::vector<std::uint64_t> cur;
    auto dfs = [&](auto&& self, std::size_t start) -> void {
        if (!cur.empty() && detail::subset_products_cancel(cur, signed_system, m)) {
            NecklaceSystem s{signed_system, m, cur};
            if (is_primitive(s)) out.push_back(std::move(s));
            // any extension has this proper subset as a system: not primitive
            return;
        }
        if (cur.size() == max_size) return;
        for (std::size_t i = start; i < classes.size(); ++i) {
            if (isolated[i] && !cur.empty() && cur.back() == classes[i]) continue;
            cur.push_back(classes[i]);
            self(self, i);
            cur.pop_back();
        }
    };
    dfs(dfs, 0);
    return out;
}

enum class SystemFamily { signed_pair, triple };

/// Instances of the two parametric families: the signed pair
/// {m-1, 2m-1} mod 2m, and unsigned triples {a,b,c} with a^2 = b^2 = c^2 =
/// abc = 1 mod m, none = 1. Returns the first instance in canonical order
/// that is a valid system, if any.
inline std::optional<NecklaceSystem> family_witness(std::uint64_t m, SystemFamily family) {
    if (m < 2) throw std::invalid_argument("family_witness: m must be at least 2");
    if (family == SystemFamily::signed_pair) {
        NecklaceSystem s = NecklaceSystem::make(true, m, {m - 1, 2 * m - 1});
        try {
            if (is_system(s)) return s;
        } catch (const std::invalid_argument&) {
        }
        return std::nullopt;
    }
    std::vector<std::uint64_t> roots;  // square roots of 1 mod m, excluding 1
    for (std::uint64_t a = 2; a < m; ++a)
        if (detail::mulmod_u64(a, a, m) == 1 % m) roots.push_back(a);
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            for (std::size_t k = j + 1; k < roots.size(); ++k) {
                std::uint64_t abc =
                    detail::mulmod_u64(detail::mulmod_u64(roots[i], roots[j], m), roots[k], m);
                if (abc != 1 % m) continue;
                NecklaceSystem s = NecklaceSystem::make(false, m, {roots[i], roots[j], roots[k]});
                try {
                    if (is_system(s)) return s;
                } catch (const std::invalid_argument&) {
                }
            }
    return std::nullopt;
}

/// Smallest distinct primes realizing each class of the system, the d they
/// multiply to, and the certificate that x^m -+ 1 divides S_d minimally.
struct MinimalDCertificate {
    Int d = 1;
    std::vector<std::uint64_t> primes;  // one per class, in class order
    bool divides = false;               // x^m -+ 1 | S_d
    bool minimal = false;               // and fails for every proper divisor of d
};

namespace detail {

// divides_xm generalized to a d given by its (distinct) prime multiset;
// avoids building d itself, which may exceed 64 bits.
inline bool divides_xm_primeset(const std::vector<std::uint64_t>& primes, std::uint64_t m,
                                bool signed_system) {
    std::uint64_t mod = signed_system ? 2 * m : m;
    std::vector<std::uint64_t> rs;
    rs.reserve(primes.size());
    for (std::uint64_t p : primes) rs.push_back(p % mod);
    // phi[d] reduced is exactly the signed subset-product accumulation
    return subset_products_cancel(rs, signed_system, m);
}

}  // namespace detail

inline MinimalDCertificate system_to_minimal_d(const NecklaceSystem& s,
                                               std::uint64_t prime_search_cutoff = 1000000) {
    if (!is_system(s)) throw std::invalid_argument("system_to_minimal_d: not a necklace system");
    const std::uint64_t mod = s.class_modulus();
    MinimalDCertificate cert;
    std::set<std::uint64_t> used;
    for (std::uint64_t r : s.residues) {
        std::uint64_t p = 0;
        for (std::uint64_t cand = (r == 0 ? mod : r); cand <= prime_search_cutoff; cand += mod) {
            if (used.count(cand) || !is_prime(cand)) continue;
            p = cand;
            break;
        }
        if (p == 0)
            throw std::runtime_error("system_to_minimal_d: prime search cutoff " +
                                     std::to_string(prime_search_cutoff) + " exceeded for class " +
                                     std::to_string(r) + " mod " + std::to_string(mod));
        used.insert(p);
        cert.primes.push_back(p);
        cert.d *= Int(p);
    }
    cert.divides = detail::divides_xm_primeset(cert.primes, s.m, s.signed_system);
    cert.minimal = true;
    const std::size_t n = cert.primes.size();
    for (std::uint64_t mask = 0; mask + 1 < (1ull << n) && cert.minimal; ++mask) {
        std::vector<std::uint64_t> sub;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) sub.push_back(cert.primes[i]);
        if (detail::divides_xm_primeset(sub, s.m, s.signed_system)) cert.minimal = false;
    }
    return cert;
}

}  // namespace necklace
