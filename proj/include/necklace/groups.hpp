// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frobenius.hpp"
#include "poly.hpp"

namespace necklace {

/// Element subset of a group of order <= 64, one bit per element id.
using ElementMask = std::uint64_t;
constexpr ElementMask kTrivialMask = 1;  // just the identity

/// Finite group given by its Cayley table. Element ids are 0..n-1 with the
/// identity at id 0; table[g][h] = g*h. The constructor checks the full
/// group axioms (closure, identity, inverses, associativity).
class FiniteGroup {
public:
    FiniteGroup(std::vector<std::vector<int>> table, std::string name = "")
        : table_(std::move(table)), name_(std::move(name)) {
        validate();
    }

    int order() const { return static_cast<int>(table_.size()); }
    int op(int a, int b) const { return table_[a][b]; }
    int inverse(int a) const { return inverse_[a]; }
    const std::string& name() const { return name_; }
    const std::vector<std::vector<int>>& table() const { return table_; }

    static FiniteGroup cyclic(int d) {
        require_positive(d, "cyclic");
        std::vector<std::vector<int>> t(d, std::vector<int>(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) t[i][j] = (i + j) % d;
        return FiniteGroup(std::move(t), "C" + std::to_string(d));
    }

    /// Dihedral group of the given (even) order 2d: rotations r^i and
    /// reflections r^i s, encoded as i + d*j for j in {0,1}.
    static FiniteGroup dihedral(int order) {
        if (order < 2 || order % 2 != 0)
            throw std::invalid_argument("dihedral: order must be even and positive");
        int d = order / 2;
        auto enc = [d](int i, int j) { return i + d * j; };
        std::vector<std::vector<int>> t(order, std::vector<int>(order));
        for (int i1 = 0; i1 < d; ++i1)
            for (int j1 = 0; j1 < 2; ++j1)
                for (int i2 = 0; i2 < d; ++i2)
                    for (int j2 = 0; j2 < 2; ++j2) {
                        int i = j1 == 0 ? (i1 + i2) % d : (i1 - i2 + d) % d;
                        t[enc(i1, j1)][enc(i2, j2)] = enc(i, j1 ^ j2);
                    }
        return FiniteGroup(std::move(t), "D" + std::to_string(order));
    }

    static FiniteGroup quaternion8() {
        // ids: 0..3 = 1,i,j,k and 4..7 their negatives
        static constexpr int axis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        // neg[a][b] = 1 when basis product carries a minus: i*i=j*j=k*k=-1,
        // i*k=-j, j*i=-k, k*j=-i
        static constexpr int neg[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
        std::vector<std::vector<int>> t(8, std::vector<int>(8));
        for (int a = 0; a < 8; ++a)
            for (int b = 0; b < 8; ++b) {
                int ax = axis[a % 4][b % 4];
                int sg = (a / 4) ^ (b / 4) ^ neg[a % 4][b % 4];
                t[a][b] = ax + 4 * sg;
            }
        return FiniteGroup(std::move(t), "Q8");
    }

    static FiniteGroup symmetric(int n) {
        if (n < 1 || n > 4) throw std::invalid_argument("symmetric: n must be in 1..4");
        std::vector<std::vector<int>> perms;
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        do {
            perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));  // lex order, identity first
        std::map<std::vector<int>, int> index;
        for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
        std::vector<std::vector<int>> t(perms.size(), std::vector<int>(perms.size()));
        for (std::size_t a = 0; a < perms.size(); ++a)
            for (std::size_t b = 0; b < perms.size(); ++b) {
                std::vector<int> c(n);
                for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
                t[a][b] = index[c];
            }
        return FiniteGroup(std::move(t), "S" + std::to_string(n));
    }

    static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
        int n = g.order(), m = h.order();
        std::vector<std::vector<int>> t(n * m, std::vector<int>(n * m));
        for (int a = 0; a < n * m; ++a)
            for (int b = 0; b < n * m; ++b)
                t[a][b] = g.op(a / m, b / m) * m + h.op(a % m, b % m);
        return FiniteGroup(std::move(t), g.name() + "x" + h.name());
    }

    static FiniteGroup abelian(const std::vector<int>& ds) {
        if (ds.empty()) return cyclic(1);
        FiniteGroup g = cyclic(ds[0]);
        for (std::size_t i = 1; i < ds.size(); ++i) g = direct_product(g, cyclic(ds[i]));
        return g;
    }

    /// Smallest subgroup containing the given elements.
    ElementMask generated_subgroup(ElementMask seed) const {
        std::vector<int> elems{0};
        ElementMask mask = kTrivialMask;
        for (int i = 0; i < order(); ++i)
            if (seed >> i & 1 && !(mask >> i & 1)) {
                mask |= ElementMask(1) << i;
                elems.push_back(i);
            }
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (std::size_t j = 0; j < elems.size(); ++j) {
                int c = op(elems[i], elems[j]);
                if (!(mask >> c & 1)) {
                    mask |= ElementMask(1) << c;
                    elems.push_back(c);
                }
            }
        return mask;
    }

    bool is_subgroup(ElementMask mask) const {
        if (!(mask & 1)) return false;
        return generated_subgroup(mask) == mask;
    }

    bool is_normal_in(ElementMask sub, ElementMask super) const {
        for (int g = 0; g < order(); ++g) {
            if (!(super >> g & 1)) continue;
            int gi = inverse(g);
            for (int h = 0; h < order(); ++h)
                if (sub >> h & 1 && !(sub >> op(op(g, h), gi) & 1)) return false;
        }
        return true;
    }

private:
    static void require_positive(int d, const char* who) {
        if (d < 1) throw std::invalid_argument(std::string(who) + ": order must be positive");
    }

    void validate() {
        const int n = order();
        if (n == 0 || n > 64) throw std::invalid_argument("FiniteGroup: order must be in 1..64");
        for (const auto& row : table_) {
            if (static_cast<int>(row.size()) != n)
                throw std::invalid_argument("FiniteGroup: table is not square");
            for (int v : row)
                if (v < 0 || v >= n) throw std::invalid_argument("FiniteGroup: entry out of range");
        }
        for (int g = 0; g < n; ++g)
            if (table_[0][g] != g || table_[g][0] != g)
                throw std::invalid_argument("FiniteGroup: id 0 is not the identity");
        inverse_.assign(n, -1);
        for (int g = 0; g < n; ++g) {
            for (int h = 0; h < n; ++h)
                if (table_[g][h] == 0 && table_[h][g] == 0) {
                    inverse_[g] = h;
                    break;
                }
            if (inverse_[g] < 0) throw std::invalid_argument("FiniteGroup: missing inverse");
        }
        for (int a = 0; a < n; ++a) {
            std::vector<bool> seen_row(n, false), seen_col(n, false);
            for (int b = 0; b < n; ++b) {
                if (seen_row[table_[a][b]] || seen_col[table_[b][a]])
                    throw std::invalid_argument("FiniteGroup: table is not a Latin square");
                seen_row[table_[a][b]] = seen_col[table_[b][a]] = true;
            }
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                        throw std::invalid_argument("FiniteGroup: associativity fails");
    }

    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    std::string name_;
};

/// The full subgroup poset with bottom-interval Moebius values. Subgroups
/// are found by seeding with every cyclic subgroup and closing under join;
/// every subgroup is a join of cyclic ones, so the closure is complete.
struct SubgroupLattice {
    std::vector<ElementMask> subgroups;  // sorted by (size, mask)
    std::vector<long long> mobius_bottom;  // mu(1, H) per subgroup

    std::size_t index_of(ElementMask mask) const {
        for (std::size_t i = 0; i < subgroups.size(); ++i)
            if (subgroups[i] == mask) return i;
        throw std::invalid_argument("SubgroupLattice: not a recorded subgroup");
    }
};

inline SubgroupLattice enumerate_subgroups(const FiniteGroup& g, int order_bound = 64) {
    if (g.order() > order_bound)
        throw std::invalid_argument("enumerate_subgroups: group order " +
                                    std::to_string(g.order()) + " exceeds bound " +
                                    std::to_string(order_bound));
    std::vector<ElementMask> cyclics;
    {
        std::vector<ElementMask> seen;
        for (int e = 0; e < g.order(); ++e) {
            ElementMask c = g.generated_subgroup(kTrivialMask | (ElementMask(1) << e));
            if (std::find(seen.begin(), seen.end(), c) == seen.end()) seen.push_back(c);
        }
        cyclics = std::move(seen);
    }
    std::vector<ElementMask> subs{kTrivialMask};
    for (ElementMask c : cyclics)
        if (std::find(subs.begin(), subs.end(), c) == subs.end()) subs.push_back(c);
    for (std::size_t i = 0; i < subs.size(); ++i) {
        for (ElementMask c : cyclics) {
            if ((subs[i] | c) == subs[i]) continue;
            ElementMask j = g.generated_subgroup(subs[i] | c);
            if (std::find(subs.begin(), subs.end(), j) == subs.end()) subs.push_back(j);
        }
    }
    std::sort(subs.begin(), subs.end(), [](ElementMask a, ElementMask b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    SubgroupLattice lat;
    lat.subgroups = std::move(subs);
    lat.mobius_bottom.resize(lat.subgroups.size());
    for (std::size_t i = 0; i < lat.subgroups.size(); ++i) {
        if (lat.subgroups[i] == kTrivialMask) {
            lat.mobius_bottom[i] = 1;
            continue;
        }
        long long acc = 0;  // mu(1,H) = -sum over proper subgroups of H
        for (std::size_t j = 0; j < i; ++j)
            if ((lat.subgroups[j] & lat.subgroups[i]) == lat.subgroups[j]) acc += lat.mobius_bottom[j];
        lat.mobius_bottom[i] = -acc;
    }
    return lat;
}

/// Moebius values mu(K, H) for all H in the interval [K, G].
inline std::vector<long long> mobius_from(const SubgroupLattice& lat, std::size_t k_index) {
    const ElementMask k = lat.subgroups[k_index];
    std::vector<long long> mu(lat.subgroups.size(), 0);
    for (std::size_t i = 0; i < lat.subgroups.size(); ++i) {
        ElementMask h = lat.subgroups[i];
        if ((k & h) != k) continue;  // H must contain K
        if (h == k) {
            mu[i] = 1;
            continue;
        }
        long long acc = 0;
        for (std::size_t j = 0; j < i; ++j) {
            ElementMask m = lat.subgroups[j];
            if ((k & m) == k && (m & h) == m) acc += mu[j];
        }
        mu[i] = -acc;
    }
    return mu;
}

/// S_G(x) = sum_H mu(1,H) x^{[G:H]}; M_G = S_G / |G|.
inline Poly g_necklace_S(const FiniteGroup& g, const SubgroupLattice& lat) {
    Poly s;
    for (std::size_t i = 0; i < lat.subgroups.size(); ++i)
        s.add_term(g.order() / std::popcount(lat.subgroups[i]), Rat(lat.mobius_bottom[i]));
    return s;
}

inline Poly g_necklace_S(const FiniteGroup& g) { return g_necklace_S(g, enumerate_subgroups(g)); }

inline Poly g_necklace_M(const FiniteGroup& g) {
    Poly m = g_necklace_S(g);
    m.scale(Rat(1, g.order()));
    return m;
}

/// S_{G,K}(x) = sum_{K <= H <= G} mu(K,H) x^{[G:H]}, counting colorings with
/// stabilizer exactly K.
inline Poly g_necklace_S_rel(const FiniteGroup& g, const SubgroupLattice& lat,
                             ElementMask k_mask) {
    std::size_t ki = lat.index_of(k_mask);
    std::vector<long long> mu = mobius_from(lat, ki);
    Poly s;
    for (std::size_t i = 0; i < lat.subgroups.size(); ++i) {
        if ((k_mask & lat.subgroups[i]) != k_mask) continue;
        s.add_term(g.order() / std::popcount(lat.subgroups[i]), Rat(mu[i]));
    }
    return s;
}

/// The necklace polynomial of a subgroup K viewed as a group in its own
/// right; the bottom Moebius values of G restrict to K's lattice unchanged.
inline Poly subgroup_necklace_S(const SubgroupLattice& lat, ElementMask k_mask) {
    int k_order = std::popcount(k_mask);
    Poly s;
    for (std::size_t i = 0; i < lat.subgroups.size(); ++i) {
        if ((lat.subgroups[i] & k_mask) != lat.subgroups[i]) continue;
        s.add_term(k_order / std::popcount(lat.subgroups[i]), Rat(lat.mobius_bottom[i]));
    }
    return s;
}

/// Chain K = N_0 <| N_1 <| ... <| N_{k+1} = G of subgroups, each normal in
/// the next with prime index.
struct NormalChain {
    std::vector<ElementMask> subgroups;
};

struct ChainFactorization {
    std::vector<std::uint64_t> primes;  // p_i = [N_{i+1} : N_i]
    std::vector<std::uint64_t> counts;  // c_i = #nontrivial H <= N_{i+1}, H cap N_i = 1
    FrobElt op;                         // prod ([p_i] - c_i [1])
    bool verified = false;              // op applied to S_K equals S_G exactly
};

inline void validate_chain(const FiniteGroup& g, const NormalChain& chain) {
    if (chain.subgroups.size() < 2)
        throw std::invalid_argument("chain: needs at least two subgroups");
    if (std::popcount(chain.subgroups.back()) != g.order())
        throw std::invalid_argument("chain: last subgroup must be G");
    for (std::size_t i = 0; i + 1 < chain.subgroups.size(); ++i) {
        ElementMask a = chain.subgroups[i], b = chain.subgroups[i + 1];
        std::string link = "link " + std::to_string(i);
        if (!g.is_subgroup(a) || !g.is_subgroup(b))
            throw std::invalid_argument("chain " + link + ": not a subgroup");
        if ((a & b) != a) throw std::invalid_argument("chain " + link + ": not nested");
        int index = std::popcount(b) / std::popcount(a);
        if (std::popcount(b) % std::popcount(a) != 0 || !is_prime(index))
            throw std::invalid_argument("chain " + link + ": index is not prime");
        if (!g.is_normal_in(a, b))
            throw std::invalid_argument("chain " + link + ": not normal in its successor");
    }
}

/// Computes the operator prod([p_i] - c_i[1]) of the chain and verifies the
/// factorization S_G = op(S_K) by exact polynomial comparison.
inline ChainFactorization chain_factorize(const FiniteGroup& g, const SubgroupLattice& lat,
                                          const NormalChain& chain) {
    validate_chain(g, chain);
    ChainFactorization out;
    out.op = FrobElt::identity();
    for (std::size_t i = 0; i + 1 < chain.subgroups.size(); ++i) {
        ElementMask a = chain.subgroups[i], b = chain.subgroups[i + 1];
        std::uint64_t p = std::popcount(b) / std::popcount(a);
        std::uint64_t c = 0;
        for (ElementMask h : lat.subgroups)
            if (h != kTrivialMask && (h & b) == h && (h & a) == kTrivialMask) ++c;
        out.primes.push_back(p);
        out.counts.push_back(c);
        FrobElt factor = FrobElt::symbol(p);
        factor.add_term(1, -Int(c));
        out.op *= factor;
    }
    Poly sk = subgroup_necklace_S(lat, chain.subgroups.front());
    out.verified = frob_apply(out.op, sk) == g_necklace_S(g, lat);
    return out;
}

struct MobiusChainResult {
    long long formula = 0;  // (-1)^{k+1} c_0...c_k mu(K)
    long long lattice = 0;  // mu(1, G) from the lattice recursion
    bool agree = false;
};

/// Both sides of the solvable-extension Moebius formula, computed
/// independently (chain counts vs lattice recursion).
inline MobiusChainResult mobius_via_chain(const FiniteGroup& g, const SubgroupLattice& lat,
                                          const NormalChain& chain) {
    ChainFactorization cf = chain_factorize(g, lat, chain);
    MobiusChainResult r;
    long long prod = 1;
    for (std::uint64_t c : cf.counts) prod *= static_cast<long long>(c);
    int steps = static_cast<int>(cf.counts.size());  // = k + 1
    long long mu_k = lat.mobius_bottom[lat.index_of(chain.subgroups.front())];
    r.formula = (steps % 2 == 0 ? 1 : -1) * prod * mu_k;
    r.lattice = lat.mobius_bottom.back();  // G sorts last
    r.agree = r.formula == r.lattice;
    return r;
}

/// Composition-style chain from K up to G, built by repeatedly stepping down
/// from the current group to a prime-index normal subgroup containing K.
/// Among candidates the smallest canonical mask wins; absent any candidate
/// (the group is not solvable over K) returns nullopt.
inline std::optional<NormalChain> auto_chain(const FiniteGroup& g, const SubgroupLattice& lat,
                                             ElementMask k_mask = kTrivialMask) {
    ElementMask full = lat.subgroups.back();
    std::vector<ElementMask> desc{full};
    ElementMask cur = full;
    while (cur != k_mask) {
        ElementMask best = 0;
        for (ElementMask n : lat.subgroups) {
            if (n == cur || (n & cur) != n || (k_mask & n) != k_mask) continue;
            int q = std::popcount(cur) / std::popcount(n);
            if (std::popcount(cur) % std::popcount(n) != 0 || !is_prime(q)) continue;
            if (!g.is_normal_in(n, cur)) continue;
            if (best == 0 || n < best) best = n;
        }
        if (best == 0) return std::nullopt;
        desc.push_back(best);
        cur = best;
    }
    NormalChain chain;
    chain.subgroups.assign(desc.rbegin(), desc.rend());
    return chain;
}

}  // namespace necklace
