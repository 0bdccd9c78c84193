// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "poly.hpp"

namespace necklace {

/// Partition of d as part-size -> multiplicity.
struct Partition {
    std::map<std::uint64_t, std::uint64_t> multiplicities;

    std::uint64_t weight() const {
        std::uint64_t w = 0;
        for (const auto& [j, m] : multiplicities) w += j * m;
        return w;
    }
};

/// Every partition of d exactly once, parts listed in decreasing order of
/// the largest part first (the order is deterministic but otherwise
/// unimportant).
inline std::vector<Partition> partitions(std::uint64_t d) {
    std::vector<Partition> out;
    std::vector<std::uint64_t> parts;
    auto rec = [&](auto&& self, std::uint64_t remaining, std::uint64_t max_part) -> void {
        if (remaining == 0) {
            Partition p;
            for (std::uint64_t j : parts) ++p.multiplicities[j];
            out.push_back(std::move(p));
            return;
        }
        for (std::uint64_t j = std::min(remaining, max_part); j >= 1; --j) {
            parts.push_back(j);
            self(self, remaining - j, j);
            parts.pop_back();
        }
    };
    rec(rec, d, d == 0 ? 1 : d);
    return out;
}

// Ring glue for the templates below: Poly and Rat both support +, -, *,
// construction from Rat, and division by an integer scalar.
namespace ring {

inline Poly from_rat(const Rat& r, const Poly&) { return Poly(r); }
inline Rat from_rat(const Rat& r, const Rat&) { return r; }

inline void divide_by_int(Poly& v, std::uint64_t n) { v.scale(Rat(1, Int(n))); }
inline void divide_by_int(Rat& v, std::uint64_t n) { v /= Rat(Int(n)); }

}  // namespace ring

/// Rising-factorial binomial ((a; n)) = a(a+1)...(a+n-1)/n!, the exponent
/// rule for (1 - t)^{-a}. Works over any Q-algebra value type.
template <class R>
R multichoose(const R& a, std::uint64_t n) {
    R acc = ring::from_rat(Rat(1), a);
    for (std::uint64_t i = 0; i < n; ++i) {
        R factor = a;
        factor += ring::from_rat(Rat(Int(i)), a);
        acc = acc * factor;
        ring::divide_by_int(acc, i + 1);  // exact: the partial products are binomials
    }
    return acc;
}

/// Truncated unital power series 1 + a_1 t + ... + a_D t^D with coefficients
/// in R; the carrier for Euler-product expansion and inversion.
template <class R>
struct Series {
    std::vector<R> coeffs;  // coeffs[d] is the t^d coefficient; coeffs[0] == 1

    std::uint64_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

using PolySeries = Series<Poly>;

/// prod_{j>=1} (1/(1-t^j))^{b_j} truncated at t^D, computed literally as
/// a_d = sum_{lambda |- d} prod_j ((b_j; m_j)) with the multichoose values
/// memoized per (j, m).
template <class R>
Series<R> euler_expand(const std::vector<R>& b, std::uint64_t order) {
    const R one = ring::from_rat(Rat(1), b.empty() ? R() : b[0]);
    Series<R> a;
    a.coeffs.assign(order + 1, R());
    a.coeffs[0] = one;
    std::map<std::pair<std::uint64_t, std::uint64_t>, R> memo;
    auto mc = [&](std::uint64_t j, std::uint64_t m) -> const R& {
        auto key = std::make_pair(j, m);
        auto it = memo.find(key);
        if (it == memo.end())
            it = memo.emplace(key, j <= b.size() ? multichoose(b[j - 1], m) : R()).first;
        return it->second;
    };
    for (std::uint64_t d = 1; d <= order; ++d) {
        R acc{};
        for (const Partition& lam : partitions(d)) {
            R term = one;
            for (const auto& [j, m] : lam.multiplicities) term = term * mc(j, m);
            acc += term;
        }
        a.coeffs[d] = acc;
    }
    return a;
}

/// The unique b_1..b_D with euler_expand(b) = a, via the recursion
/// b_d = a_d - sum_{lambda |- d, lambda != (d)} b_lambda. The inner sum is
/// maintained incrementally: after multiplying the accumulator by the factor
/// (1/(1-t^j))^{b_j} for all j < d, its t^d coefficient is that sum.
template <class R>
std::vector<R> euler_invert(const Series<R>& a) {
    if (a.coeffs.empty()) throw std::invalid_argument("euler_invert: empty series");
    const std::uint64_t order = a.order();
    const R one = ring::from_rat(Rat(1), a.coeffs[0]);
    if (!(a.coeffs[0] == one)) throw std::invalid_argument("euler_invert: series must start at 1");
    std::vector<R> acc(order + 1, R{});  // running product of processed factors
    acc[0] = one;
    std::vector<R> b;
    for (std::uint64_t d = 1; d <= order; ++d) {
        R bd = a.coeffs[d];
        bd -= acc[d];
        b.push_back(bd);
        // fold (1/(1-t^d))^{b_d} = sum_m ((b_d; m)) t^{dm} into the product
        std::vector<R> factor;
        for (std::uint64_t m = 0; d * m <= order; ++m) factor.push_back(multichoose(bd, m));
        std::vector<R> next(order + 1, R{});
        for (std::uint64_t i = 0; i <= order; ++i)
            for (std::uint64_t m = 0; m < factor.size() && i + d * m <= order; ++m)
                next[i + d * m] += acc[i] * factor[m];
        acc = std::move(next);
    }
    return b;
}

}  // namespace necklace
