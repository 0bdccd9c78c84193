// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "frobenius.hpp"
#include "numtheory.hpp"
#include "poly.hpp"

namespace necklace {

/// S_d(x) = d*M_d(x) = sum_{e|d} mu(e) x^{d/e}, the d-th cyclic polynomial.
inline Poly necklace_S(std::uint64_t d) {
    if (d == 0) throw std::invalid_argument("necklace_S: d must be positive");
    Poly s;
    for (std::uint64_t e : divisors(d)) {
        int mob = mobius(e);
        if (mob != 0) s.add_term(static_cast<long long>(d / e), mob);
    }
    return s;
}

inline Poly necklace_M(std::uint64_t d) {
    Poly m = necklace_S(d);
    m.scale(Rat(1, Int(d)));
    return m;
}

/// Whether x^m - 1 (sign = minus) or x^m + 1 (sign = plus) divides S_d(x).
/// Decided in the Frobenius algebra: the reduction of phi[d] in Psi[m] or
/// Psi[m]_+- is the folded coefficient vector of S_d, so vanishing there is
/// equivalent to the divisibility.
inline bool divides_xm(std::uint64_t d, std::uint64_t m, XmSign sign) {
    if (d == 0 || m == 0) throw std::invalid_argument("divides_xm: arguments must be positive");
    FrobElt op = phi_op(d);
    if (sign == XmSign::minus) return reduce(op, m).is_zero();
    return reduce_signed(op, m).is_zero();
}

struct CycloFactorReport {
    std::uint64_t d = 0;  // 0 when the target is not an S_d
    std::vector<std::uint64_t> factor_ms;
    std::vector<std::uint64_t> xm_minus;
    std::vector<std::uint64_t> xm_plus;
    long long cofactor_degree = 0;
    bool has_x_factor = false;
};

/// All m with phi(m) <= deg f such that Phi_m | f (multiplicity ignored),
/// plus the x^m -+ 1 divisors implied by divisor-set closure and the degree
/// of what is left over.
inline CycloFactorReport cyclotomic_factors(const Poly& f, std::uint64_t d_label = 0) {
    if (f.is_zero()) throw std::invalid_argument("cyclotomic_factors: zero polynomial");
    CycloFactorReport rep;
    rep.d = d_label;
    rep.has_x_factor = f.trailing_exponent() >= 1;
    const std::uint64_t bound = static_cast<std::uint64_t>(f.degree());
    std::uint64_t phi_sum = 0;
    std::set<std::uint64_t> found;
    for (const auto& [m, phi] : phi_bounded(bound)) {
        if (cyclotomic_divides(f, m)) {
            rep.factor_ms.push_back(m);
            found.insert(m);
            phi_sum += phi;
        }
    }
    rep.cofactor_degree = f.degree() - static_cast<long long>(phi_sum) - (rep.has_x_factor ? 1 : 0);
    // x^m - 1 = prod_{n|m} Phi_n and x^m + 1 = prod_{n|2m, n∤m} Phi_n are
    // squarefree, so dividing f is equivalent to all their cyclotomic parts
    // appearing in factor_ms.
    for (std::uint64_t m : rep.factor_ms) {
        bool all = true;
        for (std::uint64_t n : divisors(m))
            if (!found.count(n)) { all = false; break; }
        if (all) rep.xm_minus.push_back(m);
    }
    for (std::uint64_t v : rep.factor_ms) {
        if (v % 2 != 0) continue;
        std::uint64_t m = v / 2;
        bool all = true;
        for (std::uint64_t n : divisors(2 * m)) {
            if (m % n == 0) continue;
            if (!found.count(n)) { all = false; break; }
        }
        if (all) rep.xm_plus.push_back(m);
    }
    return rep;
}

/// d and e are primewise congruent mod m: their prime factorizations match
/// under a bijection preserving exponents with p_i = q_i mod m.
inline bool primewise_congruent(std::uint64_t d, std::uint64_t e, std::uint64_t m) {
    if (d == 0 || e == 0 || m == 0)
        throw std::invalid_argument("primewise_congruent: arguments must be positive");
    auto signature = [m](std::uint64_t n) {
        std::vector<std::pair<int, std::uint64_t>> sig;
        for (const auto& [p, k] : factorize(n)) sig.emplace_back(k, p % m);
        std::sort(sig.begin(), sig.end());
        return sig;
    };
    return signature(d) == signature(e);
}

enum class CheckStatus { holds, fails, hypothesis_not_met };

/// S_d = S_e mod x^m -+ 1, under the primewise-congruence hypothesis
/// (mod m for the minus sign, mod 2m for plus).
inline CheckStatus primewise_difference_check(std::uint64_t d, std::uint64_t e, std::uint64_t m,
                                              XmSign sign) {
    std::uint64_t mod = sign == XmSign::minus ? m : 2 * m;
    if (!primewise_congruent(d, e, mod)) return CheckStatus::hypothesis_not_met;
    Poly diff = necklace_S(d) - necklace_S(e);
    return diff.reduce_mod_xm(m, sign).is_zero() ? CheckStatus::holds : CheckStatus::fails;
}

/// Tr_m(M_d(zeta_m)), computed exactly: reduce S_d mod Phi_m, sum the Galois
/// conjugates x -> x^a over a coprime to m, reduce once more. The result is
/// Galois-invariant, hence a rational constant.
inline Rat trace_M_at_zeta(std::uint64_t d, std::uint64_t m) {
    if (d == 0 || m == 0) throw std::invalid_argument("trace_M_at_zeta: arguments must be positive");
    const Poly& phi_m = cyclotomic(m);
    Poly r = poly_divrem(necklace_S(d).reduce_mod_xm(m, XmSign::minus), phi_m).remainder;
    Poly total;
    for (std::uint64_t a = 1; a <= m; ++a) {
        if (std::gcd(a, m) != 1) continue;
        total += r.compose_power(static_cast<long long>(a)).reduce_mod_xm(m, XmSign::minus);
    }
    Poly c = poly_divrem(total, phi_m).remainder;
    if (c.degree() > 0) throw std::logic_error("trace_M_at_zeta: conjugate sum is not rational");
    return c.coeff(0) / Rat(Int(d));
}

/// (M_d(1), M_d(-1)).
inline std::pair<Rat, Rat> eval_pm_one(std::uint64_t d) {
    Poly m = necklace_M(d);
    return {m.evaluate(1), m.evaluate(-1)};
}

/// M'_d(1); equals phi(d)/d.
inline Rat derivative_at_one(std::uint64_t d) {
    return necklace_M(d).derivative().evaluate(1);
}

/// The Metropolis-Rota functional equation: S_{dp} = S_d(x^p) - S_d(x) when
/// p does not divide d, S_{dp} = S_d(x^p) when it does.
inline bool functional_check(std::uint64_t d, std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("functional_check: p must be prime");
    Poly sd = necklace_S(d);
    Poly lhs = necklace_S(d * p);
    Poly rhs = sd.compose_power(static_cast<long long>(p));
    if (d % p != 0) rhs -= sd;
    return lhs == rhs;
}

/// Whether ell^j divides every coefficient of S_d mod x^m - 1.
inline bool local_factor_check(std::uint64_t d, std::uint64_t m, std::uint64_t ell, unsigned j) {
    if (d == 0 || m == 0 || j == 0)
        throw std::invalid_argument("local_factor_check: arguments must be positive");
    if (!is_prime(ell)) throw std::invalid_argument("local_factor_check: ell must be prime");
    Int lj = 1;
    for (unsigned i = 0; i < j; ++i) lj *= Int(ell);
    Poly reduced = necklace_S(d).reduce_mod_xm(m, XmSign::minus);
    for (const auto& [e, c] : reduced.terms()) {
        if (numerator(c) % lj != 0) return false;
    }
    return true;
}

/// (x^m - 1)/(x - 1) divides Phi_d(x) - 1, under the hypotheses m,d > 1,
/// m does not divide d, and x^m - 1 | M_d.
inline CheckStatus phi_minus_one_divisibility(std::uint64_t m, std::uint64_t d) {
    if (m <= 1 || d <= 1) return CheckStatus::hypothesis_not_met;
    if (d % m == 0) return CheckStatus::hypothesis_not_met;
    if (!divides_xm(d, m, XmSign::minus)) return CheckStatus::hypothesis_not_met;
    Poly target = cyclotomic(d);
    target.add_term(0, -1);
    return divides(qint(m), target) ? CheckStatus::holds : CheckStatus::fails;
}

// ---------------------------------------------------------------------------
// Conjecture harness: every cyclotomic factor of M_d comes from x^m - 1, or
// from x^{m/2} + 1 when m is even.

namespace detail {

template <class F>
void parallel_for_u64(std::uint64_t lo, std::uint64_t hi, unsigned jobs, F&& body) {
    if (hi <= lo) return;
    if (jobs <= 1 || hi - lo == 1) {
        for (std::uint64_t i = lo; i < hi; ++i) body(i);
        return;
    }
    std::atomic<std::uint64_t> next{lo};
    auto worker = [&] {
        for (;;) {
            std::uint64_t i = next.fetch_add(1);
            if (i >= hi) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

}  // namespace detail

/// Incremental, checkpointable scan over d = 1..d_max. Squarefree d are
/// scanned directly; other d reuse their squarefree part via the induced
/// factor map of S_d(x) = S_c(x^{d/c}). Results are independent of the job
/// count: work items land in preassigned slots and are merged in order.
class ConjectureScan {
public:
    ConjectureScan(std::uint64_t m_max, std::uint64_t d_max)
        : m_max_(m_max), d_max_(d_max) {
        if (m_max == 0 || d_max == 0)
            throw std::invalid_argument("ConjectureScan: bounds must be positive");
        for (std::uint64_t m = 1; m <= m_max; ++m) phi_.push_back(euler_phi(m));
    }

    std::uint64_t m_max() const { return m_max_; }
    std::uint64_t d_max() const { return d_max_; }
    std::uint64_t next_d() const { return next_d_; }
    bool done() const { return next_d_ > d_max_; }

    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& counterexamples() const {
        return counterexamples_;
    }
    const std::map<std::uint64_t, std::vector<std::uint64_t>>& squarefree_factors() const {
        return sqfree_factors_;
    }

    /// Restores state persisted by a checkpoint.
    void restore(std::uint64_t next_d,
                 std::map<std::uint64_t, std::vector<std::uint64_t>> sqfree_factors,
                 std::vector<std::pair<std::uint64_t, std::uint64_t>> counterexamples) {
        next_d_ = next_d;
        sqfree_factors_ = std::move(sqfree_factors);
        counterexamples_ = std::move(counterexamples);
    }

    /// Processes d in [next_d, min(d_hi, d_max + 1)).
    void advance_to(std::uint64_t d_hi, unsigned jobs = 1) {
        d_hi = std::min(d_hi, d_max_ + 1);
        if (d_hi <= next_d_) return;
        const std::uint64_t lo = next_d_, n = d_hi - lo;
        struct Slot {
            bool squarefree = false;
            std::vector<std::uint64_t> factors;
            std::vector<std::pair<std::uint64_t, std::uint64_t>> ces;
        };
        std::vector<Slot> slots(n);
        // Pass 1: squarefree d. Their factor lists feed the lifted pass.
        detail::parallel_for_u64(lo, d_hi, jobs, [&](std::uint64_t d) {
            if (!is_squarefree(d)) return;
            Slot& s = slots[d - lo];
            s.squarefree = true;
            scan_squarefree(d, s.factors, s.ces);
        });
        for (std::uint64_t d = lo; d < d_hi; ++d)
            if (slots[d - lo].squarefree) sqfree_factors_[d] = slots[d - lo].factors;
        // Pass 2: remaining d via induced factors of S_c(x^{d/c}).
        detail::parallel_for_u64(lo, d_hi, jobs, [&](std::uint64_t d) {
            if (slots[d - lo].squarefree) return;
            scan_lifted(d, slots[d - lo].ces);
        });
        for (std::uint64_t d = lo; d < d_hi; ++d)
            for (const auto& ce : slots[d - lo].ces) counterexamples_.push_back(ce);
        next_d_ = d_hi;
    }

private:
    bool disjunction_holds(std::uint64_t d, std::uint64_t m) const {
        if (divides_xm(d, m, XmSign::minus)) return true;
        return m % 2 == 0 && divides_xm(d, m / 2, XmSign::plus);
    }

    void scan_squarefree(std::uint64_t d, std::vector<std::uint64_t>& factors,
                         std::vector<std::pair<std::uint64_t, std::uint64_t>>& ces) const {
        Poly sd = necklace_S(d);
        for (std::uint64_t m = 1; m <= m_max_; ++m) {
            if (phi_[m - 1] > d) continue;
            if (!cyclotomic_divides_divrem(sd, m)) continue;
            factors.push_back(m);
            if (!disjunction_holds(d, m)) ces.emplace_back(m, d);
        }
    }

    void scan_lifted(std::uint64_t d,
                     std::vector<std::pair<std::uint64_t, std::uint64_t>>& ces) const {
        const std::uint64_t c = squarefree_part(d), e = d / c;
        auto it = sqfree_factors_.find(c);
        if (it == sqfree_factors_.end())
            throw std::logic_error("ConjectureScan: missing squarefree factor list");
        std::set<std::uint64_t> induced;
        for (std::uint64_t n : it->second) {
            // Every root of Phi_n(x^e) is an (ne)-th root of unity, so any
            // induced Phi_m has m | ne; resolve each candidate by exact
            // division.
            Poly lifted = cyclotomic(n).compose_power(static_cast<long long>(e));
            for (std::uint64_t m : divisors(n * e)) {
                if (m > m_max_ || phi_[m - 1] > d || induced.count(m)) continue;
                if (cyclotomic_divides_divrem(lifted, m)) induced.insert(m);
            }
        }
        for (std::uint64_t m : induced)
            if (!disjunction_holds(d, m)) ces.emplace_back(m, d);
    }

    std::uint64_t m_max_, d_max_;
    std::uint64_t next_d_ = 1;
    std::vector<std::uint64_t> phi_;
    std::map<std::uint64_t, std::vector<std::uint64_t>> sqfree_factors_;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> counterexamples_;
};

/// Counterexamples (m, d) to the cyclotomic-factor disjunction over the
/// whole range; empty means verified.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> verify_conjecture(
    std::uint64_t m_max, std::uint64_t d_max, unsigned jobs = 1) {
    ConjectureScan scan(m_max, d_max);
    scan.advance_to(d_max + 1, jobs);
    return scan.counterexamples();
}

}  // namespace necklace
