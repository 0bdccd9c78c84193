// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <necklace/cyclotomic.hpp>
#include <necklace/frobenius.hpp>

#include <random>

using namespace necklace;

namespace {

FrobElt random_frob(std::mt19937& rng, int max_index, int max_terms) {
    std::uniform_int_distribution<int> nterms(1, max_terms), idx(0, max_index), coef(-5, 5);
    FrobElt a;
    for (int i = nterms(rng); i > 0; --i) a.add_term(idx(rng), coef(rng));
    return a;
}

Poly random_int_poly(std::mt19937& rng, int max_deg, int max_terms) {
    std::uniform_int_distribution<int> nterms(1, max_terms), expo(0, max_deg), coef(-5, 5);
    Poly p;
    for (int i = nterms(rng); i > 0; --i) p.add_term(expo(rng), Rat(coef(rng)));
    return p;
}

}  // namespace

TEST_CASE("frob_of_poly") {
    CHECK(frob_of_poly(Poly::x()) == FrobElt::symbol(1));
    Poly s10{{10, 1}, {5, -1}, {2, -1}, {1, 1}};
    FrobElt expect;
    expect.add_term(10, 1);
    expect.add_term(5, -1);
    expect.add_term(2, -1);
    expect.add_term(1, 1);
    CHECK(frob_of_poly(s10) == expect);

    FrobElt alpha;  // 3[2] + 5[7]
    alpha.add_term(2, 3);
    alpha.add_term(7, 5);
    CHECK(frob_of_poly(Poly{{2, 3}, {7, 5}}) == alpha);

    CHECK_THROWS_AS(frob_of_poly(Poly{{1, Rat(1, 2)}}), std::invalid_argument);
}

TEST_CASE("frob_apply") {
    CHECK(frob_apply(FrobElt::symbol(2), Poly{{1, 1}, {0, 1}}) == Poly{{2, 1}, {0, 1}});

    FrobElt alpha;  // 3[2] + 5[7]
    alpha.add_term(2, 3);
    alpha.add_term(7, 5);
    Poly f{{3, 2}, {1, -1}};
    Poly expect = Rat(3) * f.compose_power(2) + Rat(5) * f.compose_power(7);
    CHECK(frob_apply(alpha, f) == expect);

    // phi[253] f = f(x^253) - f(x^23) - f(x^11) + f(x)
    Poly g{{4, 1}, {2, -2}, {0, 3}};
    Poly expect2 = g.compose_power(253) - g.compose_power(23) - g.compose_power(11) + g;
    CHECK(frob_apply(phi_op(253), g) == expect2);

    // [0] is not the zero operator: it evaluates at 1
    Poly h{{3, 4}, {0, 2}};
    CHECK(frob_apply(FrobElt::symbol(0), h) == Poly(Rat(6)));
}

TEST_CASE("apply is inverse to frob_of_poly on x") {
    std::mt19937 rng(11);
    for (int i = 0; i < 50; ++i) {
        Poly f = random_int_poly(rng, 30, 8);
        CHECK(frob_apply(frob_of_poly(f), Poly::x()) == f);
    }
}

TEST_CASE("phi_op") {
    CHECK(phi_op(1) == FrobElt::identity());
    FrobElt e10;  // ([2]-[1])([5]-[1])
    e10.add_term(10, 1);
    e10.add_term(5, -1);
    e10.add_term(2, -1);
    e10.add_term(1, 1);
    CHECK(phi_op(10) == e10);
    FrobElt e12;  // ([4]-[2])([3]-[1])
    e12.add_term(12, 1);
    e12.add_term(6, -1);
    e12.add_term(4, -1);
    e12.add_term(2, 1);
    CHECK(phi_op(12) == e12);
    CHECK_THROWS_AS(phi_op(0), std::invalid_argument);

    // mu-sum form cross-check
    for (std::uint64_t d = 1; d <= 300; ++d) {
        FrobElt mu_sum;
        for (std::uint64_t e : divisors(d)) mu_sum.add_term(d / e, mobius(e));
        CHECK(phi_op(d) == mu_sum);
    }
}

TEST_CASE("reduction examples") {
    FrobElt a;  // [10] - [7]
    a.add_term(10, 1);
    a.add_term(7, -1);
    CHECK(reduce(a, 3).is_zero());

    FrobElt b;  // [2] + [0]
    b.add_term(2, 1);
    b.add_term(0, 1);
    CHECK(reduce_signed(b, 2).is_zero());

    CHECK_FALSE(reduce(phi_op(15), 8).is_zero());
}

TEST_CASE("homomorphism: (ab)f = a(bf)") {
    std::mt19937 rng(13);
    for (int i = 0; i < 50; ++i) {
        FrobElt a = random_frob(rng, 9, 4), b = random_frob(rng, 9, 4);
        Poly f = random_int_poly(rng, 10, 5);
        CHECK(frob_apply(a * b, f) == frob_apply(a, frob_apply(b, f)));
    }
}

TEST_CASE("reduction lemma (1): alpha = 0 mod [m] forces x^m - 1 | alpha f") {
    std::mt19937 rng(17);
    int tested = 0;
    for (int i = 0; i < 400 && tested < 8; ++i) {
        FrobElt a = random_frob(rng, 20, 4);
        std::uniform_int_distribution<std::uint64_t> md(1, 8);
        std::uint64_t m = md(rng);
        // make it vanish mod [m] by subtracting the folded residues
        FrobElt fixed = a;
        PsiModM red = reduce(a, m);
        for (std::uint64_t r = 0; r < m; ++r) fixed.add_term(r, -red.coeffs[r]);
        REQUIRE(reduce(fixed, m).is_zero());
        if (fixed.is_zero()) continue;
        ++tested;
        for (int t = 0; t < 50; ++t) {
            Poly f = random_int_poly(rng, 12, 5);
            CHECK(frob_apply(fixed, f).reduce_mod_xm(m, XmSign::minus).is_zero());
        }
    }
    CHECK(tested == 8);
}

TEST_CASE("reduction lemma (2): signed vanishing and odd polynomials") {
    std::mt19937 rng(19);
    std::uniform_int_distribution<std::uint64_t> md(1, 6);
    int tested = 0;
    for (int i = 0; i < 400 && tested < 8; ++i) {
        std::uint64_t m = md(rng);
        // random element supported on odd indices, folded to zero mod [m]_+-
        FrobElt a;
        std::uniform_int_distribution<int> idx(0, 10), coef(-4, 4);
        for (int t = 0; t < 4; ++t) a.add_term(2 * idx(rng) + 1, coef(rng));
        PsiModMSigned red = reduce_signed(a, m);
        FrobElt fixed = a;
        for (std::uint64_t r = 0; r < m; ++r) {
            // cancel residue r with the odd index r or r + m, whichever is odd
            std::uint64_t k = r % 2 == 1 ? r : r + m;
            if (k % 2 == 0) continue;
            Int c = red.coeffs[r];
            if (k % (2 * m) >= m) {
                fixed.add_term(k, c);
            } else {
                fixed.add_term(k, -c);
            }
        }
        PsiModMSigned check = reduce_signed(fixed, m);
        if (!check.is_zero() || fixed.is_zero()) continue;
        bool odd_support = true;
        for (const auto& [k, c] : fixed.terms()) odd_support &= (k % 2 == 1);
        if (!odd_support) continue;
        ++tested;
        for (int t = 0; t < 30; ++t) {
            // random odd polynomial
            Poly f;
            std::uniform_int_distribution<int> expo(0, 6), fcoef(-5, 5);
            for (int u = 0; u < 4; ++u) f.add_term(2 * expo(rng) + 1, Rat(fcoef(rng)));
            CHECK(frob_apply(fixed, f).reduce_mod_xm(m, XmSign::plus).is_zero());
        }
    }
    CHECK(tested >= 4);

    // The counterexample from the definition: alpha = [2] + [0] kills mod
    // [2]_+- but x^2 (even) escapes, x^3 (odd) does not.
    FrobElt b;
    b.add_term(2, 1);
    b.add_term(0, 1);
    CHECK_FALSE(frob_apply(b, Poly{{2, 1}}).reduce_mod_xm(2, XmSign::plus).is_zero());
    CHECK(frob_apply(b, Poly{{3, 1}}).reduce_mod_xm(2, XmSign::plus).is_zero());
}

TEST_CASE("degree map sends phi[d] to phi(d)") {
    for (std::uint64_t d = 1; d <= 2000; ++d) {
        Int total = 0;
        FrobElt op = phi_op(d);
        for (const auto& [k, c] : op.terms()) total += c * Int(k);
        CHECK(total == Int(euler_phi(d)));
    }
}

TEST_CASE("symbol index overflow is caught") {
    FrobElt big = FrobElt::symbol(1ull << 63);
    CHECK_THROWS_AS(big * big, std::overflow_error);
}
