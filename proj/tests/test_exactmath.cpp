// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <necklace/cyclotomic.hpp>
#include <necklace/numtheory.hpp>
#include <necklace/poly.hpp>

#include <numeric>
#include <random>

using namespace necklace;

namespace {

// Independent oracles: totient by unit counting, mobius by direct
// squarefree factor counting. Deliberately naive.
std::uint64_t phi_oracle(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++c;
    return c;
}

int mobius_oracle(std::uint64_t n) {
    int factors = 0;
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        ++factors;
    }
    return factors % 2 == 0 ? 1 : -1;
}

Poly random_sparse_poly(std::mt19937& rng, int max_deg, int max_terms) {
    std::uniform_int_distribution<int> nterms(1, max_terms), expo(0, max_deg), coef(-9, 9);
    Poly p;
    for (int i = nterms(rng); i > 0; --i) p.add_term(expo(rng), Rat(coef(rng)));
    return p;
}

}  // namespace

TEST_CASE("mobius") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(6) == 1);
    CHECK(mobius(12) == 0);
    CHECK_THROWS_AS(mobius(0), std::invalid_argument);
    for (std::uint64_t n = 1; n <= 300; ++n) CHECK(mobius(n) == mobius_oracle(n));
}

TEST_CASE("euler_phi") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(10) == 4);
    CHECK(euler_phi(105) == 48);
    CHECK_THROWS_AS(euler_phi(0), std::invalid_argument);
    for (std::uint64_t n = 1; n <= 300; ++n) CHECK(euler_phi(n) == phi_oracle(n));
}

TEST_CASE("factorize and divisors") {
    Factorization f = factorize(1247290);
    Factorization expected{{2, 1}, {5, 1}, {11, 1}, {17, 1}, {23, 1}, {29, 1}};
    CHECK(f == expected);
    CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
    CHECK(squarefree_part(360) == 30);
    CHECK(is_squarefree(105));
    CHECK_FALSE(is_squarefree(99));
}

TEST_CASE("is_prime vs trial division") {
    for (std::uint64_t n = 0; n <= 2000; ++n) {
        bool naive = n >= 2;
        for (std::uint64_t p = 2; p * p <= n; ++p)
            if (n % p == 0) naive = false;
        CHECK(is_prime(n) == naive);
    }
    CHECK(is_prime(6061 == 11 * 19 * 29 ? 6067 : 0));  // 6067 is prime
    CHECK_FALSE(is_prime(6061));
}

TEST_CASE("phi_bounded enumerates exactly the m with phi(m) <= bound") {
    for (std::uint64_t bound : {1ull, 6ull, 24ull, 48ull}) {
        auto got = phi_bounded(bound);
        std::vector<std::pair<std::uint64_t, std::uint64_t>> expect;
        for (std::uint64_t m = 1; m <= 2 * bound * bound + 1; ++m)
            if (euler_phi(m) <= bound) expect.emplace_back(m, euler_phi(m));
        CHECK(got == expect);
    }
}

TEST_CASE("poly arithmetic basics") {
    Poly x = Poly::x();
    Poly f = (x - Poly::one()) * (x + Poly::one());
    CHECK(f == Poly{{2, 1}, {0, -1}});
    CHECK(f.degree() == 2);
    CHECK(Poly::zero().degree() == Poly::kZeroDegree);

    auto [q, r] = poly_divrem(Poly{{3, 1}, {0, -1}}, x - Poly::one());
    CHECK(q == Poly{{2, 1}, {1, 1}, {0, 1}});
    CHECK(r.is_zero());

    // x^3 + 1 divides S_10
    Poly s10{{10, 1}, {5, -1}, {2, -1}, {1, 1}};
    CHECK(poly_divrem(s10, Poly{{3, 1}, {0, 1}}).remainder.is_zero());

    CHECK_THROWS_AS(poly_divrem(x, Poly::zero()), std::invalid_argument);
}

TEST_CASE("divrem roundtrip on random sparse polynomials") {
    std::mt19937 rng(20260810);
    for (int iter = 0; iter < 200; ++iter) {
        Poly f = random_sparse_poly(rng, 40, 8);
        Poly g = random_sparse_poly(rng, 12, 4);
        if (g.is_zero()) continue;
        auto [q, r] = poly_divrem(f, g);
        CHECK(q * g + r == f);
        CHECK(r.degree() < g.degree());
    }
}

TEST_CASE("evaluate and derivative") {
    Poly f{{5, Rat(1, 2)}, {1, -3}, {0, 7}};
    CHECK(f.evaluate(2) == Rat(1, 2) * 32 - 6 + 7);
    CHECK(f.derivative() == Poly{{4, Rat(5, 2)}, {0, -3}});
    Poly s{{1247290, 1}, {1, -1}};
    CHECK(s.evaluate(1) == 0);
    CHECK(s.evaluate(-1) == 2);  // even top exponent
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic(1) == Poly{{1, 1}, {0, -1}});
    CHECK(cyclotomic(6) == Poly{{2, 1}, {1, -1}, {0, 1}});
    CHECK(cyclotomic(8) == Poly{{4, 1}, {0, 1}});
    CHECK_THROWS_AS(cyclotomic(0), std::invalid_argument);
    for (std::uint64_t m : {1, 2, 12, 30, 105, 128}) {
        const Poly& cm = cyclotomic(m);
        CHECK(cm.degree() == static_cast<long long>(euler_phi(m)));
        CHECK(cm.leading_coeff() == 1);
        CHECK(cm.has_integer_coeffs());
    }
}

TEST_CASE("product of cyclotomics over divisors is x^m - 1 (m <= 200)") {
    for (std::uint64_t m = 1; m <= 200; ++m) {
        Poly prod = Poly::one();
        for (std::uint64_t n : divisors(m)) prod *= cyclotomic(n);
        CHECK(prod == xm_minus_one(m));
    }
}

TEST_CASE("product of cyclotomics n | 2m, n !| m is x^m + 1 (m <= 100)") {
    for (std::uint64_t m = 1; m <= 100; ++m) {
        Poly prod = Poly::one();
        for (std::uint64_t n : divisors(2 * m)) {
            if (m % n == 0) continue;
            prod *= cyclotomic(n);
        }
        CHECK(prod == xm_plus_one(m));
    }
}

TEST_CASE("reduce_mod_xm examples") {
    CHECK(Poly{{10, 1}, {7, -1}}.reduce_mod_xm(3, XmSign::minus).is_zero());
    CHECK(Poly{{6, 1}, {0, 1}}.reduce_mod_xm(2, XmSign::plus).is_zero());
    Poly s15{{15, 1}, {5, -1}, {3, -1}, {1, 1}};
    CHECK(s15.reduce_mod_xm(8, XmSign::minus) == Poly{{7, 1}, {5, -1}, {3, -1}, {1, 1}});
}

TEST_CASE("fold agrees with generic division by x^m - 1") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 100; ++iter) {
        Poly f = random_sparse_poly(rng, 200, 10);
        std::uniform_int_distribution<std::uint64_t> md(1, 50);
        std::uint64_t m = md(rng);
        CHECK(f.reduce_mod_xm(m, XmSign::minus) == poly_divrem(f, xm_minus_one(m)).remainder);
        CHECK(f.reduce_mod_xm(m, XmSign::plus) == poly_divrem(f, xm_plus_one(m)).remainder);
    }
}

TEST_CASE("rational string round trip") {
    CHECK(rat_to_string(Rat(-7, 3)) == "-7/3");
    CHECK(rat_from_string("-7/3") == Rat(-7, 3));
    CHECK(rat_from_string("42") == Rat(42));
    CHECK(rat_to_string(rat_from_string("123456789012345678901234567890")) ==
          "123456789012345678901234567890");
    CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
}

TEST_CASE("binomial") {
    CHECK(binomial(19, 13) == 27132);
    CHECK(binomial(5, 7) == 0);
    CHECK(binomial(121 + 4, 121) == binomial(125, 4));
    for (std::uint64_t n = 0; n <= 12; ++n)
        for (std::uint64_t k = 0; k <= n; ++k) {
            Int lhs = binomial(n, k);
            // Pascal oracle
            Int rhs = (k == 0 || k == n) ? Int(1) : binomial(n - 1, k - 1) + binomial(n - 1, k);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("lucas congruence matches exact binomials") {
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
        for (std::uint64_t n = 0; n <= 60; ++n)
            for (std::uint64_t k = 0; k <= n; ++k)
                CHECK(Int(binomial_mod_lucas(n, k, p)) == binomial(n, k) % Int(p));
    }
}
