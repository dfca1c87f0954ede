#include <catch2/catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include "modvertex/fp.hpp"
#include "modvertex/poly.hpp"

using namespace modvertex;
using boost::multiprecision::cpp_int;

// Independent oracle: exact big-integer binomial with the same polynomial
// extension for negative upper argument, reduced mod p at the end.
static uint32_t binom_bigint_mod(long long b, long long a, uint32_t p) {
    if (a < 0) return 0;
    cpp_int num = 1;
    for (long long i = 0; i < a; ++i) num *= cpp_int(b - i);
    cpp_int den = 1;
    for (long long i = 1; i <= a; ++i) den *= i;
    cpp_int q = num / den;
    cpp_int r = q % p;
    if (r < 0) r += p;
    return static_cast<uint32_t>(r);
}

TEST_CASE("prime validation") {
    REQUIRE_NOTHROW(Prime(2));
    REQUIRE_NOTHROW(Prime(7919));
    REQUIRE_THROWS_AS(Prime(1), std::invalid_argument);
    REQUIRE_THROWS_AS(Prime(9), std::invalid_argument);
    REQUIRE_THROWS_AS(Prime(1000003 * 2), std::invalid_argument);
}

TEST_CASE("field arithmetic") {
    Prime p(7);
    Fp a = Fp::from_int(3, p), b = Fp::from_int(5, p);
    REQUIRE(a + b == Fp::from_int(1, p));
    REQUIRE(a - b == Fp::from_int(-2, p));
    REQUIRE(a * b == Fp::from_int(15, p));
    REQUIRE(-a == Fp::from_int(4, p));
    REQUIRE(a * a.inv() == Fp::one(p));
    REQUIRE_THROWS_AS(Fp::zero(p).inv(), std::domain_error);
    for (uint32_t v = 1; v < 7; ++v) REQUIRE(Fp(v, p) * Fp(v, p).inv() == Fp::one(p));
}

TEST_CASE("fp_pow") {
    Prime p5(5), p7(7);
    REQUIRE(fp_pow(Fp::from_int(9, p5), 0) == Fp::one(p5));
    REQUIRE(fp_pow(Fp::from_int(2, p5), 5) == Fp::from_int(2, p5));  // x^p = x
    REQUIRE(fp_pow(Fp::from_int(3, p7), 3) == Fp::from_int(6, p7));  // 27 mod 7
}

TEST_CASE("fp_binom pinned values") {
    REQUIRE(fp_binom(35, 5, Prime(3)) == Fp::from_int(2, Prime(3)));  // C(35,5)=324632
    REQUIRE(binom_bigint_mod(35, 5, 3) == 2);
    for (uint32_t pv : {2u, 3u, 5u, 7u}) {
        Prime p(pv);
        REQUIRE(fp_binom(-17, 0, p) == Fp::one(p));
        REQUIRE(fp_binom(12, 0, p) == Fp::one(p));
        for (long long k = 0; k <= 10; ++k)
            REQUIRE(fp_binom(-1, k, p) == Fp::from_int(k % 2 ? -1 : 1, p));  // C(-1,k) = (-1)^k
    }
    // C(-3,1) = C(-2,0) = 1 mod 2: the n=1, r=1 instance of the paper's reduction
    REQUIRE(fp_binom(-3, 1, Prime(2)) == Fp::one(Prime(2)));
    REQUIRE(fp_binom(-2, 0, Prime(2)) == Fp::one(Prime(2)));
}

TEST_CASE("fp_binom equals big-integer oracle") {
    for (uint32_t pv : {2u, 3u, 5u, 7u}) {
        Prime p(pv);
        for (long long b = -50; b <= 50; ++b)
            for (long long a = 0; a <= 50; ++a)
                REQUIRE(fp_binom(b, a, p).residue() == binom_bigint_mod(b, a, pv));
    }
}

TEST_CASE("fp_binom Pascal rule") {
    for (uint32_t pv : {2u, 3u, 5u, 7u}) {
        Prime p(pv);
        for (long long b = -30; b <= 30; ++b)
            for (long long a = 1; a <= 30; ++a)
                REQUIRE(fp_binom(b, a, p) == fp_binom(b - 1, a, p) + fp_binom(b - 1, a - 1, p));
    }
}

TEST_CASE("fp_binom mod-p reduction of negative upper index") {
    // C(-np-1, rp-1) = C(-n-1, r-1) and C(-m-1, rp-1) = 0 when p does not divide m
    for (uint32_t pv : {2u, 3u, 5u}) {
        Prime p(pv);
        for (long long n = -20; n <= 20; ++n)
            for (long long r = 1; r <= 5; ++r)
                REQUIRE(fp_binom(-n * pv - 1, r * pv - 1, p) == fp_binom(-n - 1, r - 1, p));
        for (long long m = -20; m <= 20; ++m) {
            if (m % pv == 0) continue;
            for (long long r = 1; r <= 5; ++r)
                REQUIRE(fp_binom(-m - 1, r * pv - 1, p).is_zero());
        }
    }
}

TEST_CASE("polynomial ring in the level parameter") {
    Prime p(3);
    FpPoly k = FpPoly::indeterminate(p);
    FpPoly frob = ring_pow(k, 3) - k;  // k^3 - k, nonzero as a polynomial
    REQUIRE(!frob.is_zero());
    REQUIRE(frob.degree() == 3);
    REQUIRE(frob.coeff(1) == Fp::from_int(-1, p));
    REQUIRE(frob.coeff(3) == Fp::one(p));
    // but evaluating at any scalar kills it: substitute k = c by arithmetic
    for (long long c = 0; c < 3; ++c) {
        Fp v = Fp::from_int(c, p);
        Fp eval = Fp::zero(p);
        for (int i = frob.degree(); i >= 0; --i) eval = eval * v + frob.coeff(i);
        REQUIRE(eval.is_zero());
    }
    REQUIRE((k + FpPoly::one(p)) * (k - FpPoly::one(p)) == ring_pow(k, 2) - FpPoly::one(p));
    REQUIRE(FpPoly::from_fp(Fp::from_int(5, p)) == FpPoly::from_int(2, p));
    REQUIRE((k - k).is_zero());
    REQUIRE(FpPoly::zero(p).degree() == -1);
}
