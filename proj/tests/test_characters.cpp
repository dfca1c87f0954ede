#include <catch2/catch_amalgamated.hpp>

#include "modvertex/charseries.hpp"
#include "modvertex/pcenter.hpp"

using namespace modvertex;

TEST_CASE("affine positive real roots") {
    auto lie = sl2();
    auto r0 = affine_positive_real_roots(lie, 0);
    REQUIRE(r0.size() == 1);  // just alpha
    REQUIRE(r0[0] == AffineWeight{{1}, 0});
    auto r1 = affine_positive_real_roots(lie, 1);
    REQUIRE(r1.size() == 3);  // alpha, alpha + delta, -alpha + delta
    for (int N : {2, 5, 8}) REQUIRE(affine_positive_real_roots(lie, N).size() == 2 * static_cast<size_t>(N) + 1);
}

TEST_CASE("Mathieu product: pinned coefficients") {
    auto lie = sl2();
    auto s = mathieu_product(lie, Prime(2), 1, default_alpha_cap(1));
    // delta-degree 0: 1 at weight 0 and 1 at weight -alpha
    REQUIRE(s.coeff({{0}, 0}) == 1);
    REQUIRE(s.coeff({{-1}, 0}) == 1);
    REQUIRE(s.coeff({{-2}, 0}) == 0);
    REQUIRE(s.coeff({{1}, 0}) == 0);
    // delta-degree 1: one each at alpha - delta, -delta, -alpha - delta (x2 keys)
    REQUIRE(s.coeff({{1}, 1}) == 1);
    REQUIRE(s.coeff({{0}, 1}) == 1);
    REQUIRE(s.coeff({{-1}, 1}) == 1);
    REQUIRE(s.coeff({{-2}, 1}) == 1);
    // highest-weight normalization for all primes
    for (uint32_t pv : {2u, 3u, 5u})
        REQUIRE(mathieu_product(lie, Prime(pv), 3, default_alpha_cap(3)).coeff({{0}, 0}) == 1);
}

TEST_CASE("series identity: Mathieu = Verma denominator x Steinberg factor") {
    auto lie = sl2();
    const int N = 10;
    const int cap = default_alpha_cap(N);
    for (uint32_t pv : {2u, 3u, 5u}) {
        Prime p(pv);
        auto lhs = mathieu_product(lie, p, N, cap);
        auto rhs = verma_denominator(lie, N, cap) * steinberg_factor(lie, p, N, cap);
        std::string w;
        bool ok = lhs.equal_on_box(rhs, 2 * N, N, &w);
        CAPTURE(pv, w);
        REQUIRE(ok);
        // the Mathieu side is untruncated inside the comparison box
        REQUIRE(lhs.support_within(N + static_cast<int>(pv)));
    }
    REQUIRE(verma_denominator(lie, N, cap).coeff({{0}, 0}) == 1);
}

TEST_CASE("Fock characters") {
    auto lie = sl2();
    Prime p2(2);
    const int cap = default_alpha_cap(4);
    // uncapped M at depth 0: powers of a*_0, one per weight -k alpha
    auto M = ModuleSpec<Fp>::weyl(lie, p2);
    auto cm = fock_character(lie, M.enumerate_basis(0, std::nullopt, cap), 0, cap);
    for (int k = 0; k <= cap; ++k) REQUIRE(cm.coeff({{-k}, 0}) == 1);
    // capped M at depth 0, p = 2: 1 + e^{-alpha}
    RestrictedQuotient<Fp> M0(M, PCharacter::zero());
    auto c0 = fock_character(lie, M0.basis(0), 0, cap);
    REQUIRE(c0.coeff({{0}, 0}) == 1);
    REQUIRE(c0.coeff({{-1}, 0}) == 1);
    REQUIRE(c0.coeff({{-2}, 0}) == 0);
}

TEST_CASE("capped Fock character equals the Mathieu product") {
    auto lie = sl2();
    const int N = 5;
    const int cap = default_alpha_cap(N);
    for (uint32_t pv : {2u, 3u, 5u}) {
        Prime p(pv);
        RestrictedQuotient<Fp> M0(ModuleSpec<Fp>::weyl(lie, p), PCharacter::zero());
        auto cf = fock_character(lie, M0.basis(N), N, cap);
        auto mp = mathieu_product(lie, p, N, cap);
        CAPTURE(pv);
        REQUIRE(cf == mp);
        REQUIRE(cf.all_nonnegative());
    }
}

TEST_CASE("characters multiply across tensor factors") {
    auto lie = sl2();
    Prime p(3);
    const int N = 3;
    const int cap = default_alpha_cap(N);
    RestrictedQuotient<Fp> M0(ModuleSpec<Fp>::weyl(lie, p), PCharacter::zero());
    RestrictedQuotient<Fp> Pi0(ModuleSpec<Fp>::heisenberg(lie, p, Fp::one(p), {Fp::zero(p)}), PCharacter::zero());
    RestrictedQuotient<Fp> T0(ModuleSpec<Fp>::tensor_m_pi(lie, p, Fp::one(p), {Fp::zero(p)}), PCharacter::zero());
    auto prod = fock_character(lie, M0.basis(N), N, cap) * fock_character(lie, Pi0.basis(N), N, cap);
    REQUIRE(prod == fock_character(lie, T0.basis(N), N, cap));
}
