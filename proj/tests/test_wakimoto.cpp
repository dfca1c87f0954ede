#include <catch2/catch_amalgamated.hpp>

#include "modvertex/poly.hpp"
#include "modvertex/wakimoto.hpp"

using namespace modvertex;

namespace {

BabyWakimoto<Fp> wakimoto_minus_rho(Prime p) {
    // lambda = -rho: lambda_0(h) = -1, all other modes zero
    return build_baby_wakimoto_critical<Fp>(sl2(), sl2_wff_data(), p, {{0, Fp::from_int(-1, p)}},
                                            PCharacter::zero());
}

} // namespace

TEST_CASE("critical constructor and compatibility checks") {
    Prime p(2);
    auto w = wakimoto_minus_rho(p);
    REQUIRE(w.basis(0).size() == 2);  // 1, a*_0
    REQUIRE(w.level() == Fp::from_int(-2, p));

    // incompatible lambda(t) / xi_pi data is rejected
    REQUIRE_THROWS_AS(build_baby_wakimoto_critical<Fp>(sl2(), sl2_wff_data(), Prime(3), {{-1, Fp::one(Prime(3))}},
                                                       PCharacter::zero()),
                      std::invalid_argument);
    // ... and the compatible shift is accepted: lambda_{-1}^p - lambda_{-p} = xi
    REQUIRE_NOTHROW(build_baby_wakimoto_critical<Fp>(sl2(), sl2_wff_data(), Prime(3), {{-1, Fp::one(Prime(3))}},
                                                     PCharacter::zero(), {{-1, Fp::one(Prime(3))}}));
    // positive-mode lambda(t) support breaks mode-sum termination and is rejected
    REQUIRE_THROWS_AS(ModuleSpec<Fp>::m_with_b_scalars(sl2(), Prime(3), {{1, Fp::one(Prime(3))}}),
                      std::invalid_argument);
}

TEST_CASE("non-graded lambda(t) with nonpositive support still carries the action") {
    Prime p(3);
    auto lie = sl2();
    auto w = build_baby_wakimoto_critical<Fp>(lie, sl2_wff_data(), p, {{0, Fp::one(p)}, {-1, Fp::one(p)}},
                                              PCharacter::zero(), {{-1, Fp::one(p)}});
    Fp kappa = w.level();
    for (int x = 0; x < 3; ++x)
        for (int y = x; y < 3; ++y)
            for (int m = -1; m <= 1; ++m)
                for (int n = -1; n <= 1; ++n)
                    for (auto& bm : w.basis(2)) {
                        auto v = SparseVec<Fp>::unit(bm, Fp::one(p));
                        auto lhs = w.act(x, m, w.act(y, n, v));
                        lhs.sub(w.act(y, n, w.act(x, m, v)));
                        for (auto& [z, c] : lie.bracket[x][y]) lhs.sub(w.act(z, m + n, v).scaled(Fp::from_int(c, p)));
                        if (m == -n && m != 0)
                            lhs.sub(v.scaled(Fp::from_int(m, p) * Fp::from_int(lie.form[x][y], p) * kappa));
                        CAPTURE(x, y, m, n, bm.str(lie));
                        REQUIRE(lhs.is_zero());
                    }
}

TEST_CASE("noncritical constructor guards") {
    Prime p3(3);
    // kappa = kappa_c is rejected
    REQUIRE_THROWS_AS(build_baby_wakimoto<Fp>(sl2(), sl2_wff_data(), p3, Fp::from_int(-2, p3),
                                              {Fp::zero(p3)}, PCharacter::zero(), PCharacter::zero()),
                      std::invalid_argument);
    // lambda outside F_p (a formal scalar with lambda^p != lambda) is rejected
    Prime p2(2);
    REQUIRE_THROWS_AS(build_baby_wakimoto<FpPoly>(sl2(), sl2_wff_data(), p2, FpPoly::indeterminate(p2),
                                                  {FpPoly::indeterminate(p2)}, PCharacter::zero(),
                                                  PCharacter::zero()),
                      std::invalid_argument);
    // a legal noncritical module
    auto w = build_baby_wakimoto<Fp>(sl2(), sl2_wff_data(), p3, Fp::zero(p3), {Fp::one(p3)}, PCharacter::zero(),
                                     PCharacter::zero());
    REQUIRE(w.basis(0).size() == 3);  // 1, a*_0, a*_0^2
}

TEST_CASE("affine action on the highest weight vector") {
    for (uint32_t pv : {2u, 3u}) {
        Prime p(pv);
        auto w = wakimoto_minus_rho(p);
        auto hw = w.highest_weight_vector();
        // raising modes annihilate
        for (int n = 0; n <= 2; ++n) REQUIRE(w.act(2, n, hw).is_zero());
        for (int n = 1; n <= 2; ++n) {
            REQUIRE(w.act(1, n, hw).is_zero());
            REQUIRE(w.act(0, n, hw).is_zero());
        }
        // h_0 acts by lambda(h) = -1
        REQUIRE(w.act(1, 0, hw) == hw.scaled(Fp::from_int(-1, p)));
        // f_0 hw has h_0-eigenvalue lambda(h) - 2
        auto fv = w.act(0, 0, hw);
        REQUIRE(!fv.is_zero());
        REQUIRE(w.act(1, 0, fv) == fv.scaled(Fp::from_int(-3, p)));
    }
}

TEST_CASE("baby Wakimoto modules are well defined over the restricted algebra") {
    for (uint32_t pv : {2u, 3u}) {
        Prime p(pv);
        auto rep = verify_wakimoto_well_defined(wakimoto_minus_rho(p), 2);
        CAPTURE(pv, rep.witness);
        REQUIRE(rep.pass);
    }
    // noncritical case (kappa = 0 is away from kappa_c = 1 mod 3)
    Prime p3(3);
    auto w = build_baby_wakimoto<Fp>(sl2(), sl2_wff_data(), p3, Fp::zero(p3), {Fp::from_int(2, p3)},
                                     PCharacter::zero(), PCharacter::zero());
    auto rep = verify_wakimoto_well_defined(w, 2);
    CAPTURE(rep.witness);
    REQUIRE(rep.pass);
}

TEST_CASE("the quotient action still satisfies the affine relations") {
    Prime p(3);
    auto w = wakimoto_minus_rho(p);
    auto lie = w.lie();
    Fp kappa = w.level();
    auto basis = w.basis(2);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (int m = -1; m <= 1; ++m)
                for (int n = -1; n <= 1; ++n)
                    for (auto& bm : basis) {
                        auto v = SparseVec<Fp>::unit(bm, Fp::one(p));
                        auto lhs = w.act(x, m, w.act(y, n, v));
                        lhs.sub(w.act(y, n, w.act(x, m, v)));
                        for (auto& [z, c] : lie.bracket[x][y]) lhs.sub(w.act(z, m + n, v).scaled(Fp::from_int(c, p)));
                        if (m == -n && m != 0)
                            lhs.sub(v.scaled(Fp::from_int(m, p) * Fp::from_int(lie.form[x][y], p) * kappa));
                        CAPTURE(x, y, m, n, bm.str(lie));
                        REQUIRE(lhs.is_zero());
                    }
}

TEST_CASE("nonzero graded p-characters still carry the affine action") {
    // the center of the Weyl side commutes with every realized current, so
    // cutting by a nonzero graded p-character leaves a module over the
    // affine algebra
    Prime p(3);
    auto lie = sl2();
    PCharacter xi;
    xi.values.emplace(GenMode{Fam::AStar, 0, 0}, Fp::one(p));
    xi.values.emplace(GenMode{Fam::A, 0, -1}, Fp::from_int(2, p));
    REQUIRE(xi.graded() == false);  // the a-side value sits at mode -1
    auto w = build_baby_wakimoto_critical<Fp>(lie, sl2_wff_data(), p, {{0, Fp::zero(p)}}, xi);
    Fp kappa = w.level();
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (int m = -1; m <= 1; ++m)
                for (int n = -1; n <= 1; ++n)
                    for (auto& bm : w.basis(2)) {
                        auto v = SparseVec<Fp>::unit(bm, Fp::one(p));
                        auto lhs = w.act(x, m, w.act(y, n, v));
                        lhs.sub(w.act(y, n, w.act(x, m, v)));
                        for (auto& [z, c] : lie.bracket[x][y]) lhs.sub(w.act(z, m + n, v).scaled(Fp::from_int(c, p)));
                        if (m == -n && m != 0)
                            lhs.sub(v.scaled(Fp::from_int(m, p) * Fp::from_int(lie.form[x][y], p) * kappa));
                        CAPTURE(x, y, m, n, bm.str(lie));
                        REQUIRE(lhs.is_zero());
                    }
}

TEST_CASE("character of the baby Wakimoto module at -rho") {
    const int N = 4;
    const int cap = default_alpha_cap(N);
    for (uint32_t pv : {2u, 3u}) {
        Prime p(pv);
        auto w = wakimoto_minus_rho(p);
        auto cf = fock_character(w.lie(), w.basis(N), N, cap);
        REQUIRE(cf == mathieu_product(w.lie(), p, N, cap));
    }
}

TEST_CASE("singular vector census of the baby Wakimoto module at -rho") {
    for (uint32_t pv : {2u, 3u}) {
        Prime p(pv);
        auto w = wakimoto_minus_rho(p);
        auto act = [&](int x, int n, const SparseVec<Fp>& v) { return w.act(x, n, v); };
        auto census = singular_vectors(w.lie(), p, w.basis(3), act, 3);
        CAPTURE(pv);
        REQUIRE(census.empty());
    }
}

TEST_CASE("baby Verma positive control has a singular vector") {
    for (uint32_t pv : {2u, 3u}) {
        Prime p(pv);
        auto lie = sl2();
        RestrictedQuotient<Fp> BV(ModuleSpec<Fp>::baby_verma(lie, p, Fp::zero(p), {Fp::zero(p)}),
                                  PCharacter::zero());
        auto act = [&](int x, int n, const SparseVec<Fp>& v) {
            return BV.apply(GenMode{Fam::Lie, static_cast<uint8_t>(x), n}, v);
        };
        auto census = singular_vectors(lie, p, BV.basis(1), act, 1);
        REQUIRE_FALSE(census.empty());
        // the f_0-descendant of the highest weight line is among them
        bool found = false;
        for (auto& e : census.entries)
            if (e.depth == 0 && e.weight == std::vector<int>{-1}) found = true;
        REQUIRE(found);
    }
}

TEST_CASE("center probe of the vacuum module") {
    auto lie = sl2();
    Prime p(2);
    for (uint32_t kv : {0u, 1u}) {
        auto rows = center_probe(lie, p, Fp::from_int(kv, p), 2);
        REQUIRE(rows.size() == 3);
        REQUIRE(rows[0].commutant_dim == 1);  // the vacuum line
        REQUIRE(rows[0].p_center_dim == 1);
        REQUIRE(rows[1].p_center_dim == 0);
        REQUIRE(rows[2].p_center_dim == 3);
        for (auto& r : rows) REQUIRE(r.commutant_dim >= r.p_center_dim);
    }
}
