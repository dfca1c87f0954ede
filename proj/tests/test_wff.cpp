#include <catch2/catch_amalgamated.hpp>

#include "modvertex/poly.hpp"
#include "modvertex/wff.hpp"

using namespace modvertex;

namespace {

bool expr_eq(const FieldExpr<Fp>& a, const FieldExpr<Fp>& b) {
    if (a.k != b.k || a.fam != b.fam || a.idx != b.idx || a.param != b.param) return false;
    if (a.coeff.has_value() != b.coeff.has_value()) return false;
    if (a.coeff && !(*a.coeff == *b.coeff)) return false;
    if (a.kids.size() != b.kids.size()) return false;
    for (size_t i = 0; i < a.kids.size(); ++i)
        if (!expr_eq(a.kids[i], b.kids[i])) return false;
    return true;
}

} // namespace

TEST_CASE("sl2 images collapse to the closed formulas") {
    Prime p(5);
    Fp kappa = Fp::from_int(3, p);
    auto lie = sl2();
    auto t = wff_image<Fp>(0, kappa, sl2_wff_data(), lie, p);

    // e(z) -> a(z)
    REQUIRE(expr_eq(t.e, fe_gen<Fp>(Fam::A, 0)));

    // h(z) -> -2 :a* a: + b
    auto hexp = fe_sum<Fp>({fe_scale(Fp::from_int(-2, p), fe_nop<Fp>({fe_gen<Fp>(Fam::AStar, 0), fe_gen<Fp>(Fam::A, 0)})),
                            fe_gen<Fp>(Fam::B, 0)});
    REQUIRE(expr_eq(t.h, hexp));

    // f(z) -> -:a*^2 a: + kappa da* + :a* b:; the da* coefficient must be
    // exactly kappa, i.e. c_1 = kappa_c = -2
    auto fexp = fe_sum<Fp>(
        {fe_scale(Fp::from_int(-1, p),
                  fe_nop<Fp>({fe_gen<Fp>(Fam::AStar, 0), fe_gen<Fp>(Fam::AStar, 0), fe_gen<Fp>(Fam::A, 0)})),
         fe_scale(kappa, fe_dd(1, fe_gen<Fp>(Fam::AStar, 0))),
         fe_nop<Fp>({fe_gen<Fp>(Fam::AStar, 0), fe_gen<Fp>(Fam::B, 0)})});
    REQUIRE(expr_eq(t.f, fexp));
}

TEST_CASE("level reproduction out of the free-field arithmetic") {
    Prime p(7);
    Fp kappa = Fp::from_int(4, p);
    auto lie = sl2();
    auto mod = wff_target_module<Fp>(lie, p, kappa, {Fp::zero(p)});
    auto im = wff_images_by_basis<Fp>(kappa, sl2_wff_data(), lie, p);
    // [e^w_(1), f^w_(-1)] |0> = h^w_(0)|0> + kappa |0> = kappa |0>
    auto vac = mod.vacuum();
    auto lhs = field_mode(im[2], 1, mod, field_mode(im[0], -1, mod, vac));
    lhs.sub(field_mode(im[0], -1, mod, field_mode(im[2], 1, mod, vac)));
    REQUIRE(lhs == vac.scaled(kappa));
}

TEST_CASE("realized currents satisfy the affine relations") {
    auto lie = sl2();
    auto data = sl2_wff_data();
    for (uint32_t pv : {2u, 3u}) {
        Prime p(pv);
        for (long long kv : {0ll, 1ll, -2ll}) {
            auto rep = verify_wff_relations<Fp>(lie, data, p, Fp::from_int(kv, p), 2, 2);
            CAPTURE(pv, kv, rep.witness);
            REQUIRE(rep.pass);
        }
    }
    // nonzero highest weight on the Heisenberg factor
    REQUIRE(verify_wff_relations<Fp>(lie, data, Prime(3), Fp::one(Prime(3)), 2, 2, {Fp::from_int(2, Prime(3))}).pass);
}

TEST_CASE("realized currents satisfy the relations at a formal level") {
    Prime p(2);
    auto rep = verify_wff_relations<FpPoly>(sl2(), sl2_wff_data(), p, FpPoly::indeterminate(p), 2, 2);
    CAPTURE(rep.witness);
    REQUIRE(rep.pass);
}

TEST_CASE("corrupted realization data fails the relation check") {
    auto data = sl2_wff_data();
    data.c = {-1};  // c_1 must be -2
    auto rep = verify_wff_relations<Fp>(sl2(), data, Prime(3), Fp::one(Prime(3)), 1, 2);
    REQUIRE_FALSE(rep.pass);
    REQUIRE_FALSE(rep.witness.empty());
}
