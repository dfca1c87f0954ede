#include <catch2/catch_amalgamated.hpp>

#include "modvertex/root_data.hpp"

using namespace modvertex;

TEST_CASE("sl2 record is valid for small primes") {
    auto d = sl2();
    for (uint32_t pv : {2u, 3u, 5u, 7u}) {
        auto issues = validate_lie_data(d, Prime(pv));
        CAPTURE(pv);
        REQUIRE(issues.empty());
    }
}

TEST_CASE("affine bracket pinned values") {
    auto d = sl2();
    Prime p(5);
    Fp kappa = Fp::from_int(3, p);
    auto e1 = AffineElement::gen(2, 1, Fp::one(p));
    auto fm1 = AffineElement::gen(0, -1, Fp::one(p));
    // [e_1, f_{-1}] = h_0 + <e,f> kappa c
    AffineElement expect = AffineElement::gen(1, 0, Fp::one(p));
    expect.add_central(kappa);
    REQUIRE(affine_bracket(e1, fm1, d, kappa) == expect);

    // [e_0, f_{-1}] = h_{-1}: no central term at m=0
    auto e0 = AffineElement::gen(2, 0, Fp::one(p));
    REQUIRE(affine_bracket(e0, fm1, d, kappa) == AffineElement::gen(1, -1, Fp::one(p)));

    // [h_1, h_{-1}] = 2 kappa c
    auto h1 = AffineElement::gen(1, 1, Fp::one(p));
    auto hm1 = AffineElement::gen(1, -1, Fp::one(p));
    REQUIRE(affine_bracket(h1, hm1, d, kappa) == AffineElement::central(Fp::from_int(2, p) * kappa));
}

TEST_CASE("affine bracket is antisymmetric and weight graded") {
    auto d = sl2();
    Prime p(3);
    Fp kappa = Fp::one(p);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int m = -2; m <= 2; ++m)
                for (int n = -2; n <= 2; ++n) {
                    auto x = AffineElement::gen(i, m, Fp::one(p));
                    auto y = AffineElement::gen(j, n, Fp::one(p));
                    auto b = affine_bracket(x, y, d, kappa);
                    auto c = affine_bracket(y, x, d, kappa);
                    c += b;
                    REQUIRE(c.is_zero());
                    // weight of every output term is the sum of input weights
                    for (auto& [k, v] : b.terms)
                        REQUIRE(d.basis[k.first].weight[0] == d.basis[i].weight[0] + d.basis[j].weight[0]);
                }
}

TEST_CASE("affine Jacobi identity with central terms") {
    auto d = sl2();
    for (uint32_t pv : {2u, 3u, 5u}) {
        Prime p(pv);
        Fp kappa = Fp::one(p);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = -4; l <= 4; ++l)
                        for (int m = -4; m <= 4; ++m)
                            for (int n = -4; n <= 4; ++n) {
                                auto x = AffineElement::gen(i, l, Fp::one(p));
                                auto y = AffineElement::gen(j, m, Fp::one(p));
                                auto z = AffineElement::gen(k, n, Fp::one(p));
                                AffineElement s = affine_bracket(affine_bracket(x, y, d, kappa), z, d, kappa);
                                s += affine_bracket(affine_bracket(y, z, d, kappa), x, d, kappa);
                                s += affine_bracket(affine_bracket(z, x, d, kappa), y, d, kappa);
                                REQUIRE(s.is_zero());
                            }
    }
}

TEST_CASE("p_power of loop generators and c") {
    auto d = sl2();
    Prime p2(2), p3(3);
    // (e_3)^[2] = 0
    REQUIRE(p_power(AffineElement::gen(2, 3, Fp::one(p2)), d, p2).is_zero());
    // (h_1)^[3] = h_3
    REQUIRE(p_power(AffineElement::gen(1, 1, Fp::one(p3)), d, p3) == AffineElement::gen(1, 3, Fp::one(p3)));
    // c^[p] = c
    REQUIRE(p_power(AffineElement::central(Fp::one(p3)), d, p3) == AffineElement::central(Fp::one(p3)));
    // p-power is not linear: reject combinations
    auto bad = AffineElement::gen(1, 1, Fp::one(p3));
    bad += AffineElement::gen(2, 0, Fp::one(p3));
    REQUIRE_THROWS_AS(p_power(bad, d, p3), std::invalid_argument);
}

TEST_CASE("restricted structure of the affine algebra") {
    auto d = sl2();
    REQUIRE(verify_restricted(d, Prime(2), 4).pass);
    REQUIRE(verify_restricted(d, Prime(3), 4).pass);
    REQUIRE(verify_restricted(d, Prime(5), 3).pass);

    // negative control: corrupt h^[p]
    auto broken = sl2();
    broken.p_power[1] = {};
    auto rep = verify_restricted(broken, Prime(3), 1);
    REQUIRE_FALSE(rep.pass);
    REQUIRE_FALSE(rep.witness.empty());
}
