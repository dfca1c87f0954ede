#include <catch2/catch_amalgamated.hpp>

#include "modvertex/module.hpp"

using namespace modvertex;

namespace {

const GenMode E0{Fam::Lie, 2, 0}, E1{Fam::Lie, 2, 1}, FM1{Fam::Lie, 0, -1}, HM1{Fam::Lie, 1, -1};

Monomial mono(std::initializer_list<Factor> fs) { return Monomial{std::vector<Factor>(fs)}; }

} // namespace

TEST_CASE("vacuum module: single straightening steps") {
    Prime p(5);
    auto V = ModuleSpec<Fp>::vacuum(sl2(), p, Fp::from_int(3, p));
    auto v = V.apply(FM1, V.vacuum());
    REQUIRE(v == SparseVec<Fp>::unit(mono({{Fam::Lie, 0, -1, 1}}), Fp::one(p)));

    // e_0 f_{-1}|0> = h_{-1}|0>
    REQUIRE(V.apply(E0, v) == SparseVec<Fp>::unit(mono({{Fam::Lie, 1, -1, 1}}), Fp::one(p)));

    // e_1 f_{-1}|0> = kappa |0>: [e_1, f_{-1}] = h_0 + kappa, and h_0|0> = 0
    REQUIRE(V.apply(E1, v) == SparseVec<Fp>::unit(Monomial{}, Fp::from_int(3, p)));

    // annihilation on the vacuum
    for (int i = 0; i < 3; ++i)
        for (int n = 0; n <= 2; ++n)
            REQUIRE(V.apply(GenMode{Fam::Lie, static_cast<uint8_t>(i), n}, V.vacuum()).is_zero());
}

TEST_CASE("Weyl module conventions") {
    Prime p(3);
    auto M = ModuleSpec<Fp>::weyl(sl2(), p);
    auto astar0 = M.apply(GenMode{Fam::AStar, 0, 0}, M.vacuum());
    REQUIRE(!astar0.is_zero());  // a*_0 creates
    REQUIRE(M.apply(GenMode{Fam::A, 0, 0}, astar0) == M.vacuum());  // [a_0, a*_0] = 1
    REQUIRE(M.apply(GenMode{Fam::A, 0, 0}, M.vacuum()).is_zero());
    REQUIRE(M.apply(GenMode{Fam::AStar, 0, 1}, M.vacuum()).is_zero());
    REQUIRE_THROWS_AS(M.apply(E0, M.vacuum()), std::invalid_argument);

    // [a_n, a*_m] = delta_{n,-m} on a stack of probes
    for (auto& probe : M.enumerate_basis(3, std::nullopt, 2))
        for (int n = -2; n <= 2; ++n)
            for (int m = -2; m <= 2; ++m) {
                auto v = SparseVec<Fp>::unit(probe, Fp::one(p));
                GenMode an{Fam::A, 0, n}, asm_{Fam::AStar, 0, m};
                auto comm = M.apply(an, M.apply(asm_, v));
                comm.sub(M.apply(asm_, M.apply(an, v)));
                auto expect = n == -m ? v : SparseVec<Fp>();
                REQUIRE(comm == expect);
            }
}

TEST_CASE("module action realizes the affine bracket exactly") {
    auto lie = sl2();
    for (uint32_t pv : {2u, 3u, 5u}) {
        Prime p(pv);
        for (uint32_t kv : {0u, 1u}) {
            Fp kappa = Fp::from_int(kv, p);
            auto V = ModuleSpec<Fp>::vacuum(lie, p, kappa);
            auto probes = V.enumerate_basis(4, std::nullopt, 0);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    for (int m = -2; m <= 2; ++m)
                        for (int n = -2; n <= 2; ++n) {
                            GenMode g1{Fam::Lie, static_cast<uint8_t>(i), m}, g2{Fam::Lie, static_cast<uint8_t>(j), n};
                            auto br = affine_bracket(AffineElement::gen(i, m, Fp::one(p)),
                                                     AffineElement::gen(j, n, Fp::one(p)), lie, kappa);
                            for (auto& mn : probes) {
                                auto v = SparseVec<Fp>::unit(mn, Fp::one(p));
                                auto lhs = V.apply(g1, V.apply(g2, v));
                                lhs.sub(V.apply(g2, V.apply(g1, v)));
                                SparseVec<Fp> rhs;
                                for (auto& [k, c] : br.terms)
                                    rhs += V.apply(GenMode{Fam::Lie, static_cast<uint8_t>(k.first), k.second}, v).scaled(c);
                                if (br.c_coeff) rhs += v.scaled(*br.c_coeff);
                                REQUIRE(lhs == rhs);
                            }
                        }
        }
    }
}

TEST_CASE("generator modes shift depth and weight as graded operators") {
    Prime p(3);
    auto lie = sl2();
    auto T = ModuleSpec<Fp>::tensor_m_pi(lie, p, Fp::one(p), {Fp::zero(p)});
    std::vector<GenMode> gens;
    for (int n = -3; n <= 3; ++n) {
        gens.push_back({Fam::A, 0, n});
        gens.push_back({Fam::AStar, 0, n});
        gens.push_back({Fam::B, 0, n});
    }
    for (auto& mn : T.enumerate_basis(3, std::nullopt, 2))
        for (auto g : gens) {
            auto out = T.apply(g, SparseVec<Fp>::unit(mn, Fp::one(p)));
            int wsign = g.fam == Fam::A ? 1 : (g.fam == Fam::AStar ? -1 : 0);
            for (auto& [om, oc] : out.terms()) {
                REQUIRE(om.depth() == mn.depth() - g.mode);
                REQUIRE(om.weight(lie)[0] == mn.weight(lie)[0] + wsign);
            }
        }
}

TEST_CASE("Heisenberg: b_{i,pn} modes are central") {
    auto lie = sl2();
    for (uint32_t pv : {2u, 3u}) {
        Prime p(pv);
        auto Pi = ModuleSpec<Fp>::heisenberg(lie, p, Fp::one(p), {Fp::from_int(1, p)});
        auto probes = Pi.enumerate_basis(4, std::nullopt, 0);
        for (int n = -2; n <= 2; ++n) {
            if (n == 0) continue;
            GenMode central{Fam::B, 0, n * static_cast<int>(pv)};
            for (int m = -3; m <= 3; ++m) {
                GenMode other{Fam::B, 0, m};
                for (auto& mn : probes) {
                    auto v = SparseVec<Fp>::unit(mn, Fp::one(p));
                    auto ab = Pi.apply(central, Pi.apply(other, v));
                    ab.sub(Pi.apply(other, Pi.apply(central, v)));
                    REQUIRE(ab.is_zero());
                }
            }
        }
    }
}

TEST_CASE("basis enumeration pinned values") {
    Prime p2(2);
    auto lie = sl2();
    auto M = ModuleSpec<Fp>::weyl(lie, p2);
    auto b0 = M.enumerate_basis(0, 2, 0);
    REQUIRE(b0.size() == 2);  // |0>, a*_0|0>
    REQUIRE(b0[0] == Monomial{});
    REQUIRE(b0[1] == mono({{Fam::AStar, 0, 0, 1}}));

    auto Pi = ModuleSpec<Fp>::heisenberg(lie, p2, Fp::one(p2), {Fp::zero(p2)});
    auto b1 = Pi.enumerate_basis(1, std::nullopt, 0);
    REQUIRE(b1.size() == 2);  // |0>, b_{-1}|0>

    auto V = ModuleSpec<Fp>::vacuum(lie, p2, Fp::one(p2));
    auto b2 = V.enumerate_basis(1, std::nullopt, 0);
    REQUIRE(b2.size() == 4);  // |0>, f_{-1}, h_{-1}, e_{-1}

    // depth counts grow like 3-color partitions: depth <= 3 gives 1+3+9+22
    REQUIRE(V.enumerate_basis(3, std::nullopt, 0).size() == 35);
}

TEST_CASE("tensor embedding: factor actions and depth additivity") {
    Prime p(3);
    auto lie = sl2();
    auto M = ModuleSpec<Fp>::weyl(lie, p);
    auto Pi = ModuleSpec<Fp>::heisenberg(lie, p, Fp::one(p), {Fp::zero(p)});
    auto T = ModuleSpec<Fp>::tensor_m_pi(lie, p, Fp::one(p), {Fp::zero(p)});

    auto u = M.apply(GenMode{Fam::AStar, 0, 0}, M.vacuum());
    auto w = Pi.apply(GenMode{Fam::B, 0, -2}, Pi.vacuum());
    auto t = tensor_embed(u, w);
    REQUIRE(t.size() == 1);
    REQUIRE(t.terms().begin()->first.depth() ==
            u.terms().begin()->first.depth() + w.terms().begin()->first.depth());

    // action on the M factor matches the action in the tensor module
    auto lhs = T.apply(GenMode{Fam::A, 0, 0}, t);
    auto rhs = tensor_embed(M.apply(GenMode{Fam::A, 0, 0}, u), w);
    REQUIRE(lhs == rhs);
}

TEST_CASE("baby Verma module basics") {
    Prime p(3);
    auto lie = sl2();
    // lambda = 0, level 0
    auto BV = ModuleSpec<Fp>::baby_verma(lie, p, Fp::zero(p), {Fp::zero(p)});
    GenMode f0{Fam::Lie, 0, 0};
    auto fv = BV.apply(f0, BV.vacuum());
    REQUIRE(!fv.is_zero());  // f_0 creates
    // e_0 f_0 v = h_0 v = lambda(h) v = 0
    REQUIRE(BV.apply(E0, fv).is_zero());
    // h_0 f_0 v = (lambda - 2)(f_0 v)
    REQUIRE(BV.apply(GenMode{Fam::Lie, 1, 0}, fv) == fv.scaled(Fp::from_int(-2, p)));
    // raising modes kill f_0 v
    for (int i = 0; i < 3; ++i) REQUIRE(BV.apply(GenMode{Fam::Lie, static_cast<uint8_t>(i), 1}, fv).is_zero());

    // at lambda = 1 the weight reappears
    auto BV1 = ModuleSpec<Fp>::baby_verma(lie, p, Fp::zero(p), {Fp::one(p)});
    REQUIRE(BV1.apply(E0, BV1.apply(f0, BV1.vacuum())) == BV1.vacuum());
}
