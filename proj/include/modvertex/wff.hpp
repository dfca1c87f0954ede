#pragma once

#include "modvertex/field.hpp"
#include "modvertex/parallel.hpp"

namespace modvertex {

/// Monomial and polynomial in the zero-weight fields a*_gamma(z), used for
/// the structure polynomials of the free-field realization.
struct AStarMonomial {
    std::vector<std::pair<int, int>> factors;  // (positive-root index, exponent)
};
struct AStarPoly {
    std::vector<std::pair<long long, AStarMonomial>> terms;
};

/// Realization data per simple index: integer constants c_i and the
/// polynomial tables P^i_beta (e-image) and Q^i_beta (f-image).  Only sl2
/// ships; higher rank enters through the same record (see the JSON loader).
struct WffData {
    int rank = 0;
    std::vector<long long> c;
    std::map<std::pair<int, int>, AStarPoly> P;  // (i, beta)
    std::map<std::pair<int, int>, AStarPoly> Q;  // (i, beta)
};

/// sl2 data: P empty, Q^1_{alpha_1} = -(a*)^2, c_1 = -2.
inline WffData sl2_wff_data() {
    WffData d;
    d.rank = 1;
    d.c = {-2};
    d.Q[{0, 0}] = AStarPoly{{{-1, AStarMonomial{{{0, 2}}}}}};
    return d;
}

namespace detail {

/// beta(h_i) read off the bracket table: [h_i, e_beta] = beta(h_i) e_beta.
inline long long root_on_cartan(const FiniteLieData& lie, int beta, int i) {
    for (int t = 0; t < lie.dim(); ++t) {
        if (lie.basis[t].weight != lie.positive_roots[beta]) continue;
        for (auto& [k, c] : lie.bracket[lie.cartan_h[i]][t])
            if (k == t) return c;
        return 0;
    }
    throw std::invalid_argument("root_on_cartan: no root vector for this root");
}

/// index of alpha_i in the positive-root list.
inline int simple_root_index(const FiniteLieData& lie, int i) {
    const auto& w = lie.basis[lie.simple_e[i]].weight;
    for (size_t a = 0; a < lie.positive_roots.size(); ++a)
        if (lie.positive_roots[a] == w) return static_cast<int>(a);
    throw std::invalid_argument("simple_root_index: simple root not listed");
}

template <class R>
void append_astar_factors(const AStarMonomial& m, std::vector<FieldExpr<R>>& parts) {
    for (auto& [gamma, e] : m.factors)
        for (int t = 0; t < e; ++t) parts.push_back(fe_gen<R>(Fam::AStar, static_cast<uint8_t>(gamma)));
}

template <class R>
std::vector<FieldExpr<R>> poly_current_terms(const AStarPoly& poly, int beta, Prime p) {
    std::vector<FieldExpr<R>> out;
    for (auto& [coeff, mono] : poly.terms) {
        R c = R::from_int(coeff, p);
        if (c.is_zero()) continue;
        std::vector<FieldExpr<R>> parts;
        append_astar_factors<R>(mono, parts);
        parts.push_back(fe_gen<R>(Fam::A, static_cast<uint8_t>(beta)));
        out.push_back(fe_scale(std::move(c), fe_nop(std::move(parts))));
    }
    return out;
}

} // namespace detail

/// The three current images of the free-field realization for simple index i
/// at level kappa:
///   e_i(z) -> a_{alpha_i}(z) + sum_{beta != alpha_i} :P^i_beta(a*(z)) a_beta(z):
///   h_i(z) -> -sum_beta beta(h_i) :a*_beta(z) a_beta(z): + b_i(z)
///   f_i(z) -> sum_beta :Q^i_beta(a*(z)) a_beta(z):
///             + (c_i + (kappa - kappa_c) <e_i, f_i>) d/dz a*_{alpha_i}(z)
///             + a*_{alpha_i}(z) b_i(z)
/// The target Heisenberg factor carries level kappa - kappa_c with
/// kappa_c = -h^vee.
template <class R>
struct WffTriple {
    FieldExpr<R> e, h, f;
};

template <class R>
WffTriple<R> wff_image(int i, const R& kappa, const WffData& data, const FiniteLieData& lie, Prime p) {
    if (data.rank != lie.rank) throw std::invalid_argument("wff_image: data rank mismatch");
    const int npos = static_cast<int>(lie.positive_roots.size());
    const int ai = detail::simple_root_index(lie, i);

    std::vector<FieldExpr<R>> eparts;
    eparts.push_back(fe_gen<R>(Fam::A, static_cast<uint8_t>(ai)));
    for (int beta = 0; beta < npos; ++beta) {
        if (beta == ai) continue;
        auto it = data.P.find({i, beta});
        if (it == data.P.end()) throw std::invalid_argument("wff_image: missing P polynomial");
        for (auto& t : detail::poly_current_terms<R>(it->second, beta, p)) eparts.push_back(t);
    }

    std::vector<FieldExpr<R>> hparts;
    for (int beta = 0; beta < npos; ++beta) {
        R coef = R::from_int(-detail::root_on_cartan(lie, beta, i), p);
        if (coef.is_zero()) continue;
        hparts.push_back(fe_scale(std::move(coef), fe_nop<R>({fe_gen<R>(Fam::AStar, static_cast<uint8_t>(beta)),
                                                              fe_gen<R>(Fam::A, static_cast<uint8_t>(beta))})));
    }
    hparts.push_back(fe_gen<R>(Fam::B, static_cast<uint8_t>(i)));

    std::vector<FieldExpr<R>> fparts;
    for (int beta = 0; beta < npos; ++beta) {
        auto it = data.Q.find({i, beta});
        if (it == data.Q.end()) {
            if (beta == ai) throw std::invalid_argument("wff_image: missing Q^i_{alpha_i}");
            continue;
        }
        for (auto& t : detail::poly_current_terms<R>(it->second, beta, p)) fparts.push_back(t);
    }
    R kappa_c = R::from_int(-lie.dual_coxeter, p);
    R dcoef = R::from_int(data.c[i], p) +
              (kappa - kappa_c) * R::from_int(lie.form[lie.simple_e[i]][lie.simple_f[i]], p);
    fparts.push_back(fe_scale(std::move(dcoef), fe_dd(1, fe_gen<R>(Fam::AStar, static_cast<uint8_t>(ai)))));
    fparts.push_back(fe_nop<R>({fe_gen<R>(Fam::AStar, static_cast<uint8_t>(ai)), fe_gen<R>(Fam::B, static_cast<uint8_t>(i))}));

    return {fe_sum(std::move(eparts)), fe_sum(std::move(hparts)), fe_sum(std::move(fparts))};
}

/// Images of the full sl2 basis in PBW order (f, h, e).
template <class R>
std::vector<FieldExpr<R>> wff_images_by_basis(const R& kappa, const WffData& data, const FiniteLieData& lie,
                                              Prime p) {
    if (lie.dim() != 3 || lie.rank != 1)
        throw std::invalid_argument("wff_images_by_basis: shipped only for sl2");
    auto t = wff_image(0, kappa, data, lie, p);
    return {t.f, t.h, t.e};
}

/// The tensor module M (x) pi^{kappa - kappa_c}(lambda) the realization maps
/// into.
template <class R>
ModuleSpec<R> wff_target_module(const FiniteLieData& lie, Prime p, const R& kappa, std::vector<R> lambda) {
    R kappa_c = R::from_int(-lie.dual_coxeter, p);
    return ModuleSpec<R>::tensor_m_pi(lie, p, kappa - kappa_c, std::move(lambda));
}

/// Verifies that the realized currents satisfy the affine commutation
/// relations with central terms,
///   [x^w_(m), y^w_(n)] = ([x,y])^w_(m+n) + m delta_{m,-n} <x,y> kappa,
/// exactly on all probes of the stated depth (a*_0 exponents capped at p).
template <class R>
VerifyReport verify_wff_relations(const FiniteLieData& lie, const WffData& data, Prime p, const R& kappa,
                                  int mode_bound, int depth, std::vector<R> lambda = {}, int threads = 1) {
    if (lambda.empty()) lambda.assign(lie.rank, R::zero(p));
    auto mod = wff_target_module<R>(lie, p, kappa, lambda);
    auto images = wff_images_by_basis<R>(kappa, data, lie, p);
    auto basis = mod.enumerate_basis(depth, std::nullopt, p.value());

    FailureCollector fails;
    parallel_for(basis.size(), threads, [&](size_t t, int) {
        if (fails.failed()) return;
        auto v = SparseVec<R>::unit(basis[t], R::one(p));
        // first-level applications shared across all pairs on this probe
        const int nm = 2 * mode_bound + 1;
        std::vector<std::vector<SparseVec<R>>> applied(3, std::vector<SparseVec<R>>());
        std::vector<std::vector<SparseVec<R>>> bracket_applied(3, std::vector<SparseVec<R>>());
        for (int g = 0; g < 3; ++g) {
            applied[g].reserve(nm);
            for (int m = -mode_bound; m <= mode_bound; ++m) applied[g].push_back(field_mode(images[g], m, mod, v));
            bracket_applied[g].reserve(2 * nm - 1);
            for (int m = -2 * mode_bound; m <= 2 * mode_bound; ++m)
                bracket_applied[g].push_back(field_mode(images[g], m, mod, v));
        }
        // [y_n, x_m] is the same relation with the sign flipped, so only
        // ordered pairs are checked
        for (int x = 0; x < 3 && !fails.failed(); ++x)
            for (int y = x; y < 3; ++y)
                for (int m = -mode_bound; m <= mode_bound; ++m)
                    for (int n = (x == y ? m + 1 : -mode_bound); n <= mode_bound; ++n) {
                        auto lhs = field_mode(images[x], m, mod, applied[y][n + mode_bound]);
                        lhs.sub(field_mode(images[y], n, mod, applied[x][m + mode_bound]));
                        for (auto& [z, c] : lie.bracket[x][y])
                            lhs.sub(bracket_applied[z][m + n + 2 * mode_bound].scaled(R::from_int(c, p)));
                        if (m == -n && m != 0)
                            lhs.sub(v.scaled(R::from_int(m, p) * R::from_int(lie.form[x][y], p) * kappa));
                        if (!lhs.is_zero()) {
                            fails.report(t, "[" + lie.basis[x].name + "^w_(" + std::to_string(m) + "), " +
                                                lie.basis[y].name + "^w_(" + std::to_string(n) + ")] fails on " +
                                                basis[t].str(lie) + ": residual " + lhs.str(lie));
                            return;
                        }
                    }
    });
    if (fails.failed()) return {false, fails.witness()};
    return {};
}

} // namespace modvertex
