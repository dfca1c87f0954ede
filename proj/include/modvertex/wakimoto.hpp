#pragma once

#include "modvertex/charseries.hpp"
#include "modvertex/pcenter.hpp"

namespace modvertex {

/// Baby Wakimoto module: exponent-capped quotient of the free-field module,
/// carrying the affine action through the pullback of the realization.  At
/// the critical level the Heisenberg modes act as the scalars lambda_n; away
/// from it the module is the capped M (x) pi^{kappa-kappa_c}(lambda).
template <class R>
class BabyWakimoto {
  public:
    using scalar_t = R;

    BabyWakimoto(RestrictedQuotient<R> q, std::vector<FieldExpr<R>> images, R kappa)
        : q_(std::move(q)), images_(std::move(images)), kappa_(std::move(kappa)) {}

    const RestrictedQuotient<R>& quotient() const { return q_; }
    Prime prime() const { return q_.prime(); }
    const FiniteLieData& lie() const { return q_.lie(); }
    const R& level() const { return kappa_; }
    const std::vector<FieldExpr<R>>& images() const { return images_; }

    SparseVec<R> highest_weight_vector() const { return q_.vacuum(); }
    std::vector<Monomial> basis(int depth) const { return q_.basis(depth); }

    /// Action of the affine generator x_n through the realization.
    SparseVec<R> act(int lie_idx, int mode, const SparseVec<R>& v) const {
        return field_mode(images_[lie_idx], mode, q_, v);
    }

  private:
    RestrictedQuotient<R> q_;
    std::vector<FieldExpr<R>> images_;
    R kappa_;
};

/// Critical-level constructor: M / I_xi with the Heisenberg modes acting by
/// the coefficients of lambda(t).  Requires the compatibility
/// lambda_n^p - lambda_{np} = xi_pi(b_n)^p on the stated support.
template <class R>
BabyWakimoto<R> build_baby_wakimoto_critical(const FiniteLieData& lie, const WffData& data, Prime p,
                                             std::map<int32_t, Fp> lambda_series, const PCharacter& xi,
                                             const std::map<int32_t, Fp>& xi_pi_pth = {}) {
    auto lam = [&](int32_t n) {
        auto it = lambda_series.find(n);
        return it == lambda_series.end() ? Fp::zero(p) : it->second;
    };
    auto xip = [&](int32_t n) {
        auto it = xi_pi_pth.find(n);
        return it == xi_pi_pth.end() ? Fp::zero(p) : it->second;
    };
    std::vector<int32_t> support;
    for (auto& [n, v] : lambda_series) support.push_back(n);
    for (auto& [n, v] : xi_pi_pth) support.push_back(n);
    for (int32_t n : support) {
        if (n > 0 && !xip(n).is_zero())
            throw std::invalid_argument("baby Wakimoto: xi_pi supported at a positive mode");
        if (!(fp_pow(lam(n), p.value()) - lam(n * static_cast<int32_t>(p.value())) == xip(n)))
            throw std::invalid_argument("baby Wakimoto: lambda(t) incompatible with xi_pi at mode " +
                                        std::to_string(n));
    }
    std::map<int32_t, R> lifted;
    for (auto& [n, v] : lambda_series) lifted.emplace(n, R::from_fp(v));
    RestrictedQuotient<R> q(ModuleSpec<R>::m_with_b_scalars(lie, p, std::move(lifted)), xi);
    R kappa_c = R::from_int(-lie.dual_coxeter, p);
    return BabyWakimoto<R>(std::move(q), wff_images_by_basis<R>(kappa_c, data, lie, p), kappa_c);
}

/// Noncritical constructor: capped M (x) pi^{kappa-kappa_c}(lambda) with
/// p-characters xi (Weyl side) and xi_pi (Heisenberg side).  Requires
/// kappa != kappa_c and lambda(h_i)^p = lambda(h_i), the well-definedness
/// hypothesis for the restricted quotient.
template <class R>
BabyWakimoto<R> build_baby_wakimoto(const FiniteLieData& lie, const WffData& data, Prime p, const R& kappa,
                                    std::vector<R> lambda, const PCharacter& xi_weyl,
                                    const PCharacter& xi_pi) {
    R kappa_c = R::from_int(-lie.dual_coxeter, p);
    if (kappa == kappa_c)
        throw std::invalid_argument("baby Wakimoto: noncritical constructor at the critical level");
    for (auto& l : lambda)
        if (!(ring_pow(l, p.value()) - l).is_zero())
            throw std::invalid_argument("baby Wakimoto: lambda(h_i) is not in F_p");
    PCharacter merged = xi_weyl;
    for (auto& [g, v] : xi_pi.values) {
        if (g.fam != Fam::B) throw std::invalid_argument("baby Wakimoto: xi_pi must be supported on b modes");
        merged.values.emplace(g, v);
    }
    RestrictedQuotient<R> q(ModuleSpec<R>::tensor_m_pi(lie, p, kappa - kappa_c, std::move(lambda)), merged);
    return BabyWakimoto<R>(std::move(q), wff_images_by_basis<R>(kappa, data, lie, p), kappa);
}

/// All generators of the p-center of the free-field side act as their
/// assigned scalars (zero for trivial p-characters) on every probe: the
/// well-definedness of the module over the restricted vertex algebra.
template <class R>
VerifyReport verify_wakimoto_well_defined(const BabyWakimoto<R>& w, int depth) {
    const Prime p = w.prime();
    const uint32_t pv = p.value();
    const auto& q = w.quotient();
    for (auto& m : w.basis(depth)) {
        auto v = SparseVec<R>::unit(m, R::one(p));
        // Weyl and Heisenberg p-center modes
        for (int n = -depth; n <= depth; ++n) {
            std::vector<GenMode> gens;
            if (q.legal(GenMode{Fam::A, 0, n})) gens.push_back({Fam::A, 0, n});
            if (q.legal(GenMode{Fam::AStar, 0, n})) gens.push_back({Fam::AStar, 0, n});
            for (auto g : gens) {
                auto out = v;
                for (uint32_t t = 0; t < pv; ++t) out = q.apply(g, out);
                auto expect = v.scaled(R::from_fp(q.chars().value(g, p)));
                out.sub(expect);
                if (!out.is_zero())
                    return {false, "p-th power of a Weyl mode is not the assigned scalar at mode " +
                                       std::to_string(n) + " on " + m.str(w.lie())};
            }
            if (q.legal(GenMode{Fam::B, 0, n}) && q.classify(GenMode{Fam::B, 0, n}) == ModeClass::Creation) {
                auto out = v;
                for (uint32_t t = 0; t < pv; ++t) out = q.apply(GenMode{Fam::B, 0, n}, out);
                out.sub(q.apply(GenMode{Fam::B, 0, n * static_cast<int32_t>(pv)}, v));
                out.sub(v.scaled(R::from_fp(q.chars().value(GenMode{Fam::B, 0, n}, p))));
                if (!out.is_zero())
                    return {false, "Heisenberg p-center mode is not the assigned scalar at mode " +
                                       std::to_string(n) + " on " + m.str(w.lie())};
            }
        }
        // realized iota-modes of the affine algebra act as scalars (zero for
        // the trivial character)
        for (int x = 0; x < w.lie().dim(); ++x)
            for (long long n = -1; n <= 1; ++n) {
                auto out = realized_center_op(w.images(), w.lie(), x, n, q, v);
                if (!out.is_zero())
                    return {false, "realized iota(" + w.lie().basis[x].name + ")_(" + std::to_string(n) +
                                       ") does not annihilate " + m.str(w.lie())};
            }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Singular vectors
// ---------------------------------------------------------------------------

struct SingularEntry {
    int depth = 0;
    std::vector<int> weight;
    std::vector<SparseVec<Fp>> kernel;
};

struct SingularCensus {
    std::vector<SingularEntry> entries;  // nontrivial kernels only
    bool empty() const { return entries.empty(); }
};

/// Kernel census of the raising operators on each weight space up to the
/// stated depth: v is singular when e_{i,0} v = 0 and x_n v = 0 for every
/// basis x and 1 <= n.  The highest-weight line itself is excluded.  The
/// action is passed as a callable (lie index, mode, vector) -> vector so the
/// same census runs on Wakimoto quotients and baby Verma controls.
template <class Act>
SingularCensus singular_vectors(const FiniteLieData& lie, Prime p, const std::vector<Monomial>& basis, Act act,
                                int depth) {
    // bucket by (depth, weight)
    std::map<std::pair<int, std::vector<int>>, std::vector<Monomial>> buckets;
    for (auto& m : basis) {
        int d = m.depth();
        if (d > depth) continue;
        buckets[{d, m.weight(lie)}].push_back(m);
    }
    SingularCensus out;
    const std::vector<int> zero_w(lie.rank, 0);
    for (auto& [key, mons] : buckets) {
        if (key.first == 0 && key.second == zero_w) continue;  // highest-weight line
        // conditions: e_{i,0} and all x_n for 1 <= n <= bucket depth
        std::vector<std::pair<int, int>> conds;
        for (int i = 0; i < lie.rank; ++i) conds.push_back({lie.simple_e[i], 0});
        for (int n = 1; n <= key.first; ++n)
            for (int x = 0; x < lie.dim(); ++x) conds.push_back({x, n});
        // images of the bucket basis under all conditions, stacked
        std::map<Monomial, size_t> rows;
        std::vector<std::vector<SparseVec<Fp>>> images(mons.size());
        for (size_t c = 0; c < mons.size(); ++c) {
            auto v = SparseVec<Fp>::unit(mons[c], Fp::one(p));
            for (auto& [x, n] : conds) {
                auto img = act(x, n, v);
                for (auto& [m, cf] : img.terms()) rows.emplace(m, 0);
                images[c].push_back(std::move(img));
            }
        }
        size_t idx = 0;
        for (auto& [m, i] : rows) i = idx++;
        FpMatrix mat(rows.size() * conds.size() ? rows.size() * conds.size() : 1, mons.size(), p);
        // row blocks: one block of |rows| rows per condition
        for (size_t c = 0; c < mons.size(); ++c)
            for (size_t t = 0; t < conds.size(); ++t)
                for (auto& [m, cf] : images[c][t].terms()) mat.set(t * rows.size() + rows[m], c, cf);
        auto ker = mat.kernel_basis();
        if (ker.empty()) continue;
        SingularEntry e;
        e.depth = key.first;
        e.weight = key.second;
        for (auto& coords : ker) {
            SparseVec<Fp> v;
            for (size_t c = 0; c < mons.size(); ++c) v.add_term(mons[c], coords[c]);
            e.kernel.push_back(std::move(v));
        }
        out.entries.push_back(std::move(e));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Center probe of the vacuum module
// ---------------------------------------------------------------------------

struct CenterProbeRow {
    int depth = 0;
    long long commutant_dim = 0;  // vectors killed by all nonnegative generator modes
    long long p_center_dim = 0;   // graded dimension of the p-center
};

/// Per-depth comparison of {v : x_n v = 0 for all basis x, n >= 0} against
/// the graded dimension of the p-center.  Evidence gathering only: the probe
/// reports dimensions and makes no claim beyond them.
inline std::vector<CenterProbeRow> center_probe(const FiniteLieData& lie, Prime p, Fp kappa, int depth) {
    auto V = ModuleSpec<Fp>::vacuum(lie, p, kappa);
    auto counts = p_center_graded_counts(lie, p, depth);
    // cross-check the counted dimensions against the actual span
    auto states = p_center_states_by_depth(V, depth);
    std::vector<CenterProbeRow> out;
    for (int d = 0; d <= depth; ++d) {
        auto all = V.enumerate_basis(d, std::nullopt, 0);
        std::vector<Monomial> layer;
        for (auto& m : all)
            if (m.depth() == d) layer.push_back(m);
        std::map<Monomial, size_t> rows;
        std::vector<std::vector<SparseVec<Fp>>> images(layer.size());
        std::vector<std::pair<int, int>> conds;
        for (int n = 0; n <= d; ++n)
            for (int x = 0; x < lie.dim(); ++x) conds.push_back({x, n});
        for (size_t c = 0; c < layer.size(); ++c) {
            auto v = SparseVec<Fp>::unit(layer[c], Fp::one(p));
            for (auto& [x, n] : conds) {
                auto img = V.apply(GenMode{Fam::Lie, static_cast<uint8_t>(x), n}, v);
                for (auto& [m, cf] : img.terms()) rows.emplace(m, 0);
                images[c].push_back(std::move(img));
            }
        }
        size_t idx = 0;
        for (auto& [m, i] : rows) i = idx++;
        size_t nrows = std::max<size_t>(1, rows.size() * conds.size());
        FpMatrix mat(nrows, layer.size(), p);
        for (size_t c = 0; c < layer.size(); ++c)
            for (size_t t = 0; t < conds.size(); ++t)
                for (auto& [m, cf] : images[c][t].terms()) mat.set(t * rows.size() + rows[m], c, cf);
        long long cdim = layer.empty() ? 0 : static_cast<long long>(mat.kernel_basis().size());
        long long pdim = counts[d];
        if (static_cast<long long>(vectors_rank(states[d], p)) != pdim)
            throw std::logic_error("center_probe: p-center span does not match its counted dimension");
        out.push_back({d, cdim, pdim});
    }
    return out;
}

} // namespace modvertex
