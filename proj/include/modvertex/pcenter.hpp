#pragma once

#include "modvertex/field.hpp"
#include "modvertex/linalg.hpp"
#include "modvertex/parallel.hpp"
#include "modvertex/wff.hpp"

namespace modvertex {

/// p-character: the scalars assigned to the p-th powers of creation
/// generators (zero where unset).  Stored values are the full ideal shifts,
/// i.e. xi(g)^p as one scalar.
struct PCharacter {
    std::map<GenMode, Fp> values;

    static PCharacter zero() { return {}; }

    Fp value(GenMode g, Prime p) const {
        auto it = values.find(g);
        return it == values.end() ? Fp::zero(p) : it->second;
    }
    /// graded: support only on zero-mode generators
    bool graded() const {
        for (auto& [g, v] : values)
            if (g.mode != 0 && !v.is_zero()) return false;
        return true;
    }
    /// support condition: only creation generators may carry a value
    template <class R>
    std::vector<std::string> validate(const ModuleSpec<R>& m) const {
        std::vector<std::string> bad;
        for (auto& [g, v] : values) {
            if (v.is_zero()) continue;
            if (!m.legal(g) || m.classify(g) != ModeClass::Creation)
                bad.push_back("p-character supported on a non-creation generator at mode " + std::to_string(g.mode));
        }
        return bad;
    }
};

/// The state (x_{-r})^p |0> - (x^[p])_{-rp} |0> generating the p-center.
template <class R>
SparseVec<R> p_center_state(const ModuleSpec<R>& V, int x, int r) {
    if (r < 1) throw std::invalid_argument("p_center_state: r >= 1");
    const Prime p = V.prime();
    SparseVec<R> out = SparseVec<R>::unit(
        Monomial{{Factor{Fam::Lie, static_cast<uint8_t>(x), -r, p.value()}}}, R::one(p));
    for (auto& [k, c] : V.lie().p_power[x])
        out.add_term(Monomial{{Factor{Fam::Lie, static_cast<uint8_t>(k), -r * static_cast<int>(p.value()), 1}}},
                     R::from_int(-c, p));
    return out;
}

/// The Fourier-component operator of the p-center field:
/// v -> (x_n)^p v - (x^[p])_{np} v.
template <class Mod>
SparseVec<typename Mod::scalar_t> p_center_op(const Mod& mod, const FiniteLieData& lie, int x, long long n,
                                              const SparseVec<typename Mod::scalar_t>& v) {
    using R = typename Mod::scalar_t;
    const Prime p = mod.prime();
    SparseVec<R> out = v;
    for (uint32_t t = 0; t < p.value(); ++t)
        out = mod.apply(GenMode{Fam::Lie, static_cast<uint8_t>(x), static_cast<int32_t>(n)}, out);
    for (auto& [k, c] : lie.p_power[x])
        out.sub(mod.apply(GenMode{Fam::Lie, static_cast<uint8_t>(k), static_cast<int32_t>(n * p.value())}, v)
                    .scaled(R::from_int(c, p)));
    return out;
}

/// Commutativity of the Frobenius shift with the state-field correspondence:
/// the modes of Y((x_{-r}^p - (x^[p])_{-rp})|0>, z) are supported on the
/// lattice np + rp - 1 where they act as binom(-n-1, r-1)(x_n^p - x^[p]_{np}).
template <class R>
VerifyReport verify_center_field_modes(const ModuleSpec<R>& V, int x, int r, int nbound,
                                       const std::vector<Monomial>& probes, int threads = 1) {
    const Prime p = V.prime();
    const int pv = static_cast<int>(p.value());
    auto state = p_center_state(V, x, r);
    auto sf = StateField<R>::from_state(state, p);
    // the mode window covers the lattice points |n| <= nbound plus the
    // off-lattice band below the lowest one
    const int Mlo = -nbound * pv + r * pv - pv, Mhi = nbound * pv + r * pv - 1;
    std::vector<EvalCtx<ModuleSpec<R>>> ctxs(std::max(1, threads));
    FailureCollector fails;
    parallel_for(probes.size(), threads, [&](size_t t, int worker) {
        if (fails.failed()) return;
        auto v = SparseVec<R>::unit(probes[t], R::one(p));
        for (int M = Mlo; M <= Mhi; ++M) {
            auto lhs = state_field_mode(sf, M, V, v, &ctxs[worker]);
            long long num = static_cast<long long>(M) + 1 - static_cast<long long>(r) * pv;
            if (num % pv == 0) {
                long long n = num / pv;
                Fp c = fp_binom(-n - 1, r - 1, p);
                if (!c.is_zero()) lhs.sub(p_center_op(V, V.lie(), x, n, v).scaled(R::from_fp(c)));
            }
            if (!lhs.is_zero()) {
                fails.report(t, "center field of " + V.lie().basis[x].name + ", r=" + std::to_string(r) +
                                    " fails at mode (" + std::to_string(M) + ") on " + probes[t].str(V.lie()) +
                                    ": residual " + lhs.str(V.lie()));
                return;
            }
        }
    });
    if (fails.failed()) return {false, fails.witness()};
    return {};
}

/// Centrality of the p-center mode operators: [x_n^p - x^[p]_{np}, y_m] = 0.
template <class R>
VerifyReport verify_centrality(const ModuleSpec<R>& V, int nbound, const std::vector<Monomial>& probes) {
    const Prime p = V.prime();
    const auto& lie = V.lie();
    for (int x = 0; x < lie.dim(); ++x)
        for (int y = 0; y < lie.dim(); ++y)
            for (int n = -nbound; n <= nbound; ++n)
                for (int m = -nbound; m <= nbound; ++m) {
                    GenMode ym{Fam::Lie, static_cast<uint8_t>(y), m};
                    for (auto& pm : probes) {
                        auto v = SparseVec<R>::unit(pm, R::one(p));
                        auto lhs = p_center_op(V, lie, x, n, V.apply(ym, v));
                        lhs.sub(V.apply(ym, p_center_op(V, lie, x, n, v)));
                        if (!lhs.is_zero())
                            return {false, "[iota(" + lie.basis[x].name + ")_( " + std::to_string(n) + "), " +
                                               lie.basis[y].name + "[" + std::to_string(m) + "]] != 0 on " +
                                               pm.str(lie)};
                    }
                }
    return {};
}

// ---------------------------------------------------------------------------
// Restricted quotients
// ---------------------------------------------------------------------------

/// Quotient of a Fock/vacuum module by the p-character shift of its p-center:
/// the basis is the exponent-capped monomials, and any p-th power produced by
/// the action reduces to its [p]-shifted generator plus the assigned scalar.
template <class R>
class RestrictedQuotient {
  public:
    using scalar_t = R;

    RestrictedQuotient(ModuleSpec<R> base, PCharacter chars) : base_(std::move(base)), chars_(std::move(chars)) {
        auto bad = chars_.validate(base_);
        if (!bad.empty()) throw std::invalid_argument("RestrictedQuotient: " + bad.front());
    }

    const ModuleSpec<R>& base() const { return base_; }
    const PCharacter& chars() const { return chars_; }
    Prime prime() const { return base_.prime(); }
    const FiniteLieData& lie() const { return base_.lie(); }
    bool legal(GenMode g) const { return base_.legal(g); }
    ModeClass classify(GenMode g, R* s = nullptr) const { return base_.classify(g, s); }
    SparseVec<R> vacuum() const { return base_.vacuum(); }

    std::vector<Monomial> basis(int depth) const { return base_.enumerate_basis(depth, prime().value(), 0); }

    SparseVec<R> apply(GenMode g, const SparseVec<R>& v) const { return reduce(base_.apply(g, v)); }

    SparseVec<R> reduce(const SparseVec<R>& v) const {
        const Prime p = prime();
        const uint32_t pv = p.value();
        SparseVec<R> out;
        std::vector<std::pair<Monomial, R>> queue(v.terms().begin(), v.terms().end());
        while (!queue.empty()) {
            auto [m, c] = std::move(queue.back());
            queue.pop_back();
            if (c.is_zero()) continue;
            size_t hit = m.fs.size();
            for (size_t i = 0; i < m.fs.size(); ++i)
                if (m.fs[i].exp >= pv) { hit = i; break; }
            if (hit == m.fs.size()) {
                out.add_term(std::move(m), std::move(c));
                continue;
            }
            Factor f = m.fs[hit];
            Monomial rest = m;
            if (rest.fs[hit].exp > pv)
                rest.fs[hit].exp -= pv;
            else
                rest.fs.erase(rest.fs.begin() + hit);
            GenMode g{f.fam, f.idx, f.mode};
            // scalar part of the ideal shift
            Fp xi = chars_.value(g, p);
            if (!xi.is_zero()) queue.emplace_back(rest, c * R::from_fp(xi));
            // [p]-shifted generator part
            if (f.fam == Fam::B) {
                auto shifted = base_.apply(GenMode{Fam::B, f.idx, f.mode * static_cast<int32_t>(pv)},
                                           SparseVec<R>::unit(rest, c));
                for (auto& [sm, sc] : shifted.terms()) queue.emplace_back(sm, sc);
            } else if (f.fam == Fam::Lie) {
                for (auto& [k, pc] : lie().p_power[f.idx]) {
                    auto shifted =
                        base_.apply(GenMode{Fam::Lie, static_cast<uint8_t>(k), f.mode * static_cast<int32_t>(pv)},
                                    SparseVec<R>::unit(rest, c * R::from_int(pc, p)));
                    for (auto& [sm, sc] : shifted.terms()) queue.emplace_back(sm, sc);
                }
            }
            // a and a* have vanishing [p]-power: scalar part only
        }
        return out;
    }

  private:
    ModuleSpec<R> base_;
    PCharacter chars_;
};

// ---------------------------------------------------------------------------
// Graded dimension of the p-center of the vacuum module
// ---------------------------------------------------------------------------

/// Number of monomials in the generators iota(x_{-r}), x in the basis,
/// r >= 1, of total depth exactly d (each generator has depth rp).
inline std::vector<long long> p_center_graded_counts(const FiniteLieData& lie, Prime p, int depth) {
    std::vector<long long> c(depth + 1, 0);
    c[0] = 1;
    // one color per (x, r) pair with weight rp
    for (int x = 0; x < lie.dim(); ++x)
        for (int r = 1; r * static_cast<int>(p.value()) <= depth; ++r) {
            int w = r * static_cast<int>(p.value());
            for (int d = w; d <= depth; ++d) c[d] += c[d - w];
        }
    return c;
}

/// The states themselves: products of iota-operators applied to the vacuum,
/// grouped by depth.
inline std::vector<std::vector<SparseVec<Fp>>> p_center_states_by_depth(const ModuleSpec<Fp>& V, int depth) {
    const Prime p = V.prime();
    const int pv = static_cast<int>(p.value());
    std::vector<std::vector<SparseVec<Fp>>> out(depth + 1);
    // enumerate multisets of (x, r) in canonical order; the operators commute
    struct Item {
        int x, r;
    };
    std::vector<Item> gens;
    for (int x = 0; x < V.lie().dim(); ++x)
        for (int r = 1; r * pv <= depth; ++r) gens.push_back({x, r});
    std::vector<Item> chosen;
    std::function<void(size_t, int)> rec = [&](size_t i, int budget) {
        {
            SparseVec<Fp> s = V.vacuum();
            int d = 0;
            for (auto& it : chosen) {
                s = p_center_op(V, V.lie(), it.x, -it.r, s);
                d += it.r * pv;
            }
            if (!s.is_zero()) out[d].push_back(std::move(s));
        }
        for (size_t j = i; j < gens.size(); ++j) {
            int w = gens[j].r * pv;
            if (w > budget) continue;
            chosen.push_back(gens[j]);
            rec(j, budget - w);
            chosen.pop_back();
        }
    };
    rec(0, depth);
    return out;
}

/// Rank of a family of vectors expressed over their joint monomial support.
inline size_t vectors_rank(const std::vector<SparseVec<Fp>>& vecs, Prime p) {
    if (vecs.empty()) return 0;
    std::map<Monomial, size_t> cols;
    for (auto& v : vecs)
        for (auto& [m, c] : v.terms()) cols.emplace(m, 0);
    size_t idx = 0;
    for (auto& [m, i] : cols) i = idx++;
    FpMatrix mat(vecs.size(), cols.size(), p);
    for (size_t r = 0; r < vecs.size(); ++r)
        for (auto& [m, c] : vecs[r].terms()) mat.set(r, cols[m], c);
    return mat.rank();
}

// ---------------------------------------------------------------------------
// Restriction of the free-field realization to the p-center (explicit
// closed forms with the Frobenius-twisted structure polynomials)
// ---------------------------------------------------------------------------

namespace detail {

template <class R>
FieldExpr<R> poly_p_power_current(const AStarPoly& poly, int beta, Prime p) {
    // (sum_t c_t m_t(a*))^p a_beta^p = sum_t c_t^p m_t(a*^p) a_beta^p since
    // the a* fields commute and Frobenius is additive
    std::vector<FieldExpr<R>> terms;
    for (auto& [coeff, mono] : poly.terms) {
        Fp cp = fp_pow(Fp::from_int(coeff, p), p.value());
        if (cp.is_zero()) continue;
        std::vector<FieldExpr<R>> parts;
        for (auto& [gamma, e] : mono.factors)
            for (int t = 0; t < e; ++t)
                parts.push_back(fe_pow(static_cast<int>(p.value()), fe_gen<R>(Fam::AStar, static_cast<uint8_t>(gamma))));
        parts.push_back(fe_pow(static_cast<int>(p.value()), fe_gen<R>(Fam::A, static_cast<uint8_t>(beta))));
        terms.push_back(fe_scale(R::from_fp(cp), fe_nop(std::move(parts))));
    }
    if (terms.empty()) return fe_scale(R::zero(p), fe_const(R::one(p)));
    return fe_sum(std::move(terms));
}

template <class R>
FieldExpr<R> heisenberg_p_field(int i, Prime p) {
    // b_i(z)^p - d^{(p-1)} b_i(z)
    return fe_sum<R>({fe_pow(static_cast<int>(p.value()), fe_gen<R>(Fam::B, static_cast<uint8_t>(i))),
                      fe_scale(R::from_int(-1, p), fe_dd(static_cast<int>(p.value()) - 1, fe_gen<R>(Fam::B, static_cast<uint8_t>(i))))});
}

} // namespace detail

/// Closed forms of the realized p-center fields for the simple triple i:
///   iota(e_i)^w = a_{alpha_i}^p + sum P^p a_beta^p
///   iota(h_i)^w = -sum beta(h_i) a*_beta^p a_beta^p + b_i^p - d^{(p-1)} b_i
///   iota(f_i)^w = sum Q^p a_beta^p + (kappa^p - kappa)<e_i,f_i> (d/dz a*)^p
///                 + a*_{alpha_i}^p (b_i^p - d^{(p-1)} b_i)
template <class R>
WffTriple<R> center_image_closed_forms(int i, const R& kappa, const WffData& data, const FiniteLieData& lie,
                                       Prime p) {
    const int pv = static_cast<int>(p.value());
    const int npos = static_cast<int>(lie.positive_roots.size());
    const int ai = detail::simple_root_index(lie, i);

    std::vector<FieldExpr<R>> eparts;
    eparts.push_back(fe_pow(pv, fe_gen<R>(Fam::A, static_cast<uint8_t>(ai))));
    for (int beta = 0; beta < npos; ++beta) {
        if (beta == ai) continue;
        eparts.push_back(detail::poly_p_power_current<R>(data.P.at({i, beta}), beta, p));
    }

    std::vector<FieldExpr<R>> hparts;
    for (int beta = 0; beta < npos; ++beta) {
        R coef = R::from_int(-detail::root_on_cartan(lie, beta, i), p);
        if (coef.is_zero()) continue;
        hparts.push_back(fe_scale(std::move(coef),
                                  fe_nop<R>({fe_pow(pv, fe_gen<R>(Fam::AStar, static_cast<uint8_t>(beta))),
                                             fe_pow(pv, fe_gen<R>(Fam::A, static_cast<uint8_t>(beta)))})));
    }
    hparts.push_back(detail::heisenberg_p_field<R>(i, p));

    std::vector<FieldExpr<R>> fparts;
    for (int beta = 0; beta < npos; ++beta) {
        auto it = data.Q.find({i, beta});
        if (it != data.Q.end()) fparts.push_back(detail::poly_p_power_current<R>(it->second, beta, p));
    }
    R eta = (ring_pow(kappa, p.value()) - kappa) * R::from_int(lie.form[lie.simple_e[i]][lie.simple_f[i]], p);
    fparts.push_back(fe_scale(std::move(eta), fe_pow(pv, fe_dd(1, fe_gen<R>(Fam::AStar, static_cast<uint8_t>(ai))))));
    fparts.push_back(fe_nop<R>({fe_pow(pv, fe_gen<R>(Fam::AStar, static_cast<uint8_t>(ai))),
                                detail::heisenberg_p_field<R>(i, p)}));

    return {fe_sum(std::move(eparts)), fe_sum(std::move(hparts)), fe_sum(std::move(fparts))};
}

/// The honest operator on the free-field side: (x^w_(m))^p - (x^[p],w)_(mp).
template <class R, class Mod>
SparseVec<R> realized_center_op(const std::vector<FieldExpr<R>>& images, const FiniteLieData& lie, int x,
                                long long m, const Mod& mod, const SparseVec<R>& v) {
    const Prime p = mod.prime();
    SparseVec<R> out = v;
    for (uint32_t t = 0; t < p.value(); ++t) out = field_mode(images[x], static_cast<int>(m), mod, out);
    for (auto& [k, c] : lie.p_power[x])
        out.sub(field_mode(images[k], static_cast<int>(m * p.value()), mod, v).scaled(R::from_int(c, p)));
    return out;
}

/// Keep only monomials built from the allowed families.
template <class R>
SparseVec<R> project_families(const SparseVec<R>& v, bool keep_a, bool keep_astar, bool keep_b) {
    SparseVec<R> out;
    for (auto& [m, c] : v.terms()) {
        bool ok = true;
        for (auto& f : m.fs) {
            if ((f.fam == Fam::A && !keep_a) || (f.fam == Fam::AStar && !keep_astar) ||
                (f.fam == Fam::B && !keep_b)) {
                ok = false;
                break;
            }
        }
        if (ok) out.add_term(m, c);
    }
    return out;
}

/// Restriction of the realization to the p-center: the operator power of the
/// realized current against the closed-form field, mode by mode (off-lattice
/// modes of the closed form must vanish), the commutation of the realized
/// center with all Weyl modes, and the isolated Heisenberg / level
/// coefficients of the f-image.
template <class R>
VerifyReport verify_wff_pcenter_images(const FiniteLieData& lie, const WffData& data, Prime p, const R& kappa,
                                       int mode_bound, int depth, int threads = 1) {
    const int pv = static_cast<int>(p.value());
    auto mod = wff_target_module<R>(lie, p, kappa, std::vector<R>(lie.rank, R::zero(p)));
    auto images = wff_images_by_basis<R>(kappa, data, lie, p);
    auto closed_triple = center_image_closed_forms<R>(0, kappa, data, lie, p);
    std::vector<FieldExpr<R>> closed = {closed_triple.f, closed_triple.h, closed_triple.e};

    auto basis = mod.enumerate_basis(depth, std::nullopt, p.value());
    const int Nlo = -mode_bound * pv, Nhi = mode_bound * pv + pv - 1;

    {
        std::vector<EvalCtx<ModuleSpec<R>>> ctxs(std::max(1, threads));
        FailureCollector fails;
        parallel_for(basis.size(), threads, [&](size_t t, int worker) {
            if (fails.failed()) return;
            auto v = SparseVec<R>::unit(basis[t], R::one(p));
            for (int x = 0; x < 3; ++x) {
                for (int N = Nlo; N <= Nhi; ++N) {
                    const bool lattice = ((N + 1) % pv + pv) % pv == 0;
                    const long long m = lattice ? (N + 1) / pv - 1 : 0;
                    SparseVec<R> lhs;
                    if (lattice) lhs = realized_center_op(images, lie, x, m, mod, v);
                    lhs.sub(field_mode(closed[x], N, mod, v, &ctxs[worker]));
                    if (!lhs.is_zero()) {
                        fails.report(t, "center image of " + lie.basis[x].name + " fails at mode (" +
                                            std::to_string(N) + ") on " + basis[t].str(lie) + ": residual " +
                                            lhs.str(lie));
                        return;
                    }
                }
                // commutation with the Weyl modes (both families)
                for (long long m = -1; m <= 1; ++m)
                    for (int wm = -2; wm <= 2; ++wm)
                        for (Fam fam : {Fam::A, Fam::AStar}) {
                            GenMode g{fam, 0, wm};
                            auto lhs = realized_center_op(images, lie, x, m, mod, mod.apply(g, v));
                            lhs.sub(mod.apply(g, realized_center_op(images, lie, x, m, mod, v)));
                            if (!lhs.is_zero()) {
                                fails.report(t, "realized center of " + lie.basis[x].name +
                                                    " does not commute with " +
                                                    std::string(fam == Fam::A ? "a" : "a*") + "[" +
                                                    std::to_string(wm) + "] on " + basis[t].str(lie));
                                return;
                            }
                        }
            }
        });
        if (fails.failed()) return {false, fails.witness()};
    }
    EvalCtx<ModuleSpec<R>> ctx;

    // isolated Heisenberg part of the h-image on pure-b probes
    {
        auto rb = detail::heisenberg_p_field<R>(0, p);
        auto pi_basis = ModuleSpec<R>::heisenberg(lie, p, R::one(p), std::vector<R>(lie.rank, R::zero(p)))
                            .enumerate_basis(depth, std::nullopt, 0);
        for (auto& m : pi_basis) {
            auto v = SparseVec<R>::unit(m, R::one(p));
            for (int N = Nlo; N <= Nhi; ++N) {
                const bool lattice = ((N + 1) % pv + pv) % pv == 0;
                if (!lattice) continue;
                const long long mm = (N + 1) / pv - 1;
                auto lhs = project_families(realized_center_op(images, lie, 1, mm, mod, v), false, false, true);
                lhs.sub(field_mode(rb, N, mod, v, &ctx));
                if (!lhs.is_zero())
                    return {false, "Heisenberg part of the h center image is not b^p - d^{(p-1)}b at mode (" +
                                       std::to_string(N) + ") on " + m.str(lie)};
            }
        }
    }

    // isolated level coefficient of the f-image on the vacuum: the pure-a*
    // component must be (kappa^p - kappa)<e,f> (d/dz a*)^p
    {
        R eta = (ring_pow(kappa, p.value()) - kappa) * R::from_int(lie.form[lie.simple_e[0]][lie.simple_f[0]], p);
        auto eta_field = fe_scale(eta, fe_pow(pv, fe_dd(1, fe_gen<R>(Fam::AStar, 0))));
        auto vac = mod.vacuum();
        for (int N = Nlo; N <= Nhi; ++N) {
            const bool lattice = ((N + 1) % pv + pv) % pv == 0;
            if (!lattice) continue;
            const long long mm = (N + 1) / pv - 1;
            auto lhs = project_families(realized_center_op(images, lie, 0, mm, mod, vac), false, true, false);
            lhs.sub(field_mode(eta_field, N, mod, vac, &ctx));
            if (!lhs.is_zero())
                return {false, "level coefficient of the f center image is not kappa^p - kappa at mode (" +
                                   std::to_string(N) + "): residual " + lhs.str(lie)};
        }
    }

    return {};
}

} // namespace modvertex
