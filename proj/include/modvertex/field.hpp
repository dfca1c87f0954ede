#pragma once

#include <functional>
#include <memory>
#include <unordered_map>
#include <tuple>

#include "modvertex/module.hpp"
#include "modvertex/parallel.hpp"

namespace modvertex {

/// Closed expression tree of fields.  Fields are never materialized as
/// series: the only evaluation semantics is a Fourier mode acting on a
/// vector, which is a finite computation because high modes annihilate
/// finite vectors.  Modes are indexed generically, A(z) = sum A_(n) z^{-n-1};
/// the classical index of a weight-0 generator is shifted by one.
template <class R>
struct FieldExpr {
    enum class K { Gen, DDeriv, Nop, Sum, Scale, Pow, Const };

    K k = K::Const;
    Fam fam = Fam::A;          // Gen
    uint8_t idx = 0;           // Gen
    int param = 0;             // DDeriv: order; Pow: exponent
    std::optional<R> coeff;    // Scale, Const
    std::vector<FieldExpr> kids;

    /// Conformal-weight bound used for mode-sum termination: every
    /// homogeneous component has weight <= max_weight(), so F_(j) v = 0
    /// whenever j > depth(v) + max_weight() - 1.
    int max_weight() const {
        switch (k) {
            case K::Gen: return fam == Fam::AStar ? 0 : 1;
            case K::DDeriv: return param + kids[0].max_weight();
            case K::Nop: {
                int w = 0;
                for (auto& c : kids) w += c.max_weight();
                return w;
            }
            case K::Sum: {
                int w = 0;
                for (auto& c : kids) w = std::max(w, c.max_weight());
                return w;
            }
            case K::Scale: return kids[0].max_weight();
            case K::Pow: return param * kids[0].max_weight();
            case K::Const: return 0;
        }
        return 0;
    }
};

template <class R>
FieldExpr<R> fe_gen(Fam fam, uint8_t idx = 0) {
    FieldExpr<R> e;
    e.k = FieldExpr<R>::K::Gen;
    e.fam = fam;
    e.idx = idx;
    return e;
}
template <class R>
FieldExpr<R> fe_dd(int order, FieldExpr<R> child) {
    if (order == 0) return child;
    FieldExpr<R> e;
    e.k = FieldExpr<R>::K::DDeriv;
    e.param = order;
    e.kids.push_back(std::move(child));
    return e;
}
template <class R>
FieldExpr<R> fe_nop(std::vector<FieldExpr<R>> kids) {
    if (kids.empty()) throw std::invalid_argument("fe_nop: empty product");
    if (kids.size() == 1) return std::move(kids[0]);
    FieldExpr<R> e;
    e.k = FieldExpr<R>::K::Nop;
    e.kids = std::move(kids);
    return e;
}
template <class R>
FieldExpr<R> fe_sum(std::vector<FieldExpr<R>> kids) {
    if (kids.size() == 1) return std::move(kids[0]);
    FieldExpr<R> e;
    e.k = FieldExpr<R>::K::Sum;
    e.kids = std::move(kids);
    return e;
}
template <class R>
FieldExpr<R> fe_scale(R c, FieldExpr<R> child) {
    FieldExpr<R> e;
    e.k = FieldExpr<R>::K::Scale;
    e.coeff = std::move(c);
    e.kids.push_back(std::move(child));
    return e;
}
template <class R>
FieldExpr<R> fe_pow(int exponent, FieldExpr<R> child) {
    if (exponent < 1) throw std::invalid_argument("fe_pow: exponent < 1");
    if (exponent == 1) return child;
    FieldExpr<R> e;
    e.k = FieldExpr<R>::K::Pow;
    e.param = exponent;
    e.kids.push_back(std::move(child));
    return e;
}
template <class R>
FieldExpr<R> fe_const(R c) {
    FieldExpr<R> e;
    e.k = FieldExpr<R>::K::Const;
    e.coeff = std::move(c);
    return e;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Dictionary between the two mode conventions: a field of conformal weight
/// w expands as sum X_m z^{-m-w} in its classical index m, so the generic
/// mode (n) of A(z) = sum A_(n) z^{-n-1} picks the classical index n + 1 - w.
inline int classical_index(int generic, int weight) { return generic + 1 - weight; }

template <class Mod>
class EvalCtx;

template <class Mod>
SparseVec<typename Mod::scalar_t> field_mode(const FieldExpr<typename Mod::scalar_t>& e, int n, const Mod& mod,
                                             const SparseVec<typename Mod::scalar_t>& v, EvalCtx<Mod>* ctx = nullptr);

namespace detail {

/// Shared evaluation table for one p-th-power node: memoizes the right-nested
/// two-sided NOP recursion over (power, vector, mode).  Vectors are interned
/// by value, so results are reused across modes and across the annihilation
/// branches, which is what makes deep powers affordable without assuming any
/// commutation.
template <class Mod>
class PowTable {
    using R = typename Mod::scalar_t;

  public:
    explicit PowTable(const FieldExpr<R>& child) : child_(&child), w_(child.max_weight()) {}

    SparseVec<R> mode(int k, const SparseVec<R>& v, int n, const Mod& mod, EvalCtx<Mod>* ctx) {
        return eval(k, intern(v), n, mod, ctx);
    }

  private:
    int intern(const SparseVec<R>& v) {
        auto it = ids_.find(v.terms());
        if (it != ids_.end()) return it->second;
        int id = static_cast<int>(vecs_.size());
        vecs_.push_back(v);
        depths_.push_back(v.max_depth());
        ids_.emplace(v.terms(), id);
        return id;
    }

    SparseVec<R> eval(int k, int vid, int n, const Mod& mod, EvalCtx<Mod>* ctx) {
        if (k == 1) return field_mode(*child_, n, mod, vecs_[vid], ctx);
        auto key = std::make_tuple(k, vid, n);
        auto mit = memo_.find(key);
        if (mit != memo_.end()) return mit->second;
        const int d = depths_[vid];
        SparseVec<R> out;
        // creation side: child_(j) applied after the (k-1)-power
        for (int j = n - d - (k - 1) * w_; j <= -1; ++j) {
            SparseVec<R> inner = eval(k - 1, vid, n - j - 1, mod, ctx);
            if (inner.is_zero()) continue;
            out += field_mode(*child_, j, mod, inner, ctx);
        }
        // annihilation side: child_(j) applied first
        for (int j = 0; j <= d + w_ - 1; ++j) {
            SparseVec<R> u = field_mode(*child_, j, mod, vecs_[vid], ctx);
            if (u.is_zero()) continue;
            out += eval(k - 1, intern(u), n - j - 1, mod, ctx);
        }
        memo_.emplace(std::move(key), out);
        return out;
    }

    struct KeyHash {
        size_t operator()(const std::tuple<int, int, int>& k) const {
            uint64_t h = 1469598103934665603ull;
            for (uint64_t x : {static_cast<uint64_t>(std::get<0>(k)), static_cast<uint64_t>(std::get<1>(k)),
                               static_cast<uint64_t>(std::get<2>(k))}) {
                h ^= x + 0x9e3779b97f4a7c15ull;
                h *= 1099511628211ull;
            }
            return static_cast<size_t>(h);
        }
    };

    const FieldExpr<R>* child_;
    int w_;
    std::vector<SparseVec<R>> vecs_;
    std::vector<int> depths_;
    std::map<typename SparseVec<R>::map_t, int> ids_;
    std::unordered_map<std::tuple<int, int, int>, SparseVec<R>, KeyHash> memo_;
};

} // namespace detail

/// Caller-provided evaluation context: keeps PowTable state alive across
/// field_mode calls (field expressions must outlive the context), and holds
/// the opt-in fast path switch for p-th powers of single-generator fields.
template <class Mod>
class EvalCtx {
  public:
    bool pow_fastpath = false;

    detail::PowTable<Mod>& table_for(const FieldExpr<typename Mod::scalar_t>& node) {
        auto it = tables_.find(&node);
        if (it == tables_.end())
            it = tables_.emplace(&node, detail::PowTable<Mod>(node.kids[0])).first;
        return it->second;
    }
    void clear() { tables_.clear(); }

  private:
    std::map<const void*, detail::PowTable<Mod>> tables_;
};

namespace detail {

template <class Mod>
SparseVec<typename Mod::scalar_t> nop_mode(const std::vector<const FieldExpr<typename Mod::scalar_t>*>& parts,
                                           size_t i, int n, const Mod& mod,
                                           const SparseVec<typename Mod::scalar_t>& v, EvalCtx<Mod>* ctx);

// Single-generator shape A = gen or divided derivative of gen: classical
// series A(z) = sum_n c_n X_n z^{-n-r_eff}.  Returns (fam, idx, r_eff, dd).
template <class R>
bool single_gen_shape(const FieldExpr<R>& e, Fam& fam, uint8_t& idx, int& r_eff, int& dd) {
    using K = typename FieldExpr<R>::K;
    if (e.k == K::Gen) {
        fam = e.fam;
        idx = e.idx;
        dd = 0;
        r_eff = e.fam == Fam::AStar ? 0 : 1;
        return true;
    }
    if (e.k == K::DDeriv && e.kids[0].k == K::Gen) {
        fam = e.kids[0].fam;
        idx = e.kids[0].idx;
        dd = e.param;
        r_eff = (fam == Fam::AStar ? 0 : 1) + e.param;
        return true;
    }
    return false;
}

} // namespace detail

/// Exact Fourier-mode action: e_(n) v in the given module.
template <class Mod>
SparseVec<typename Mod::scalar_t> field_mode(const FieldExpr<typename Mod::scalar_t>& e, int n, const Mod& mod,
                                             const SparseVec<typename Mod::scalar_t>& v, EvalCtx<Mod>* ctx) {
    using R = typename Mod::scalar_t;
    using K = typename FieldExpr<R>::K;
    const Prime p = mod.prime();
    if (v.is_zero()) return {};
    // modes beyond the weight bound push every output below depth zero
    if (n > v.max_depth() + e.max_weight() - 1) return {};
    switch (e.k) {
        case K::Gen:
            return mod.apply(GenMode{e.fam, e.idx, classical_index(n, e.fam == Fam::AStar ? 0 : 1)}, v);
        case K::DDeriv: {
            Fp c = fp_binom(static_cast<long long>(e.param) - n - 1, e.param, p);
            if (c.is_zero()) return {};
            return field_mode(e.kids[0], n - e.param, mod, v, ctx).scaled(R::from_fp(c));
        }
        case K::Sum: {
            SparseVec<R> out;
            for (auto& kid : e.kids) out += field_mode(kid, n, mod, v, ctx);
            return out;
        }
        case K::Scale: return field_mode(e.kids[0], n, mod, v, ctx).scaled(*e.coeff);
        case K::Const: return n == -1 ? v.scaled(*e.coeff) : SparseVec<R>{};
        case K::Pow: {
            if (ctx && ctx->pow_fastpath && e.param == static_cast<int>(p.value())) {
                Fam fam;
                uint8_t idx;
                int r_eff, dd;
                if (detail::single_gen_shape(e.kids[0], fam, idx, r_eff, dd)) {
                    // :A^p:_(M) is nonzero only on the lattice M = np + r_eff*p - 1,
                    // where it acts as c_n X_n^p with c_n the derivative coefficient.
                    long long num = static_cast<long long>(n) + 1 - static_cast<long long>(r_eff) * p.value();
                    if (num % p.value() != 0) return {};
                    long long cl = num / static_cast<long long>(p.value());
                    int r0 = fam == Fam::AStar ? 0 : 1;
                    Fp c = fp_binom(-cl - r0, dd, p);
                    if (c.is_zero()) return {};
                    SparseVec<R> out = v;
                    for (uint32_t t = 0; t < p.value(); ++t)
                        out = mod.apply(GenMode{fam, idx, static_cast<int32_t>(cl)}, out);
                    return out.scaled(R::from_fp(c));
                }
            }
            if (ctx) return ctx->table_for(e).mode(e.param, v, n, mod, ctx);
            detail::PowTable<Mod> local(e.kids[0]);
            return local.mode(e.param, v, n, mod, ctx);
        }
        case K::Nop: {
            // right-nested: :A (rest):
            std::vector<const FieldExpr<R>*> parts;
            for (auto& kid : e.kids) parts.push_back(&kid);
            return detail::nop_mode<Mod>(parts, 0, n, mod, v, ctx);
        }
    }
    return {};
}

namespace detail {

template <class Mod>
SparseVec<typename Mod::scalar_t> nop_mode(const std::vector<const FieldExpr<typename Mod::scalar_t>*>& parts,
                                           size_t i, int n, const Mod& mod,
                                           const SparseVec<typename Mod::scalar_t>& v, EvalCtx<Mod>* ctx) {
    using R = typename Mod::scalar_t;
    if (v.is_zero()) return {};
    if (i + 1 == parts.size()) return field_mode(*parts[i], n, mod, v, ctx);
    const int d = v.max_depth();
    const int wa = parts[i]->max_weight();
    int wb = 0;
    for (size_t t = i + 1; t < parts.size(); ++t) wb += parts[t]->max_weight();
    SparseVec<R> out;
    for (int j = n - d - wb; j <= -1; ++j) {
        SparseVec<R> inner = nop_mode(parts, i + 1, n - j - 1, mod, v, ctx);
        if (inner.is_zero()) continue;
        out += field_mode(*parts[i], j, mod, inner, ctx);
    }
    for (int j = 0; j <= d + wa - 1; ++j) {
        SparseVec<R> u = field_mode(*parts[i], j, mod, v, ctx);
        if (u.is_zero()) continue;
        out += nop_mode(parts, i + 1, n - j - 1, mod, u, ctx);
    }
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// State-field correspondence
// ---------------------------------------------------------------------------

/// Field expression of one basis monomial: each creation factor becomes a
/// divided derivative of its generator field and the factors multiply into a
/// right-nested normal ordered product.  Normal ordering is not associative,
/// so repeated factors are expanded flat; only the trailing factor may be
/// grouped as a power, where grouping coincides with the flat right nesting
/// (this keeps the memoized power evaluator on the p-th power states).
template <class R>
FieldExpr<R> monomial_field(const Monomial& m, Prime p) {
    if (m.fs.empty()) return fe_const(R::one(p));
    std::vector<FieldExpr<R>> parts;
    for (size_t t = 0; t < m.fs.size(); ++t) {
        const Factor& f = m.fs[t];
        int order;
        switch (f.fam) {
            case Fam::AStar: order = -f.mode; break;
            default: order = -f.mode - 1; break;
        }
        if (order < 0) throw std::invalid_argument("monomial_field: not a creation factor");
        FieldExpr<R> base = fe_dd(order, fe_gen<R>(f.fam, f.idx));
        if (t + 1 == m.fs.size() && f.exp > 1) {
            parts.push_back(fe_pow(static_cast<int>(f.exp), std::move(base)));
        } else {
            for (uint32_t e = 0; e < f.exp; ++e) parts.push_back(base);
        }
    }
    return fe_nop(std::move(parts));
}

/// Prebuilt field of a state vector; build once, evaluate at many modes.
template <class R>
struct StateField {
    std::vector<std::pair<FieldExpr<R>, R>> comps;

    static StateField from_state(const SparseVec<R>& state, Prime p) {
        StateField sf;
        for (auto& [m, c] : state.terms()) sf.comps.emplace_back(monomial_field<R>(m, p), c);
        return sf;
    }
    int max_weight() const {
        int w = 0;
        for (auto& [e, c] : comps) w = std::max(w, e.max_weight());
        return w;
    }
};

template <class Mod>
SparseVec<typename Mod::scalar_t> state_field_mode(const StateField<typename Mod::scalar_t>& sf, int n,
                                                   const Mod& mod, const SparseVec<typename Mod::scalar_t>& v,
                                                   EvalCtx<Mod>* ctx = nullptr) {
    SparseVec<typename Mod::scalar_t> out;
    for (auto& [e, c] : sf.comps) out += field_mode(e, n, mod, v, ctx).scaled(c);
    return out;
}

/// Y(state, z)_(n) v, translating the state through the state-field
/// correspondence.  Linear in the state.
template <class Mod>
SparseVec<typename Mod::scalar_t> reconstruct_Y(const SparseVec<typename Mod::scalar_t>& state, int n,
                                                const Mod& mod, const SparseVec<typename Mod::scalar_t>& v,
                                                EvalCtx<Mod>* ctx = nullptr) {
    using R = typename Mod::scalar_t;
    auto sf = StateField<R>::from_state(state, mod.prime());
    return state_field_mode(sf, n, mod, v, ctx);
}

// ---------------------------------------------------------------------------
// Borcherds commutator identity
// ---------------------------------------------------------------------------

/// Checks [x_(m), y_(n)] = sum_{i>=0} binom(m, i) (x_(i) y)_(m+n-i) on the
/// given probes; exact, with a witness on the first failure.
template <class Mod>
VerifyReport check_borcherds(const SparseVec<typename Mod::scalar_t>& x, const SparseVec<typename Mod::scalar_t>& y,
                             int m, int n, const Mod& mod,
                             const std::vector<SparseVec<typename Mod::scalar_t>>& probes) {
    using R = typename Mod::scalar_t;
    const Prime p = mod.prime();
    auto sx = StateField<R>::from_state(x, p);
    auto sy = StateField<R>::from_state(y, p);
    // states x_(i) y vanish once i exceeds depth(y) + weight bound
    const int imax = y.max_depth() + sx.max_weight() - 1;
    std::vector<std::pair<StateField<R>, Fp>> rhs_fields;  // (field of x_(i)y, binom(m,i)) at m+n-i
    std::vector<int> rhs_modes;
    for (int i = 0; i <= imax; ++i) {
        Fp c = fp_binom(m, i, p);
        if (c.is_zero()) continue;
        auto xi_y = state_field_mode(sx, i, mod, y);
        if (xi_y.is_zero()) continue;
        rhs_fields.emplace_back(StateField<R>::from_state(xi_y, p), c);
        rhs_modes.push_back(m + n - i);
    }
    for (const auto& v : probes) {
        auto lhs = state_field_mode(sx, m, mod, state_field_mode(sy, n, mod, v));
        lhs.sub(state_field_mode(sy, n, mod, state_field_mode(sx, m, mod, v)));
        for (size_t t = 0; t < rhs_fields.size(); ++t)
            lhs.sub(state_field_mode(rhs_fields[t].first, rhs_modes[t], mod, v).scaled(R::from_fp(rhs_fields[t].second)));
        if (!lhs.is_zero())
            return {false, "commutator formula fails at (m,n)=(" + std::to_string(m) + "," + std::to_string(n) +
                               ") on probe " + v.str(mod.lie()) + ": residual " + lhs.str(mod.lie())};
    }
    return {};
}

// ---------------------------------------------------------------------------
// Mode identities for state fields and p-th power fields
// ---------------------------------------------------------------------------

namespace detail {

template <class Mod>
using VecOf = SparseVec<typename Mod::scalar_t>;

template <class Mod>
VerifyReport compare_modes(const Mod& mod, const FieldExpr<typename Mod::scalar_t>& lhs_field,
                           const std::function<VecOf<Mod>(int /*mode*/, const VecOf<Mod>&)>& rhs_op, int mode_lo,
                           int mode_hi, const std::vector<Monomial>& probes, const std::string& what,
                           int threads = 1) {
    using R = typename Mod::scalar_t;
    std::vector<EvalCtx<Mod>> ctxs(std::max(1, threads));
    FailureCollector fails;
    parallel_for(probes.size(), threads, [&](size_t t, int worker) {
        if (fails.failed()) return;
        auto v = SparseVec<R>::unit(probes[t], R::one(mod.prime()));
        for (int M = mode_lo; M <= mode_hi; ++M) {
            auto lhs = field_mode(lhs_field, M, mod, v, &ctxs[worker]);
            lhs.sub(rhs_op(M, v));
            if (!lhs.is_zero()) {
                fails.report(t, what + " fails at mode (" + std::to_string(M) + ") on probe " +
                                    probes[t].str(mod.lie()) + ": residual " + lhs.str(mod.lie()));
                return;
            }
        }
    });
    if (fails.failed()) return {false, fails.witness()};
    return {};
}

} // namespace detail

/// Y(x_{-r}|0>, z) = sum_n binom(-n-1, r-1) x_n z^{-n-r}: the divided
/// derivative field evaluated mode by mode against direct generator action.
template <class Mod>
VerifyReport check_state_field_modes(const Mod& mod, int lie_idx, int r, int nbound,
                                     const std::vector<Monomial>& probes, int threads = 1) {
    using R = typename Mod::scalar_t;
    const Prime p = mod.prime();
    auto lhs = fe_dd(r - 1, fe_gen<R>(Fam::Lie, static_cast<uint8_t>(lie_idx)));
    auto rhs = [&](int M, const SparseVec<R>& v) {
        // z^{-n-r} matches generic mode M = n + r - 1
        long long n = static_cast<long long>(M) - r + 1;
        Fp c = fp_binom(-n - 1, r - 1, p);
        if (c.is_zero()) return SparseVec<R>{};
        return mod.apply(GenMode{Fam::Lie, static_cast<uint8_t>(lie_idx), static_cast<int32_t>(n)}, v)
            .scaled(R::from_fp(c));
    };
    return detail::compare_modes<Mod>(mod, lhs, rhs, -(nbound + r + 1), nbound + r + 1, probes,
                                      "state-field r=" + std::to_string(r), threads);
}

/// Y(x_{-rp}|0>, z) = sum_n binom(-n-1, r-1) x_{np} z^{-np-rp}: the divided
/// derivative of order rp-1 is supported on the mode-p lattice.
template <class Mod>
VerifyReport check_p_power_lattice_modes(const Mod& mod, int lie_idx, int r, int nbound,
                                         const std::vector<Monomial>& probes, int threads = 1) {
    using R = typename Mod::scalar_t;
    const Prime p = mod.prime();
    const int pv = static_cast<int>(p.value());
    auto lhs = fe_dd(r * pv - 1, fe_gen<R>(Fam::Lie, static_cast<uint8_t>(lie_idx)));
    auto rhs = [&](int M, const SparseVec<R>& v) {
        long long num = static_cast<long long>(M) + 1 - static_cast<long long>(r) * pv;
        if (num % pv != 0) return SparseVec<R>{};
        long long n = num / pv;
        Fp c = fp_binom(-n - 1, r - 1, p);
        if (c.is_zero()) return SparseVec<R>{};
        return mod.apply(GenMode{Fam::Lie, static_cast<uint8_t>(lie_idx), static_cast<int32_t>(n * pv)}, v)
            .scaled(R::from_fp(c));
    };
    // lattice points |n| <= nbound plus the off-lattice band below the lowest
    return detail::compare_modes<Mod>(mod, lhs, rhs, -nbound * pv + r * pv - pv, nbound * pv + r * pv - 1, probes,
                                      "p-power lattice field r=" + std::to_string(r), threads);
}

/// Y(x_{-r}^p|0>, z) = :(d^{(r-1)} x(z))^p: = sum_n binom(-n-1, r-1) x_n^p
/// z^{-np-rp}: the honestly expanded normal ordered p-th power against the
/// p-fold operator power of a single mode.
template <class Mod>
VerifyReport check_p_power_nop_modes(const Mod& mod, int lie_idx, int r, int nbound,
                                     const std::vector<Monomial>& probes, int threads = 1) {
    using R = typename Mod::scalar_t;
    const Prime p = mod.prime();
    const int pv = static_cast<int>(p.value());
    auto lhs = fe_pow(pv, fe_dd(r - 1, fe_gen<R>(Fam::Lie, static_cast<uint8_t>(lie_idx))));
    auto rhs = [&](int M, const SparseVec<R>& v) {
        long long num = static_cast<long long>(M) + 1 - static_cast<long long>(r) * pv;
        if (num % pv != 0) return SparseVec<R>{};
        long long n = num / pv;
        Fp c = fp_binom(-n - 1, r - 1, p);
        if (c.is_zero()) return SparseVec<R>{};
        SparseVec<R> out = v;
        for (int t = 0; t < pv; ++t)
            out = mod.apply(GenMode{Fam::Lie, static_cast<uint8_t>(lie_idx), static_cast<int32_t>(n)}, out);
        return out.scaled(R::from_fp(c));
    };
    return detail::compare_modes<Mod>(mod, lhs, rhs, -nbound * pv + r * pv - pv, nbound * pv + r * pv - 1, probes,
                                      "p-th power field r=" + std::to_string(r), threads);
}

/// Degenerate normal ordering: for fields whose modes all commute the normal
/// ordered product equals the unrestricted two-sided composition.
template <class Mod>
VerifyReport check_nop_of_commuting(const Mod& mod, const FieldExpr<typename Mod::scalar_t>& a,
                                    const FieldExpr<typename Mod::scalar_t>& b, int nbound,
                                    const std::vector<Monomial>& probes) {
    using R = typename Mod::scalar_t;
    auto prod = fe_nop<R>({a, b});
    for (auto& pm : probes) {
        auto v = SparseVec<R>::unit(pm, R::one(mod.prime()));
        int d = pm.depth();
        for (int M = -nbound; M <= nbound; ++M) {
            auto lhs = field_mode(prod, M, mod, v);
            // full two-sided sum without reordering
            SparseVec<R> rhs;
            for (int j = M - d - b.max_weight(); j <= d + a.max_weight() - 1; ++j) {
                auto inner = field_mode(b, M - j - 1, mod, v);
                if (inner.is_zero()) continue;
                rhs += field_mode(a, j, mod, inner);
            }
            lhs.sub(rhs);
            if (!lhs.is_zero())
                return {false, "normal ordering of commuting fields differs from composition at mode " +
                                   std::to_string(M) + " on " + pm.str(mod.lie())};
        }
    }
    return {};
}

} // namespace modvertex
