#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "modvertex/root_data.hpp"

namespace modvertex {

/// Generator families across all module kinds.  A / AStar are the Weyl pair
/// a_alpha, a*_alpha (idx = positive-root index), B the Heisenberg b_i
/// (idx = Cartan index), Lie the affine Chevalley generators (idx = finite
/// basis index in PBW order).
enum class Fam : uint8_t { A = 0, AStar = 1, B = 2, Lie = 3 };

inline const char* fam_name(Fam f) {
    switch (f) {
        case Fam::A: return "a";
        case Fam::AStar: return "a*";
        case Fam::B: return "b";
        default: return "x";
    }
}

struct GenMode {
    Fam fam;
    uint8_t idx;
    int32_t mode;
    auto operator<=>(const GenMode&) const = default;
};

struct Factor {
    Fam fam;
    uint8_t idx;
    int32_t mode;
    uint32_t exp;
    auto operator<=>(const Factor&) const = default;
};

/// Product of creation operators applied to the vacuum, stored in the fixed
/// normal order (family, index, mode increasing).  delta-depth is -sum of
/// modes, counted with multiplicity.
struct Monomial {
    std::vector<Factor> fs;
    auto operator<=>(const Monomial&) const = default;

    int depth() const {
        long long d = 0;
        for (auto& f : fs) d -= static_cast<long long>(f.mode) * f.exp;
        return static_cast<int>(d);
    }
    long long degree() const {
        long long d = 0;
        for (auto& f : fs) d += f.exp;
        return d;
    }
    std::vector<int> weight(const FiniteLieData& lie) const {
        std::vector<int> w(lie.rank, 0);
        for (auto& f : fs) {
            const std::vector<int>* wf = nullptr;
            int sign = 1;
            switch (f.fam) {
                case Fam::A: wf = &lie.positive_roots[f.idx]; break;
                case Fam::AStar: wf = &lie.positive_roots[f.idx]; sign = -1; break;
                case Fam::B: break;
                case Fam::Lie: wf = &lie.basis[f.idx].weight; break;
            }
            if (wf)
                for (int i = 0; i < lie.rank; ++i) w[i] += sign * (*wf)[i] * static_cast<int>(f.exp);
        }
        return w;
    }
    std::string str(const FiniteLieData& lie) const {
        if (fs.empty()) return "|0>";
        std::string s;
        for (auto& f : fs) {
            std::string g = f.fam == Fam::Lie ? lie.basis[f.idx].name : fam_name(f.fam);
            if ((f.fam == Fam::A || f.fam == Fam::AStar) && lie.positive_roots.size() > 1)
                g += std::to_string(f.idx);
            if (f.fam == Fam::B && lie.rank > 1) g += std::to_string(f.idx + 1);
            s += g + "[" + std::to_string(f.mode) + "]";
            if (f.exp > 1) s += "^" + std::to_string(f.exp);
            s += " ";
        }
        return s + "|0>";
    }
};

/// Finitely supported R-linear combination of monomials; zero coefficients
/// are never stored.
template <class R>
class SparseVec {
  public:
    using map_t = std::map<Monomial, R>;

    SparseVec() = default;

    static SparseVec unit(Monomial m, R c) {
        SparseVec v;
        v.add_term(std::move(m), std::move(c));
        return v;
    }

    void add_term(Monomial m, R c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(std::move(m), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    SparseVec& operator+=(const SparseVec& o) {
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    SparseVec& sub(const SparseVec& o) {
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    SparseVec scaled(const R& s) const {
        SparseVec v;
        if (s.is_zero()) return v;
        for (auto& [m, c] : terms_) v.add_term(m, c * s);
        return v;
    }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const map_t& terms() const { return terms_; }
    friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.terms_ == b.terms_; }

    int max_depth() const {
        int d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, m.depth());
        return d;
    }
    std::string str(const FiniteLieData& lie) const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += c.str() + " " + m.str(lie);
        }
        return s;
    }

  private:
    map_t terms_;
};

enum class ModuleKind {
    WeylM,          // Fock module of the Weyl algebra
    HeisenbergPi,   // Heisenberg Fock module pi^k(lambda)
    VacuumV,        // vacuum module V^k of the affine algebra
    TensorMPi,      // M (x) pi^k(lambda), one interleaved monomial basis
    MWithBScalars,  // M (x) K_{lambda(t)}: critical-level module, b-modes act as scalars
    BabyVerma,      // baby Verma module of the affine algebra
};

enum class ModeClass { Creation, Kills, Scalar };

/// A module family instance: fixes the generator alphabet, vacuum
/// annihilation conventions, level and highest-weight scalars.  All actions
/// are exact; straightening rewrites words of generators into the normal
/// monomial basis.
template <class R>
class ModuleSpec {
  public:
    using scalar_t = R;

    static ModuleSpec weyl(FiniteLieData lie, Prime p) { return ModuleSpec(ModuleKind::WeylM, std::move(lie), p, R::zero(p), {}); }
    static ModuleSpec heisenberg(FiniteLieData lie, Prime p, R pi_level, std::vector<R> lambda) {
        return ModuleSpec(ModuleKind::HeisenbergPi, std::move(lie), p, std::move(pi_level), std::move(lambda));
    }
    static ModuleSpec vacuum(FiniteLieData lie, Prime p, R level) {
        return ModuleSpec(ModuleKind::VacuumV, std::move(lie), p, std::move(level), {});
    }
    static ModuleSpec tensor_m_pi(FiniteLieData lie, Prime p, R pi_level, std::vector<R> lambda) {
        return ModuleSpec(ModuleKind::TensorMPi, std::move(lie), p, std::move(pi_level), std::move(lambda));
    }
    static ModuleSpec m_with_b_scalars(FiniteLieData lie, Prime p, std::map<int32_t, R> lambda_series) {
        // mode-sum termination leans on positive modes acting by zero, so the
        // scalar series must be supported in modes <= 0
        for (auto& [n, v] : lambda_series)
            if (n > 0 && !v.is_zero())
                throw std::invalid_argument("m_with_b_scalars: lambda(t) supported at a positive mode");
        ModuleSpec m(ModuleKind::MWithBScalars, std::move(lie), p, R::zero(p), {});
        m.lambda_series_ = std::move(lambda_series);
        return m;
    }
    static ModuleSpec baby_verma(FiniteLieData lie, Prime p, R level, std::vector<R> lambda) {
        return ModuleSpec(ModuleKind::BabyVerma, std::move(lie), p, std::move(level), std::move(lambda));
    }

    ModuleKind kind() const { return kind_; }
    const FiniteLieData& lie() const { return lie_; }
    Prime prime() const { return p_; }
    const R& level() const { return level_; }
    const std::vector<R>& lambda() const { return lambda_; }

    bool legal(GenMode g) const {
        switch (kind_) {
            case ModuleKind::WeylM: return g.fam == Fam::A || g.fam == Fam::AStar;
            case ModuleKind::HeisenbergPi: return g.fam == Fam::B;
            case ModuleKind::VacuumV:
            case ModuleKind::BabyVerma: return g.fam == Fam::Lie;
            case ModuleKind::TensorMPi:
            case ModuleKind::MWithBScalars: return g.fam != Fam::Lie;
        }
        return false;
    }

    ModeClass classify(GenMode g, R* scalar_out = nullptr) const {
        switch (g.fam) {
            case Fam::A: return g.mode <= -1 ? ModeClass::Creation : ModeClass::Kills;
            case Fam::AStar: return g.mode <= 0 ? ModeClass::Creation : ModeClass::Kills;
            case Fam::B:
                if (kind_ == ModuleKind::MWithBScalars) {
                    if (scalar_out) {
                        auto it = lambda_series_.find(g.mode);
                        *scalar_out = it == lambda_series_.end() ? R::zero(p_) : it->second;
                    }
                    return ModeClass::Scalar;
                }
                if (g.mode <= -1) return ModeClass::Creation;
                if (g.mode == 0) {
                    if (scalar_out) *scalar_out = lambda_.at(g.idx);
                    return ModeClass::Scalar;
                }
                return ModeClass::Kills;
            case Fam::Lie:
                if (g.mode <= -1) return ModeClass::Creation;
                if (g.mode >= 1 || kind_ == ModuleKind::VacuumV) return ModeClass::Kills;
                // BabyVerma at mode 0: f-type creates, h-type is the weight, e-type kills
                if (is_negative_root(g.idx)) return ModeClass::Creation;
                if (cartan_pos(g.idx) >= 0) {
                    if (scalar_out) *scalar_out = lambda_.at(cartan_pos(g.idx));
                    return ModeClass::Scalar;
                }
                return ModeClass::Kills;
        }
        return ModeClass::Kills;
    }

    /// Sort key for normal ordering: annihilation-side operators always come
    /// after creation operators; among creation operators the key restricts
    /// to the PBW basis order.
    std::array<int32_t, 4> sort_key(GenMode g) const {
        int ann = classify(g) == ModeClass::Creation ? 0 : 1;
        return {ann, static_cast<int32_t>(g.fam), static_cast<int32_t>(g.idx), g.mode};
    }

    struct Bracket {
        std::vector<std::pair<GenMode, R>> terms;
        R scalar;
    };

    /// Lie bracket [g, h] of two generator modes, with central terms already
    /// scaled by the module level.
    Bracket bracket2(GenMode g, GenMode h) const {
        Bracket out{{}, R::zero(p_)};
        if (g.fam == Fam::A && h.fam == Fam::AStar && g.idx == h.idx && g.mode == -h.mode)
            out.scalar = R::one(p_);
        else if (g.fam == Fam::AStar && h.fam == Fam::A && g.idx == h.idx && g.mode == -h.mode)
            out.scalar = -R::one(p_);
        else if (g.fam == Fam::B && h.fam == Fam::B && g.mode == -h.mode && g.mode != 0)
            out.scalar = R::from_int(g.mode, p_) * R::from_int(lie_.form[lie_.cartan_h[g.idx]][lie_.cartan_h[h.idx]], p_) * level_;
        else if (g.fam == Fam::Lie && h.fam == Fam::Lie) {
            for (auto& [t, c] : lie_.bracket[g.idx][h.idx]) {
                R rc = R::from_int(c, p_);
                if (!rc.is_zero()) out.terms.push_back({GenMode{Fam::Lie, static_cast<uint8_t>(t), g.mode + h.mode}, rc});
            }
            if (g.mode == -h.mode && g.mode != 0)
                out.scalar = R::from_int(g.mode, p_) * R::from_int(lie_.form[g.idx][h.idx], p_) * level_;
        }
        return out;
    }

    SparseVec<R> vacuum() const { return SparseVec<R>::unit(Monomial{}, R::one(p_)); }

    /// Exact action of a single generator mode, by straightening.
    SparseVec<R> apply(GenMode g, const SparseVec<R>& v) const {
        if (!legal(g)) throw std::invalid_argument("apply: generator not legal for this module kind");
        SparseVec<R> out;
        const bool creation = classify(g) == ModeClass::Creation;
        for (auto& [m, c] : v.terms()) {
            if (creation && (m.fs.empty() || !key_less(fkey(m.fs.front()), sort_key(g)))) {
                // already in position: merge into the front of the monomial
                Monomial nm = m;
                insert_sorted(nm, g);
                out.add_term(std::move(nm), c);
            } else {
                straighten(g, m, c, out);
            }
        }
        return out;
    }

    /// All basis monomials of delta-depth <= depth.  Exponents are bounded by
    /// exp_cap when given (exponent < exp_cap); depth-0 generators, which the
    /// depth budget does not bound, additionally respect zero_mode_cap
    /// (exponent <= zero_mode_cap).
    std::vector<Monomial> enumerate_basis(int depth, std::optional<uint32_t> exp_cap, uint32_t zero_mode_cap) const {
        std::vector<GenMode> slots;
        auto add_slot_range = [&](Fam fam, uint8_t idx, int32_t top_mode) {
            for (int32_t mode = -depth; mode <= top_mode; ++mode) slots.push_back({fam, idx, mode});
        };
        const int npos = static_cast<int>(lie_.positive_roots.size());
        switch (kind_) {
            case ModuleKind::WeylM:
            case ModuleKind::MWithBScalars:
                for (int a = 0; a < npos; ++a) add_slot_range(Fam::A, static_cast<uint8_t>(a), -1);
                for (int a = 0; a < npos; ++a) add_slot_range(Fam::AStar, static_cast<uint8_t>(a), 0);
                break;
            case ModuleKind::HeisenbergPi:
                for (int i = 0; i < lie_.rank; ++i) add_slot_range(Fam::B, static_cast<uint8_t>(i), -1);
                break;
            case ModuleKind::TensorMPi:
                for (int a = 0; a < npos; ++a) add_slot_range(Fam::A, static_cast<uint8_t>(a), -1);
                for (int a = 0; a < npos; ++a) add_slot_range(Fam::AStar, static_cast<uint8_t>(a), 0);
                for (int i = 0; i < lie_.rank; ++i) add_slot_range(Fam::B, static_cast<uint8_t>(i), -1);
                break;
            case ModuleKind::VacuumV:
                for (int i = 0; i < lie_.dim(); ++i) add_slot_range(Fam::Lie, static_cast<uint8_t>(i), -1);
                break;
            case ModuleKind::BabyVerma:
                for (int i = 0; i < lie_.dim(); ++i)
                    add_slot_range(Fam::Lie, static_cast<uint8_t>(i), is_negative_root(i) ? 0 : -1);
                break;
        }
        std::vector<Monomial> out;
        Monomial cur;
        enumerate_rec(slots, 0, depth, exp_cap, zero_mode_cap, cur, out);
        std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
            int da = a.depth(), db = b.depth();
            return da != db ? da < db : a < b;
        });
        return out;
    }

    bool is_negative_root(int lie_idx) const {
        const auto& w = lie_.basis[lie_idx].weight;
        for (auto& r : lie_.positive_roots) {
            bool neg = true;
            for (size_t i = 0; i < r.size(); ++i)
                if (w[i] != -r[i]) { neg = false; break; }
            if (neg) return true;
        }
        return false;
    }

  private:
    ModuleSpec(ModuleKind k, FiniteLieData lie, Prime p, R level, std::vector<R> lambda)
        : kind_(k), lie_(std::move(lie)), p_(p), level_(std::move(level)), lambda_(std::move(lambda)) {}

    int cartan_pos(int lie_idx) const {
        for (size_t i = 0; i < lie_.cartan_h.size(); ++i)
            if (lie_.cartan_h[i] == lie_idx) return static_cast<int>(i);
        return -1;
    }

    std::array<int32_t, 4> fkey(const Factor& f) const { return sort_key(GenMode{f.fam, f.idx, f.mode}); }
    static bool key_less(const std::array<int32_t, 4>& a, const std::array<int32_t, 4>& b) { return a < b; }

    static void insert_sorted(Monomial& m, GenMode g) {
        Factor nf{g.fam, g.idx, g.mode, 1};
        auto it = std::lower_bound(m.fs.begin(), m.fs.end(), nf, [](const Factor& a, const Factor& b) {
            return std::tie(a.fam, a.idx, a.mode) < std::tie(b.fam, b.idx, b.mode);
        });
        if (it != m.fs.end() && it->fam == g.fam && it->idx == g.idx && it->mode == g.mode)
            it->exp += 1;
        else
            m.fs.insert(it, nf);
    }

    using Word = std::vector<GenMode>;

    // Straightening by word rewriting: swap an adjacent out-of-order pair and
    // add the bracket terms.  Swaps reduce the inversion count at fixed
    // length; bracket and scalar terms shorten the word, so the agenda
    // terminates.  Sorted words end with the annihilation suffix, which is
    // consumed against the vacuum.
    void straighten(GenMode g, const Monomial& m, const R& coeff, SparseVec<R>& out) const {
        Word w0;
        w0.push_back(g);
        for (auto& f : m.fs)
            for (uint32_t e = 0; e < f.exp; ++e) w0.push_back({f.fam, f.idx, f.mode});
        std::vector<std::pair<Word, R>> agenda;
        agenda.emplace_back(std::move(w0), coeff);
        while (!agenda.empty()) {
            auto [w, c] = std::move(agenda.back());
            agenda.pop_back();
            if (c.is_zero()) continue;
            // find an adjacent inversion
            size_t inv = w.size();
            for (size_t i = 0; i + 1 < w.size(); ++i)
                if (key_less(sort_key(w[i + 1]), sort_key(w[i]))) { inv = i; break; }
            if (inv == w.size()) {
                if (w.empty()) {
                    out.add_term(Monomial{}, c);
                    continue;
                }
                R sc = R::zero(p_);
                switch (classify(w.back(), &sc)) {
                    case ModeClass::Creation: {
                        Monomial nm;
                        for (auto& gm : w) {
                            if (!nm.fs.empty() && nm.fs.back().fam == gm.fam && nm.fs.back().idx == gm.idx &&
                                nm.fs.back().mode == gm.mode)
                                nm.fs.back().exp += 1;
                            else
                                nm.fs.push_back({gm.fam, gm.idx, gm.mode, 1});
                        }
                        out.add_term(std::move(nm), c);
                        break;
                    }
                    case ModeClass::Kills:
                        break;
                    case ModeClass::Scalar: {
                        if (!sc.is_zero()) {
                            Word rest(w.begin(), w.end() - 1);
                            agenda.emplace_back(std::move(rest), c * sc);
                        }
                        break;
                    }
                }
                continue;
            }
            // w[inv] w[inv+1] = w[inv+1] w[inv] + [w[inv], w[inv+1]]
            Bracket br = bracket2(w[inv], w[inv + 1]);
            {
                Word sw = w;
                std::swap(sw[inv], sw[inv + 1]);
                agenda.emplace_back(std::move(sw), c);
            }
            for (auto& [z, zc] : br.terms) {
                Word nw;
                nw.reserve(w.size() - 1);
                nw.insert(nw.end(), w.begin(), w.begin() + inv);
                nw.push_back(z);
                nw.insert(nw.end(), w.begin() + inv + 2, w.end());
                agenda.emplace_back(std::move(nw), c * zc);
            }
            if (!br.scalar.is_zero()) {
                Word nw;
                nw.reserve(w.size() - 2);
                nw.insert(nw.end(), w.begin(), w.begin() + inv);
                nw.insert(nw.end(), w.begin() + inv + 2, w.end());
                agenda.emplace_back(std::move(nw), c * br.scalar);
            }
        }
    }

    void enumerate_rec(const std::vector<GenMode>& slots, size_t i, int budget, std::optional<uint32_t> exp_cap,
                       uint32_t zero_mode_cap, Monomial& cur, std::vector<Monomial>& out) const {
        if (i == slots.size()) {
            out.push_back(cur);
            return;
        }
        const GenMode& g = slots[i];
        const int unit = -g.mode;
        uint32_t max_exp;
        if (unit == 0) {
            max_exp = exp_cap ? *exp_cap - 1 : zero_mode_cap;
        } else {
            max_exp = static_cast<uint32_t>(budget / unit);
            if (exp_cap) max_exp = std::min(max_exp, *exp_cap - 1);
        }
        for (uint32_t e = 0;; ++e) {
            if (e > 0) cur.fs.push_back({g.fam, g.idx, g.mode, e});
            enumerate_rec(slots, i + 1, budget - static_cast<int>(e) * unit, exp_cap, zero_mode_cap, cur, out);
            if (e > 0) cur.fs.pop_back();
            if (e >= max_exp) break;
        }
    }

    ModuleKind kind_;
    FiniteLieData lie_;
    Prime p_;
    R level_;
    std::vector<R> lambda_;
    std::map<int32_t, R> lambda_series_;
};

/// Componentwise embedding of an M-vector and a pi-vector into the tensor
/// module's interleaved monomial basis.
template <class R>
SparseVec<R> tensor_embed(const SparseVec<R>& m_part, const SparseVec<R>& pi_part) {
    SparseVec<R> out;
    for (auto& [ma, ca] : m_part.terms())
        for (auto& [mb, cb] : pi_part.terms()) {
            Monomial m = ma;
            for (auto& f : mb.fs) m.fs.push_back(f);
            std::sort(m.fs.begin(), m.fs.end(),
                      [](const Factor& a, const Factor& b) { return std::tie(a.fam, a.idx, a.mode) < std::tie(b.fam, b.idx, b.mode); });
            out.add_term(std::move(m), ca * cb);
        }
    return out;
}

} // namespace modvertex
