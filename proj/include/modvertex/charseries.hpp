#pragma once

#include <limits>
#include <vector>

#include "modvertex/module.hpp"

namespace modvertex {

/// Weight on the affine lattice spanned by the simple roots and delta,
/// written as e^{alpha . abar - delta_deg . delta} relative to the highest
/// weight; module characters live in delta_deg >= 0.
struct AffineWeight {
    std::vector<int> alpha;
    int delta_deg = 0;
    auto operator<=>(const AffineWeight&) const = default;
};

/// Truncated formal character: integer coefficients on the weight lattice,
/// cut at delta degree <= depth_cap and |alpha_i| <= alpha_cap.  Ring
/// operations re-truncate, so a product is exact on a key only when no
/// contributing intermediate key left the box.
class CharSeries {
  public:
    CharSeries(int rank, int depth_cap, int alpha_cap)
        : rank_(rank), depth_cap_(depth_cap), alpha_cap_(alpha_cap) {}

    static CharSeries one(int rank, int depth_cap, int alpha_cap) {
        CharSeries s(rank, depth_cap, alpha_cap);
        s.add(AffineWeight{std::vector<int>(rank, 0), 0}, 1);
        return s;
    }

    int rank() const { return rank_; }
    int depth_cap() const { return depth_cap_; }
    int alpha_cap() const { return alpha_cap_; }
    const std::map<AffineWeight, long long>& coeffs() const { return c_; }

    void add(AffineWeight w, long long v) {
        if (v == 0 || !inside(w)) return;
        auto it = c_.find(w);
        if (it == c_.end()) {
            c_.emplace(std::move(w), v);
        } else {
            it->second += v;
            if (it->second == 0) c_.erase(it);
        }
    }
    long long coeff(const AffineWeight& w) const {
        auto it = c_.find(w);
        return it == c_.end() ? 0 : it->second;
    }

    CharSeries& operator+=(const CharSeries& o) {
        for (auto& [w, v] : o.c_) add(w, v);
        return *this;
    }
    friend CharSeries operator*(const CharSeries& a, const CharSeries& b) {
        CharSeries out(a.rank_, a.depth_cap_, a.alpha_cap_);
        for (auto& [wa, va] : a.c_)
            for (auto& [wb, vb] : b.c_) {
                AffineWeight w = wa;
                for (int i = 0; i < a.rank_; ++i) w.alpha[i] += wb.alpha[i];
                w.delta_deg += wb.delta_deg;
                out.add(std::move(w), va * vb);
            }
        return out;
    }
    friend bool operator==(const CharSeries& a, const CharSeries& b) { return a.c_ == b.c_; }

    /// Coefficientwise equality on the sub-box |alpha_i| <= abox, delta <= dbox.
    bool equal_on_box(const CharSeries& o, int abox, int dbox, std::string* witness = nullptr) const {
        auto scan = [&](const CharSeries& x, const CharSeries& y) {
            for (auto& [w, v] : x.c_) {
                if (w.delta_deg > dbox) continue;
                bool in = true;
                for (int a : w.alpha)
                    if (std::abs(a) > abox) { in = false; break; }
                if (!in) continue;
                if (y.coeff(w) != v) {
                    if (witness)
                        *witness = "coefficient mismatch at alpha=" + std::to_string(w.alpha[0]) +
                                   ", delta=" + std::to_string(w.delta_deg) + ": " + std::to_string(v) + " vs " +
                                   std::to_string(y.coeff(w));
                    return false;
                }
            }
            return true;
        };
        return scan(*this, o) && scan(o, *this);
    }

    bool all_nonnegative() const {
        for (auto& [w, v] : c_)
            if (v < 0) return false;
        return true;
    }

    /// True when every key fits strictly inside the truncation box, i.e. the
    /// series is its own untruncated value in the delta range.
    bool support_within(int abox) const {
        for (auto& [w, v] : c_)
            for (int a : w.alpha)
                if (std::abs(a) > abox) return false;
        return true;
    }

  private:
    bool inside(const AffineWeight& w) const {
        if (w.delta_deg < 0 || w.delta_deg > depth_cap_) return false;
        for (int a : w.alpha)
            if (std::abs(a) > alpha_cap_) return false;
        return true;
    }

    int rank_, depth_cap_, alpha_cap_;
    std::map<AffineWeight, long long> c_;
};

/// Default hard bound on the alpha range of truncated series.
inline int default_alpha_cap(int depth) { return 4 * depth + 4; }

/// Positive real roots of the affine algebra up to delta degree N:
/// beta + n delta (n >= 0) and -beta + n delta (n >= 1) for beta positive.
inline std::vector<AffineWeight> affine_positive_real_roots(const FiniteLieData& lie, int N) {
    std::vector<AffineWeight> out;
    for (int n = 0; n <= N; ++n)
        for (auto& beta : lie.positive_roots) {
            out.push_back({beta, n});
            if (n >= 1) {
                std::vector<int> neg(beta.size());
                for (size_t i = 0; i < beta.size(); ++i) neg[i] = -beta[i];
                out.push_back({std::move(neg), n});
            }
        }
    return out;
}

namespace detail {

inline AffineWeight scaled_exp_key(const AffineWeight& root, int k) {
    AffineWeight w;
    w.alpha.resize(root.alpha.size());
    for (size_t i = 0; i < root.alpha.size(); ++i) w.alpha[i] = -k * root.alpha[i];
    w.delta_deg = k * root.delta_deg;
    return w;
}

// largest usable exponent of e^{-root} inside the truncation box
inline int geometric_kmax(const AffineWeight& root, int depth_cap, int alpha_cap) {
    int k = std::numeric_limits<int>::max();
    if (root.delta_deg > 0) k = depth_cap / root.delta_deg;
    int amax = 0;
    for (int a : root.alpha) amax = std::max(amax, std::abs(a));
    if (amax > 0) k = std::min(k, alpha_cap / amax);
    if (k == std::numeric_limits<int>::max()) throw std::invalid_argument("geometric_kmax: zero root");
    return k;
}

} // namespace detail

/// prod over positive real roots of (1 + e^{-a} + ... + e^{-(p-1)a}): the
/// character of the irreducible highest weight module at -rho, relative to
/// e^{-rho}.
inline CharSeries mathieu_product(const FiniteLieData& lie, Prime p, int N, int alpha_cap) {
    CharSeries out = CharSeries::one(lie.rank, N, alpha_cap);
    for (auto& root : affine_positive_real_roots(lie, N)) {
        CharSeries factor(lie.rank, N, alpha_cap);
        int kmax = std::min<int>(static_cast<int>(p.value()) - 1, detail::geometric_kmax(root, N, alpha_cap));
        for (int k = 0; k <= kmax; ++k) factor.add(detail::scaled_exp_key(root, k), 1);
        out = out * factor;
    }
    return out;
}

/// prod over positive real roots of 1/(1 - e^{-a}), truncated: the Verma
/// denominator relative to the highest weight.
inline CharSeries verma_denominator(const FiniteLieData& lie, int N, int alpha_cap) {
    CharSeries out = CharSeries::one(lie.rank, N, alpha_cap);
    for (auto& root : affine_positive_real_roots(lie, N)) {
        CharSeries factor(lie.rank, N, alpha_cap);
        int kmax = detail::geometric_kmax(root, N, alpha_cap);
        for (int k = 0; k <= kmax; ++k) factor.add(detail::scaled_exp_key(root, k), 1);
        out = out * factor;
    }
    return out;
}

/// prod over positive real roots of (1 - e^{-pa}).
inline CharSeries steinberg_factor(const FiniteLieData& lie, Prime p, int N, int alpha_cap) {
    CharSeries out = CharSeries::one(lie.rank, N, alpha_cap);
    for (auto& root : affine_positive_real_roots(lie, N)) {
        CharSeries factor(lie.rank, N, alpha_cap);
        factor.add(detail::scaled_exp_key(root, 0), 1);
        factor.add(detail::scaled_exp_key(root, static_cast<int>(p.value())), -1);
        out = out * factor;
    }
    return out;
}

/// Character of a module from an explicit basis enumeration: tallies weights
/// relative to the highest weight vector.
inline CharSeries fock_character(const FiniteLieData& lie, const std::vector<Monomial>& basis, int N,
                                 int alpha_cap) {
    CharSeries out(lie.rank, N, alpha_cap);
    for (auto& m : basis) out.add(AffineWeight{m.weight(lie), m.depth()}, 1);
    return out;
}

} // namespace modvertex
