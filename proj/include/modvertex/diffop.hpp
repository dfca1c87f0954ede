#pragma once

#include <map>
#include <vector>

#include "modvertex/fp.hpp"
#include "modvertex/root_data.hpp"

namespace modvertex {

/// Crystalline differential operators on the open cell: F_p-combinations of
/// y^A d^B in normal form (y before d), one variable pair per positive root.
/// No divided powers of d.
class DiffOp {
  public:
    using Key = std::pair<std::vector<uint32_t>, std::vector<uint32_t>>;  // (y exponents, d exponents)

    DiffOp(int nvars, Prime p) : n_(nvars), p_(p) {}

    static DiffOp zero(int nvars, Prime p) { return DiffOp(nvars, p); }
    static DiffOp term(std::vector<uint32_t> yexp, std::vector<uint32_t> dexp, Fp c) {
        DiffOp op(static_cast<int>(yexp.size()), c.prime());
        op.add(std::move(yexp), std::move(dexp), c);
        return op;
    }

    void add(std::vector<uint32_t> yexp, std::vector<uint32_t> dexp, Fp c) {
        if (c.is_zero()) return;
        Key k{std::move(yexp), std::move(dexp)};
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(std::move(k), c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    DiffOp& operator+=(const DiffOp& o) {
        for (auto& [k, c] : o.terms_) add(k.first, k.second, c);
        return *this;
    }
    DiffOp scaled(Fp s) const {
        DiffOp out(n_, p_);
        for (auto& [k, c] : terms_) out.add(k.first, k.second, c * s);
        return out;
    }
    friend DiffOp operator*(const DiffOp& a, const DiffOp& b) {
        DiffOp out(a.n_, a.p_);
        for (auto& [ka, ca] : a.terms_)
            for (auto& [kb, cb] : b.terms_) a.mul_terms(ka, ca, kb, cb, out);
        return out;
    }
    friend DiffOp operator-(const DiffOp& a, const DiffOp& b) { return a.plus(b.scaled(-Fp::one(a.p_))); }
    DiffOp plus(const DiffOp& o) const {
        DiffOp out = *this;
        out += o;
        return out;
    }
    DiffOp pow(uint32_t e) const {
        DiffOp r = identity(n_, p_);
        for (uint32_t i = 0; i < e; ++i) r = r * *this;
        return r;
    }
    static DiffOp identity(int nvars, Prime p) {
        return term(std::vector<uint32_t>(nvars, 0), std::vector<uint32_t>(nvars, 0), Fp::one(p));
    }

    bool is_zero() const { return terms_.empty(); }
    friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.terms_ == b.terms_; }
    const std::map<Key, Fp>& terms() const { return terms_; }
    Prime prime() const { return p_; }

    /// Membership in the p-center K[y^p, d^p]: all exponents divisible by p.
    bool in_p_center() const {
        for (auto& [k, c] : terms_) {
            for (auto e : k.first)
                if (e % p_.value() != 0) return false;
            for (auto e : k.second)
                if (e % p_.value() != 0) return false;
        }
        return true;
    }

    /// Action on a polynomial in the y variables (exponent vector -> coeff).
    /// This is where the restricted structure on vector fields lives: the
    /// p-th iterate of a vector field acts like its p-power.
    std::map<std::vector<uint32_t>, Fp> act(const std::map<std::vector<uint32_t>, Fp>& poly) const {
        std::map<std::vector<uint32_t>, Fp> out;
        for (auto& [k, c] : terms_)
            for (auto& [m, cm] : poly) {
                Fp coef = c * cm;
                std::vector<uint32_t> res(n_);
                bool dead = false;
                for (int v = 0; v < n_ && !dead; ++v) {
                    if (m[v] < k.second[v]) { dead = true; break; }
                    for (uint32_t t = 0; t < k.second[v]; ++t)
                        coef *= Fp::from_int(static_cast<long long>(m[v]) - t, p_);
                    res[v] = m[v] - k.second[v] + k.first[v];
                }
                if (dead || coef.is_zero()) continue;
                auto it = out.find(res);
                if (it == out.end()) {
                    out.emplace(std::move(res), coef);
                } else {
                    it->second += coef;
                    if (it->second.is_zero()) out.erase(it);
                }
            }
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto& [k, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += c.str();
            for (int v = 0; v < n_; ++v)
                if (k.first[v]) s += " y" + (n_ > 1 ? std::to_string(v) : "") + "^" + std::to_string(k.first[v]);
            for (int v = 0; v < n_; ++v)
                if (k.second[v]) s += " d" + (n_ > 1 ? std::to_string(v) : "") + "^" + std::to_string(k.second[v]);
        }
        return s;
    }

  private:
    // (y^a d^b)(y^c d^e) = sum_k prod_v C(b_v,k_v) (c_v)_{k_v} y^{a+c-k} d^{b+e-k}
    void mul_terms(const Key& ka, Fp ca, const Key& kb, Fp cb, DiffOp& out) const {
        std::vector<uint32_t> k(n_, 0);
        mul_rec(0, ka, kb, ca * cb, k, out);
    }
    void mul_rec(int v, const Key& ka, const Key& kb, Fp acc, std::vector<uint32_t>& k, DiffOp& out) const {
        if (acc.is_zero()) return;
        if (v == n_) {
            std::vector<uint32_t> y(n_), d(n_);
            for (int t = 0; t < n_; ++t) {
                y[t] = ka.first[t] + kb.first[t] - k[t];
                d[t] = ka.second[t] + kb.second[t] - k[t];
            }
            out.add(std::move(y), std::move(d), acc);
            return;
        }
        uint32_t kmax = std::min(ka.second[v], kb.first[v]);
        for (uint32_t kv = 0; kv <= kmax; ++kv) {
            Fp c = fp_binom(ka.second[v], kv, p_);
            for (uint32_t t = 0; t < kv; ++t) c *= Fp::from_int(static_cast<long long>(kb.first[v]) - t, p_);
            k[v] = kv;
            mul_rec(v + 1, ka, kb, acc * c, k, out);
        }
        k[v] = 0;
    }

    int n_;
    Prime p_;
    std::map<Key, Fp> terms_;
};

/// Finite-type realization by vector fields on the open cell, sl2 instance:
/// e -> d, h -> -2 y d, f -> -y^2 d.
inline DiffOp phi_sl2(int lie_idx, Prime p) {
    switch (lie_idx) {
        case 2: return DiffOp::term({0}, {1}, Fp::one(p));               // e
        case 1: return DiffOp::term({1}, {1}, Fp::from_int(-2, p));      // h
        case 0: return DiffOp::term({2}, {1}, Fp::from_int(-1, p));      // f
        default: throw std::invalid_argument("phi_sl2: bad basis index");
    }
}

/// The (c_beta, m_beta) shape of phi(x) = sum c_beta m_beta(y) d_beta for
/// sl2 (a single summand per generator).
inline std::pair<long long, std::vector<uint32_t>> phi_shape_sl2(int lie_idx) {
    switch (lie_idx) {
        case 2: return {1, {0}};
        case 1: return {-2, {1}};
        case 0: return {-1, {2}};
        default: throw std::invalid_argument("phi_shape_sl2: bad basis index");
    }
}

/// phi is a homomorphism of Lie algebras: [phi(x), phi(y)] = phi([x, y]).
inline VerifyReport verify_phi_bracket(const FiniteLieData& lie, Prime p) {
    for (int i = 0; i < lie.dim(); ++i)
        for (int j = 0; j < lie.dim(); ++j) {
            DiffOp lhs = phi_sl2(i, p) * phi_sl2(j, p) - phi_sl2(j, p) * phi_sl2(i, p);
            DiffOp rhs = DiffOp::zero(1, p);
            for (auto& [k, c] : lie.bracket[i][j]) rhs += phi_sl2(k, p).scaled(Fp::from_int(c, p));
            if (!(lhs == rhs))
                return {false, "[phi(" + lie.basis[i].name + "), phi(" + lie.basis[j].name + ")] = " + lhs.str() +
                                   " != " + rhs.str()};
        }
    return {};
}

/// phi(x^p - x^[p]) expands in normal form to the closed formula
/// sum_beta c_beta^p m_beta(y^p) d_beta^p, and lands in K[y^p, d^p].
inline VerifyReport verify_phi_pformula(const FiniteLieData& lie, Prime p) {
    for (int i = 0; i < lie.dim(); ++i) {
        DiffOp lhs = phi_sl2(i, p).pow(p.value());
        for (auto& [k, c] : lie.p_power[i]) lhs = lhs - phi_sl2(k, p).scaled(Fp::from_int(c, p));
        auto [cbeta, m] = phi_shape_sl2(i);
        std::vector<uint32_t> yp(m);
        for (auto& e : yp) e *= p.value();
        DiffOp rhs = DiffOp::term(yp, {p.value()}, fp_pow(Fp::from_int(cbeta, p), p.value()));
        if (!(lhs == rhs))
            return {false, "phi p-formula fails at " + lie.basis[i].name + ": " + lhs.str() + " != " + rhs.str()};
        if (!lhs.in_p_center())
            return {false, "phi(iota(" + lie.basis[i].name + ")) = " + lhs.str() + " is not in K[y^p, d^p]"};
        // centrality: commutes with every phi(y)
        for (int j = 0; j < lie.dim(); ++j) {
            DiffOp comm = lhs * phi_sl2(j, p) - phi_sl2(j, p) * lhs;
            if (!comm.is_zero())
                return {false, "phi(iota(" + lie.basis[i].name + ")) does not commute with phi(" +
                                   lie.basis[j].name + ")"};
        }
    }
    return {};
}

} // namespace modvertex
