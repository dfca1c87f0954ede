#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modvertex/fp.hpp"

namespace modvertex {

/// Integer linear combination of finite basis elements, used for structure
/// constants and p-power tables (reduced mod p at use sites).
using IntCombo = std::vector<std::pair<int, long long>>;  // (basis index, coefficient)

struct LieBasisElem {
    std::string name;
    std::vector<int> weight;  // coordinates on the simple roots
};

/// Chevalley-basis data for a finite semisimple Lie algebra together with its
/// restricted structure and invariant form.  Everything is stored over the
/// integers; one record serves all primes.  The basis is listed in the order
/// used for PBW normal forms: f's first, then h's, then e's.
struct FiniteLieData {
    std::string name;
    int rank = 0;
    std::vector<LieBasisElem> basis;
    std::vector<std::vector<IntCombo>> bracket;    // [x_i, x_j]
    std::vector<std::vector<long long>> form;      // <x_i, x_j>
    std::vector<IntCombo> p_power;                 // x_i^{[p]}
    std::vector<int> simple_e;                     // index of e_{alpha_i}
    std::vector<int> simple_f;                     // index of f_{alpha_i}
    std::vector<int> cartan_h;                     // index of h_i
    std::vector<std::vector<int>> positive_roots;  // coordinates, simple roots first
    std::vector<long long> rho_h;                  // rho(h_i)
    long long dual_coxeter = 0;

    int dim() const { return static_cast<int>(basis.size()); }
};

/// sl2: basis f, h, e with [h,e] = 2e, [h,f] = -2f, [e,f] = h,
/// <e,f> = 1, <h,h> = 2, e^[p] = f^[p] = 0, h^[p] = h.
inline FiniteLieData sl2() {
    FiniteLieData d;
    d.name = "sl2";
    d.rank = 1;
    d.basis = {{"f", {-1}}, {"h", {0}}, {"e", {1}}};
    d.bracket.assign(3, std::vector<IntCombo>(3));
    d.bracket[0][1] = {{0, 2}};   // [f,h] = 2f
    d.bracket[1][0] = {{0, -2}};  // [h,f] = -2f
    d.bracket[1][2] = {{2, 2}};   // [h,e] = 2e
    d.bracket[2][1] = {{2, -2}};  // [e,h] = -2e
    d.bracket[2][0] = {{1, 1}};   // [e,f] = h
    d.bracket[0][2] = {{1, -1}};  // [f,e] = -h
    d.form = {{0, 0, 1}, {0, 2, 0}, {1, 0, 0}};
    d.p_power = {{}, {{1, 1}}, {}};
    d.simple_e = {2};
    d.simple_f = {0};
    d.cartan_h = {1};
    d.positive_roots = {{1}};
    d.rho_h = {1};
    d.dual_coxeter = 2;
    return d;
}

namespace detail {

inline void combo_add(std::map<int, long long>& acc, const IntCombo& c, long long scale) {
    for (auto& [k, v] : c) acc[k] += v * scale;
}

} // namespace detail

/// Structural checks on a FiniteLieData record: antisymmetry and Jacobi for
/// the bracket, invariance of the form, and restrictedness of the p-power
/// table, i.e. (ad x)^p = ad(x^[p]) on the basis mod p.  Returns a list of
/// violations (empty = valid).
inline std::vector<std::string> validate_lie_data(const FiniteLieData& d, Prime p) {
    std::vector<std::string> bad;
    const int n = d.dim();
    auto bk = [&](const std::map<int, long long>& x, int j) {
        std::map<int, long long> out;
        for (auto& [i, c] : x)
            detail::combo_add(out, d.bracket[i][j], c);
        return out;
    };
    auto bk_right = [&](int i, const std::map<int, long long>& y) {
        std::map<int, long long> out;
        for (auto& [j, c] : y)
            detail::combo_add(out, d.bracket[i][j], c);
        return out;
    };
    auto zero_mod = [&](const std::map<int, long long>& x) {
        for (auto& [k, v] : x)
            if (v % static_cast<long long>(p.value()) != 0) return false;
        return true;
    };
    // antisymmetry
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::map<int, long long> s;
            detail::combo_add(s, d.bracket[i][j], 1);
            detail::combo_add(s, d.bracket[j][i], 1);
            for (auto& [k, v] : s)
                if (v != 0) bad.push_back("antisymmetry fails at [" + d.basis[i].name + "," + d.basis[j].name + "]");
        }
    // Jacobi over the integers
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                std::map<int, long long> s;
                std::map<int, long long> xi{{i, 1}}, xj{{j, 1}}, xk{{k, 1}};
                for (auto& [t, v] : bk(bk_right(i, xj), k)) s[t] += v;
                for (auto& [t, v] : bk(bk_right(j, xk), i)) s[t] += v;
                for (auto& [t, v] : bk(bk_right(k, xi), j)) s[t] += v;
                for (auto& [t, v] : s)
                    if (v != 0) {
                        bad.push_back("Jacobi fails at (" + d.basis[i].name + "," + d.basis[j].name + "," +
                                      d.basis[k].name + ")");
                        break;
                    }
            }
    // invariance <[x,y],z> = <x,[y,z]>
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                long long lhs = 0, rhs = 0;
                for (auto& [t, v] : d.bracket[i][j]) lhs += v * d.form[t][k];
                for (auto& [t, v] : d.bracket[j][k]) rhs += v * d.form[i][t];
                if (lhs != rhs)
                    bad.push_back("form invariance fails at (" + d.basis[i].name + "," + d.basis[j].name + "," +
                                  d.basis[k].name + ")");
            }
    // restrictedness: (ad x)^p y = [x^[p], y] mod p
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::map<int, long long> acc{{j, 1}};
            for (uint32_t t = 0; t < p.value(); ++t) acc = bk_right(i, acc);
            std::map<int, long long> rhs;
            for (auto& [t, v] : d.p_power[i])
                detail::combo_add(rhs, d.bracket[t][j], v);
            for (auto& [t, v] : rhs) acc[t] -= v;
            if (!zero_mod(acc))
                bad.push_back("restrictedness fails at (ad " + d.basis[i].name + ")^p " + d.basis[j].name);
        }
    return bad;
}

// ---------------------------------------------------------------------------
// Affine elements and the affine bracket
// ---------------------------------------------------------------------------

/// F_p-combination of loop generators x_n = t^n (x) x plus a coefficient on
/// the central element c.  At level kappa the central contributions of
/// brackets are recorded on c pre-scaled by kappa.
struct AffineElement {
    std::map<std::pair<int, int>, Fp> terms;  // (basis index, mode) -> coeff
    std::optional<Fp> c_coeff;

    static AffineElement zero() { return {}; }
    static AffineElement gen(int idx, int mode, Fp coeff) {
        AffineElement e;
        if (!coeff.is_zero()) e.terms.emplace(std::make_pair(idx, mode), coeff);
        return e;
    }
    static AffineElement central(Fp coeff) {
        AffineElement e;
        if (!coeff.is_zero()) e.c_coeff = coeff;
        return e;
    }

    void add_term(int idx, int mode, Fp v) {
        if (v.is_zero()) return;
        auto it = terms.find({idx, mode});
        if (it == terms.end()) {
            terms.emplace(std::make_pair(idx, mode), v);
        } else {
            it->second += v;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    void add_central(Fp v) {
        if (v.is_zero()) return;
        if (!c_coeff) {
            c_coeff = v;
        } else {
            *c_coeff += v;
            if (c_coeff->is_zero()) c_coeff.reset();
        }
    }
    AffineElement& operator+=(const AffineElement& o) {
        for (auto& [k, v] : o.terms) add_term(k.first, k.second, v);
        if (o.c_coeff) add_central(*o.c_coeff);
        return *this;
    }
    bool is_zero() const { return terms.empty() && !c_coeff; }
    friend bool operator==(const AffineElement& a, const AffineElement& b) {
        if (a.terms != b.terms) return false;
        if (a.c_coeff.has_value() != b.c_coeff.has_value()) return false;
        return !a.c_coeff || *a.c_coeff == *b.c_coeff;
    }

    std::string str(const FiniteLieData& d) const {
        if (is_zero()) return "0";
        std::string s;
        for (auto& [k, v] : terms) {
            if (!s.empty()) s += " + ";
            s += v.str() + "*" + d.basis[k.first].name + "[" + std::to_string(k.second) + "]";
        }
        if (c_coeff) {
            if (!s.empty()) s += " + ";
            s += c_coeff->str() + "*c";
        }
        return s;
    }
};

/// [x_m, y_n] = [x,y]_{m+n} + m delta_{m,-n} <x,y> kappa c.  Bilinear in both
/// arguments; c is central.
inline AffineElement affine_bracket(const AffineElement& x, const AffineElement& y, const FiniteLieData& d,
                                    Fp kappa) {
    Prime p = kappa.prime();
    AffineElement out;
    for (auto& [xk, xv] : x.terms)
        for (auto& [yk, yv] : y.terms) {
            auto [i, m] = xk;
            auto [j, n] = yk;
            Fp c = xv * yv;
            for (auto& [t, coef] : d.bracket[i][j]) out.add_term(t, m + n, c * Fp::from_int(coef, p));
            if (m == -n && m != 0) out.add_central(c * Fp::from_int(m, p) * Fp::from_int(d.form[i][j], p) * kappa);
        }
    return out;
}

/// p-power of a single basis loop generator or of c:
/// (t^n x)^[p] = t^{np} x^[p], c^[p] = c.  Rejects non-basis combinations
/// since the p-power map is not additive.
inline AffineElement p_power(const AffineElement& x, const FiniteLieData& d, Prime p) {
    if (x.terms.size() + (x.c_coeff ? 1 : 0) != 1) throw std::invalid_argument("p_power: not a basis element");
    if (x.c_coeff) {
        if (*x.c_coeff != Fp::one(p)) throw std::invalid_argument("p_power: not a basis element");
        return AffineElement::central(Fp::one(p));
    }
    auto& [k, v] = *x.terms.begin();
    if (v != Fp::one(p)) throw std::invalid_argument("p_power: not a basis element");
    AffineElement out;
    for (auto& [t, coef] : d.p_power[k.first]) out.add_term(t, k.second * p.value(), Fp::from_int(coef, p));
    return out;
}

struct VerifyReport {
    bool pass = true;
    std::string witness;
};

/// Restricted structure of the affine algebra: (ad x_m)^p y_n = [x_m^[p], y_n]
/// for all basis pairs and bounded modes, at levels kappa = 0 and 1.
inline VerifyReport verify_restricted(const FiniteLieData& d, Prime p, int mode_bound) {
    for (uint32_t kv : {0u, 1u}) {
        Fp kappa = Fp::from_int(kv, p);
        for (int i = 0; i < d.dim(); ++i)
            for (int m = -mode_bound; m <= mode_bound; ++m) {
                AffineElement xm = AffineElement::gen(i, m, Fp::one(p));
                AffineElement xp = p_power(xm, d, p);
                for (int j = 0; j < d.dim(); ++j)
                    for (int n = -mode_bound; n <= mode_bound; ++n) {
                        AffineElement acc = AffineElement::gen(j, n, Fp::one(p));
                        for (uint32_t t = 0; t < p.value(); ++t) acc = affine_bracket(xm, acc, d, kappa);
                        AffineElement rhs = affine_bracket(xp, AffineElement::gen(j, n, Fp::one(p)), d, kappa);
                        if (!(acc == rhs))
                            return {false, "(ad " + d.basis[i].name + "[" + std::to_string(m) + "])^p " +
                                               d.basis[j].name + "[" + std::to_string(n) + "] = " + acc.str(d) +
                                               " != " + rhs.str(d) + " at kappa=" + kappa.str()};
                    }
            }
    }
    return {};
}

} // namespace modvertex
