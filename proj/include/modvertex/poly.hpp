#pragma once

#include <vector>

#include "modvertex/fp.hpp"

namespace modvertex {

/// Dense univariate polynomial over F_p in the formal level parameter.
/// Used as the scalar ring when the level is kept as an indeterminate, so
/// that coefficients like kappa^p - kappa stay visible instead of collapsing
/// to zero by Fermat.
class FpPoly {
  public:
    explicit FpPoly(Prime p) : p_(p) {}

    static FpPoly zero(Prime p) { return FpPoly(p); }
    static FpPoly one(Prime p) { return from_int(1, p); }
    static FpPoly from_int(long long n, Prime p) { return from_fp(Fp::from_int(n, p)); }
    static FpPoly from_fp(Fp x) {
        FpPoly r(x.prime());
        if (!x.is_zero()) r.c_.push_back(x.residue());
        return r;
    }
    /// The level parameter itself.
    static FpPoly indeterminate(Prime p) {
        FpPoly r(p);
        r.c_ = {0, 1};
        return r;
    }

    Prime prime() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    Fp coeff(size_t i) const { return Fp(i < c_.size() ? c_[i] : 0, p_); }

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
        assert(a.p_ == b.p_);
        FpPoly r(a.p_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = (a.at(i) + b.at(i)) % a.p_.value();
        r.trim();
        return r;
    }
    friend FpPoly operator-(const FpPoly& a, const FpPoly& b) { return a + (-b); }
    FpPoly operator-() const {
        FpPoly r(p_);
        r.c_ = c_;
        for (auto& x : r.c_)
            if (x) x = p_.value() - x;
        return r;
    }
    friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
        assert(a.p_ == b.p_);
        FpPoly r(a.p_);
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = static_cast<uint32_t>((r.c_[i + j] + (uint64_t)a.c_[i] * b.c_[j]) % a.p_.value());
        r.trim();
        return r;
    }
    FpPoly& operator+=(const FpPoly& b) { return *this = *this + b; }
    FpPoly& operator-=(const FpPoly& b) { return *this = *this - b; }
    FpPoly& operator*=(const FpPoly& b) { return *this = *this * b; }
    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
    friend bool operator!=(const FpPoly& a, const FpPoly& b) { return !(a == b); }
    // container ordering only; no arithmetic meaning
    friend bool operator<(const FpPoly& a, const FpPoly& b) {
        return a.p_.value() != b.p_.value() ? a.p_.value() < b.p_.value() : a.c_ < b.c_;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string s;
        for (size_t i = c_.size(); i-- > 0;) {
            if (!c_[i]) continue;
            if (!s.empty()) s += "+";
            if (i == 0 || c_[i] != 1) s += std::to_string(c_[i]);
            if (i >= 1) s += "k";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }

  private:
    uint32_t at(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    Prime p_;
    std::vector<uint32_t> c_;  // c_[i] * k^i, no trailing zeros
};

/// x^e for any ring with one()/ *= (e >= 0).
template <class R>
R ring_pow(R x, unsigned long long e) {
    R r = R::one(x.prime());
    while (e) {
        if (e & 1) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

} // namespace modvertex
