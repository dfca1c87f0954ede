#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace modvertex {

/// Runtime prime modulus, validated by trial division at construction.
class Prime {
  public:
    explicit Prime(uint32_t p) : p_(p) {
        if (p < 2) throw std::invalid_argument("Prime: need p >= 2");
        for (uint32_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument("Prime: " + std::to_string(p) + " is composite");
    }
    uint32_t value() const { return p_; }
    friend bool operator==(Prime a, Prime b) { return a.p_ == b.p_; }
    friend bool operator!=(Prime a, Prime b) { return a.p_ != b.p_; }

  private:
    uint32_t p_;
};

/// Element of F_p.  The prime travels with the value so that suites can mix
/// moduli in one process; mixing operands across primes is a logic error.
class Fp {
  public:
    Fp(uint32_t residue, Prime p) : v_(residue % p.value()), p_(p) {}

    static Fp zero(Prime p) { return Fp(0, p); }
    static Fp one(Prime p) { return Fp(1, p); }
    static Fp from_int(long long n, Prime p) {
        long long m = n % static_cast<long long>(p.value());
        if (m < 0) m += p.value();
        return Fp(static_cast<uint32_t>(m), p);
    }
    static Fp from_fp(Fp x) { return x; }

    uint32_t residue() const { return v_; }
    Prime prime() const { return p_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    friend Fp operator+(Fp a, Fp b) {
        assert(a.p_ == b.p_);
        uint32_t s = a.v_ + b.v_;
        if (s >= a.p_.value()) s -= a.p_.value();
        return Fp(s, a.p_);
    }
    friend Fp operator-(Fp a, Fp b) {
        assert(a.p_ == b.p_);
        uint32_t s = a.v_ + a.p_.value() - b.v_;
        if (s >= a.p_.value()) s -= a.p_.value();
        return Fp(s, a.p_);
    }
    friend Fp operator*(Fp a, Fp b) {
        assert(a.p_ == b.p_);
        return Fp(static_cast<uint32_t>((uint64_t)a.v_ * b.v_ % a.p_.value()), a.p_);
    }
    Fp operator-() const { return Fp(v_ == 0 ? 0 : p_.value() - v_, p_); }
    Fp& operator+=(Fp b) { return *this = *this + b; }
    Fp& operator-=(Fp b) { return *this = *this - b; }
    Fp& operator*=(Fp b) { return *this = *this * b; }
    friend bool operator==(Fp a, Fp b) { return a.p_ == b.p_ && a.v_ == b.v_; }
    friend bool operator!=(Fp a, Fp b) { return !(a == b); }
    // container ordering only; no arithmetic meaning
    friend bool operator<(Fp a, Fp b) {
        return a.p_.value() != b.p_.value() ? a.p_.value() < b.p_.value() : a.v_ < b.v_;
    }

    /// Multiplicative inverse; throws on zero.
    Fp inv() const {
        if (v_ == 0) throw std::domain_error("Fp::inv of zero");
        // extended Euclid on (v, p)
        int64_t a = v_, b = p_.value(), x0 = 1, x1 = 0;
        while (b != 0) {
            int64_t q = a / b;
            int64_t t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        return from_int(x0, p_);
    }

    std::string str() const { return std::to_string(v_); }

  private:
    uint32_t v_;
    Prime p_;
};

/// x^e by square-and-multiply (e >= 0).
inline Fp fp_pow(Fp x, unsigned long long e) {
    Fp r = Fp::one(x.prime());
    while (e) {
        if (e & 1) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

namespace detail {

// C(x, y) for 0 <= x, y < p, via the falling-factorial quotient mod p.
inline Fp binom_digit(uint32_t x, uint32_t y, Prime p) {
    if (y > x) return Fp::zero(p);
    Fp num = Fp::one(p), den = Fp::one(p);
    for (uint32_t i = 1; i <= y; ++i) {
        num *= Fp::from_int(static_cast<long long>(x) + 1 - i, p);
        den *= Fp::from_int(i, p);
    }
    return num * den.inv();
}

} // namespace detail

/// Binomial coefficient C(b, a) mod p for a >= 0 and arbitrary integer b,
/// using the polynomial extension b(b-1)...(b-a+1)/a! for b < 0 reduced via
/// C(-m, a) = (-1)^a C(m+a-1, a), then the Lucas digit product.
inline Fp fp_binom(long long b, long long a, Prime p) {
    if (a < 0) return Fp::zero(p);
    Fp sign = Fp::one(p);
    unsigned long long top;
    if (b < 0) {
        if (a % 2 == 1) sign = -sign;
        top = static_cast<unsigned long long>(a - b - 1);
    } else {
        if (b < a) return Fp::zero(p);
        top = static_cast<unsigned long long>(b);
    }
    unsigned long long bot = static_cast<unsigned long long>(a);
    Fp r = sign;
    while (bot > 0 || top > 0) {
        uint32_t td = static_cast<uint32_t>(top % p.value());
        uint32_t bd = static_cast<uint32_t>(bot % p.value());
        r *= detail::binom_digit(td, bd, p);
        if (r.is_zero()) return r;
        top /= p.value();
        bot /= p.value();
    }
    return r;
}

} // namespace modvertex
