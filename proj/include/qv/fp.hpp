#pragma once

// Prime-field scalars with a carried modulus.
//
// Each element stores its modulus alongside its value, so matrices over F_p
// need no out-of-band field object.  Values built from bare integers (e.g.
// the literals produced by generic code: K(0), K(1)) start *unbound*
// (modulus 0) and acquire a modulus on first contact with a bound element;
// arithmetic between two bound elements with different moduli is a logic
// error.  Representatives of bound elements are kept normalized in [0, p).

#include <cstdint>
#include <stdexcept>
#include <string>

#include "qv/rng.hpp"

namespace qv {

struct Fp {
    std::int64_t v = 0;
    std::uint32_t p = 0; // 0 = unbound literal

    Fp() = default;
    Fp(long long value) : v(value) {} // NOLINT: implicit by design (literals)
    Fp(long long value, std::uint32_t modulus) : v(value), p(modulus) { normalize(); }

    void normalize() {
        if (p != 0) {
            v %= static_cast<std::int64_t>(p);
            if (v < 0) v += p;
        }
    }

    bool bound() const { return p != 0; }

    /// The common modulus of two operands (binding literals as needed).
    static std::uint32_t join(const Fp& a, const Fp& b) {
        if (a.p != 0 && b.p != 0 && a.p != b.p)
            throw std::logic_error("Fp: modulus mismatch (" + std::to_string(a.p) + " vs " +
                                   std::to_string(b.p) + ")");
        return a.p != 0 ? a.p : b.p;
    }

    Fp bind(std::uint32_t modulus) const {
        Fp r{v, 0};
        r.p = modulus;
        r.normalize();
        return r;
    }

    friend Fp operator+(const Fp& a, const Fp& b) {
        const std::uint32_t m = join(a, b);
        if (m == 0) return Fp{a.v + b.v};
        return Fp(a.bind(m).v + b.bind(m).v, m);
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        const std::uint32_t m = join(a, b);
        if (m == 0) return Fp{a.v - b.v};
        return Fp(a.bind(m).v - b.bind(m).v, m);
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        const std::uint32_t m = join(a, b);
        if (m == 0) return Fp{a.v * b.v};
        return Fp(a.bind(m).v * b.bind(m).v, m);
    }
    Fp operator-() const { return p == 0 ? Fp{-v} : Fp(-v, p); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    friend bool operator==(const Fp& a, const Fp& b) {
        const std::uint32_t m = join(a, b);
        if (m == 0) return a.v == b.v;
        return a.bind(m).v == b.bind(m).v;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
};

inline bool is_zero(const Fp& x) { return x.p == 0 ? x.v == 0 : x.bind(x.p).v == 0; }

/// Multiplicative inverse by extended Euclid.  Unbound +-1 literals are their
/// own inverse in every F_p, so they pass through; other unbound values have
/// no well-defined inverse without a modulus.
inline Fp inv(const Fp& x) {
    if (!x.bound()) {
        if (x.v == 1 || x.v == -1) return x;
        throw std::logic_error("Fp: cannot invert an unbound literal");
    }
    if (is_zero(x)) throw std::domain_error("division by zero");
    std::int64_t a = x.v, m = x.p;
    std::int64_t r0 = m, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::int64_t t = r0 - q * r1; r0 = r1; r1 = t;
        t = s0 - q * s1; s0 = s1; s1 = t;
    }
    if (r0 != 1) throw std::domain_error("Fp: element not invertible (modulus not prime?)");
    return Fp(s0, x.p);
}

inline Fp operator/(const Fp& a, const Fp& b) { return a * inv(b.bound() ? b : b.bind(a.p)); }

inline std::string scalar_str(const Fp& x) {
    return std::to_string(x.bound() ? x.bind(x.p).v : x.v);
}

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline Fp random_fp(Rng& rng, std::uint32_t p) {
    return Fp(static_cast<long long>(rng.below(p)), p);
}

} // namespace qv
