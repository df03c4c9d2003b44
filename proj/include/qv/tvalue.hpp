#pragma once

// Laurent polynomials in a formal parameter T with rational coefficients,
// ordered by the "T arbitrarily large" rule: the sign of a value is the sign
// of its highest-exponent coefficient.  Using these as the scalar type of a
// stability functional removes every magnitude estimate — comparisons that
// would hold "for T large enough" become exact sign computations.

#include <map>
#include <string>

#include "qv/rational.hpp"

namespace qv {

class TValue {
public:
    TValue() = default;
    TValue(long n) { // NOLINT: implicit by design (integer constants)
        if (n != 0) c_[0] = Rat(n);
    }
    explicit TValue(const Rat& r) {
        if (!qv::is_zero(r)) c_[0] = r;
    }

    /// coeff · T^k
    static TValue t_power(int k, const Rat& coeff = Rat(1));

    bool is_zero() const { return c_.empty(); }

    /// Sign under T >> 0: the sign of the leading coefficient, 0 for the zero value.
    int sign() const;

    /// Highest exponent present; only meaningful when nonzero.
    int leading_exponent() const { return c_.empty() ? 0 : c_.rbegin()->first; }

    const std::map<int, Rat>& coeffs() const { return c_; }

    friend TValue operator+(const TValue& a, const TValue& b);
    friend TValue operator-(const TValue& a, const TValue& b);
    TValue operator-() const;
    friend TValue operator*(const TValue& a, const TValue& b);
    TValue& operator+=(const TValue& o) { return *this = *this + o; }
    TValue& operator-=(const TValue& o) { return *this = *this - o; }

    /// Multiplication by an integer (dimension-vector pairing).
    friend TValue operator*(long k, const TValue& x);

    friend bool operator==(const TValue& a, const TValue& b) { return a.c_ == b.c_; }
    friend bool operator!=(const TValue& a, const TValue& b) { return !(a == b); }

    /// Deterministic rendering, leading term first: e.g. "-T^-1+2T^-2", "0",
    /// "T^2-3", "5T".
    std::string str() const;

private:
    void set(int e, const Rat& v) {
        if (qv::is_zero(v))
            c_.erase(e);
        else
            c_[e] = v;
    }

    std::map<int, Rat> c_; // exponent -> nonzero coefficient
};

inline int t_sign(const TValue& x) { return x.sign(); }

} // namespace qv
