#pragma once

// Exact rational arithmetic, backed by GMP's mpq_class.
//
// String form is "p" for integers and "p/q" otherwise — exactly what
// mpq_class produces and what parse_rat accepts.  The free functions below
// (is_zero / inv / scalar_str) give Rat the same surface as qv::Fp so the
// matrix layer can be generic over the scalar type.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

#include "qv/rng.hpp"

namespace qv {

using Rat = mpq_class;
using Int = mpz_class;

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

inline Rat inv(const Rat& x) {
    if (is_zero(x)) throw std::domain_error("division by zero");
    return Rat(1 / x);
}

inline std::string scalar_str(const Rat& x) { return x.get_str(); }

inline Rat parse_rat(const std::string& s) {
    Rat x;
    if (s.empty() || x.set_str(s, 10) != 0)
        throw std::invalid_argument("parse_rat: malformed rational '" + s + "'");
    x.canonicalize();
    return x;
}

/// Small random rational with numerator in [-bound, bound].
inline Rat random_rat(Rng& rng, long bound = 9) {
    return Rat(static_cast<long>(rng.range(-bound, bound)));
}

} // namespace qv
