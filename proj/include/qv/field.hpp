#pragma once

// Runtime field selection and per-field random sampling.
//
// FieldSpec is the runtime description ("q" or "fp:<p>") used by the CLI and
// pipeline; FieldCtx<K> is the compile-time sampling context threaded through
// generic code that needs random scalars (for F_p the modulus lives here).

#include <cstdint>
#include <stdexcept>
#include <string>

#include "qv/fp.hpp"
#include "qv/rational.hpp"
#include "qv/rng.hpp"

namespace qv {

struct FieldSpec {
    enum class Kind { Rationals, Prime };
    Kind kind = Kind::Rationals;
    std::uint32_t p = 0;

    static FieldSpec rationals() { return {}; }
    static FieldSpec prime(std::uint32_t p) {
        if (!is_prime_u32(p)) throw std::invalid_argument("field fp:" + std::to_string(p) + ": modulus is not prime");
        return FieldSpec{Kind::Prime, p};
    }

    /// Accepts "q" or "fp:<p>" with p a prime that fits in 31 bits.
    static FieldSpec parse(const std::string& text) {
        if (text == "q") return rationals();
        if (text.rfind("fp:", 0) == 0) {
            const std::string digits = text.substr(3);
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                throw std::invalid_argument("field '" + text + "': expected fp:<prime>");
            const unsigned long long value = std::stoull(digits);
            if (value < 2 || value > 0x7fffffffULL)
                throw std::invalid_argument("field '" + text + "': modulus out of range");
            return prime(static_cast<std::uint32_t>(value));
        }
        throw std::invalid_argument("field '" + text + "': expected 'q' or 'fp:<p>'");
    }

    std::string str() const {
        return kind == Kind::Rationals ? "q" : "fp:" + std::to_string(p);
    }
};

template <class K>
struct FieldCtx;

template <>
struct FieldCtx<Rat> {
    Rat random(Rng& rng) const { return random_rat(rng); }
    Rat unit() const { return Rat(1); }
};

template <>
struct FieldCtx<Fp> {
    std::uint32_t p;
    Fp random(Rng& rng) const { return random_fp(rng, p); }
    Fp unit() const { return Fp(1, p); }
};

} // namespace qv
