#include "qv/tvalue.hpp"

namespace qv {

TValue TValue::t_power(int k, const Rat& coeff) {
    TValue x;
    x.set(k, coeff);
    return x;
}

int TValue::sign() const {
    if (c_.empty()) return 0;
    return sgn(c_.rbegin()->second);
}

TValue operator+(const TValue& a, const TValue& b) {
    TValue r = a;
    for (const auto& [e, v] : b.c_) {
        Rat acc = (r.c_.count(e) ? r.c_[e] : Rat(0)) + v;
        r.set(e, acc);
    }
    return r;
}

TValue operator-(const TValue& a, const TValue& b) { return a + (-b); }

TValue TValue::operator-() const {
    TValue r;
    for (const auto& [e, v] : c_) r.c_[e] = Rat(-v);
    return r;
}

TValue operator*(const TValue& a, const TValue& b) {
    TValue r;
    for (const auto& [ea, va] : a.c_)
        for (const auto& [eb, vb] : b.c_) {
            Rat acc = (r.c_.count(ea + eb) ? r.c_[ea + eb] : Rat(0)) + va * vb;
            r.set(ea + eb, acc);
        }
    return r;
}

TValue operator*(long k, const TValue& x) {
    TValue r;
    if (k == 0) return r;
    for (const auto& [e, v] : x.c_) r.c_[e] = Rat(k * v);
    return r;
}

std::string TValue::str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        const int e = it->first;
        const Rat& v = it->second;
        const bool neg = sgn(v) < 0;
        const Rat mag = neg ? Rat(-v) : v;
        if (!s.empty())
            s += neg ? "-" : "+";
        else if (neg)
            s += "-";
        const bool unit = mag == 1;
        if (e == 0) {
            s += scalar_str(mag);
        } else {
            if (!unit) s += scalar_str(mag);
            s += "T";
            if (e != 1) s += "^" + std::to_string(e);
        }
    }
    return s;
}

} // namespace qv
