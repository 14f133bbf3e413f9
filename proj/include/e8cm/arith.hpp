#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace e8cm {

using Int = std::int64_t;
using Vec = std::vector<Int>;

struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

// Bad caller input: dimension mismatch, violated preconditions, malformed files.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline Int add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in add");
    return r;
}

inline Int sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 overflow in sub");
    return r;
}

inline Int mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in mul");
    return r;
}

inline Int narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("int128 value does not fit int64");
    return static_cast<Int>(v);
}

inline Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// result in [0, m)
inline Int mod(Int a, Int m) {
    Int r = a % m;
    return r < 0 ? r + m : r;
}

inline Int gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// returns g = gcd(a,b) >= 0 with a*x + b*y = g
inline Int ext_gcd(Int a, Int b, Int& x, Int& y) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Int q = floor_div(a, b);
        Int t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
        t = y0 - q * y1; y0 = y1; y1 = t;
    }
    if (a < 0) {
        a = -a; x0 = -x0; y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

// inverse of a modulo m, or -1 when gcd(a, m) != 1
inline Int inverse_mod(Int a, Int m) {
    Int x, y;
    if (ext_gcd(mod(a, m), m, x, y) != 1) return -1;
    return mod(x, m);
}

inline Int dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InputError("dot: dimension mismatch");
    __int128 s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<__int128>(a[i]) * b[i];
    return narrow(s);
}

inline std::string to_string(const Vec& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out + ")";
}

}  // namespace e8cm
