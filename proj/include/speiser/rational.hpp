#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace speiser {

/// Exact rational arithmetic on int64 with int128 intermediates.
/// Excess values have tiny denominators (lcm of face half-degrees), so the
/// range never gets close to overflow; we check anyway.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    static Rational from_i128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rational: overflow");
        Rational r;
        r.num = static_cast<std::int64_t>(n);
        r.den = static_cast<std::int64_t>(d);
        return r;
    }

    Rational operator+(const Rational& o) const {
        return from_i128((__int128)num * o.den + (__int128)o.num * den,
                         (__int128)den * o.den);
    }
    Rational operator-(const Rational& o) const {
        return from_i128((__int128)num * o.den - (__int128)o.num * den,
                         (__int128)den * o.den);
    }
    Rational operator-() const { return Rational(-num, den); }
    Rational operator*(const Rational& o) const {
        return from_i128((__int128)num * o.num, (__int128)den * o.den);
    }
    Rational operator/(const Rational& o) const {
        if (o.num == 0) throw std::domain_error("Rational: division by zero");
        return from_i128((__int128)num * o.den, (__int128)den * o.num);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return (__int128)num * o.den < (__int128)o.num * den;
    }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    int sign() const { return num > 0 ? 1 : (num < 0 ? -1 : 0); }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

private:
    void assign(std::int64_t n, std::int64_t d) {
        *this = from_i128(n, d);
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }
};

}  // namespace speiser
