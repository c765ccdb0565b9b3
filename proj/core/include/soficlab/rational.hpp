#ifndef SOFICLAB_RATIONAL_HPP
#define SOFICLAB_RATIONAL_HPP

#include <cstdint>
#include <compare>
#include <numeric>
#include <string>

#include "soficlab/errors.hpp"

namespace soficlab {

// Exact rational number over int64 with overflow-checked arithmetic.
// All verdict-bearing quantities in the library (Hamming distances, defect
// reports, measures, total variation) are computed in this type; no floating
// point is ever involved. Intermediate products use 128-bit integers and the
// narrowing back to 64 bits throws OverflowError instead of wrapping. The
// scales this library works at (denominators bounded by powers of the
// branching factor times small level counts) fit comfortably.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den) {
        if (den == 0) throw DomainError("Rational: zero denominator");
        __int128 n = num, d = den;
        if (d < 0) { n = -n; d = -d; }
        reduce_assign(n, d);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }

    Rational operator+(const Rational& o) const {
        __int128 n = (__int128)num_ * o.den_ + (__int128)o.num_ * den_;
        __int128 d = (__int128)den_ * o.den_;
        return from128(n, d);
    }
    Rational operator-(const Rational& o) const {
        __int128 n = (__int128)num_ * o.den_ - (__int128)o.num_ * den_;
        __int128 d = (__int128)den_ * o.den_;
        return from128(n, d);
    }
    Rational operator*(const Rational& o) const {
        return from128((__int128)num_ * o.num_, (__int128)den_ * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw DomainError("Rational: division by zero");
        return from128((__int128)num_ * o.den_, (__int128)den_ * o.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    std::strong_ordering operator<=>(const Rational& o) const {
        __int128 lhs = (__int128)num_ * o.den_;
        __int128 rhs = (__int128)o.num_ * den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    // Serialized form is always "p/q", e.g. "0/1", "3/4", "-1/2".
    std::string to_string() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p/q" or a bare integer "p".
    static Rational parse(const std::string& text);

private:
    static Rational from128(__int128 n, __int128 d) {
        Rational r;
        if (d < 0) { n = -n; d = -d; }
        r.reduce_assign(n, d);
        return r;
    }

    void reduce_assign(__int128 n, __int128 d) {
        __int128 a = n < 0 ? -n : n;
        __int128 g = gcd128(a, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) {
            throw OverflowError("Rational: value exceeds 64-bit range");
        }
        num_ = (std::int64_t)n;
        den_ = (std::int64_t)d;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a < 0 ? -a : a;
    }

    std::int64_t num_;
    std::int64_t den_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

}  // namespace soficlab

#endif
