#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "errors.hpp"

namespace tflat {

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in add");
    return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in sub");
    return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in mul");
    return r;
}

inline std::int64_t neg(std::int64_t a) { return sub(0, a); }

}  // namespace checked

inline std::int64_t gcd(std::int64_t a, std::int64_t b) {
    return std::gcd(a < 0 ? checked::neg(a) : a, b < 0 ? checked::neg(b) : b);
}

// floor division and non-negative remainder
inline std::int64_t floor_div(std::int64_t a, std::int64_t m) {
    std::int64_t q = a / m;
    if ((a % m != 0) && ((a < 0) != (m < 0))) --q;
    return q;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
    if (m <= 0) throw std::invalid_argument("modulus must be positive");
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

struct ExtGcd {
    std::int64_t g, x, y;  // a*x + b*y = g >= 0
};

inline ExtGcd ext_gcd(std::int64_t a, std::int64_t b) {
    if (a == 0 && b == 0) throw std::invalid_argument("gcd undefined");
    std::int64_t old_r = a, r = b, old_x = 1, x = 0, old_y = 0, y = 1;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t t = checked::sub(old_r, checked::mul(q, r));
        old_r = r; r = t;
        t = checked::sub(old_x, checked::mul(q, x));
        old_x = x; x = t;
        t = checked::sub(old_y, checked::mul(q, y));
        old_y = y; y = t;
    }
    if (old_r < 0) return {checked::neg(old_r), checked::neg(old_x), checked::neg(old_y)};
    return {old_r, old_x, old_y};
}

// Exact rational with int64 parts, always reduced, den > 0.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT implicit
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        std::size_t pos = 0;
        try {
            if (slash == std::string::npos) {
                std::int64_t n = std::stoll(s, &pos);
                if (pos != s.size()) throw std::invalid_argument("");
                return Rational(n);
            }
            std::string a = s.substr(0, slash), b = s.substr(slash + 1);
            std::size_t p2 = 0;
            std::int64_t n = std::stoll(a, &pos);
            std::int64_t d = std::stoll(b, &p2);
            if (pos != a.size() || p2 != b.size()) throw std::invalid_argument("");
            return Rational(n, d);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("not a rational number: " + s);
        }
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    int sign() const { return (num_ > 0) - (num_ < 0); }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        std::int64_t g = std::gcd(a.den_, b.den_);
        std::int64_t l = checked::mul(a.den_ / g, b.den_);
        return Rational(checked::add(checked::mul(a.num_, l / a.den_), checked::mul(b.num_, l / b.den_)), l);
    }
    friend Rational operator-(const Rational& a) { return Rational(checked::neg(a.num_), a.den_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        std::int64_t g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        return Rational(checked::mul(a.num_ / g1, b.num_ / g2), checked::mul(a.den_ / g2, b.den_ / g1));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("division by zero rational");
        return a * Rational(b.den_, b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    std::int64_t floor() const { return floor_div(num_, den_); }

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("zero denominator");
        if (den_ < 0) { num_ = checked::neg(num_); den_ = checked::neg(den_); }
        std::int64_t g = gcd(num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

// r mod m for rationals, result in [0, m)
inline Rational mod(const Rational& r, const Rational& m) {
    Rational q = r / m;
    return r - m * Rational(q.floor());
}

}  // namespace tflat
