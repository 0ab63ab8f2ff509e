#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>

#include "errors.hpp"
#include "rational.hpp"

namespace tflat {

enum class Domain { Real, Discrete, Finite };

// [[a, b], [c, d]]; integer entries are stored as Rationals with den 1.
struct GeneratorMatrix {
    Rational a, b, c, d;
    Domain domain = Domain::Real;
    std::int64_t L = 0;  // Finite only

    Rational det() const { return a * d - b * c; }
};

struct CanonicalReal {
    Rational a, b, d;
    friend bool operator==(const CanonicalReal&, const CanonicalReal&) = default;
};

struct CanonicalDiscrete {
    std::int64_t N = 0, b = 0;
    friend bool operator==(const CanonicalDiscrete&, const CanonicalDiscrete&) = default;
    GeneratorMatrix matrix() const {
        return {Rational(N / 2), Rational(b), Rational(0), Rational(1, N), Domain::Discrete, 0};
    }
};

// Generator [[L/(2p), b], [0, p]].
struct FiniteLattice {
    std::int64_t L = 0, p = 0, b = 0;
    friend bool operator==(const FiniteLattice&, const FiniteLattice&) = default;

    std::int64_t a() const { return L / (2 * p); }
    GeneratorMatrix matrix() const {
        return {Rational(a()), Rational(b), Rational(0), Rational(p), Domain::Finite, L};
    }
    // lattice point with index (m, n), reduced mod L
    std::pair<std::int64_t, std::int64_t> point(std::int64_t m, std::int64_t n) const {
        __int128 x = static_cast<__int128>(m) * a() + static_cast<__int128>(n) * b;
        __int128 y = static_cast<__int128>(n) * p;
        auto red = [this](__int128 v) {
            __int128 r = v % L;
            return static_cast<std::int64_t>(r < 0 ? r + L : r);
        };
        return {red(x), red(y)};
    }
};

inline void validate(const FiniteLattice& lat) {
    require(lat.L >= 2 && lat.L % 2 == 0, "L must be an even positive integer");
    require(lat.p >= 1 && (lat.L / 2) % lat.p == 0, "p must divide L/2");
    require(lat.b >= 0 && lat.b < lat.a(), "b must satisfy 0 <= b < L/(2p)");
}

inline CanonicalReal hnf_real(const GeneratorMatrix& A) {
    Rational a1 = A.a, b1 = A.b, c1 = A.c, d1 = A.d;
    Rational det = A.det();
    if (det.sign() == 0) throw std::invalid_argument("zero determinant");
    if (d1.sign() == 0) {
        std::swap(a1, b1);
        std::swap(c1, d1);
    }
    // second row (c1, d1) = r·(k, l) with k, l coprime integers
    Rational ratio = c1 / d1;
    std::int64_t k = ratio.num(), l = ratio.den();
    Rational r = d1 / Rational(l);
    std::int64_t p = gcd(k, l);
    ExtGcd e = ext_gcd(k / p, l / p);
    Rational bb = a1 * Rational(e.x) + b1 * Rational(e.y);
    Rational d = r * Rational(p);
    if (d.sign() < 0) {
        d = -d;
        bb = -bb;
    }
    Rational a = abs(det) / d;
    return {a, mod(bb, a), d};
}

inline CanonicalDiscrete canonical_discrete(const GeneratorMatrix& A) {
    require(A.a.is_integer() && A.b.is_integer(), "first row must be integer");
    if (!(A.det() == Rational(1, 2))) throw std::invalid_argument("volume must be 1/2");
    std::int64_t p = A.c.num(), q = A.c.den(), p2 = A.d.num(), q2 = A.d.den();
    std::int64_t z = gcd(checked::mul(p, q2), checked::mul(p2, q));
    std::int64_t N = checked::mul(q, q2) / z;
    // c = r/N, d = s/N with gcd(r, s) = 1
    std::int64_t r = (A.c * Rational(N)).num(), s = (A.d * Rational(N)).num();
    if (N % 2 != 0) throw std::invalid_argument("volume must be 1/2");
    ExtGcd e = ext_gcd(r, s);
    std::int64_t bb = checked::add(checked::mul(A.a.num(), e.x), checked::mul(A.b.num(), e.y));
    return {N, mod(bb, N / 2)};
}

inline FiniteLattice canonical_finite(const GeneratorMatrix& A) {
    std::int64_t L = A.L;
    require(L >= 2 && L % 2 == 0, "L must be an even positive integer");
    require(A.a.is_integer() && A.b.is_integer() && A.c.is_integer() && A.d.is_integer(),
            "finite generator must have integer entries");
    std::int64_t a = A.a.num(), b = A.b.num(), c = A.c.num(), d = A.d.num();
    std::int64_t det = checked::sub(checked::mul(a, d), checked::mul(b, c));
    if (det != L / 2) throw std::invalid_argument("determinant must equal L/2");
    std::int64_t p = gcd(c, d);
    ExtGcd e = ext_gcd(c / p, d / p);
    std::int64_t z = checked::add(checked::mul(a, e.x), checked::mul(b, e.y));
    return {L, p, mod(z, L / (2 * p))};
}

inline std::set<std::pair<std::int64_t, std::int64_t>> lattice_points_finite(const GeneratorMatrix& A) {
    std::int64_t L = A.L;
    require(L >= 1, "L must be positive");
    require(A.a.is_integer() && A.b.is_integer() && A.c.is_integer() && A.d.is_integer(),
            "finite generator must have integer entries");
    std::int64_t a = mod(A.a.num(), L), b = mod(A.b.num(), L), c = mod(A.c.num(), L), d = mod(A.d.num(), L);
    std::set<std::pair<std::int64_t, std::int64_t>> pts;
    for (std::int64_t m = 0; m < L; ++m)
        for (std::int64_t n = 0; n < L; ++n)
            pts.emplace((a * m + b * n) % L, (c * m + d * n) % L);
    return pts;
}

}  // namespace tflat
