#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace tflat {

using cplx = std::complex<double>;
using Window = std::vector<cplx>;

// e^{2πik/n}, k reduced exactly before the trig call
inline cplx unit_root(__int128 k, std::int64_t n) {
    __int128 r = k % n;
    if (r < 0) r += n;
    if (r == 0) return {1.0, 0.0};
    // use symmetric representatives so cos/sin see angles in [-π, π]
    std::int64_t rr = static_cast<std::int64_t>(r);
    if (2 * rr > n) rr -= n;
    if (2 * rr == n) return {-1.0, 0.0};
    if (4 * rr == n) return {0.0, 1.0};
    if (4 * rr == -n) return {0.0, -1.0};
    double ang = 2.0 * std::numbers::pi * static_cast<double>(rr) / static_cast<double>(n);
    return {std::cos(ang), std::sin(ang)};
}

inline std::int64_t wrap(std::int64_t x, std::int64_t L) { return mod(x, L); }

namespace detail {

inline bool is_pow2(std::size_t n) { return n && !(n & (n - 1)); }

// unnormalized transform with kernel e^{sign·2πi·xy/L}
inline Window transform(const Window& f, int sign) {
    const std::size_t L = f.size();
    if (L >= 64 && is_pow2(L)) {
        Window a = f;
        for (std::size_t i = 1, j = 0; i < L; ++i) {
            std::size_t bit = L >> 1;
            for (; j & bit; bit >>= 1) j ^= bit;
            j ^= bit;
            if (i < j) std::swap(a[i], a[j]);
        }
        for (std::size_t len = 2; len <= L; len <<= 1) {
            std::size_t step = L / len;
            for (std::size_t i = 0; i < L; i += len)
                for (std::size_t k = 0; k < len / 2; ++k) {
                    cplx w = unit_root(sign * static_cast<std::int64_t>(k * step), static_cast<std::int64_t>(L));
                    cplx u = a[i + k], v = a[i + k + len / 2] * w;
                    a[i + k] = u + v;
                    a[i + k + len / 2] = u - v;
                }
        }
        return a;
    }
    Window out(L);
    const auto n = static_cast<std::int64_t>(L);
    for (std::int64_t y = 0; y < n; ++y) {
        cplx s = 0;
        for (std::int64_t x = 0; x < n; ++x) s += f[x] * unit_root(sign * ((x * y) % n), n);
        out[y] = s;
    }
    return out;
}

}  // namespace detail

// ĝ(y) = (1/L) Σ_x g(x) e^{−2πixy/L}
inline Window dft(const Window& f) {
    require(!f.empty(), "dft of empty window");
    Window out = detail::transform(f, -1);
    const double s = 1.0 / static_cast<double>(f.size());
    for (auto& v : out) v *= s;
    return out;
}

// inverse of dft: f(x) = Σ_y ĝ(y) e^{2πixy/L}
inline Window idft(const Window& f) {
    require(!f.empty(), "idft of empty window");
    return detail::transform(f, +1);
}

inline Window tf_shift(const Window& g, std::int64_t x, std::int64_t y) {
    const auto L = static_cast<std::int64_t>(g.size());
    Window out(g.size());
    x = wrap(x, L);
    y = wrap(y, L);
    for (std::int64_t l = 0; l < L; ++l) {
        std::int64_t src = l - x;
        if (src < 0) src += L;
        out[l] = g[src] * unit_root(static_cast<__int128>(l) * y, L);
    }
    return out;
}

// ⟨f,g⟩ = (1/L) Σ f·conj(g)
inline cplx inner(const Window& f, const Window& g) {
    require(f.size() == g.size(), "inner product of windows with different lengths");
    require(!f.empty(), "inner product of empty windows");
    cplx s = 0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * std::conj(g[i]);
    return s / static_cast<double>(f.size());
}

inline double norm(const Window& f) { return std::sqrt(inner(f, f).real()); }

inline double max_abs_diff(const Window& a, const Window& b) {
    require(a.size() == b.size(), "length mismatch");
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs_imag(const Window& f) {
    double m = 0;
    for (const auto& v : f) m = std::max(m, std::abs(v.imag()));
    return m;
}

inline double max_abs(const Window& f) {
    double m = 0;
    for (const auto& v : f) m = std::max(m, std::abs(v));
    return m;
}

inline Window delta(std::size_t L, std::size_t at = 0) {
    Window w(L, 0.0);
    w.at(at) = 1.0;
    return w;
}

inline Window constant(std::size_t L, cplx v = 1.0) { return Window(L, v); }

// Finitely supported sequence on ℤ: values on first, first+1, ...
struct DiscreteWindow {
    std::int64_t first = 0;
    std::vector<cplx> values;

    std::int64_t last() const { return first + static_cast<std::int64_t>(values.size()) - 1; }
    cplx operator()(std::int64_t l) const {
        if (l < first || l > last()) return 0.0;
        return values[static_cast<std::size_t>(l - first)];
    }
    // ĝ(t) = Σ_l g(l) e^{−2πilt}
    cplx fourier(double t) const {
        cplx s = 0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            double ang = -2.0 * std::numbers::pi * static_cast<double>(first + static_cast<std::int64_t>(i)) * t;
            s += values[i] * cplx(std::cos(ang), std::sin(ang));
        }
        return s;
    }
};

}  // namespace tflat
