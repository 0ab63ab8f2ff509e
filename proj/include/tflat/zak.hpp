#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "signal.hpp"

namespace tflat {

// Zf(x, y) for x < 2p, y < L/2p.
struct ZakTable {
    std::int64_t L = 0, p = 0;
    std::vector<cplx> values;  // row-major over x

    std::int64_t rows() const { return 2 * p; }
    std::int64_t cols() const { return L / (2 * p); }
    cplx operator()(std::int64_t x, std::int64_t y) const { return values[static_cast<std::size_t>(x * cols() + y)]; }
    // folded extension to all x ∈ ℤ
    cplx at(std::int64_t x, std::int64_t y) const {
        std::int64_t l = floor_div(x, 2 * p), x0 = x - 2 * p * l;
        std::int64_t yy = mod(y, cols());
        return unit_root(-static_cast<__int128>(2 * p) * l * y, L) * (*this)(x0, yy);
    }
};

inline ZakTable zak_finite(const Window& f, std::int64_t p) {
    const auto L = static_cast<std::int64_t>(f.size());
    require(p >= 1 && L % (2 * p) == 0, "2p must divide L");
    ZakTable z{L, p, std::vector<cplx>(static_cast<std::size_t>(L))};
    const std::int64_t K = L / (2 * p);
    for (std::int64_t x = 0; x < 2 * p; ++x)
        for (std::int64_t y = 0; y < K; ++y) {
            cplx s = 0;
            for (std::int64_t k = 0; k < K; ++k) s += f[x + 2 * p * k] * unit_root(static_cast<__int128>(2 * p * k) * y, L);
            z.values[static_cast<std::size_t>(x * K + y)] = s;
        }
    return z;
}

struct ConditionResult {
    bool holds = false;
    double max_deviation = 0;
};

namespace detail {

inline Window real_dft_or_throw(const Window& g) {
    Window gh = dft(g);
    if (max_abs_imag(gh) > 1e-10 * std::max(1.0, max_abs(gh)))
        throw HypothesisError("hypothesis violated: window DFT is not real-valued");
    return gh;
}

}  // namespace detail

// |Zĝ(x,y)|² + |Zĝ(x+p,y)|² = 1/p
inline ConditionResult cond_quadrature(const Window& g, std::int64_t p, double tol = 1e-9) {
    const auto L = static_cast<std::int64_t>(g.size());
    require(p >= 1 && L % (2 * p) == 0, "2p must divide L");
    ZakTable z = zak_finite(detail::real_dft_or_throw(g), p);
    double dev = 0;
    for (std::int64_t x = 0; x < p; ++x)
        for (std::int64_t y = 0; y < z.cols(); ++y)
            dev = std::max(dev, std::abs(std::norm(z(x, y)) + std::norm(z(x + p, y)) - 1.0 / static_cast<double>(p)));
    return {dev <= tol, dev};
}

// Σ_{l<L/p} ĝ(y+lp) ĝ(y+lp+2jp) = δ_{j0}/p for j < L/2p, y ∈ ℤ_L
inline ConditionResult cond_correlation(const Window& g, std::int64_t p, double tol = 1e-9) {
    const auto L = static_cast<std::int64_t>(g.size());
    require(p >= 1 && L % (2 * p) == 0, "2p must divide L");
    Window gh = detail::real_dft_or_throw(g);
    double dev = 0;
    for (std::int64_t j = 0; j < L / (2 * p); ++j)
        for (std::int64_t y = 0; y < L; ++y) {
            double s = 0;
            for (std::int64_t l = 0; l < L / p; ++l)
                s += gh[mod(y + l * p, L)].real() * gh[mod(y + l * p + 2 * j * p, L)].real();
            dev = std::max(dev, std::abs(s - (j == 0 ? 1.0 / static_cast<double>(p) : 0.0)));
        }
    return {dev <= tol, dev};
}

// Trig-polynomial check of Σ_{l<N} ĝ(t+l/N) ĝ(t+(l+2j)/N) = scale·N·δ_{j0}, j < N/2.
// Both sides are trigonometric polynomials of degree ≤ 2·(support width);
// t_samples ≤ 0 picks max(64, 4·width + 1).
inline ConditionResult cond_correlation_discrete(const DiscreteWindow& g, std::int64_t N, std::int64_t t_samples = 0,
                                                 double tol = 1e-9, double scale = 1.0) {
    require(!g.values.empty(), "window has empty support");
    require(N >= 2 && N % 2 == 0, "N must be even and positive");
    const auto width = static_cast<std::int64_t>(g.values.size()) - 1;
    if (t_samples <= 0) t_samples = std::max<std::int64_t>(64, 4 * width + 1);
    double dev = 0;
    for (std::int64_t s = 0; s < t_samples; ++s) {
        double t = static_cast<double>(s) / static_cast<double>(t_samples * N);
        Window vals(static_cast<std::size_t>(N));
        for (std::int64_t l = 0; l < N; ++l) vals[static_cast<std::size_t>(l)] = g.fourier(t + static_cast<double>(l) / static_cast<double>(N));
        if (max_abs_imag(vals) > 1e-10 * std::max(1.0, max_abs(vals)))
            throw HypothesisError("hypothesis violated: window Fourier series is not real-valued");
        std::vector<double> gh(vals.size());
        for (std::size_t l = 0; l < vals.size(); ++l) gh[l] = vals[l].real();
        for (std::int64_t j = 0; j < N / 2; ++j) {
            double acc = 0;
            for (std::int64_t l = 0; l < N; ++l) acc += gh[static_cast<std::size_t>(l)] * gh[static_cast<std::size_t>((l + 2 * j) % N)];
            dev = std::max(dev, std::abs(acc - (j == 0 ? scale * static_cast<double>(N) : 0.0)));
        }
    }
    return {dev <= tol, dev};
}

}  // namespace tflat
