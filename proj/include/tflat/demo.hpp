#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "gabor.hpp"
#include "metaplectic.hpp"
#include "operator.hpp"
#include "signal.hpp"
#include "wilson.hpp"

namespace tflat {

// Hexagonal lattice of volume 1/2: T = F = 1/√2.
inline RealLattice<double> hexagonal_lattice() {
    const double a = std::pow(3.0, -0.25);
    return {a, a / 2.0, std::pow(3.0, 0.25) / 2.0};
}

inline RealLattice<double> rectangular_lattice() { return {0.5, 0.0, 1.0}; }

struct DemoOptions {
    RealLattice<double> lattice = hexagonal_lattice();
    bool rectangular_control = false;  // skip U, use the (1/2, 0, 1) lattice
    double extent = 0.25;              // truncation radius as a fraction of √L
};

struct DemoResult {
    Window window;  // g on the grid t_k = k_c/√L
    double gram_deviation = 0;
    std::size_t elements = 0;
    double time_spread = 0, freq_spread = 0;
    double norm_ratio = 0;  // ‖U⁻¹φ‖/‖φ‖
};

namespace detail {

// samples of g(t − x)·e^{2πiyt} for real x, y
inline Window grid_atom(const Window& coef, double x, double y) {
    const auto L = static_cast<std::int64_t>(coef.size());
    const double rootL = std::sqrt(static_cast<double>(L));
    Window c(coef.size());
    for (std::int64_t j = 0; j < L; ++j) {
        double ang = -2.0 * std::numbers::pi * static_cast<double>(grid::centered(j, L)) * x / rootL;
        c[j] = coef[j] * cplx(std::cos(ang), std::sin(ang));
    }
    Window out = idft(c);
    for (std::int64_t k = 0; k < L; ++k) {
        double ang = 2.0 * std::numbers::pi * y * grid::t(k, L);
        out[k] *= cplx(std::cos(ang), std::sin(ang));
    }
    return out;
}

inline double spread(const Window& f, const std::vector<double>& axis) {
    double w = 0, m1 = 0, m2 = 0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        double p = std::norm(f[k]);
        w += p;
        m1 += p * axis[k];
        m2 += p * axis[k] * axis[k];
    }
    m1 /= w;
    return std::sqrt(std::max(0.0, m2 / w - m1 * m1));
}

}  // namespace detail

inline DemoResult wilson_continuous_demo(double nu, std::int64_t L, const DemoOptions& opt = {}) {
    require(nu > 0, "nu must be positive");
    require(L >= 64, "L must be at least 64");
    const auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(L))));
    require(r * r == L && r % 2 == 0, "L must be the square of an even integer");

    Window h(static_cast<std::size_t>(L));
    for (std::int64_t k = 0; k < L; ++k) {
        double t = grid::t(k, L);
        h[k] = std::pow(2.0 * nu, 0.25) * std::exp(-nu * std::numbers::pi * t * t);
    }
    Window phi;
    try {
        phi = tighten(h, FiniteLattice{L, r, 0});
    } catch (const NumericalError&) {
        throw NumericalError("intermediate window does not generate a frame");
    }

    const RealLattice<double> lat = opt.rectangular_control ? rectangular_lattice() : opt.lattice;
    continuous_factor(lat);
    DemoResult res;
    res.window = opt.rectangular_control ? phi : apply_continuous_U_inverse(phi, lat);
    res.norm_ratio = norm(res.window) / norm(phi);

    const Window coef = dft(res.window);
    const double T = opt.extent * static_cast<double>(r);
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<Window> family;
    const auto mmax = static_cast<std::int64_t>(std::floor(T / lat.a)) + 1;
    for (std::int64_t m = -mmax; m <= mmax; ++m)
        if (std::abs(2.0 * m * lat.a) <= T) family.push_back(detail::grid_atom(coef, 2.0 * m * lat.a, 0.0));
    for (std::int64_t n = 1; n * lat.d <= T; ++n)
        for (std::int64_t m = -mmax; m <= mmax; ++m) {
            if (std::abs(m * lat.a) > T) continue;
            const double x = m * lat.a, y = n * lat.d, dx = n * lat.b;
            Window e1 = detail::grid_atom(coef, x + dx, y);
            Window e2 = detail::grid_atom(coef, x - dx, -y);
            const double ang = -std::numbers::pi * lat.b * lat.d * static_cast<double>(n * n);
            const cplx ph(std::cos(ang), std::sin(ang));
            const bool even = ((m + n) % 2 + 2) % 2 == 0;
            Window psi(e1.size());
            for (std::size_t k = 0; k < psi.size(); ++k)
                psi[k] = ph * (even ? s * (e1[k] + e2[k]) : cplx(0.0, s) * (e1[k] - e2[k]));
            family.push_back(std::move(psi));
        }
    res.elements = family.size();
    res.gram_deviation = gram(family).deviation_from_identity();

    std::vector<double> t_axis(static_cast<std::size_t>(L));
    for (std::int64_t k = 0; k < L; ++k) t_axis[k] = grid::t(k, L);
    res.time_spread = detail::spread(res.window, t_axis);
    res.freq_spread = detail::spread(grid::fourier(res.window), t_axis);
    return res;
}

}  // namespace tflat
