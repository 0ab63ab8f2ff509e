#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gabor.hpp"
#include "operator.hpp"
#include "rational.hpp"
#include "ring.hpp"
#include "signal.hpp"

namespace tflat {

struct SigmaParams {
    std::int64_t L = 0, p = 0, b = 0;
    std::int64_t alpha = 1, beta = 0, gamma = 0, delta = 1;
    std::int64_t m0 = 1, n0 = 0;
    std::int64_t gcd_c = 0, lcm_d = 0, s = 0, t = 0;
    std::string branch;  // "rectangular", "sign_conditions_met", "sign_conditions_unmet"

    FiniteLattice lattice() const { return {L, p, b}; }
    std::int64_t q() const { return L / (2 * gcd_c); }

    // σ(x, y) = (αx + βy, γx + δy) mod L
    std::pair<std::int64_t, std::int64_t> sigma(std::int64_t x, std::int64_t y) const {
        __int128 X = static_cast<__int128>(alpha) * x + static_cast<__int128>(beta) * y;
        __int128 Y = static_cast<__int128>(gamma) * x + static_cast<__int128>(delta) * y;
        auto red = [this](__int128 v) {
            __int128 r = v % L;
            return static_cast<std::int64_t>(r < 0 ? r + L : r);
        };
        return {red(X), red(Y)};
    }
};

namespace detail {

// order used for tie-breaking: 0, 1, -1, 2, -2, ...
inline std::pair<std::int64_t, int> tie_key(std::int64_t x) { return {x < 0 ? -x : x, x < 0 ? 1 : 0}; }

inline std::vector<std::int64_t> ordered_box(std::int64_t R) {
    std::vector<std::int64_t> v{0};
    for (std::int64_t k = 1; k <= R; ++k) {
        v.push_back(k);
        v.push_back(-k);
    }
    return v;
}

}  // namespace detail

inline SigmaParams sigma_params(const FiniteLattice& lat) {
    validate(lat);
    const std::int64_t L = lat.L, p = lat.p, b = lat.b, a = lat.a();
    SigmaParams sp;
    sp.L = L;
    sp.p = p;
    sp.b = b;
    if (b == 0) {
        sp.gcd_c = sp.lcm_d = sp.s = a;
        sp.branch = "rectangular";
        return sp;
    }
    const std::int64_t gstar = gcd(gcd(a, b), p);
    const std::int64_t R = 2 * L;
    const auto box = detail::ordered_box(R);

    using Key = std::tuple<int, int, std::pair<std::int64_t, int>, std::pair<std::int64_t, int>, std::pair<std::int64_t, int>>;
    std::optional<Key> best_key;
    SigmaParams best = sp;
    for (int ai = 0; ai < 2; ++ai) {
        const std::int64_t alpha = ai == 0 ? 1 : -1;
        for (std::int64_t beta : box) {
            const std::int64_t v = alpha * b + beta * p;
            if (v == 0 || gcd(a, v) != gstar) continue;
            for (std::int64_t n0 : box) {
                if (n0 == 0) continue;
                const std::int64_t num = gstar - v * n0;
                if (num % (alpha * a) != 0) continue;
                const std::int64_t m0 = num / (alpha * a);
                if (m0 < -R || m0 > R) continue;
                const std::int64_t X = a * m0 + b * n0, Y = p * n0;
                if (X == 0 || gcd(X, Y) != gstar) continue;
                const bool ok = (X < 0) != (Y < 0) && alpha * a * v > 0;
                Key key{ok ? 0 : 1, ai, detail::tie_key(beta), detail::tie_key(m0), detail::tie_key(n0)};
                if (best_key && !(key < *best_key)) continue;
                best_key = key;
                best.alpha = alpha;
                best.beta = beta;
                best.m0 = m0;
                best.n0 = n0;
                best.gcd_c = gstar;
                best.s = gstar;
                best.t = checked::mul(-X, Y) / gstar;
                best.gamma = -Y / gstar;
                best.delta = X / gstar;
                best.lcm_d = a * (v < 0 ? -v : v) / gstar;
                best.branch = ok ? "sign_conditions_met" : "sign_conditions_unmet";
            }
        }
    }
    if (!best_key)
        throw NumericalError("no admissible sigma parameters with beta, m0, n0 in [" + std::to_string(-R) + ", " +
                             std::to_string(R) + "]");
    return best;
}

// Chirp phase C(x, y) at a lattice point, as the exponent k of e^{πik/L}, k mod 2L.
inline std::int64_t intertwining_phase_exponent(const SigmaParams& sp, std::int64_t x, std::int64_t y) {
    const __int128 L = sp.L;
    __int128 q = static_cast<__int128>(sp.alpha) * sp.gamma * x * x + static_cast<__int128>(sp.beta) * sp.delta * y * y;
    q %= 2 * L;
    __int128 e = -q * (L + 1) - 2 * static_cast<__int128>(sp.beta) * sp.gamma * (x % L) * (y % L);
    e %= 2 * L;
    if (e < 0) e += 2 * L;
    return static_cast<std::int64_t>(e);
}

inline cplx intertwining_phase(const SigmaParams& sp, std::int64_t x, std::int64_t y) {
    return unit_root(intertwining_phase_exponent(sp, x, y), 2 * sp.L);
}

// Normalized finite metaplectic operator, stored densely.
class MetaplecticOperator {
public:
    explicit MetaplecticOperator(const SigmaParams& sp) : sp_(sp), U_(static_cast<std::size_t>(sp.L)) {
        const std::int64_t L = sp.L;
        const __int128 L2 = 2 * static_cast<__int128>(L);
        for (std::int64_t k = 0; k < L; ++k)
            for (std::int64_t l = 0; l < L; ++l) {
                std::int64_t j = mod(sp.alpha * k + sp.beta * l, L);
                __int128 q = (static_cast<__int128>(sp.alpha) * sp.gamma * k * k +
                              static_cast<__int128>(sp.beta) * sp.delta * l * l) % L2;
                __int128 e = -q * (L + 1) - 2 * static_cast<__int128>(sp.beta) * sp.gamma * k * l;
                U_(static_cast<std::size_t>(k), static_cast<std::size_t>(j)) += unit_root(e, 2 * L);
            }
        double kappa = 0;
        for (std::int64_t k = 0; k < L; ++k) kappa += std::norm(U_(static_cast<std::size_t>(k), 0));
        const double s = 1.0 / std::sqrt(kappa);
        for (std::size_t i = 0; i < U_.size(); ++i)
            for (std::size_t j = 0; j < U_.size(); ++j) U_(i, j) *= s;
        Uh_ = U_.adjoint();
    }

    const SigmaParams& params() const { return sp_; }
    const OperatorMatrix& matrix() const { return U_; }
    Window apply(const Window& f) const { return U_.apply(f); }
    Window apply_inverse(const Window& f) const { return Uh_.apply(f); }

private:
    SigmaParams sp_;
    OperatorMatrix U_, Uh_;
};

inline Window meta_finite(const Window& f, const SigmaParams& sp) {
    require(static_cast<std::int64_t>(f.size()) == sp.L, "window length must equal L");
    return MetaplecticOperator(sp).apply(f);
}

inline Window meta_finite_inverse(const Window& f, const SigmaParams& sp) {
    require(static_cast<std::int64_t>(f.size()) == sp.L, "window length must equal L");
    return MetaplecticOperator(sp).apply_inverse(f);
}

// Uf(k) = f(k) e^{πi n0 k² / (cN)}
inline DiscreteWindow chirp_discrete(const DiscreteWindow& f, std::int64_t n0, std::int64_t c, std::int64_t N) {
    require(c != 0 && N != 0, "chirp needs nonzero c and N");
    std::int64_t den = checked::mul(c, N);
    if (den < 0) {
        den = -den;
        n0 = -n0;
    }
    DiscreteWindow out = f;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        __int128 k = f.first + static_cast<std::int64_t>(i);
        out.values[i] *= unit_root(static_cast<__int128>(n0) * k * k, 2 * den);
    }
    return out;
}

// ---- continuous factorization ----

template <class T>
struct RealLattice {
    T a, b, d;
};

template <class T>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
    static Rational from(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }
    static bool equal(const Rational& x, const Rational& y) { return x == y; }
};

template <>
struct ScalarOps<double> {
    static double from(std::int64_t n, std::int64_t d = 1) { return static_cast<double>(n) / static_cast<double>(d); }
    static bool equal(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(x)); }
};

enum class FactorKind { Dilation, Fourier, Chirp, InverseFourier };

template <class T>
struct Factor {
    FactorKind kind;
    T param;  // dilation factor or chirp parameter; unused for transforms
};

// U = 𝒟_{1/d} ∘ 𝓕 ∘ 𝒩_{−b/d} ∘ 𝓕^{−1}, listed left to right
template <class T>
struct ContinuousFactorization {
    RealLattice<T> lattice;
    std::array<std::array<T, 2>, 2> A;  // [[d, −b], [0, 2a]]
    std::vector<Factor<T>> factors;
};

template <class T>
ContinuousFactorization<T> continuous_factor(const RealLattice<T>& lat) {
    using S = ScalarOps<T>;
    const T zero = S::from(0), half = S::from(1, 2);
    if (!S::equal(lat.a * lat.d, half)) throw std::invalid_argument("lattice volume must be 1/2");
    ContinuousFactorization<T> f{lat, {{{lat.d, zero - lat.b}, {zero, S::from(2) * lat.a}}}, {}};
    f.factors = {{FactorKind::Dilation, S::from(1) / lat.d},
                 {FactorKind::Fourier, zero},
                 {FactorKind::Chirp, zero - lat.b / lat.d},
                 {FactorKind::InverseFourier, zero}};
    for (std::int64_t m = -3; m <= 3; ++m)
        for (std::int64_t n = -3; n <= 3; ++n) {
            T x = S::from(m) * lat.a + S::from(n) * lat.b, y = S::from(n) * lat.d;
            T u = f.A[0][0] * x + f.A[0][1] * y, v = f.A[1][0] * x + f.A[1][1] * y;
            if (!S::equal(u, S::from(m, 2)) || !S::equal(v, S::from(n)))
                throw NumericalError("factorization identity failed");
        }
    return f;
}

// Sampling grid t_k = k_c/√L with k_c the centered representative of k.
namespace grid {

inline std::int64_t centered(std::int64_t k, std::int64_t L) { return 2 * k < L ? k : k - L; }

inline double t(std::int64_t k, std::int64_t L) {
    return static_cast<double>(centered(k, L)) / std::sqrt(static_cast<double>(L));
}

// 𝒩_c f = e^{−πict²} f
inline Window chirp(const Window& f, double c) {
    const auto L = static_cast<std::int64_t>(f.size());
    Window out(f.size());
    for (std::int64_t k = 0; k < L; ++k) {
        double tk = t(k, L);
        double ang = -std::numbers::pi * c * tk * tk;
        out[k] = f[k] * cplx(std::cos(ang), std::sin(ang));
    }
    return out;
}

// 𝒟_s f(t) = √|s| f(st), by trigonometric interpolation of the samples
inline Window dilate(const Window& f, double s) {
    const auto L = static_cast<std::int64_t>(f.size());
    const double rootL = std::sqrt(static_cast<double>(L));
    Window coef = dft(f);
    Window out(f.size());
    const double amp = std::sqrt(std::abs(s));
    for (std::int64_t k = 0; k < L; ++k) {
        double x = s * t(k, L);
        cplx acc = 0;
        for (std::int64_t j = 0; j < L; ++j) {
            double ang = 2.0 * std::numbers::pi * static_cast<double>(centered(j, L)) * x / rootL;
            acc += coef[j] * cplx(std::cos(ang), std::sin(ang));
        }
        out[k] = amp * acc;
    }
    return out;
}

// continuous Fourier transform on the grid (unitary DFT)
inline Window fourier(const Window& f) { return unitary_dft(f); }
inline Window inverse_fourier(const Window& f) { return unitary_idft(f); }

}  // namespace grid

inline Window apply_continuous_U(const Window& f, const RealLattice<double>& lat) {
    require(lat.d != 0.0, "d must be nonzero");
    require(!f.empty(), "empty window");
    Window h = grid::inverse_fourier(f);
    h = grid::chirp(h, -lat.b / lat.d);
    h = grid::fourier(h);
    return grid::dilate(h, 1.0 / lat.d);
}

inline Window apply_continuous_U_inverse(const Window& f, const RealLattice<double>& lat) {
    require(lat.d != 0.0, "d must be nonzero");
    require(!f.empty(), "empty window");
    Window h = grid::dilate(f, lat.d);
    h = grid::inverse_fourier(h);
    h = grid::chirp(h, lat.b / lat.d);
    return grid::fourier(h);
}

}  // namespace tflat
