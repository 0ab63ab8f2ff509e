#pragma once

#include <cmath>
#include <cstdint>

#include "errors.hpp"
#include "operator.hpp"
#include "ring.hpp"
#include "signal.hpp"

namespace tflat {

constexpr double kDefaultTol = 1e-9;

// 𝒢(g, Λ): elements e_{m,n} = g shifted to (m·L/2p + n·b, n·p), m < 2p, n < L/p.
class GaborSystem {
public:
    GaborSystem(Window g, FiniteLattice lat) : g_(std::move(g)), lat_(lat) {
        validate(lat_);
        require(static_cast<std::int64_t>(g_.size()) == lat_.L, "window length must equal lattice L");
    }

    const Window& window() const { return g_; }
    const FiniteLattice& lattice() const { return lat_; }
    std::int64_t M() const { return 2 * lat_.p; }
    std::int64_t N() const { return lat_.L / lat_.p; }
    std::size_t size() const { return static_cast<std::size_t>(M() * N()); }

    Window element(std::int64_t m, std::int64_t n) const {
        auto [x, y] = lat_.point(m, n);
        return tf_shift(g_, x, y);
    }

private:
    Window g_;
    FiniteLattice lat_;
};

inline GaborSystem gabor_system(const Window& g, const FiniteLattice& lat) { return GaborSystem(g, lat); }

// S = Σ |e⟩⟨e| under the normalized inner product, i.e. (1/L) Σ e·e^H.
// Summation order is fixed: m outer, n inner.
inline OperatorMatrix frame_operator(const GaborSystem& sys) {
    const auto L = static_cast<std::size_t>(sys.lattice().L);
    OperatorMatrix S(L);
    const double w = 1.0 / static_cast<double>(L);
    for (std::int64_t m = 0; m < sys.M(); ++m)
        for (std::int64_t n = 0; n < sys.N(); ++n) {
            Window e = sys.element(m, n);
            for (std::size_t i = 0; i < L; ++i) {
                cplx ei = e[i] * w;
                if (ei == 0.0) continue;
                for (std::size_t j = 0; j < L; ++j) S(i, j) += ei * std::conj(e[j]);
            }
        }
    return S;
}

struct TightnessResult {
    bool holds = false;
    double max_deviation = 0;
};

inline TightnessResult tightness(const GaborSystem& sys, double bound = 2.0, double tol = kDefaultTol) {
    require(bound > 0, "frame bound must be positive");
    double dev = frame_operator(sys).deviation_from_identity(bound);
    return {dev <= tol, dev};
}

inline bool is_tight(const GaborSystem& sys, double bound = 2.0, double tol = kDefaultTol) {
    return tightness(sys, bound, tol).holds;
}

// unitary DFT: dft scaled by √L
inline Window unitary_dft(const Window& f) {
    Window r = dft(f);
    const double s = std::sqrt(static_cast<double>(f.size()));
    for (auto& v : r) v *= s;
    return r;
}

inline Window unitary_idft(const Window& f) {
    Window r = idft(f);
    const double s = 1.0 / std::sqrt(static_cast<double>(f.size()));
    for (auto& v : r) v *= s;
    return r;
}

// √2·S^{−1/2} g; fourier_twist applies the unitary DFT afterwards.
inline Window tighten(const Window& g, const FiniteLattice& lat, bool fourier_twist = false) {
    GaborSystem sys(g, lat);
    OperatorMatrix R;
    try {
        R = herm_inv_sqrt(frame_operator(sys));
    } catch (const NumericalError&) {
        throw NumericalError("window does not generate a frame");
    }
    Window out = R.apply(g);
    for (auto& v : out) v *= std::sqrt(2.0);
    return fourier_twist ? unitary_dft(out) : out;
}

// Projection onto windows with real DFT: (g(l) + conj g(−l)) / 2.
inline Window symmetrize(const Window& g) {
    const auto L = static_cast<std::int64_t>(g.size());
    Window out(g.size());
    for (std::int64_t l = 0; l < L; ++l) out[l] = 0.5 * (g[l] + std::conj(g[wrap(-l, L)]));
    return out;
}

}  // namespace tflat
