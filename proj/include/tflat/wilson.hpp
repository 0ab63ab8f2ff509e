#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gabor.hpp"
#include "metaplectic.hpp"
#include "operator.hpp"
#include "ring.hpp"
#include "signal.hpp"
#include "zak.hpp"

namespace tflat {

// φ(m, n) = (m·m0 − u·n, m·n0 + w·n)
struct PhiParams {
    Domain domain = Domain::Finite;
    std::int64_t m0 = 1, n0 = 0, u = 0, w = 1;
    std::int64_t c = 0, d = 0;

    std::pair<std::int64_t, std::int64_t> operator()(std::int64_t m, std::int64_t n) const {
        return {checked::sub(checked::mul(m, m0), checked::mul(u, n)), checked::add(checked::mul(m, n0), checked::mul(w, n))};
    }
};

inline PhiParams phi_params(const SigmaParams& sp) {
    PhiParams pp;
    pp.domain = Domain::Finite;
    pp.c = sp.gcd_c;
    pp.d = sp.lcm_d;
    if (sp.b == 0) return pp;
    const std::int64_t den_u = sp.alpha * sp.L, num_u = 2 * sp.p * sp.lcm_d;
    const std::int64_t v = sp.alpha * sp.b + sp.beta * sp.p;
    if (num_u % den_u != 0 || v == 0 || sp.lcm_d % v != 0) throw std::invalid_argument("inconsistent PhiParams");
    pp.m0 = sp.m0;
    pp.n0 = sp.n0;
    pp.u = num_u / den_u;
    pp.w = sp.lcm_d / v;
    return pp;
}

// Discrete lattice [[N/2, b], [0, 1/N]]; (m0, n0) must solve (N/2)·m0 + b·n0 = gcd(N/2, b).
inline PhiParams phi_params_discrete(std::int64_t N, std::int64_t b, std::optional<std::pair<std::int64_t, std::int64_t>> mn0 = {}) {
    require(N >= 2 && N % 2 == 0, "N must be even and positive");
    require(b >= 0 && b < N / 2, "b must satisfy 0 <= b < N/2");
    PhiParams pp;
    pp.domain = Domain::Discrete;
    const std::int64_t h = N / 2;
    if (b == 0) {
        pp.c = pp.d = h;
        return pp;
    }
    pp.c = gcd(h, b);
    pp.d = h / pp.c * b;
    if (mn0) {
        pp.m0 = mn0->first;
        pp.n0 = mn0->second;
    } else {
        ExtGcd e = ext_gcd(h, b);
        pp.m0 = e.x;
        pp.n0 = e.y;
    }
    if (h * pp.m0 + b * pp.n0 != pp.c) throw std::invalid_argument("inconsistent PhiParams");
    if ((2 * pp.d) % N != 0 || pp.d % b != 0) throw std::invalid_argument("inconsistent PhiParams");
    pp.u = 2 * pp.d / N;
    pp.w = pp.d / b;
    return pp;
}

inline std::pair<std::int64_t, std::int64_t> phi_map(std::int64_t m, std::int64_t n, const PhiParams& pp) { return pp(m, n); }

struct WilsonIndex {
    std::int64_t m, n;
    friend bool operator==(const WilsonIndex&, const WilsonIndex&) = default;
};

// Index set in (n, m) lexicographic order: rows n ∈ {0, c} have q entries, other rows 2q.
inline std::vector<WilsonIndex> wilson_index_set(std::int64_t c, std::int64_t q) {
    std::vector<WilsonIndex> idx;
    for (std::int64_t n = 0; n <= c; ++n) {
        const std::int64_t count = (n == 0 || n == c) ? q : 2 * q;
        for (std::int64_t m = 0; m < count; ++m) idx.push_back({m, n});
    }
    return idx;
}

struct WilsonSystem {
    std::vector<WilsonIndex> index;
    std::vector<Window> basis;
    Window window;
    FiniteLattice lattice;
    std::string setting = "finite";

    std::size_t size() const { return basis.size(); }
};

namespace detail {

template <class Atom>
std::vector<Window> wilson_elements(const std::vector<WilsonIndex>& idx, std::int64_t c, const PhiParams& pp, Atom atom) {
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<Window> out;
    out.reserve(idx.size());
    for (const auto& [m, n] : idx) {
        if (n == 0 || n == c) {
            const std::int64_t off = (n == c && c % 2 == 1) ? 1 : 0;
            auto [u, v] = pp(2 * m + off, n);
            out.push_back(atom(u, v));
            continue;
        }
        auto [u1, v1] = pp(m, n);
        auto [u2, v2] = pp(m, -n);
        Window e1 = atom(u1, v1), e2 = atom(u2, v2);
        Window psi(e1.size());
        const bool even = ((m + n) % 2 + 2) % 2 == 0;
        for (std::size_t k = 0; k < e1.size(); ++k)
            psi[k] = even ? r * (e1[k] + e2[k]) : cplx(0.0, r) * (e1[k] - e2[k]);
        out.push_back(std::move(psi));
    }
    return out;
}

}  // namespace detail

inline WilsonSystem wilson_finite(const Window& g, const FiniteLattice& lat, const SigmaParams& sp) {
    validate(lat);
    require(static_cast<std::int64_t>(g.size()) == lat.L, "window length must equal lattice L");
    require(sp.L == lat.L && sp.p == lat.p && sp.b == lat.b, "sigma parameters belong to another lattice");
    const PhiParams pp = phi_params(sp);
    const std::int64_t c = sp.gcd_c, q = sp.q();
    WilsonSystem ws;
    ws.index = wilson_index_set(c, q);
    ws.window = g;
    ws.lattice = lat;
    ws.basis = detail::wilson_elements(ws.index, c, pp, [&](std::int64_t u, std::int64_t v) {
        auto [x, y] = lat.point(u, v);
        return tf_shift(g, x, y);
    });
    return ws;
}

inline WilsonSystem wilson_finite(const Window& g, const FiniteLattice& lat) { return wilson_finite(g, lat, sigma_params(lat)); }

inline OperatorMatrix gram(const std::vector<Window>& family) {
    OperatorMatrix G(family.size());
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i; j < family.size(); ++j) {
            cplx v = inner(family[i], family[j]);
            G(i, j) = v;
            G(j, i) = std::conj(v);
        }
    return G;
}

inline OperatorMatrix gram(const WilsonSystem& ws) { return gram(ws.basis); }

inline double gram_deviation(const WilsonSystem& ws) { return gram(ws).deviation_from_identity(); }

// Wilson family over ℤ for the lattice [[N/2, b], [0, 1/N]]; elements are evaluated on demand.
class DiscreteWilson {
public:
    DiscreteWilson(DiscreteWindow g, std::int64_t N, std::int64_t b, std::optional<std::pair<std::int64_t, std::int64_t>> mn0 = {})
        : g_(std::move(g)), N_(N), b_(b), pp_(phi_params_discrete(N, b, mn0)) {
        require(!g_.values.empty(), "window has empty support");
    }

    const PhiParams& phi() const { return pp_; }
    std::int64_t channels() const { return pp_.c; }

    // ψ_{m,n} as a finitely supported sequence, n ∈ 0..c
    DiscreteWindow element(std::int64_t m, std::int64_t n) const {
        require(n >= 0 && n <= pp_.c, "n out of range");
        std::vector<WilsonIndex> one{{m, n}};
        std::int64_t lo = 0, hi = 0;
        bool first = true;
        auto extend = [&](std::int64_t u, std::int64_t v) {
            std::int64_t x = shift(u, v);
            if (first || g_.first + x < lo) lo = g_.first + x;
            if (first || g_.last() + x > hi) hi = g_.last() + x;
            first = false;
        };
        if (n == 0 || n == pp_.c) {
            auto [u, v] = pp_(2 * m + ((n == pp_.c && pp_.c % 2 == 1) ? 1 : 0), n);
            extend(u, v);
        } else {
            auto [u1, v1] = pp_(m, n);
            auto [u2, v2] = pp_(m, -n);
            extend(u1, v1);
            extend(u2, v2);
        }
        auto elems = detail::wilson_elements(one, pp_.c, pp_, [&](std::int64_t u, std::int64_t v) {
            Window w(static_cast<std::size_t>(hi - lo + 1));
            const std::int64_t x = shift(u, v);
            for (std::int64_t l = lo; l <= hi; ++l)
                w[static_cast<std::size_t>(l - lo)] = g_(l - x) * unit_root(static_cast<__int128>(l) * v, N_);
            return w;
        });
        return {lo, std::move(elems.front())};
    }

    cplx operator()(std::int64_t m, std::int64_t n, std::int64_t l) const { return element(m, n)(l); }

private:
    std::int64_t shift(std::int64_t u, std::int64_t v) const {
        return checked::add(checked::mul(u, N_ / 2), checked::mul(v, b_));
    }

    DiscreteWindow g_;
    std::int64_t N_, b_;
    PhiParams pp_;
};

struct DiscreteGram {
    std::vector<WilsonIndex> index;
    OperatorMatrix G;
};

// Counting-measure Gram of ψ_{m,n}, m ∈ [m_lo, m_hi], n ∈ 0..c, ordered by (n, m).
inline DiscreteGram discrete_gram(const DiscreteWilson& w, std::int64_t m_lo, std::int64_t m_hi) {
    DiscreteGram out;
    std::vector<DiscreteWindow> elems;
    for (std::int64_t n = 0; n <= w.channels(); ++n)
        for (std::int64_t m = m_lo; m <= m_hi; ++m) {
            out.index.push_back({m, n});
            elems.push_back(w.element(m, n));
        }
    out.G = OperatorMatrix(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = i; j < elems.size(); ++j) {
            const auto& a = elems[i];
            const auto& b = elems[j];
            cplx s = 0;
            for (std::int64_t l = std::max(a.first, b.first); l <= std::min(a.last(), b.last()); ++l)
                s += a(l) * std::conj(b(l));
            out.G(i, j) = s;
            out.G(j, i) = std::conj(s);
        }
    return out;
}

struct EquivalenceReport {
    SigmaParams sigma;
    std::int64_t q = 0;
    bool tight_sheared = false, tight_rect = false, onb_rect = false, onb_sheared = false;
    double dev_tight_sheared = 0, dev_tight_rect = 0, dev_onb_rect = 0, dev_onb_sheared = 0;

    bool all_equal() const {
        return tight_sheared == tight_rect && tight_rect == onb_rect && onb_rect == onb_sheared;
    }
};

// (i) 𝒢(g, Λ) tight with bound 2; (ii) 𝒢(U⁻¹g, (L, q, 0)) tight;
// (iii) rectangular Wilson system of U⁻¹g orthonormal; (iv) 𝒲(g, Λ) orthonormal.
inline EquivalenceReport equivalence_report(const Window& g, const MetaplecticOperator& U, double tol = kDefaultTol) {
    const SigmaParams& sp = U.params();
    const FiniteLattice lat = sp.lattice();
    require(static_cast<std::int64_t>(g.size()) == lat.L, "window length must equal lattice L");
    EquivalenceReport r;
    r.sigma = sp;
    r.q = sp.q();
    const Window h = U.apply_inverse(g);
    const Window hh = dft(h);
    if (max_abs_imag(hh) > 1e-10 * std::max(1.0, max_abs(hh)))
        throw HypothesisError("hypothesis violated: DFT of U^-1 g is not real-valued");
    const FiniteLattice rect{lat.L, r.q, 0};

    auto t1 = tightness(GaborSystem(g, lat), 2.0, tol);
    auto t2 = tightness(GaborSystem(h, rect), 2.0, tol);
    r.tight_sheared = t1.holds;
    r.dev_tight_sheared = t1.max_deviation;
    r.tight_rect = t2.holds;
    r.dev_tight_rect = t2.max_deviation;
    r.dev_onb_rect = gram_deviation(wilson_finite(h, rect, sigma_params(rect)));
    r.onb_rect = r.dev_onb_rect <= tol;
    r.dev_onb_sheared = gram_deviation(wilson_finite(g, lat, sp));
    r.onb_sheared = r.dev_onb_sheared <= tol;
    return r;
}

inline EquivalenceReport equivalence_report(const Window& g, const FiniteLattice& lat, double tol = kDefaultTol) {
    return equivalence_report(g, MetaplecticOperator(sigma_params(lat)), tol);
}

}  // namespace tflat
