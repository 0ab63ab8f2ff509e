// One line per acceptance criterion; exit status is nonzero if any line fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include <tflat/tflat.hpp>

using namespace tflat;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<FiniteLattice> lattices(std::int64_t L) {
    std::vector<FiniteLattice> out;
    for (std::int64_t p = 1; p <= L / 2; ++p)
        if ((L / 2) % p == 0)
            for (std::int64_t b = 0; b < L / (2 * p); ++b) out.push_back({L, p, b});
    return out;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// {A·(m,n) mod L}
std::set<std::pair<std::int64_t, std::int64_t>> enumerate(std::int64_t L, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    std::set<std::pair<std::int64_t, std::int64_t>> s;
    for (std::int64_t m = 0; m < L; ++m)
        for (std::int64_t n = 0; n < L; ++n) s.emplace(mod(a * m + b * n, L), mod(c * m + d * n, L));
    return s;
}

double gram_dev(const std::vector<Window>& fam) {
    double dev = 0;
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = 0; j < fam.size(); ++j) {
            cplx s = 0;
            for (std::size_t k = 0; k < fam[i].size(); ++k) s += fam[i][k] * std::conj(fam[j][k]);
            s /= static_cast<double>(fam[i].size());
            dev = std::max(dev, std::abs(s - (i == j ? 1.0 : 0.0)));
        }
    return dev;
}

Outcome criterion1() {
    auto t0 = Clock::now();
    SplitMix64 rng(101);
    int total = 0, bad = 0;
    for (std::int64_t L : {4, 8, 12, 16, 24, 40}) {
        const std::int64_t h = L / 2;
        for (int i = 0; i < 500;) {
            std::int64_t c = rng.integer(-2 * L, 2 * L), d = rng.integer(-2 * L, 2 * L);
            if (c == 0 && d == 0) continue;
            ExtGcd e = ext_gcd(d, -c);
            if (h % e.g) continue;
            std::int64_t t = rng.integer(-3, 3);
            std::int64_t a = e.x * (h / e.g) + t * (c / e.g), b = e.y * (h / e.g) + t * (d / e.g);
            if (a * d - b * c != h) return {false, "generator produced wrong determinant"};
            ++i;
            ++total;
            GeneratorMatrix A{a, b, c, d, Domain::Finite, L};
            FiniteLattice k = canonical_finite(A);
            bool ok = k.L == L && k.p >= 1 && h % k.p == 0 && k.b >= 0 && k.b < h / k.p;
            ok = ok && enumerate(L, a, b, c, d) == enumerate(L, h / k.p, k.b, 0, k.p);
            ok = ok && canonical_finite(k.matrix()) == k;
            if (!ok) ++bad;
        }
    }
    double secs = seconds_since(t0);
    return {bad == 0 && secs < 10.0,
            std::to_string(total) + " matrices, " + std::to_string(bad) + " failures, " + fmt("%.2f s (budget 10 s)", secs)};
}

struct Corpus {
    FiniteLattice lat;
    std::vector<Window> raw, tight;
};

std::vector<Corpus> rectangular_corpus() {
    SplitMix64 rng(202);
    std::vector<Corpus> out;
    for (std::int64_t L : {8, 12, 16, 24})
        for (const auto& lat : lattices(L)) {
            if (lat.b != 0) continue;
            Corpus c{lat, {}, {}};
            for (int i = 0; i < 100; ++i) {
                c.raw.push_back(symmetrize(random_window(rng, static_cast<std::size_t>(L))));
                c.tight.push_back(tighten(c.raw.back(), lat));
            }
            out.push_back(std::move(c));
        }
    return out;
}

Outcome criterion2(const std::vector<Corpus>& corpus, double corpus_secs) {
    auto t0 = Clock::now();
    double worst = 0;
    int disagree = 0, windows = 0;
    for (const auto& c : corpus) {
        for (std::size_t i = 0; i < c.raw.size(); ++i) {
            worst = std::max(worst, gram_dev(wilson_finite(c.tight[i], c.lat).basis));
            const Window& g = c.raw[i];
            bool v1 = is_tight(GaborSystem(g, c.lat), 2.0);
            bool v2 = cond_quadrature(g, c.lat.p).holds;
            bool v3 = cond_correlation(g, c.lat.p).holds;
            bool v4 = gram_dev(wilson_finite(g, c.lat).basis) <= kDefaultTol;
            if (!(v1 == v2 && v2 == v3 && v3 == v4)) ++disagree;
            ++windows;
        }
    }
    double secs = seconds_since(t0) + corpus_secs;
    return {worst < 1e-9 && disagree == 0 && secs < 30.0,
            std::to_string(windows) + " windows, max tightened Gram deviation " + fmt("%.2e", worst) + ", " +
                std::to_string(disagree) + " verdict disagreements, " + fmt("%.2f s (budget 30 s)", secs)};
}

Outcome criterion3(const std::vector<Corpus>& corpus) {
    int mismatch = 0, checked_n = 0;
    double worst = 0;
    for (const auto& c : corpus) {
        for (std::size_t i = 0; i < c.raw.size(); ++i) {
            for (const Window* g : {&c.raw[i], &c.tight[i]}) {
                OperatorMatrix S = frame_operator(GaborSystem(*g, c.lat));
                bool tight = S.deviation_from_identity(2.0) <= kDefaultTol;
                auto q = cond_quadrature(*g, c.lat.p);
                auto r = cond_correlation(*g, c.lat.p);
                if (q.holds != tight || r.holds != tight) ++mismatch;
                // spectral deviation of S equals 2p times the quadrature deviation
                if (i < 20) {
                    auto ev = jacobi_eigh(S).values;
                    double spec = std::max(std::abs(ev.front() - 2.0), std::abs(ev.back() - 2.0));
                    worst = std::max(worst, std::abs(spec - 2.0 * static_cast<double>(c.lat.p) * q.max_deviation));
                    worst = std::max(worst, r.max_deviation - q.max_deviation);
                }
                ++checked_n;
            }
        }
    }
    return {mismatch == 0 && worst < 1e-8, std::to_string(checked_n) + " windows, " + std::to_string(mismatch) +
                                               " verdict mismatches, max deviation discrepancy " + fmt("%.2e", worst)};
}

Outcome criterion4() {
    SplitMix64 rng(404);
    double worst = 0;
    int lats = 0;
    for (std::int64_t L : {8, 12, 16, 24})
        for (const auto& lat : lattices(L)) {
            ++lats;
            SigmaParams sp = sigma_params(lat);
            MetaplecticOperator U(sp);
            for (int r = 0; r < 20; ++r) {
                Window g = random_window(rng, static_cast<std::size_t>(L));
                Window h = U.apply_inverse(g);
                for (std::int64_t m = 0; m < 2 * lat.p; ++m)
                    for (std::int64_t n = 0; n < L / lat.p; ++n) {
                        const std::int64_t x = mod(m * (L / (2 * lat.p)) + n * lat.b, L), y = mod(n * lat.p, L);
                        const std::int64_t sx = mod(sp.alpha * x + sp.beta * y, L), sy = mod(sp.gamma * x + sp.delta * y, L);
                        // C = e^{πik/L}, k = −(αγx² + βδy²)(L+1) − 2βγxy mod 2L
                        const std::int64_t L2 = 2 * L;
                        std::int64_t quad = mod(mod(sp.alpha * sp.gamma, L2) * mod(x * x, L2) + mod(sp.beta * sp.delta, L2) * mod(y * y, L2), L2);
                        std::int64_t k = mod(-quad * (L + 1) - 2 * mod(sp.beta * sp.gamma, L2) * mod(x * y, L2), L2);
                        cplx C = std::polar(1.0, std::numbers::pi * static_cast<double>(k) / static_cast<double>(L));
                        Window shifted(g.size());
                        for (std::int64_t l = 0; l < L; ++l)
                            shifted[l] = h[mod(l - sx, L)] * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(mod(l * sy, L)) / static_cast<double>(L));
                        Window rhs = U.apply(shifted);
                        for (std::int64_t l = 0; l < L; ++l) {
                            cplx lhs = g[mod(l - x, L)] * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(mod(l * y, L)) / static_cast<double>(L));
                            worst = std::max(worst, std::abs(lhs - C * rhs[l]));
                        }
                    }
            }
        }
    return {worst < 1e-10, std::to_string(lats) + " lattices x 20 windows, max pointwise error " + fmt("%.2e (< 1e-10)", worst)};
}

Outcome criterion5() {
    SplitMix64 rng(505);
    int lats = 0, unequal = 0, wrong_false = 0, wrong_true = 0;
    for (std::int64_t L : {8, 12, 16, 24})
        for (const auto& lat : lattices(L)) {
            ++lats;
            MetaplecticOperator U(sigma_params(lat));
            for (int i = 0; i < 100; ++i) {
                Window g = U.apply(symmetrize(random_window(rng, static_cast<std::size_t>(L))));
                const bool tightened = i % 2 == 1;
                if (tightened) g = tighten(g, lat);
                auto r = equivalence_report(g, U);
                if (!r.all_equal()) ++unequal;
                if (tightened && !r.onb_sheared) ++wrong_true;
                if (!tightened && r.onb_sheared) ++wrong_false;
            }
            // U·δ₀ is never a frame window
            auto r = equivalence_report(U.apply(delta(static_cast<std::size_t>(L))), U);
            if (!r.all_equal() || r.tight_sheared) ++unequal;
        }
    return {unequal == 0 && wrong_true == 0 && wrong_false == 0,
            std::to_string(lats) + " lattices x 100 windows: " + std::to_string(unequal) + " unequal reports, " +
                std::to_string(wrong_true) + " tightened not all-true, " + std::to_string(wrong_false) + " raw not all-false"};
}

Outcome criterion6() {
    int lats = 0, bad = 0;
    for (std::int64_t L : {8, 12, 16, 24})
        for (const auto& lat : lattices(L)) {
            ++lats;
            SigmaParams sp = sigma_params(lat);
            PhiParams pp = phi_params(sp);
            const std::int64_t c = sp.gcd_c;
            std::set<std::pair<std::int64_t, std::int64_t>> seen;
            std::map<std::pair<std::int64_t, std::int64_t>, std::pair<std::int64_t, std::int64_t>> inverse;
            for (std::int64_t m = -4 * L; m <= 4 * L; ++m)
                for (std::int64_t n = -4 * L; n <= 4 * L; ++n) {
                    auto img = phi_map(m, n, pp);
                    if (!seen.insert(img).second) ++bad;
                    inverse[img] = {m, n};
                }
            // integer inverse so every target has a preimage
            const std::int64_t det = pp.m0 * pp.w + pp.u * pp.n0;
            if (std::abs(det) != 1) ++bad;
            std::map<std::pair<std::int64_t, std::int64_t>, int> hits;
            for (std::int64_t k = 0; k < 2 * lat.p; ++k)
                for (std::int64_t l = 0; l < L / lat.p; ++l) {
                    std::pair<std::int64_t, std::int64_t> pre;
                    auto it = inverse.find({k, l});
                    if (it != inverse.end()) {
                        pre = it->second;
                    } else {
                        pre = {det * (pp.w * k + pp.u * l), det * (-pp.n0 * k + pp.m0 * l)};
                        if (phi_map(pre.first, pre.second, pp) != std::make_pair(k, l)) ++bad;
                    }
                    hits[{mod(pre.first, L / c), mod(pre.second, 2 * c)}]++;
                }
            if (hits.size() != static_cast<std::size_t>(2 * L)) ++bad;
            for (const auto& [key, v] : hits)
                if (v != 1) ++bad;
        }
    return {bad == 0, std::to_string(lats) + " lattices, box [-4L,4L]^2, " + std::to_string(bad) + " violations"};
}

Outcome criterion7() {
    WilsonSystem ws = wilson_finite(constant(8), {8, 1, 0});
    std::vector<Window> want;
    auto make = [](auto f) {
        Window w(8);
        for (int l = 0; l < 8; ++l) w[l] = f(l);
        return w;
    };
    double worst = 0;
    std::size_t k = 0;
    for (const auto& [m, n] : ws.index) {
        Window e;
        if (n == 0) e = make([](int) { return cplx(1.0); });
        else if (n == 4) e = make([](int l) { return cplx(l % 2 ? -1.0 : 1.0); });
        else if ((m + n) % 2 == 0) e = make([n = n](int l) { return cplx(std::sqrt(2.0) * std::cos(2 * std::numbers::pi * l * n / 8)); });
        else e = make([n = n](int l) { return cplx(-std::sqrt(2.0) * std::sin(2 * std::numbers::pi * l * n / 8)); });
        worst = std::max(worst, max_abs_diff(ws.basis[k++], e));
    }
    double g = gram_dev(ws.basis);
    return {ws.size() == 8 && worst < 1e-12 && g < 1e-12,
            "elementwise error " + fmt("%.2e", worst) + ", Gram deviation " + fmt("%.2e (< 1e-12)", g)};
}

Outcome criterion8() {
    auto t0 = Clock::now();
    DemoResult r64 = wilson_continuous_demo(1.0, 64);
    DemoResult r256 = wilson_continuous_demo(1.0, 256);
    DemoOptions opt;
    opt.rectangular_control = true;
    DemoResult ctl = wilson_continuous_demo(1.0, 256, opt);
    double secs = seconds_since(t0);
    bool spread = std::isfinite(r256.time_spread) && std::isfinite(r256.freq_spread) && r256.time_spread > 0 && r256.freq_spread > 0;
    return {r256.gram_deviation < r64.gram_deviation && ctl.gram_deviation < 1e-6 && spread && secs < 60.0,
            "hex deviation L=64 " + fmt("%.3e", r64.gram_deviation) + ", L=256 " + fmt("%.3e", r256.gram_deviation) +
                "; rect control " + fmt("%.2e", ctl.gram_deviation) + "; spread (t, w) = (" + fmt("%.4f", r256.time_spread) +
                ", " + fmt("%.4f", r256.freq_spread) + "); " + fmt("%.1f s (budget 60 s)", secs)};
}

Outcome criterion9() {
    SplitMix64 rng(909);
    const std::int64_t N = 8, L = 512, p = L / N;
    double worst = 0;
    for (std::int64_t b = 0; b < N / 2; ++b) {
        DiscreteWindow g{-4, {}};
        for (int i = 0; i < 9; ++i) g.values.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
        FiniteLattice lat{L, p, b};
        SigmaParams sp = sigma_params(lat);
        DiscreteWilson dw(g, N, b, std::make_pair(sp.m0, sp.n0));
        Window gf(static_cast<std::size_t>(L), 0.0);
        for (std::int64_t l = g.first; l <= g.last(); ++l) gf[mod(l, L)] = std::sqrt(static_cast<double>(L)) * g(l);
        WilsonSystem ws = wilson_finite(gf, lat, sp);
        std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> where;
        for (std::size_t k = 0; k < ws.index.size(); ++k) where[{ws.index[k].m, ws.index[k].n}] = k;
        DiscreteGram dg = discrete_gram(dw, -8, 8);
        const std::int64_t q = sp.q();
        auto pos = [&](const WilsonIndex& ix) {
            const std::int64_t rows = (ix.n == 0 || ix.n == sp.gcd_c) ? q : 2 * q;
            return where.at({mod(ix.m, rows), ix.n});
        };
        for (std::size_t i = 0; i < dg.index.size(); ++i)
            for (std::size_t j = 0; j < dg.index.size(); ++j) {
                const Window& a = ws.basis[pos(dg.index[i])];
                const Window& c = ws.basis[pos(dg.index[j])];
                cplx s = 0;
                for (std::int64_t k = 0; k < L; ++k) s += a[k] * std::conj(c[k]);
                s /= static_cast<double>(L);
                worst = std::max(worst, std::abs(dg.G(i, j) - s));
            }
    }
    return {worst < 1e-8, "N=8, b=0..3, |m|<=8, max Gram entry difference " + fmt("%.2e (< 1e-8)", worst)};
}

}  // namespace

int main() {
    int failed = 0;
    auto report = [&](int id, const char* name, const std::function<Outcome()>& f) {
        Outcome o;
        try {
            o = f();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    };
    report(1, "canonicalization oracle", criterion1);
    auto t0 = Clock::now();
    std::vector<Corpus> corpus = rectangular_corpus();
    double corpus_secs = seconds_since(t0);
    report(2, "rectangular Wilson ONB", [&] { return criterion2(corpus, corpus_secs); });
    report(3, "Zak criteria equivalence", [&] { return criterion3(corpus); });
    report(4, "metaplectic intertwining", criterion4);
    report(5, "four-way equivalence", criterion5);
    report(6, "phi-map combinatorics", criterion6);
    report(7, "closed-form real Fourier basis", criterion7);
    report(8, "continuous hexagonal demo", criterion8);
    report(9, "discrete/finite consistency", criterion9);
    std::printf("%d of 9 criteria passed\n", 9 - failed);
    return failed == 0 ? 0 : 1;
}
