#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <tflat/io.hpp>
#include <tflat/tflat.hpp>

using namespace tflat;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

FiniteLattice parse_lattice(const std::string& s) {
    std::vector<std::int64_t> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            v.push_back(std::stoll(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument("");
        } catch (const std::logic_error&) {
            throw UsageError("lattice must be L,p,b");
        }
    }
    if (v.size() != 3) throw UsageError("lattice must be L,p,b");
    FiniteLattice lat{v[0], v[1], v[2]};
    validate(lat);
    return lat;
}

double default_tol() {
    if (const char* env = std::getenv("WILSON_TOL")) {
        try {
            return std::stod(env);
        } catch (const std::logic_error&) {
            throw UsageError("WILSON_TOL is not a number");
        }
    }
    return kDefaultTol;
}

class Report {
public:
    explicit Report(std::string command) {
        j_["command"] = std::move(command);
        j_["inputs"] = ojson::object();
        j_["verdicts"] = ojson::object();
        j_["deviations"] = ojson::object();
    }
    ojson& inputs() { return j_["inputs"]; }
    void verdict(const std::string& k, bool v) {
        j_["verdicts"][k] = v;
        ok_ = ok_ && v;
    }
    void deviation(const std::string& k, double v) { j_["deviations"][k] = v; }
    ojson& extra() { return j_; }
    bool ok() const { return ok_; }

    int emit(bool timing, std::chrono::steady_clock::time_point t0) {
        if (timing)
            j_["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << j_.dump() << "\n";
        return ok_ ? 0 : 1;
    }

private:
    ojson j_;
    bool ok_ = true;
};

void require_length(const Window& g, const FiniteLattice& lat) {
    if (static_cast<std::int64_t>(g.size()) != lat.L)
        throw std::invalid_argument("window has " + std::to_string(g.size()) + " samples, lattice needs " + std::to_string(lat.L));
}

GeneratorMatrix parse_matrix(const std::string& domain, std::int64_t L, const std::string& s) {
    std::vector<Rational> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(Rational::parse(tok));
    if (v.size() != 4) throw UsageError("matrix must be a,b,c,d");
    GeneratorMatrix A{v[0], v[1], v[2], v[3], Domain::Real, L};
    if (domain == "finite")
        A.domain = Domain::Finite;
    else if (domain == "discrete")
        A.domain = Domain::Discrete;
    else if (domain != "real")
        throw UsageError("domain must be finite, discrete or real");
    if (A.domain == Domain::Finite && L <= 0) throw UsageError("--L is required for the finite domain");
    return A;
}

// Compact seeded invariant corpus.
int selftest(std::uint64_t seed, double tol, Report& rep) {
    SplitMix64 rng(seed);
    rep.inputs()["seed"] = seed;
    double worst_onb = 0, worst_int = 0;
    bool agree = true, canon = true;
    for (std::int64_t L : {8, 12, 16}) {
        for (std::int64_t p = 1; p <= L / 2; ++p) {
            if ((L / 2) % p) continue;
            for (std::int64_t b = 0; b < L / (2 * p); ++b) {
                FiniteLattice lat{L, p, b};
                MetaplecticOperator U(sigma_params(lat));
                Window g = U.apply(symmetrize(random_window(rng, static_cast<std::size_t>(L))));
                auto raw = equivalence_report(g, U, tol);
                auto tight = equivalence_report(tighten(g, lat), U, tol);
                agree = agree && raw.all_equal() && tight.all_equal() && tight.onb_sheared;
                worst_onb = std::max(worst_onb, tight.dev_onb_sheared);
                const auto& sp = U.params();
                Window f = random_window(rng, static_cast<std::size_t>(L));
                Window fi = U.apply_inverse(f);
                for (std::int64_t m = 0; m < 2 * p; ++m)
                    for (std::int64_t n = 0; n < L / p; ++n) {
                        auto [x, y] = lat.point(m, n);
                        auto [sx, sy] = sp.sigma(x, y);
                        Window lhs = tf_shift(f, x, y), rhs = U.apply(tf_shift(fi, sx, sy));
                        cplx C = intertwining_phase(sp, x, y);
                        for (std::size_t k = 0; k < lhs.size(); ++k) worst_int = std::max(worst_int, std::abs(lhs[k] - C * rhs[k]));
                    }
            }
        }
        for (int i = 0; i < 50; ++i) {
            std::int64_t p = 1;
            do p = rng.integer(1, L / 2); while ((L / 2) % p);
            FiniteLattice lat{L, p, rng.integer(0, L / (2 * p) - 1)};
            GeneratorMatrix A = lat.matrix();
            for (int k = 0; k < 3; ++k) {
                std::int64_t t = rng.integer(-3, 3);
                if (rng.integer(0, 1)) {
                    A.b = A.b + Rational(t) * A.a;
                    A.d = A.d + Rational(t) * A.c;
                } else {
                    A.a = A.a + Rational(t) * A.b;
                    A.c = A.c + Rational(t) * A.d;
                }
            }
            canon = canon && canonical_finite(A) == lat && lattice_points_finite(A) == lattice_points_finite(lat.matrix());
        }
    }
    rep.verdict("canonical_finite", canon);
    rep.verdict("four_way_agreement", agree);
    rep.verdict("intertwining", worst_int < 1e-10);
    rep.verdict("wilson_onb", worst_onb <= tol);
    rep.deviation("intertwining", worst_int);
    rep.deviation("wilson_onb", worst_onb);
    return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    const auto t0 = std::chrono::steady_clock::now();
    CLI::App app{"Wilson bases and tight Gabor frames on time-frequency lattices"};
    app.require_subcommand(1);
    bool timing = false;
    app.add_flag("--timing", timing, "include wall time in reports");

    std::string domain = "finite", matrix;
    std::int64_t L_opt = 0;
    auto* canon = app.add_subcommand("canonicalize", "canonical generator of a lattice");
    canon->add_option("--domain", domain, "finite | discrete | real")->check(CLI::IsMember({"finite", "discrete", "real"}));
    canon->add_option("--L", L_opt, "ambient length (finite domain)");
    canon->add_option("--matrix", matrix, "a,b,c,d (rationals as p/q)")->required();

    std::string lattice_s, window_path, out_path;
    double bound = 2.0;
    bool twist = false;
    auto* gabor = app.add_subcommand("gabor", "Gabor frame tools");
    gabor->require_subcommand(1);
    auto* g_tight = gabor->add_subcommand("tighten", "replace the window by √2·S^{-1/2}g");
    g_tight->add_option("--lattice", lattice_s, "L,p,b")->required();
    g_tight->add_option("--window", window_path, "window CSV")->required();
    g_tight->add_option("--out", out_path, "output CSV")->required();
    g_tight->add_flag("--fourier-twist", twist, "apply the unitary DFT after tightening");
    auto* g_check = gabor->add_subcommand("check", "test tightness");
    g_check->add_option("--lattice", lattice_s, "L,p,b")->required();
    g_check->add_option("--window", window_path, "window CSV")->required();
    g_check->add_option("--bound", bound, "frame bound");

    auto* zak = app.add_subcommand("zak", "Zak-domain criteria");
    zak->require_subcommand(1);
    auto* z_check = zak->add_subcommand("check", "quadrature and correlation conditions");
    z_check->add_option("--lattice", lattice_s, "L,p,0")->required();
    z_check->add_option("--window", window_path, "window CSV")->required();

    auto* sigma = app.add_subcommand("sigma", "metaplectic parameters of a lattice");
    sigma->add_option("--lattice", lattice_s, "L,p,b")->required();

    std::string setting = "finite";
    bool gram_flag = false, rect_control = false;
    double nu = 1.0;
    std::int64_t demo_L = 256;
    auto* wilson = app.add_subcommand("wilson", "Wilson systems");
    wilson->require_subcommand(1);
    auto* w_build = wilson->add_subcommand("build", "write the Wilson basis as CSV");
    w_build->add_option("--setting", setting, "finite")->check(CLI::IsMember({"finite"}));
    w_build->add_option("--lattice", lattice_s, "L,p,b")->required();
    w_build->add_option("--window", window_path, "window CSV")->required();
    w_build->add_option("--out", out_path, "output CSV")->required();
    auto* w_verify = wilson->add_subcommand("verify", "orthonormality of the Wilson system");
    w_verify->add_option("--lattice", lattice_s, "L,p,b")->required();
    w_verify->add_option("--window", window_path, "window CSV")->required();
    w_verify->add_flag("--gram", gram_flag, "report the Gram deviation");
    auto* w_report = wilson->add_subcommand("report", "four-way equivalence report");
    w_report->add_option("--lattice", lattice_s, "L,p,b")->required();
    w_report->add_option("--window", window_path, "window CSV")->required();

    auto add_demo = [&](CLI::App* d) {
        d->add_option("--nu", nu, "Gaussian parameter");
        d->add_option("--L", demo_L, "grid size, square of an even integer, >= 64");
        d->add_option("--out", out_path, "output CSV for the window");
        d->add_flag("--rect-control", rect_control, "rectangular lattice, no metaplectic step");
    };
    auto* w_demo = wilson->add_subcommand("demo-hex", "discretized hexagonal Wilson demo");
    add_demo(w_demo);
    auto* demo = app.add_subcommand("demo-hex", "discretized hexagonal Wilson demo");
    add_demo(demo);

    std::uint64_t seed = 0;
    auto* self = app.add_subcommand("selftest", "seeded invariant corpus");
    self->add_option("--seed", seed, "PRNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 2;
    }

    try {
        const double tol = default_tol();
        if (*canon) {
            std::cout << canonicalize_json(parse_matrix(domain, L_opt, matrix)).dump() << "\n";
            return 0;
        }
        if (*sigma) {
            std::cout << to_json(sigma_params(parse_lattice(lattice_s))).dump() << "\n";
            return 0;
        }
        if (*g_tight) {
            FiniteLattice lat = parse_lattice(lattice_s);
            Window g = read_finite_window_csv(window_path);
            require_length(g, lat);
            Window t = tighten(g, lat, twist);
            write_window_csv(out_path, t);
            Report rep("gabor tighten");
            rep.inputs()["lattice"] = to_json(lat);
            rep.inputs()["fourier_twist"] = twist;
            auto r = tightness(GaborSystem(t, lat), 2.0, tol);
            if (!twist) rep.verdict("tight", r.holds);
            rep.deviation("frame_operator", r.max_deviation);
            return rep.emit(timing, t0);
        }
        if (*g_check) {
            FiniteLattice lat = parse_lattice(lattice_s);
            Window g = read_finite_window_csv(window_path);
            require_length(g, lat);
            Report rep("gabor check");
            rep.inputs()["lattice"] = to_json(lat);
            rep.inputs()["bound"] = bound;
            auto r = tightness(GaborSystem(g, lat), bound, tol);
            rep.verdict("tight", r.holds);
            rep.deviation("frame_operator", r.max_deviation);
            return rep.emit(timing, t0);
        }
        if (*z_check) {
            FiniteLattice lat = parse_lattice(lattice_s);
            if (lat.b != 0) throw UsageError("zak check needs a rectangular lattice L,p,0");
            Window g = read_finite_window_csv(window_path);
            require_length(g, lat);
            auto q = cond_quadrature(g, lat.p, tol);
            auto c = cond_correlation(g, lat.p, tol);
            ojson out{{"quadrature", {{"holds", q.holds}, {"max_deviation", q.max_deviation}}},
                      {"correlation", {{"holds", c.holds}, {"max_deviation", c.max_deviation}}}};
            std::cout << out.dump() << "\n";
            return q.holds && c.holds ? 0 : 1;
        }
        if (*w_build || *w_verify || *w_report) {
            FiniteLattice lat = parse_lattice(lattice_s);
            Window g = read_finite_window_csv(window_path);
            require_length(g, lat);
            if (*w_report) {
                auto r = equivalence_report(g, lat, tol);
                Report rep("wilson report");
                rep.inputs()["lattice"] = to_json(lat);
                rep.extra()["q"] = r.q;
                rep.verdict("tight_sheared", r.tight_sheared);
                rep.verdict("tight_rectangular", r.tight_rect);
                rep.verdict("onb_rectangular", r.onb_rect);
                rep.verdict("onb_sheared", r.onb_sheared);
                rep.deviation("tight_sheared", r.dev_tight_sheared);
                rep.deviation("tight_rectangular", r.dev_tight_rect);
                rep.deviation("onb_rectangular", r.dev_onb_rect);
                rep.deviation("onb_sheared", r.dev_onb_sheared);
                rep.extra()["all_equal"] = r.all_equal();
                return rep.emit(timing, t0);
            }
            WilsonSystem ws = wilson_finite(g, lat);
            double dev = gram_deviation(ws);
            Report rep(*w_build ? "wilson build" : "wilson verify");
            rep.inputs()["lattice"] = to_json(lat);
            rep.extra()["elements"] = ws.size();
            if (*w_build) {
                std::ofstream out(out_path);
                if (!out) throw std::invalid_argument("cannot write " + out_path);
                write_basis_csv(out, ws);
            }
            rep.verdict("orthonormal", dev <= tol);
            if (gram_flag || *w_build) rep.deviation("gram", dev);
            return rep.emit(timing, t0);
        }
        if (*w_demo || *demo) {
            DemoOptions opt;
            opt.rectangular_control = rect_control;
            DemoResult r = wilson_continuous_demo(nu, demo_L, opt);
            if (!out_path.empty()) write_window_csv(out_path, r.window);
            Report rep("demo-hex");
            rep.inputs()["nu"] = nu;
            rep.inputs()["L"] = demo_L;
            rep.inputs()["rect_control"] = rect_control;
            rep.extra()["elements"] = r.elements;
            rep.extra()["time_spread"] = r.time_spread;
            rep.extra()["freq_spread"] = r.freq_spread;
            rep.extra()["norm_ratio"] = r.norm_ratio;
            rep.deviation("gram", r.gram_deviation);
            return rep.emit(timing, t0);
        }
        if (*self) {
            Report rep("selftest");
            selftest(seed, tol, rep);
            return rep.emit(timing, t0);
        }
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::overflow_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
