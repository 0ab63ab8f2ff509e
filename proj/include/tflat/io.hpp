#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "metaplectic.hpp"
#include "ring.hpp"
#include "signal.hpp"
#include "wilson.hpp"

namespace tflat {

using ojson = nlohmann::ordered_json;

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// CSV rows `index,re,im`; indices must form a contiguous integer range.
inline DiscreteWindow parse_window_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty window CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "index,re,im") throw std::invalid_argument("window CSV header must be index,re,im");
    std::map<std::int64_t, cplx> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string a, b, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
            throw std::invalid_argument("malformed CSV row " + std::to_string(lineno));
        try {
            std::size_t pa = 0, pb = 0, pc = 0;
            std::int64_t idx = std::stoll(a, &pa);
            double re = std::stod(b, &pb), im = std::stod(c, &pc);
            if (pa != a.size() || pb != b.size() || pc != c.size()) throw std::invalid_argument("");
            if (!rows.emplace(idx, cplx(re, im)).second)
                throw std::invalid_argument("duplicate index in CSV row " + std::to_string(lineno));
        } catch (const std::logic_error&) {
            throw std::invalid_argument("malformed CSV row " + std::to_string(lineno));
        }
    }
    if (rows.empty()) throw std::invalid_argument("window CSV has no samples");
    DiscreteWindow w;
    w.first = rows.begin()->first;
    for (const auto& [idx, v] : rows) {
        if (idx != w.first + static_cast<std::int64_t>(w.values.size()))
            throw std::invalid_argument("window CSV indices are not contiguous");
        w.values.push_back(v);
    }
    return w;
}

inline DiscreteWindow read_window_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return parse_window_csv(in);
}

// finite window: indices 0..L-1
inline Window read_finite_window_csv(const std::string& path) {
    DiscreteWindow w = read_window_csv(path);
    if (w.first != 0) throw std::invalid_argument("finite window indices must start at 0");
    return w.values;
}

inline void write_window_csv(std::ostream& out, const Window& w, std::int64_t first = 0) {
    out << "index,re,im\n";
    for (std::size_t i = 0; i < w.size(); ++i)
        out << first + static_cast<std::int64_t>(i) << ',' << fmt_double(w[i].real()) << ',' << fmt_double(w[i].imag()) << '\n';
}

inline void write_window_csv(const std::string& path, const Window& w, std::int64_t first = 0) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    write_window_csv(out, w, first);
}

inline void write_basis_csv(std::ostream& out, const WilsonSystem& ws) {
    out << "n,m,index,re,im\n";
    for (std::size_t k = 0; k < ws.size(); ++k)
        for (std::size_t i = 0; i < ws.basis[k].size(); ++i)
            out << ws.index[k].n << ',' << ws.index[k].m << ',' << i << ',' << fmt_double(ws.basis[k][i].real()) << ','
                << fmt_double(ws.basis[k][i].imag()) << '\n';
}

inline ojson to_json(const FiniteLattice& lat) { return ojson{{"L", lat.L}, {"p", lat.p}, {"b", lat.b}}; }
inline ojson to_json(const CanonicalDiscrete& c) { return ojson{{"N", c.N}, {"b", c.b}}; }
inline ojson to_json(const CanonicalReal& c) { return ojson{{"a", c.a.str()}, {"b", c.b.str()}, {"d", c.d.str()}}; }

inline ojson to_json(const SigmaParams& sp) {
    return ojson{{"L", sp.L},         {"p", sp.p},         {"b", sp.b},           {"alpha", sp.alpha},
                 {"beta", sp.beta},   {"gamma", sp.gamma}, {"delta", sp.delta},   {"m0", sp.m0},
                 {"n0", sp.n0},       {"gcd_c", sp.gcd_c}, {"lcm_d", sp.lcm_d},   {"s", sp.s},
                 {"t", sp.t},         {"q", sp.q()},       {"branch", sp.branch}};
}

inline Rational rational_from_json(const ojson& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw std::invalid_argument("matrix entries must be integers or \"p/q\" strings");
}

inline ojson to_json(const Rational& r) {
    if (r.is_integer()) return r.num();
    return r.str();
}

// {"domain":"finite","L":8,"matrix":[[2,1],[2,3]]}
inline GeneratorMatrix generator_from_json(const ojson& j) {
    GeneratorMatrix A;
    const std::string dom = j.at("domain").get<std::string>();
    if (dom == "finite") {
        A.domain = Domain::Finite;
        A.L = j.at("L").get<std::int64_t>();
    } else if (dom == "discrete") {
        A.domain = Domain::Discrete;
    } else if (dom == "real") {
        A.domain = Domain::Real;
    } else {
        throw std::invalid_argument("unknown domain " + dom);
    }
    const auto& m = j.at("matrix");
    if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2)
        throw std::invalid_argument("matrix must be 2x2");
    A.a = rational_from_json(m[0][0]);
    A.b = rational_from_json(m[0][1]);
    A.c = rational_from_json(m[1][0]);
    A.d = rational_from_json(m[1][1]);
    return A;
}

inline ojson to_json(const GeneratorMatrix& A) {
    ojson j;
    j["domain"] = A.domain == Domain::Finite ? "finite" : A.domain == Domain::Discrete ? "discrete" : "real";
    if (A.domain == Domain::Finite) j["L"] = A.L;
    j["matrix"] = ojson::array({ojson::array({to_json(A.a), to_json(A.b)}), ojson::array({to_json(A.c), to_json(A.d)})});
    return j;
}

// canonical form for any domain
inline ojson canonicalize_json(const GeneratorMatrix& A) {
    switch (A.domain) {
        case Domain::Finite: return to_json(canonical_finite(A));
        case Domain::Discrete: return to_json(canonical_discrete(A));
        case Domain::Real: return to_json(hnf_real(A));
    }
    throw std::invalid_argument("unknown domain");
}

}  // namespace tflat
