#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "errors.hpp"
#include "signal.hpp"

namespace tflat {

// Dense row-major complex square matrix.
class OperatorMatrix {
public:
    OperatorMatrix() = default;
    explicit OperatorMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    static OperatorMatrix identity(std::size_t n, double s = 1.0) {
        OperatorMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
        return m;
    }

    std::size_t size() const { return n_; }
    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    OperatorMatrix adjoint() const {
        OperatorMatrix r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    friend OperatorMatrix operator*(const OperatorMatrix& x, const OperatorMatrix& y) {
        require(x.n_ == y.n_, "matrix size mismatch");
        OperatorMatrix r(x.n_);
        for (std::size_t i = 0; i < x.n_; ++i)
            for (std::size_t k = 0; k < x.n_; ++k) {
                cplx v = x(i, k);
                if (v == 0.0) continue;
                for (std::size_t j = 0; j < x.n_; ++j) r(i, j) += v * y(k, j);
            }
        return r;
    }

    Window apply(const Window& f) const {
        require(f.size() == n_, "matrix/vector size mismatch");
        Window r(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            cplx s = 0;
            for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * f[j];
            r[i] = s;
        }
        return r;
    }

    double max_abs() const {
        double m = 0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    double frobenius() const {
        double s = 0;
        for (const auto& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    // max |M - s·I|
    double deviation_from_identity(double s = 1.0) const {
        double m = 0;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                m = std::max(m, std::abs((*this)(i, j) - (i == j ? cplx(s) : cplx(0.0))));
        return m;
    }

    bool is_hermitian(double tol = 1e-12) const {
        double scale = std::max(1.0, max_abs());
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol * scale) return false;
        return true;
    }

private:
    std::size_t n_ = 0;
    std::vector<cplx> a_;
};

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    OperatorMatrix vectors;      // columns
};

// Cyclic Jacobi for Hermitian matrices.
inline EigenDecomposition jacobi_eigh(const OperatorMatrix& S, double rel_tol = 1e-13, int max_sweeps = 100) {
    if (!S.is_hermitian()) throw std::invalid_argument("matrix is not Hermitian");
    const std::size_t n = S.size();
    OperatorMatrix A = S;
    OperatorMatrix V = OperatorMatrix::identity(n);
    const double target = rel_tol * std::max(S.frobenius(), 1e-300);

    auto off = [&] {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(A(i, j));
        return std::sqrt(s);
    };

    int sweep = 0;
    for (; sweep < max_sweeps && off() > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                cplx apq = A(p, q);
                double mag = std::abs(apq);
                if (mag < 1e-300) continue;
                cplx e = apq / mag;  // e^{iθ}
                double app = A(p, p).real(), aqq = A(q, q).real();
                double theta = (aqq - app) / (2.0 * mag);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                cplx ec = std::conj(e);
                // G = [[c, s], [-s·e^{-iθ}, c·e^{-iθ}]] on (p, q); A <- G^H A G
                for (std::size_t k = 0; k < n; ++k) {
                    cplx akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * ec * akq;
                    A(k, q) = s * akp + c * ec * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    cplx apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * e * aqk;
                    A(q, k) = s * apk + c * e * aqk;
                }
                A(p, q) = 0.0;
                A(q, p) = 0.0;
                A(p, p) = A(p, p).real();
                A(q, q) = A(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    cplx vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * ec * vkq;
                    V(k, q) = s * vkp + c * ec * vkq;
                }
            }
    }
    if (off() > target) throw NumericalError("Jacobi eigensolver did not converge");

    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return A(i, i).real() < A(j, j).real(); });
    EigenDecomposition out{std::vector<double>(n), OperatorMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = A(idx[k], idx[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = V(i, idx[k]);
    }
    return out;
}

inline OperatorMatrix herm_inv_sqrt(const OperatorMatrix& S) {
    EigenDecomposition e = jacobi_eigh(S);
    const std::size_t n = S.size();
    double top = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
    if (n == 0 || e.values.front() <= 1e-10 * top) throw NumericalError("frame lower bound ≈ 0");
    OperatorMatrix R(n);
    for (std::size_t k = 0; k < n; ++k) {
        double w = 1.0 / std::sqrt(e.values[k]);
        for (std::size_t i = 0; i < n; ++i) {
            cplx vi = e.vectors(i, k) * w;
            for (std::size_t j = 0; j < n; ++j) R(i, j) += vi * std::conj(e.vectors(j, k));
        }
    }
    return R;
}

}  // namespace tflat
