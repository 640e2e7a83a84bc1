#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "mixbound/common.hpp"

namespace mixbound {

// Dense row-major square matrix.  Everything here is desk scale, so plain
// O(n^3) routines with no blocking are deliberate.
class Matrix {
  public:
    Matrix() : n_(0) {}
    explicit Matrix(int n, double fill = 0.0) : n_(n), a_(static_cast<size_t>(n) * n, fill) {}

    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int n() const { return n_; }
    double& operator()(int r, int c) { return a_[static_cast<size_t>(r) * n_ + c]; }
    double operator()(int r, int c) const { return a_[static_cast<size_t>(r) * n_ + c]; }
    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

    Matrix operator*(const Matrix& o) const {
        Matrix out(n_);
        for (int i = 0; i < n_; ++i) {
            for (int k = 0; k < n_; ++k) {
                double aik = (*this)(i, k);
                if (aik == 0.0) continue;
                for (int j = 0; j < n_; ++j) out(i, j) += aik * o(k, j);
            }
        }
        return out;
    }

  private:
    int n_;
    std::vector<double> a_;
};

// row <- row * M
inline std::vector<double> vec_mat(const std::vector<double>& v, const Matrix& m) {
    int n = m.n();
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double vi = v[i];
        if (vi == 0.0) continue;
        for (int j = 0; j < n; ++j) out[j] += vi * m(i, j);
    }
    return out;
}

inline Matrix mat_pow(const Matrix& m, long long e) {
    Matrix acc = Matrix::identity(m.n());
    Matrix base = m;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

// Solves A x = b in place by Gaussian elimination with partial pivoting.
inline std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
    int n = a.n();
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
        if (std::fabs(a(piv, col)) < 1e-300) fail(errc::bad_input, "singular linear system");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            std::swap(b[piv], b[col]);
        }
        double d = a(col, col);
        for (int r = col + 1; r < n; ++r) {
            double f = a(r, col) / d;
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int j = r + 1; j < n; ++j) s -= a(r, j) * x[j];
        x[r] = s / a(r, r);
    }
    return x;
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.  Sweep order
// is fixed (row-major over the upper triangle) so results are deterministic.
inline std::vector<double> jacobi_eigenvalues(Matrix a, int max_sweeps = 100) {
    int n = a.n();
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale += a(i, j) * a(i, j);
    scale = std::sqrt(scale);
    double thresh = 1e-12 * std::max(1.0, scale);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += 2.0 * a(p, q) * a(p, q);
        if (std::sqrt(off) <= thresh) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (std::fabs(apq) < 1e-300) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                double tau = s / (1.0 + c);
                double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    double arp = a(r, p), arq = a(r, q);
                    a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
                    a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a(i, i);
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

}  // namespace mixbound
