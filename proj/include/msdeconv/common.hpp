#pragma once

// Shared small types: axis-aligned boxes, dense matrices, error types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace msdeconv {

// Thrown on invalid configuration or precondition violations (CLI maps it to exit 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a numeric routine cannot deliver (CLI maps it to exit 1).
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Axis-aligned box in R^d.
struct Box {
    std::vector<double> lo, hi;

    Box() = default;
    Box(std::vector<double> lo_, std::vector<double> hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (lo.size() != hi.size()) throw ConfigError("box: lo/hi dimension mismatch");
        for (std::size_t k = 0; k < lo.size(); ++k)
            if (!(lo[k] <= hi[k])) throw ConfigError("box: lo > hi on axis " + std::to_string(k));
    }
    static Box cube(const std::vector<double>& center, double half_width) {
        std::vector<double> lo(center.size()), hi(center.size());
        for (std::size_t k = 0; k < center.size(); ++k) {
            lo[k] = center[k] - half_width;
            hi[k] = center[k] + half_width;
        }
        return Box(lo, hi);
    }

    int dim() const { return static_cast<int>(lo.size()); }

    bool contains(const double* x) const {
        for (std::size_t k = 0; k < lo.size(); ++k)
            if (x[k] < lo[k] || x[k] > hi[k]) return false;
        return true;
    }
    bool contains(const std::vector<double>& x) const { return contains(x.data()); }

    double volume() const {
        double v = 1.0;
        for (std::size_t k = 0; k < lo.size(); ++k) v *= hi[k] - lo[k];
        return v;
    }

    // Intersection; empty() is true when the boxes do not overlap on some axis.
    Box intersect(const Box& o) const {
        Box r;
        r.lo.resize(lo.size());
        r.hi.resize(lo.size());
        for (std::size_t k = 0; k < lo.size(); ++k) {
            r.lo[k] = std::max(lo[k], o.lo[k]);
            r.hi[k] = std::min(hi[k], o.hi[k]);
        }
        return r;
    }
    bool empty() const {
        for (std::size_t k = 0; k < lo.size(); ++k)
            if (lo[k] >= hi[k]) return true;
        return lo.empty();
    }
};

// Dense row-major matrix, just enough for correlation/Cholesky work.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

// Cyclic Jacobi eigendecomposition for symmetric matrices. Returns eigenvalues;
// `vecs` columns are the corresponding eigenvectors.
inline std::vector<double> sym_eigen(const Matrix& m, Matrix& vecs) {
    const std::size_t n = m.rows;
    Matrix a = m;
    vecs = Matrix::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off < 1e-24 * n * n) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = vecs(k, p), vkq = vecs(k, q);
                    vecs(k, p) = c * vkp - s * vkq;
                    vecs(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
    return ev;
}

// Lower-triangular Cholesky factor of a symmetric positive (semi)definite matrix.
// Throws NumericError when a pivot goes negative beyond tolerance.
inline Matrix cholesky(const Matrix& m, double jitter = 0.0) {
    const std::size_t n = m.rows;
    Matrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = m(i, j) + (i == j ? jitter : 0.0);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s < -1e-10) throw NumericError("cholesky: matrix not positive semidefinite");
                l(i, j) = std::sqrt(std::max(s, 0.0));
            } else {
                l(i, j) = l(j, j) > 0.0 ? s / l(j, j) : 0.0;
            }
        }
    }
    return l;
}

}  // namespace msdeconv
