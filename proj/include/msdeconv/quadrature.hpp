#pragma once

// Gauss-Legendre nodes/weights and tensor-product integration over boxes.
// n-point Gauss-Legendre is exact for polynomials of degree 2n-1, which makes
// inner products of the piecewise-polynomial deconvolution kernels exact.

#include <cmath>
#include <functional>
#include <map>
#include <mutex>

#include "common.hpp"

namespace msdeconv {

struct QuadratureRule {
    std::vector<double> nodes;    // on [-1,1]
    std::vector<double> weights;  // sum to 2
};

// Newton iteration on Legendre polynomials.
inline QuadratureRule compute_gauss_legendre(int n) {
    if (n < 1) throw ConfigError("gauss_legendre: need at least one node");
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess for the i-th positive root.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

inline const QuadratureRule& gauss_legendre(int n) {
    static std::map<int, QuadratureRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

// Tensor-product integral of f over a box, nodes_per_axis[k] nodes on axis k.
inline double integrate_box(const Box& box, const std::vector<int>& nodes_per_axis,
                            const std::function<double(const std::vector<double>&)>& f) {
    const int d = box.dim();
    std::vector<const QuadratureRule*> rules(d);
    for (int k = 0; k < d; ++k) rules[k] = &gauss_legendre(nodes_per_axis[k]);

    std::vector<int> idx(d, 0);
    std::vector<double> x(d);
    double total = 0.0;
    double jac = 1.0;
    for (int k = 0; k < d; ++k) jac *= 0.5 * (box.hi[k] - box.lo[k]);
    while (true) {
        double w = 1.0;
        for (int k = 0; k < d; ++k) {
            const double t = rules[k]->nodes[idx[k]];
            x[k] = 0.5 * (box.lo[k] + box.hi[k]) + 0.5 * (box.hi[k] - box.lo[k]) * t;
            w *= rules[k]->weights[idx[k]];
        }
        total += w * f(x);
        int k = 0;
        while (k < d) {
            if (++idx[k] < static_cast<int>(rules[k]->nodes.size())) break;
            idx[k] = 0;
            ++k;
        }
        if (k == d) break;
    }
    return total * jac;
}

inline double integrate_box(const Box& box, int nodes_per_axis,
                            const std::function<double(const std::vector<double>&)>& f) {
    return integrate_box(box, std::vector<int>(box.dim(), nodes_per_axis), f);
}

}  // namespace msdeconv
