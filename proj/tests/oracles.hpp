#pragma once

// Test-side oracles, independent of the implementation paths they check:
// coefficient-wise polynomial calculus for exact integrals, hard-coded
// derivative tables for the quartic factor, and basic normal-distribution
// helpers for Monte Carlo tolerances.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

// --- independent 1D polynomial calculus (coefficient vectors) ---

inline double poly_eval(const std::vector<double>& c, double u) {
    double v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * u + c[k];
    return v;
}

inline std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// exact integral over [-1,1] by the power rule
inline double poly_int_unit(const std::vector<double>& c) {
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); k += 2) s += 2.0 * c[k] / static_cast<double>(k + 1);
    return s;
}

// --- quartic factor P(u) = 1 - u^4 and its derivatives, written out ---

inline const std::vector<double>& quartic(int order) {
    static const std::vector<std::vector<double>> table = {
        {1.0, 0.0, 0.0, 0.0, -1.0},  // P
        {0.0, 0.0, 0.0, -4.0},       // P'
        {0.0, 0.0, -12.0},           // P''
        {0.0, -24.0},                // P'''
        {-24.0},                     // P''''
    };
    return table[order];
}

constexpr double kQuarticNorm = 25.0 / 64.0;  // (int_{-1}^{1} (1-u^4) du)^{-2}

// L2 building blocks of the closed-form Laplace kernel, s = e1:
//   ||F||^2 = h^{-4} A - sigma^2 h^{-6} B + (sigma^4/4) h^{-8} C
// with A, B, C assembled from exact 1D integrals.
struct LaplaceNormConstants {
    double A, B, C;
};

inline LaplaceNormConstants laplace_norm_constants() {
    const double c2 = kQuarticNorm;
    const auto& P = quartic(0);
    const auto& P1 = quartic(1);
    const auto& P2 = quartic(2);
    const auto& P3 = quartic(3);
    const double iP2 = poly_int_unit(poly_mul(P, P));      // int P^2
    const double iP1sq = poly_int_unit(poly_mul(P1, P1));  // int P'^2
    const double iP1P3 = poly_int_unit(poly_mul(P1, P3));  // int P' P'''
    const double iPP2 = poly_int_unit(poly_mul(P, P2));    // int P P''
    const double iP3sq = poly_int_unit(poly_mul(P3, P3));
    const double iP2sq = poly_int_unit(poly_mul(P2, P2));
    LaplaceNormConstants k{};
    // d_s phi = c2 P'(u1) P(u2); lap d_s phi = c2 (P''' P + P' P'')
    k.A = c2 * c2 * iP1sq * iP2;
    k.B = -c2 * c2 * (iP1P3 * iP2 + iP1sq * iPP2);  // cross term enters ||F||^2 with -sigma^2
    k.C = c2 * c2 * (iP3sq * iP2 + 2.0 * iP1P3 * iPP2 + iP1sq * iP2sq);
    return k;
}

inline double laplace_norm_squared(double h, double sigma) {
    const auto k = laplace_norm_constants();
    return std::pow(h, -4.0) * k.A - sigma * sigma * std::pow(h, -6.0) * (-k.B) +
           0.25 * std::pow(sigma, 4.0) * std::pow(h, -8.0) * k.C;
}

// --- normal distribution helpers ---

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

constexpr double kHalfNormal95 = 1.9599639845400545;  // 95% quantile of |N(0,1)|

inline double binomial_se(double p, std::size_t n) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace oracle
