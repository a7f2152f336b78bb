#pragma once

// Test function phi, its directional derivatives, and the deconvolution
// kernel F_{s,t,h} built either from the Laplace closed form (piecewise
// polynomial, exact quadrature downstream) or by truncated inverse Fourier
// transform for generic spectral error models.

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <sstream>

#include "common.hpp"
#include "fft.hpp"
#include "quadrature.hpp"

namespace msdeconv {

// ---------------------------------------------------------------------------
// 1D polynomial helpers (coefficient vectors, c[k] multiplies u^k)
// ---------------------------------------------------------------------------

namespace poly {

inline double eval(const std::vector<double>& c, double u) {
    double v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * u + c[k];
    return v;
}

inline std::vector<double> derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
    return d;
}

inline std::vector<double> multiply(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// Integral over [-1,1]; odd powers drop out.
inline double integrate_unit(const std::vector<double>& c) {
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); k += 2) s += 2.0 * c[k] / static_cast<double>(k + 1);
    return s;
}

inline int degree(const std::vector<double>& c) {
    for (std::size_t k = c.size(); k-- > 0;)
        if (c[k] != 0.0) return static_cast<int>(k);
    return 0;
}

// Fourier transform of the polynomial on [-1,1]: int_{-1}^{1} p(u) e^{-i w u} du.
inline std::complex<double> fourier_unit(const std::vector<double>& c, double w) {
    const std::size_t m = c.size();
    std::vector<std::complex<double>> monomial(m);
    if (std::abs(w) < 0.5) {
        // Taylor series; terms decay fast for |w| < 1.
        for (std::size_t k = 0; k < m; ++k) {
            std::complex<double> s(0.0, 0.0), term(1.0, 0.0);
            for (int j = 0; j < 40; ++j) {
                const std::size_t p = k + static_cast<std::size_t>(j);
                if (p % 2 == 0) s += term * (2.0 / static_cast<double>(p + 1));
                term *= std::complex<double>(0.0, -w) / static_cast<double>(j + 1);
                if (std::abs(term) < 1e-18) break;
            }
            monomial[k] = s;
        }
    } else {
        // Stable upward recursion from integration by parts.
        const std::complex<double> iw(0.0, w);
        const std::complex<double> em = std::exp(std::complex<double>(0.0, -w));
        const std::complex<double> ep = std::exp(std::complex<double>(0.0, w));
        monomial[0] = 2.0 * std::sin(w) / w;
        for (std::size_t k = 1; k < m; ++k) {
            const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
            monomial[k] = (em - sgn * ep) / (-iw) + (static_cast<double>(k) / iw) * monomial[k - 1];
        }
    }
    std::complex<double> s(0.0, 0.0);
    for (std::size_t k = 0; k < m; ++k) s += c[k] * monomial[k];
    return s;
}

}  // namespace poly

// ---------------------------------------------------------------------------
// Test kernel phi (product of one identical polynomial factor per axis)
// ---------------------------------------------------------------------------

class TestKernel {
public:
    // factor: coefficients of the per-axis factor P on [-1,1] (zero outside).
    TestKernel(int dim, std::vector<double> factor, int max_derivative_order = 5)
        : dim_(dim) {
        if (dim < 1) throw ConfigError("test kernel: dimension must be positive");
        const double axis_mass = poly::integrate_unit(factor);
        if (axis_mass <= 0.0) throw ConfigError("test kernel: factor must have positive mass");
        normalization_ = std::pow(axis_mass, -static_cast<double>(dim));
        factor_derivs_.push_back(std::move(factor));
        for (int k = 0; k < max_derivative_order; ++k)
            factor_derivs_.push_back(poly::derivative(factor_derivs_.back()));
    }

    int dim() const { return dim_; }
    double normalization() const { return normalization_; }
    const std::vector<double>& factor_derivative(int order) const {
        if (order < 0 || order >= static_cast<int>(factor_derivs_.size()))
            throw ConfigError("test kernel: derivative order out of range");
        return factor_derivs_[order];
    }
    int factor_degree() const { return poly::degree(factor_derivs_[0]); }

    bool in_support(const std::vector<double>& x) const {
        for (double v : x)
            if (v < -1.0 || v > 1.0) return false;
        return true;
    }

    double evaluate(const std::vector<double>& x) const {
        return partial_derivative(std::vector<int>(dim_, 0), x);
    }

    // d^|alpha| phi / dx^alpha, analytic; zero outside [-1,1]^d.
    double partial_derivative(const std::vector<int>& alpha, const std::vector<double>& x) const {
        if (static_cast<int>(alpha.size()) != dim_ || static_cast<int>(x.size()) != dim_)
            throw ConfigError("test kernel: dimension mismatch");
        if (!in_support(x)) return 0.0;
        double v = normalization_;
        for (int k = 0; k < dim_; ++k) v *= poly::eval(factor_derivative(alpha[k]), x[k]);
        return v;
    }

private:
    int dim_;
    double normalization_;
    std::vector<std::vector<double>> factor_derivs_;
};

// The paper's quartic instance phi(x1,x2) = (25/64)(1-x1^4)(1-x2^4).
inline TestKernel make_quartic_kernel(int dim = 2) {
    if (dim != 2) throw ConfigError("quartic kernel: only the bivariate instance is defined");
    return TestKernel(2, {1.0, 0.0, 0.0, 0.0, -1.0});
}

// ---------------------------------------------------------------------------
// Triple (direction, location, scale)
// ---------------------------------------------------------------------------

struct Triple {
    std::vector<double> s;  // unit direction
    std::vector<double> t;  // location
    double h = 0.0;         // scale in (0,1]

    Triple() = default;
    Triple(std::vector<double> s_, std::vector<double> t_, double h_)
        : s(std::move(s_)), t(std::move(t_)), h(h_) {
        if (s.size() != t.size()) throw ConfigError("triple: direction/location dimension mismatch");
        if (std::abs(norm(s) - 1.0) > 1e-12) throw ConfigError("triple: direction must be a unit vector");
        if (!(h > 0.0)) throw ConfigError("triple: scale must be positive");
    }

    int dim() const { return static_cast<int>(s.size()); }
    Triple negated() const {
        std::vector<double> ns(s.size());
        for (std::size_t k = 0; k < s.size(); ++k) ns[k] = -s[k];
        return Triple(ns, t, h);
    }
};

// ---------------------------------------------------------------------------
// Error model (known error density via its Fourier transform)
// ---------------------------------------------------------------------------

struct ErrorModel {
    enum class Kind { Laplace, Spectral };

    Kind kind = Kind::Laplace;
    double sigma = 0.0;  // Laplace scale
    double decay_r = 2.0;

    // Spectral variant
    std::function<std::complex<double>(const std::vector<double>&)> fourier;
    double truncation_radius = 0.0;  // 0 -> default 40/h at build time
    int grid_resolution = 256;       // frequency nodes per axis (power of two)

    static ErrorModel laplace(double sigma) {
        if (sigma < 0.0) throw ConfigError("error model: sigma must be nonnegative");
        ErrorModel e;
        e.kind = Kind::Laplace;
        e.sigma = sigma;
        e.decay_r = 2.0;
        return e;
    }

    static ErrorModel spectral(std::function<std::complex<double>(const std::vector<double>&)> ft,
                               double r, double truncation_radius = 0.0, int grid_resolution = 256) {
        if (!(r > 0.0)) throw ConfigError("error model: decay exponent must be positive");
        ErrorModel e;
        e.kind = Kind::Spectral;
        e.fourier = std::move(ft);
        e.decay_r = r;
        e.truncation_radius = truncation_radius;
        e.grid_resolution = grid_resolution;
        return e;
    }

    // characteristic function of the Laplace model, 1/(1 + sigma^2 |y|^2 / 2)
    std::complex<double> fourier_transform(const std::vector<double>& y) const {
        if (kind == Kind::Laplace) return 1.0 / (1.0 + 0.5 * sigma * sigma * dot(y, y));
        return fourier(y);
    }
};

// ---------------------------------------------------------------------------
// Deconvolution kernel F_{s,t,h}
// ---------------------------------------------------------------------------

// Closed-form path: F is a sum of separable polynomial terms in u = (x-t)/h,
// supported on [-1,1]^d in u.
struct SeparableTerm {
    double coef = 0.0;
    std::vector<std::vector<double>> axis;  // one 1D coefficient vector per axis
};

// Spectral path payload: real samples on a regular spatial grid in u.
struct SpectralGrid {
    double u_min = 0.0, du = 0.0;  // same geometry on every axis
    std::size_t npts = 0;          // points per axis
    std::vector<double> values;    // row-major, dim-d
    int dim = 0;
    double self_error = 0.0;  // relative L2 discrepancy from the convergence check

    double evaluate_u(const std::vector<double>& u) const {
        // multilinear interpolation; zero outside the grid extent
        std::vector<std::size_t> i0(dim);
        std::vector<double> frac(dim);
        for (int k = 0; k < dim; ++k) {
            const double p = (u[k] - u_min) / du;
            if (p < 0.0 || p > static_cast<double>(npts - 1)) return 0.0;
            std::size_t i = static_cast<std::size_t>(p);
            if (i >= npts - 1) i = npts - 2;
            i0[k] = i;
            frac[k] = p - static_cast<double>(i);
        }
        const std::size_t corners = std::size_t(1) << dim;
        double v = 0.0;
        for (std::size_t c = 0; c < corners; ++c) {
            double w = 1.0;
            std::size_t idx = 0;
            for (int k = 0; k < dim; ++k) {
                const bool hi = (c >> k) & 1u;
                w *= hi ? frac[k] : 1.0 - frac[k];
                idx = idx * npts + (i0[k] + (hi ? 1 : 0));
            }
            v += w * values[idx];
        }
        return v;
    }
};

class DeconvKernel {
public:
    enum class Path { LaplaceClosedForm, Spectral };

    Path path() const { return path_; }
    const Triple& triple() const { return triple_; }
    double decay_r() const { return decay_r_; }
    const Box& support_box() const { return support_; }
    const std::vector<int>& polynomial_degree() const { return poly_degree_; }
    const std::vector<SeparableTerm>& terms() const { return terms_; }
    const SpectralGrid& grid() const { return *grid_; }

    double evaluate(const std::vector<double>& x) const { return evaluate(x.data()); }

    double evaluate(const double* x) const {
        const int d = triple_.dim();
        for (int k = 0; k < d; ++k)
            if (x[k] < support_.lo[k] || x[k] > support_.hi[k]) return 0.0;
        double u[8];
        for (int k = 0; k < d; ++k) u[k] = (x[k] - triple_.t[k]) / triple_.h;
        if (path_ == Path::LaplaceClosedForm) {
            double v = 0.0;
            for (const auto& term : terms_) {
                double p = term.coef;
                for (int k = 0; k < d; ++k) p *= poly::eval(term.axis[k], u[k]);
                v += p;
            }
            return v;
        }
        std::vector<double> uv(u, u + d);
        return grid_->evaluate_u(uv);
    }

    static DeconvKernel closed_form(Triple tr, double decay_r, std::vector<SeparableTerm> terms) {
        DeconvKernel k;
        k.path_ = Path::LaplaceClosedForm;
        k.triple_ = std::move(tr);
        k.decay_r_ = decay_r;
        k.terms_ = std::move(terms);
        k.support_ = Box::cube(k.triple_.t, k.triple_.h);
        k.poly_degree_.assign(k.triple_.dim(), 0);
        for (const auto& term : k.terms_)
            for (int a = 0; a < k.triple_.dim(); ++a)
                k.poly_degree_[a] = std::max(k.poly_degree_[a], poly::degree(term.axis[a]));
        return k;
    }

    static DeconvKernel spectral(Triple tr, double decay_r, std::shared_ptr<SpectralGrid> grid) {
        DeconvKernel k;
        k.path_ = Path::Spectral;
        k.triple_ = std::move(tr);
        k.decay_r_ = decay_r;
        k.grid_ = std::move(grid);
        const double lo = k.grid_->u_min;
        const double hi = k.grid_->u_min + k.grid_->du * static_cast<double>(k.grid_->npts - 1);
        std::vector<double> blo(k.triple_.dim()), bhi(k.triple_.dim());
        for (int a = 0; a < k.triple_.dim(); ++a) {
            blo[a] = k.triple_.t[a] + k.triple_.h * lo;
            bhi[a] = k.triple_.t[a] + k.triple_.h * hi;
        }
        k.support_ = Box(blo, bhi);
        return k;
    }

private:
    Path path_ = Path::LaplaceClosedForm;
    Triple triple_;
    double decay_r_ = 2.0;
    Box support_;
    std::vector<int> poly_degree_;
    std::vector<SeparableTerm> terms_;
    std::shared_ptr<SpectralGrid> grid_;
};

// Closed form for the bivariate Laplace error (r = 2):
//   F = (d_s - (sigma^2/2)(d_{e1}^2 d_s + d_{e2}^2 d_s)) phi_{t,h}
// assembled as separable polynomial terms in u = (x-t)/h.
inline DeconvKernel make_deconv_kernel_laplace(const TestKernel& k, const Triple& tr, double sigma) {
    if (sigma < 0.0) throw ConfigError("laplace kernel: sigma must be nonnegative");
    const int d = k.dim();
    if (tr.dim() != d) throw ConfigError("laplace kernel: triple/kernel dimension mismatch");

    const double h = tr.h;
    const double c = k.normalization();
    const double a1 = c * std::pow(h, -static_cast<double>(d) - 1.0);         // d_s phi_{t,h}
    const double a3 = -0.5 * sigma * sigma * c * std::pow(h, -static_cast<double>(d) - 3.0);

    std::vector<SeparableTerm> terms;
    auto add_term = [&](double coef, const std::vector<int>& orders) {
        if (coef == 0.0) return;
        SeparableTerm term;
        term.coef = coef;
        term.axis.reserve(d);
        for (int a = 0; a < d; ++a) term.axis.push_back(k.factor_derivative(orders[a]));
        terms.push_back(std::move(term));
    };

    for (int j = 0; j < d; ++j) {
        if (tr.s[j] == 0.0) continue;
        std::vector<int> orders(d, 0);
        orders[j] = 1;
        add_term(tr.s[j] * a1, orders);  // s_j * d_j phi
        if (sigma > 0.0) {
            for (int l = 0; l < d; ++l) {
                std::vector<int> o2(d, 0);
                o2[j] += 1;
                o2[l] += 2;
                add_term(tr.s[j] * a3, o2);  // -(sigma^2/2) s_j d_l^2 d_j phi
            }
        }
    }
    return DeconvKernel::closed_form(tr, 2.0, std::move(terms));
}

namespace detail {

// Smooth super-Gaussian taper; a sharp cutoff would spread the ringing from
// the support faces (where the kernel jumps) across the whole box.
inline double band_taper(double rho) {
    const double t = std::pow(rho / 0.82, 16.0);
    return t > 700.0 ? 0.0 : std::exp(-t);
}

inline std::shared_ptr<SpectralGrid> build_spectral_grid(const TestKernel& k, const Triple& tr,
                                                         const ErrorModel& e, double radius,
                                                         std::size_t nfreq, int pad, double keep_u) {
    const int d = k.dim();
    const double h = tr.h;
    const double dw = 2.0 * radius / static_cast<double>(nfreq);
    const std::size_t npad = nfreq * static_cast<std::size_t>(pad);

    // Per-axis Fourier factors of phi on the offset grid w_j = -R + (j+1/2) dw.
    std::vector<std::vector<std::complex<double>>> axis_ft(1);
    axis_ft[0].resize(nfreq);
    for (std::size_t j = 0; j < nfreq; ++j) {
        const double w = -radius + (static_cast<double>(j) + 0.5) * dw;
        axis_ft[0][j] = poly::fourier_unit(k.factor_derivative(0), w);
    }
    // identical factor on every axis
    for (int a = 1; a < d; ++a) axis_ft.push_back(axis_ft[0]);

    std::vector<std::size_t> dims(d, npad);
    std::size_t total = 1;
    for (auto v : dims) total *= v;
    std::vector<std::complex<double>> grid(total, {0.0, 0.0});

    // Fill the integrand Psi(y) = i (s.y) F(phi)(y) / conj(F f_eps)(y/h) * taper.
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> y(d), yh(d);
    const double norm_c = k.normalization();
    while (true) {
        bool in_band = true;
        for (int a = 0; a < d; ++a)
            if (idx[a] >= nfreq) in_band = false;
        if (in_band) {
            double rho2 = 0.0;
            std::complex<double> ftphi(norm_c, 0.0);
            double sy = 0.0;
            for (int a = 0; a < d; ++a) {
                y[a] = -radius + (static_cast<double>(idx[a]) + 0.5) * dw;
                yh[a] = y[a] / h;
                rho2 += y[a] * y[a];
                sy += tr.s[a] * y[a];
                ftphi *= axis_ft[a][idx[a]];
            }
            const double taper = band_taper(std::sqrt(rho2) / radius);
            if (taper > 0.0) {
                const std::complex<double> denom = std::conj(e.fourier_transform(yh));
                if (std::abs(denom) < 1e-300)
                    throw NumericError("spectral kernel: error characteristic function vanishes in band");
                const std::complex<double> psi = std::complex<double>(0.0, sy) * ftphi / denom * taper;
                std::size_t flat = 0;
                for (int a = 0; a < d; ++a) flat = flat * npad + idx[a];
                grid[flat] = psi;
            }
        }
        int a = 0;
        while (a < d) {
            if (++idx[a] < nfreq) break;
            idx[a] = 0;
            ++a;
        }
        if (a == d) break;
    }

    fft_nd_inplace(grid, dims, /*inverse=*/true);

    // Spatial samples at u_m = 2 pi m / (npad dw), m in [-npad/2, npad/2).
    const double du = 2.0 * M_PI / (static_cast<double>(npad) * dw);
    const double w0 = -radius + 0.5 * dw;
    const double scale = std::pow(h, -static_cast<double>(d) - 1.0) * std::pow(2.0 * M_PI, -d) *
                         std::pow(dw, d);

    const long keep = std::max<long>(1, static_cast<long>(std::floor(keep_u / du)));
    const std::size_t kept = static_cast<std::size_t>(2 * keep + 1);
    auto out = std::make_shared<SpectralGrid>();
    out->dim = d;
    out->u_min = -static_cast<double>(keep) * du;
    out->du = du;
    out->npts = kept;
    out->values.assign([&] {
        std::size_t t2 = 1;
        for (int a = 0; a < d; ++a) t2 *= kept;
        return t2;
    }(), 0.0);

    std::vector<long> m(d, -keep);
    while (true) {
        std::size_t src = 0, dst = 0;
        double phase_arg = 0.0;
        for (int a = 0; a < d; ++a) {
            const long mm = m[a];
            const std::size_t wrapped = static_cast<std::size_t>((mm + static_cast<long>(npad)) % static_cast<long>(npad));
            src = src * npad + wrapped;
            dst = dst * kept + static_cast<std::size_t>(mm + keep);
            phase_arg += w0 * (static_cast<double>(mm) * du);
        }
        const std::complex<double> phase(std::cos(phase_arg), std::sin(phase_arg));
        out->values[dst] = scale * (phase * grid[src]).real();
        int a = 0;
        while (a < d) {
            if (++m[a] <= keep) break;
            m[a] = -keep;
            ++a;
        }
        if (a == d) break;
    }
    return out;
}

}  // namespace detail

struct SpectralOptions {
    double truncation_radius = 0.0;  // 0 -> 40/h
    int grid_resolution = 0;         // 0 -> error model's (default 256)
    int pad = 4;
    double keep_u = 1.6;       // spatial half-extent retained, in u units
    double tolerance = 0.08;   // relative L2 self-convergence tolerance
    double check_extent = 0.5; // self-check restricted to |u| <= this (the
                               // reconstruction near the faces carries the
                               // boundary layers of the distributional kernel)
    bool self_check = true;
};

// Truncated inverse Fourier transform on a regular frequency grid, sampled on
// a spatial grid and interpolated to query points.
inline DeconvKernel make_deconv_kernel_spectral(const TestKernel& k, const Triple& tr,
                                                const ErrorModel& e,
                                                const SpectralOptions& opt = {}) {
    if (tr.dim() != k.dim()) throw ConfigError("spectral kernel: triple/kernel dimension mismatch");
    double radius = opt.truncation_radius > 0.0 ? opt.truncation_radius : e.truncation_radius;
    if (radius <= 0.0) radius = 40.0 / tr.h;
    int nfreq = opt.grid_resolution > 0 ? opt.grid_resolution : e.grid_resolution;
    if (nfreq <= 0) nfreq = 256;
    if (!is_power_of_two(static_cast<std::size_t>(nfreq)))
        throw ConfigError("spectral kernel: grid resolution must be a power of two");

    auto fine = detail::build_spectral_grid(k, tr, e, radius, static_cast<std::size_t>(nfreq),
                                            opt.pad, opt.keep_u);
    if (opt.self_check) {
        auto refined = detail::build_spectral_grid(k, tr, e, 2.0 * radius,
                                                   static_cast<std::size_t>(2 * nfreq), opt.pad,
                                                   opt.keep_u);
        // relative L2 discrepancy between the two builds on the interior
        // |u| <= check_extent, sampled on the base grid
        double num = 0.0, den = 0.0;
        std::size_t total = fine->values.size();
        std::vector<double> u(fine->dim);
        for (std::size_t flat = 0; flat < total; ++flat) {
            std::size_t rem = flat;
            bool interior = true;
            for (int a = fine->dim - 1; a >= 0; --a) {
                u[a] = fine->u_min + fine->du * static_cast<double>(rem % fine->npts);
                rem /= fine->npts;
                if (std::abs(u[a]) > opt.check_extent) interior = false;
            }
            if (!interior) continue;
            const double va = fine->values[flat];
            const double vb = refined->evaluate_u(u);
            num += (va - vb) * (va - vb);
            den += vb * vb;
        }
        const double rel = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
        if (rel > opt.tolerance) {
            std::ostringstream msg;
            msg << "spectral kernel: self-convergence check failed, estimated relative L2 error "
                << rel << " exceeds tolerance " << opt.tolerance
                << " (increase truncation radius or grid resolution)";
            throw ConfigError(msg.str());
        }
        refined->self_error = rel;
        return DeconvKernel::spectral(tr, e.decay_r, std::move(refined));
    }
    return DeconvKernel::spectral(tr, e.decay_r, std::move(fine));
}

// Builds F for a triple using the path that matches the error model.
inline DeconvKernel make_deconv_kernel(const TestKernel& k, const Triple& tr, const ErrorModel& e) {
    if (e.kind == ErrorModel::Kind::Laplace) return make_deconv_kernel_laplace(k, tr, e.sigma);
    return make_deconv_kernel_spectral(k, tr, e);
}

// ---------------------------------------------------------------------------
// Inner products
// ---------------------------------------------------------------------------

// int a(x) b(x) dx. Exact tensor Gauss-Legendre for two closed-form kernels
// (node count exceeds half the combined degree per axis); trapezoidal sums on
// the shared grid geometry for two spectral kernels.
inline double kernel_inner_product(const DeconvKernel& a, const DeconvKernel& b) {
    if (a.path() != b.path())
        throw ConfigError("kernel inner product: incompatible kernel representations");
    const Box overlap = a.support_box().intersect(b.support_box());
    if (overlap.empty()) return 0.0;

    if (a.path() == DeconvKernel::Path::LaplaceClosedForm) {
        const int d = overlap.dim();
        std::vector<int> nodes(d);
        for (int k = 0; k < d; ++k)
            nodes[k] = (a.polynomial_degree()[k] + b.polynomial_degree()[k]) / 2 + 1;
        return integrate_box(overlap, nodes, [&](const std::vector<double>& x) {
            return a.evaluate(x) * b.evaluate(x);
        });
    }

    if (std::abs(a.grid().du - b.grid().du) > 1e-12 * a.grid().du)
        throw ConfigError("kernel inner product: spectral kernels need a common grid spacing");
    // trapezoid over a's sample points restricted to the overlap
    const auto& g = a.grid();
    const int d = g.dim;
    const double dx = g.du * a.triple().h;
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> x(d);
    double sum = 0.0;
    while (true) {
        bool inside = true;
        for (int k = 0; k < d; ++k) {
            x[k] = a.triple().t[k] + a.triple().h * (g.u_min + g.du * static_cast<double>(idx[k]));
            if (x[k] < overlap.lo[k] || x[k] > overlap.hi[k]) inside = false;
        }
        if (inside) sum += a.evaluate(x) * b.evaluate(x);
        int k = 0;
        while (k < d) {
            if (++idx[k] < g.npts) break;
            idx[k] = 0;
            ++k;
        }
        if (k == d) break;
    }
    return sum * std::pow(dx, d);
}

inline double kernel_l2_norm(const DeconvKernel& a) {
    return std::sqrt(std::max(0.0, kernel_inner_product(a, a)));
}

}  // namespace msdeconv
