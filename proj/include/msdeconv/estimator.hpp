#pragma once

// Sample handling, the statistic T^n_{s,t,h}, the constants V_j, the pilot
// density estimate, the scale weights w / w~ and the per-triple critical
// values.

#include <charconv>
#include <fstream>
#include <limits>

#include "kernel.hpp"

namespace msdeconv {

// ---------------------------------------------------------------------------
// Sample
// ---------------------------------------------------------------------------

struct Sample {
    std::vector<double> data;  // row-major n x d
    std::size_t n = 0;
    int d = 0;

    Sample() = default;
    Sample(std::vector<double> values, std::size_t n_, int d_)
        : data(std::move(values)), n(n_), d(d_) {
        if (data.size() != n * static_cast<std::size_t>(d))
            throw ConfigError("sample: size mismatch");
        for (double v : data)
            if (!std::isfinite(v)) throw ConfigError("sample: entries must be finite");
        if (n < 1) throw ConfigError("sample: need at least one observation");
    }

    const double* row(std::size_t i) const { return data.data() + i * static_cast<std::size_t>(d); }

    std::vector<double> column_stddev() const {
        std::vector<double> mean(d, 0.0), var(d, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (int k = 0; k < d; ++k) mean[k] += row(i)[k];
        for (int k = 0; k < d; ++k) mean[k] /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i)
            for (int k = 0; k < d; ++k) {
                const double c = row(i)[k] - mean[k];
                var[k] += c * c;
            }
        std::vector<double> sd(d);
        for (int k = 0; k < d; ++k)
            sd[k] = std::sqrt(var[k] / static_cast<double>(n > 1 ? n - 1 : 1));
        return sd;
    }
};

namespace detail {

inline bool parse_double(const std::string& tok, double& out) {
    const char* b = tok.data();
    const char* e = tok.data() + tok.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    while (e > b && (*(e - 1) == ' ' || *(e - 1) == '\t' || *(e - 1) == '\r')) --e;
    auto [ptr, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && ptr == e && b != e;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',' || c == ';') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

// One observation per row, d numeric columns, '.' decimal separator, optional
// header line. Malformed rows are reported with their line number.
inline Sample load_sample_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open sample file: " + path);
    std::vector<double> values;
    std::size_t n = 0;
    int d = 0;
    std::string line;
    std::size_t lineno = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto toks = detail::split_csv_line(line);
        std::vector<double> row;
        row.reserve(toks.size());
        bool ok = true;
        for (const auto& tok : toks) {
            double v;
            if (!detail::parse_double(tok, v)) {
                ok = false;
                break;
            }
            row.push_back(v);
        }
        if (!ok) {
            if (first_content) {  // header
                first_content = false;
                continue;
            }
            throw ConfigError("malformed CSV row at line " + std::to_string(lineno) + " in " + path);
        }
        first_content = false;
        if (d == 0) d = static_cast<int>(row.size());
        if (static_cast<int>(row.size()) != d)
            throw ConfigError("CSV row at line " + std::to_string(lineno) + " has " +
                              std::to_string(row.size()) + " columns, expected " + std::to_string(d));
        values.insert(values.end(), row.begin(), row.end());
        ++n;
    }
    if (n == 0) throw ConfigError("no observations in " + path);
    return Sample(std::move(values), n, d);
}

// ---------------------------------------------------------------------------
// Statistic and constants
// ---------------------------------------------------------------------------

// T^n_{s,t,h} = (1/n) sum_i F_{s,t,h}(Y_i)
inline double test_statistic(const Sample& sample, const DeconvKernel& f) {
    if (sample.d != f.triple().dim())
        throw ConfigError("test statistic: sample/kernel dimension mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < sample.n; ++i) sum += f.evaluate(sample.row(i));
    return sum / static_cast<double>(sample.n);
}

// Population value int f(x) d_s phi_{t,h}(x) dx = -int d_s f phi_{t,h}; the
// quantity T estimates. Tensor quadrature on the support box.
inline double expected_statistic_oracle(const std::function<double(const std::vector<double>&)>& f,
                                        const TestKernel& k, const Triple& tr,
                                        int nodes_per_axis = 32) {
    const int d = k.dim();
    if (tr.dim() != d) throw ConfigError("expected statistic: dimension mismatch");
    const Box box = Box::cube(tr.t, tr.h);
    const double scale = std::pow(tr.h, -static_cast<double>(d) - 1.0);
    return integrate_box(box, nodes_per_axis, [&](const std::vector<double>& x) {
        std::vector<double> u(d);
        for (int a = 0; a < d; ++a) u[a] = (x[a] - tr.t[a]) / tr.h;
        double dphi = 0.0;
        for (int j = 0; j < d; ++j) {
            if (tr.s[j] == 0.0) continue;
            std::vector<int> alpha(d, 0);
            alpha[j] = 1;
            dphi += tr.s[j] * k.partial_derivative(alpha, u);
        }
        return f(x) * dphi * scale;
    });
}

// V_j = h^{d/2+r+1} ||F||_{L2}
inline double compute_V(const DeconvKernel& f) {
    const double h = f.triple().h;
    const double expo = 0.5 * f.triple().dim() + f.decay_r() + 1.0;
    return std::pow(h, expo) * kernel_l2_norm(f);
}

struct ScaleWeights {
    double w = 0.0;       // sqrt(log(e h^-d)) / loglog(e^e h^-d)
    double wtilde = 0.0;  // sqrt(2 log(h^-d))
};

inline ScaleWeights weights(double h, int d) {
    if (!(h > 0.0) || h > 1.0) throw ConfigError("weights: h must lie in (0,1]");
    const double hd = std::pow(h, -static_cast<double>(d));
    ScaleWeights sw;
    sw.w = std::sqrt(std::log(M_E * hd)) / std::log(std::log(std::exp(M_E) * hd));
    sw.wtilde = std::sqrt(2.0 * std::log(hd));
    return sw;
}

// ---------------------------------------------------------------------------
// Pilot density estimate (biweight product KDE, clamped below)
// ---------------------------------------------------------------------------

class PilotDensity {
public:
    PilotDensity(const Sample& sample, std::vector<double> bandwidths, double floor)
        : data_(sample.data), n_(sample.n), d_(sample.d), bw_(std::move(bandwidths)), floor_(floor) {
        if (static_cast<int>(bw_.size()) != d_) throw ConfigError("pilot density: bandwidth count");
        for (double b : bw_)
            if (!(b > 0.0)) throw ConfigError("pilot density: bandwidth must be positive");
        if (!(floor_ > 0.0)) throw ConfigError("pilot density: floor must be positive");
        inv_norm_ = 1.0 / static_cast<double>(n_);
        for (int k = 0; k < d_; ++k) inv_norm_ /= bw_[k];
    }

    double evaluate(const std::vector<double>& x) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            const double* row = data_.data() + i * static_cast<std::size_t>(d_);
            double k = 1.0;
            for (int a = 0; a < d_; ++a) {
                const double u = (x[a] - row[a]) / bw_[a];
                if (u <= -1.0 || u >= 1.0) {
                    k = 0.0;
                    break;
                }
                const double q = 1.0 - u * u;
                k *= 0.9375 * q * q;  // biweight kernel 15/16 (1-u^2)^2
            }
            sum += k;
        }
        return std::max(sum * inv_norm_, floor_);
    }

    const std::vector<double>& bandwidths() const { return bw_; }
    double floor() const { return floor_; }

private:
    std::vector<double> data_;
    std::size_t n_;
    int d_;
    std::vector<double> bw_;
    double floor_;
    double inv_norm_;
};

// Default bandwidth n^{-1/6} scaled by the per-axis sample standard deviation.
inline std::vector<double> default_pilot_bandwidth(const Sample& sample) {
    auto sd = sample.column_stddev();
    const double rate = std::pow(static_cast<double>(sample.n), -1.0 / 6.0);
    for (auto& b : sd) {
        b *= rate;
        if (!(b > 0.0)) b = rate;  // degenerate column
    }
    return sd;
}

inline PilotDensity pilot_density(const Sample& sample, double bandwidth, double floor = 1e-4) {
    if (!(bandwidth > 0.0)) throw ConfigError("pilot density: bandwidth must be positive");
    if (sample.n < 2) throw ConfigError("pilot density: need at least two observations");
    return PilotDensity(sample, std::vector<double>(sample.d, bandwidth), floor);
}

inline PilotDensity pilot_density_auto(const Sample& sample, double floor = 1e-4) {
    if (sample.n < 2) throw ConfigError("pilot density: need at least two observations");
    return PilotDensity(sample, default_pilot_bandwidth(sample), floor);
}

// ---------------------------------------------------------------------------
// Per-triple critical value
// ---------------------------------------------------------------------------

// kappa_j(alpha) = sqrt(g_hat(t)) V / sqrt(n) * h^{-d/2-r-1}
//                  * ( loglog(e^e h^-d)/sqrt(log(e h^-d)) * kappa_n + sqrt(2 log(h^-d)) )
inline double critical_value(double g_hat_at_t, double V, double h, int d, double r, double kappa_n,
                             std::size_t n) {
    if (!(g_hat_at_t > 0.0) || !(V > 0.0)) throw ConfigError("critical value: g_hat and V must be positive");
    if (!(h > 0.0) || h >= 1.0) throw ConfigError("critical value: h must lie in (0,1)");
    if (!std::isfinite(kappa_n)) throw ConfigError("critical value: kappa_n must be finite");
    const auto sw = weights(h, d);
    const double bracket = kappa_n / sw.w + sw.wtilde;
    return std::sqrt(g_hat_at_t) * V / std::sqrt(static_cast<double>(n)) *
           std::pow(h, -(0.5 * d + r + 1.0)) * bracket;
}

}  // namespace msdeconv
