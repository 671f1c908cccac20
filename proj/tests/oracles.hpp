#pragma once

// Independent reference implementations used as oracles. Everything here is
// deliberately naive (plain power sums, textbook normal equations, long
// double accumulation) and shares no code with the library paths it checks.

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace oracles {

// Naive power-sum evaluation of a polynomial, long double accumulation.
inline double naive_poly_eval(std::span<const double> coeffs, double f) {
    long double acc = 0.0L;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        long double power = 1.0L;
        for (std::size_t j = 0; j < k; ++j) power *= static_cast<long double>(f);
        acc += static_cast<long double>(coeffs[k]) * power;
    }
    return static_cast<double>(acc);
}

// Magnitude scale of an evaluation: sum |a_k| |f|^k.
inline double poly_eval_scale(std::span<const double> coeffs, double f) {
    long double acc = 0.0L;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        long double power = 1.0L;
        for (std::size_t j = 0; j < k; ++j) power *= std::fabs(static_cast<long double>(f));
        acc += std::fabs(static_cast<long double>(coeffs[k])) * power;
    }
    return static_cast<double>(acc);
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

// Textbook normal equations in long double:
//   slope = (n*Sxy - Sx*Sy) / (n*Sxx - Sx^2), intercept = (Sy - slope*Sx)/n.
inline LineFit normal_equation_fit(std::span<const std::pair<double, double>> pairs) {
    long double sx = 0.0L, sy = 0.0L, sxy = 0.0L, sxx = 0.0L, syy = 0.0L;
    const long double n = static_cast<long double>(pairs.size());
    for (const auto& [x, y] : pairs) {
        sx += x;
        sy += y;
        sxy += static_cast<long double>(x) * y;
        sxx += static_cast<long double>(x) * x;
        syy += static_cast<long double>(y) * y;
    }
    LineFit fit;
    const long double denom = n * sxx - sx * sx;
    fit.slope = static_cast<double>((n * sxy - sx * sy) / denom);
    fit.intercept = static_cast<double>((sy - (n * sxy - sx * sy) / denom * sx) / n);
    const long double sst = syy - sy * sy / n;
    if (sst > 0.0L) {
        const long double cov = sxy - sx * sy / n;
        fit.r2 = static_cast<double>((cov * cov) / ((sxx - sx * sx / n) * sst));
    }
    return fit;
}

inline double reference_mean(std::span<const double> values) {
    long double acc = 0.0L;
    for (double v : values) acc += v;
    return static_cast<double>(acc / static_cast<long double>(values.size()));
}

inline double reference_sample_std(std::span<const double> values) {
    const long double n = static_cast<long double>(values.size());
    long double acc = 0.0L;
    for (double v : values) acc += v;
    const long double mean = acc / n;
    long double ss = 0.0L;
    for (double v : values) ss += (v - mean) * (v - mean);
    return static_cast<double>(std::sqrt(ss / (n - 1.0L)));
}

inline double reference_mae(std::span<const double> truth, std::span<const double> est) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        acc += std::fabs(static_cast<long double>(truth[i]) - est[i]);
    }
    return static_cast<double>(acc / static_cast<long double>(truth.size()));
}

// Residual RMS of a degree-4 polynomial candidate against (f, value) data.
inline double poly4_rms(std::span<const double> coeffs, std::span<const double> f,
                        std::span<const double> values) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const long double r = static_cast<long double>(naive_poly_eval(coeffs, f[i])) - values[i];
        acc += r * r;
    }
    return static_cast<double>(std::sqrt(acc / static_cast<long double>(f.size())));
}

}  // namespace oracles
