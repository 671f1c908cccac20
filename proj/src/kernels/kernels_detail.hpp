#pragma once

#include <cmath>
#include <cstddef>

// Per-element scalar steps shared by the scalar backend and the remainder
// loops of the vector backends. Keeping a single definition guarantees the
// tails execute exactly the ops the scalar reference does.

namespace tubersg::kernels::detail {

inline void neumaier_step(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
        comp += (sum - t) + x;
    } else {
        comp += (x - t) + sum;
    }
    sum = t;
}

inline double mean_rows_at(const double* const* rows, std::size_t nrows, std::size_t i) {
    const double anchor = rows[0][i];
    double acc = 0.0;
    for (std::size_t r = 1; r < nrows; ++r) {
        acc += rows[r][i] - anchor;
    }
    return anchor + acc / static_cast<double>(nrows);
}

inline double std_rows_at(const double* const* rows, std::size_t nrows, std::size_t i) {
    const double anchor = rows[0][i];
    double dsum = 0.0;
    for (std::size_t r = 1; r < nrows; ++r) {
        dsum += rows[r][i] - anchor;
    }
    const double dmean = dsum / static_cast<double>(nrows);
    double ss = 0.0;
    for (std::size_t r = 0; r < nrows; ++r) {
        const double dev = (rows[r][i] - anchor) - dmean;
        ss += dev * dev;
    }
    return std::sqrt(ss / static_cast<double>(nrows - 1));
}

inline double horner_at(const double* coeffs, std::size_t ncoeffs, double f) {
    double acc = coeffs[ncoeffs - 1];
    for (std::size_t k = ncoeffs - 1; k-- > 0;) {
        acc = acc * f + coeffs[k];
    }
    return acc;
}

inline void centered_moments_at(double& sxx, double& sxx_comp, double& sxy, double& sxy_comp,
                                double x, double xbar, double dy) {
    const double dx = x - xbar;
    neumaier_step(sxx, sxx_comp, dx * dx);
    neumaier_step(sxy, sxy_comp, dx * dy);
}

inline void abs_err_acc_at(double& sum_abs, double& abs_comp, double& sum_ape, double& ape_comp,
                           double est, double truth, double abs_truth) {
    const double ae = std::fabs(est - truth);
    neumaier_step(sum_abs, abs_comp, ae);
    neumaier_step(sum_ape, ape_comp, ae / abs_truth);
}

}  // namespace tubersg::kernels::detail
