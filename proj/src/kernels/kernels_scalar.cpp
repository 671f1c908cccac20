#include <cstddef>

#include "tubersg/kernels.hpp"
#include "kernels_detail.hpp"

namespace tubersg::kernels {
namespace {

using namespace detail;

void mean_rows_scalar(const double* const* rows, std::size_t nrows, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = mean_rows_at(rows, nrows, i);
    }
}

void std_rows_scalar(const double* const* rows, std::size_t nrows, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std_rows_at(rows, nrows, i);
    }
}

void poly_eval_scalar(const double* coeffs, std::size_t ncoeffs, const double* f, double* out,
                      std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = horner_at(coeffs, ncoeffs, f[i]);
    }
}

void mul_add_scalar(const double* a, const double* x, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = a[i] * x[i] + b[i];
    }
}

void kahan_add_scalar(double* sum, double* comp, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        neumaier_step(sum[i], comp[i], x[i]);
    }
}

void kahan_add_delta_scalar(double* sum, double* comp, const double* x, const double* anchor,
                            std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        neumaier_step(sum[i], comp[i], x[i] - anchor[i]);
    }
}

void centered_moments_scalar(double* sxx, double* sxx_comp, double* sxy, double* sxy_comp,
                             const double* x, const double* xbar, double dy, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        centered_moments_at(sxx[i], sxx_comp[i], sxy[i], sxy_comp[i], x[i], xbar[i], dy);
    }
}

void abs_err_acc_scalar(double* sum_abs, double* abs_comp, double* sum_ape, double* ape_comp,
                        const double* est, double truth, std::size_t n) {
    const double abs_truth = std::fabs(truth);
    for (std::size_t i = 0; i < n; ++i) {
        abs_err_acc_at(sum_abs[i], abs_comp[i], sum_ape[i], ape_comp[i], est[i], truth, abs_truth);
    }
}

}  // namespace

const Ops& scalar_ops() noexcept {
    static const Ops table = {
        "scalar",
        mean_rows_scalar,
        std_rows_scalar,
        poly_eval_scalar,
        mul_add_scalar,
        kahan_add_scalar,
        kahan_add_delta_scalar,
        centered_moments_scalar,
        abs_err_acc_scalar,
    };
    return table;
}

}  // namespace tubersg::kernels
