// AVX2 variants of the kernels in kernels_scalar.cpp. Compiled with -mavx2
// only; plain mul/add (no FMA) so every lane executes the scalar op
// sequence and results stay bitwise identical to the reference.

#include <cstddef>

#include <immintrin.h>

#include "tubersg/kernels.hpp"
#include "kernels_detail.hpp"

namespace tubersg::kernels {
namespace {

using namespace detail;

inline __m256d abs_pd(__m256d v) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    return _mm256_andnot_pd(sign_mask, v);
}

// sum/comp updated in place with the Neumaier step, lane-wise.
inline void neumaier_step_pd(__m256d& sum, __m256d& comp, __m256d x) {
    const __m256d t = _mm256_add_pd(sum, x);
    const __m256d big = _mm256_cmp_pd(abs_pd(sum), abs_pd(x), _CMP_GE_OQ);
    const __m256d d_sum_big = _mm256_add_pd(_mm256_sub_pd(sum, t), x);
    const __m256d d_x_big = _mm256_add_pd(_mm256_sub_pd(x, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(d_x_big, d_sum_big, big));
    sum = t;
}

void mean_rows_avx2(const double* const* rows, std::size_t nrows, double* out, std::size_t n) {
    const __m256d inv_count = _mm256_set1_pd(static_cast<double>(nrows));
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d anchor = _mm256_loadu_pd(rows[0] + i);
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t r = 1; r < nrows; ++r) {
            acc = _mm256_add_pd(acc, _mm256_sub_pd(_mm256_loadu_pd(rows[r] + i), anchor));
        }
        _mm256_storeu_pd(out + i, _mm256_add_pd(anchor, _mm256_div_pd(acc, inv_count)));
    }
    for (; i < n; ++i) {
        out[i] = mean_rows_at(rows, nrows, i);
    }
}

void std_rows_avx2(const double* const* rows, std::size_t nrows, double* out, std::size_t n) {
    const __m256d count = _mm256_set1_pd(static_cast<double>(nrows));
    const __m256d dof = _mm256_set1_pd(static_cast<double>(nrows - 1));
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d anchor = _mm256_loadu_pd(rows[0] + i);
        __m256d dsum = _mm256_setzero_pd();
        for (std::size_t r = 1; r < nrows; ++r) {
            dsum = _mm256_add_pd(dsum, _mm256_sub_pd(_mm256_loadu_pd(rows[r] + i), anchor));
        }
        const __m256d dmean = _mm256_div_pd(dsum, count);
        __m256d ss = _mm256_setzero_pd();
        for (std::size_t r = 0; r < nrows; ++r) {
            const __m256d dev =
                _mm256_sub_pd(_mm256_sub_pd(_mm256_loadu_pd(rows[r] + i), anchor), dmean);
            ss = _mm256_add_pd(ss, _mm256_mul_pd(dev, dev));
        }
        _mm256_storeu_pd(out + i, _mm256_sqrt_pd(_mm256_div_pd(ss, dof)));
    }
    for (; i < n; ++i) {
        out[i] = std_rows_at(rows, nrows, i);
    }
}

void poly_eval_avx2(const double* coeffs, std::size_t ncoeffs, const double* f, double* out,
                    std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d fv = _mm256_loadu_pd(f + i);
        __m256d acc = _mm256_set1_pd(coeffs[ncoeffs - 1]);
        for (std::size_t k = ncoeffs - 1; k-- > 0;) {
            acc = _mm256_add_pd(_mm256_mul_pd(acc, fv), _mm256_set1_pd(coeffs[k]));
        }
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < n; ++i) {
        out[i] = horner_at(coeffs, ncoeffs, f[i]);
    }
}

void mul_add_avx2(const double* a, const double* x, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(out + i, _mm256_add_pd(prod, _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) {
        out[i] = a[i] * x[i] + b[i];
    }
}

void kahan_add_avx2(double* sum, double* comp, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d s = _mm256_loadu_pd(sum + i);
        __m256d c = _mm256_loadu_pd(comp + i);
        neumaier_step_pd(s, c, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(sum + i, s);
        _mm256_storeu_pd(comp + i, c);
    }
    for (; i < n; ++i) {
        neumaier_step(sum[i], comp[i], x[i]);
    }
}

void kahan_add_delta_avx2(double* sum, double* comp, const double* x, const double* anchor,
                          std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d s = _mm256_loadu_pd(sum + i);
        __m256d c = _mm256_loadu_pd(comp + i);
        neumaier_step_pd(s, c, _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(anchor + i)));
        _mm256_storeu_pd(sum + i, s);
        _mm256_storeu_pd(comp + i, c);
    }
    for (; i < n; ++i) {
        neumaier_step(sum[i], comp[i], x[i] - anchor[i]);
    }
}

void centered_moments_avx2(double* sxx, double* sxx_comp, double* sxy, double* sxy_comp,
                           const double* x, const double* xbar, double dy, std::size_t n) {
    const __m256d dyv = _mm256_set1_pd(dy);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(xbar + i));
        __m256d s0 = _mm256_loadu_pd(sxx + i);
        __m256d c0 = _mm256_loadu_pd(sxx_comp + i);
        neumaier_step_pd(s0, c0, _mm256_mul_pd(dx, dx));
        _mm256_storeu_pd(sxx + i, s0);
        _mm256_storeu_pd(sxx_comp + i, c0);

        __m256d s1 = _mm256_loadu_pd(sxy + i);
        __m256d c1 = _mm256_loadu_pd(sxy_comp + i);
        neumaier_step_pd(s1, c1, _mm256_mul_pd(dx, dyv));
        _mm256_storeu_pd(sxy + i, s1);
        _mm256_storeu_pd(sxy_comp + i, c1);
    }
    for (; i < n; ++i) {
        centered_moments_at(sxx[i], sxx_comp[i], sxy[i], sxy_comp[i], x[i], xbar[i], dy);
    }
}

void abs_err_acc_avx2(double* sum_abs, double* abs_comp, double* sum_ape, double* ape_comp,
                      const double* est, double truth, std::size_t n) {
    const double abs_truth = std::fabs(truth);
    const __m256d truth_v = _mm256_set1_pd(truth);
    const __m256d abs_truth_v = _mm256_set1_pd(abs_truth);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d ae = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(est + i), truth_v));
        __m256d s0 = _mm256_loadu_pd(sum_abs + i);
        __m256d c0 = _mm256_loadu_pd(abs_comp + i);
        neumaier_step_pd(s0, c0, ae);
        _mm256_storeu_pd(sum_abs + i, s0);
        _mm256_storeu_pd(abs_comp + i, c0);

        __m256d s1 = _mm256_loadu_pd(sum_ape + i);
        __m256d c1 = _mm256_loadu_pd(ape_comp + i);
        neumaier_step_pd(s1, c1, _mm256_div_pd(ae, abs_truth_v));
        _mm256_storeu_pd(sum_ape + i, s1);
        _mm256_storeu_pd(ape_comp + i, c1);
    }
    for (; i < n; ++i) {
        abs_err_acc_at(sum_abs[i], abs_comp[i], sum_ape[i], ape_comp[i], est[i], truth, abs_truth);
    }
}

}  // namespace

const Ops* avx2_ops_table() noexcept {
    static const Ops table = {
        "avx2",
        mean_rows_avx2,
        std_rows_avx2,
        poly_eval_avx2,
        mul_add_avx2,
        kahan_add_avx2,
        kahan_add_delta_avx2,
        centered_moments_avx2,
        abs_err_acc_avx2,
    };
    return &table;
}

}  // namespace tubersg::kernels
