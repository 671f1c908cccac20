#pragma once

#include <cstddef>

namespace tubersg::kernels {

// Data-parallel inner loops used by the pipeline: replicate averaging,
// per-frequency compensated reductions for the regressions, polynomial grid
// scans, and per-frequency error sweeps.
//
// Contract shared by every backend: for each output element the exact same
// IEEE-754 operation sequence is executed; backends only change how many
// elements one instruction covers. The project builds with
// -ffp-contract=off, so scalar and vector results are bitwise identical and
// the equivalence tests assert exactly that.
//
// Per-frequency accumulators (kahan_add, centered_moments, abs_err_acc) use
// Neumaier-compensated summation per element; callers finish a reduction
// with sum[i] + comp[i].
struct Ops {
    const char* name;

    // out[i] = rows[0][i] + (sum_{r>=1} (rows[r][i] - rows[0][i])) / nrows.
    // Anchoring at the first row keeps the mean of identical rows exact.
    void (*mean_rows)(const double* const* rows, std::size_t nrows,
                      double* out, std::size_t n);

    // Sample standard deviation (divisor nrows-1) around the per-element
    // mean, computed on first-row-shifted data so identical rows give 0.
    void (*std_rows)(const double* const* rows, std::size_t nrows,
                     double* out, std::size_t n);

    // Horner evaluation of sum_k coeffs[k] * f^k at each f[i].
    void (*poly_eval)(const double* coeffs, std::size_t ncoeffs,
                      const double* f, double* out, std::size_t n);

    // out[i] = a[i] * x[i] + b[i]
    void (*mul_add)(const double* a, const double* x, const double* b,
                    double* out, std::size_t n);

    // sum[i] += x[i]  (Neumaier-compensated, compensation in comp[i])
    void (*kahan_add)(double* sum, double* comp, const double* x, std::size_t n);

    // sum[i] += x[i] - anchor[i]  (compensated). Anchored accumulation keeps
    // means of identical rows exact, so zero-variance detection is exact.
    void (*kahan_add_delta)(double* sum, double* comp, const double* x, const double* anchor,
                            std::size_t n);

    // dx = x[i] - xbar[i]; sxx[i] += dx*dx; sxy[i] += dx*dy  (both compensated)
    void (*centered_moments)(double* sxx, double* sxx_comp,
                             double* sxy, double* sxy_comp,
                             const double* x, const double* xbar, double dy,
                             std::size_t n);

    // ae = |est[i] - truth|; sum_abs[i] += ae; sum_ape[i] += ae / |truth|
    // (both compensated). Caller guarantees truth != 0.
    void (*abs_err_acc)(double* sum_abs, double* abs_comp,
                        double* sum_ape, double* ape_comp,
                        const double* est, double truth, std::size_t n);
};

enum class Backend { Auto, Scalar, Avx2 };

// Table currently in use. Defaults to the best backend the CPU supports.
const Ops& active() noexcept;
Backend active_backend() noexcept;

// Force a backend (tests use this to compare implementations). Returns
// false and leaves the selection unchanged if the backend is unavailable.
bool set_backend(Backend backend) noexcept;

bool avx2_available() noexcept;

const Ops& scalar_ops() noexcept;
const Ops* avx2_ops_or_null() noexcept;  // nullptr when not compiled in or unsupported

}  // namespace tubersg::kernels
