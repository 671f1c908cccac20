#include "tubersg/poly.hpp"

#include <cmath>
#include <sstream>

#include "tubersg/kernels.hpp"

namespace tubersg {

Poly4::Poly4(std::array<double, kNumCoeffs> coeffs, double f_lo_ghz, double f_hi_ghz)
    : coeffs_(coeffs), f_lo_(f_lo_ghz), f_hi_(f_hi_ghz) {
    for (std::size_t k = 0; k < kNumCoeffs; ++k) {
        if (!std::isfinite(coeffs_[k])) {
            std::ostringstream msg;
            msg << "polynomial coefficient a" << k << " is not finite";
            raise(Errc::InvalidValue, msg.str());
        }
    }
    if (!std::isfinite(f_lo_) || !std::isfinite(f_hi_) || !(f_lo_ < f_hi_)) {
        raise(Errc::InvalidValue, "polynomial validity range needs f_lo < f_hi");
    }
    if (f_lo_ < kBandLoGhz || f_hi_ > kBandHiGhz) {
        std::ostringstream msg;
        msg << "validity range [" << f_lo_ << ", " << f_hi_ << "] GHz outside the instrument band ["
            << kBandLoGhz << ", " << kBandHiGhz << "]";
        raise(Errc::InvalidValue, msg.str());
    }
}

double eval_poly(const Poly4& p, double f_ghz) {
    if (!std::isfinite(f_ghz) || !p.in_range(f_ghz)) {
        std::ostringstream msg;
        msg << f_ghz << " GHz outside validity range [" << p.f_lo() << ", " << p.f_hi() << "]";
        raise(Errc::FrequencyOutOfRange, msg.str());
    }
    double out;
    kernels::active().poly_eval(p.coeffs().data(), Poly4::kNumCoeffs, &f_ghz, &out, 1);
    return out;
}

std::vector<double> eval_poly_grid(const Poly4& p, const FrequencyGrid& grid) {
    if (!p.in_range(grid.lo()) || !p.in_range(grid.hi())) {
        std::ostringstream msg;
        msg << "grid range [" << grid.lo() << ", " << grid.hi() << "] exceeds validity range ["
            << p.f_lo() << ", " << p.f_hi() << "]";
        raise(Errc::FrequencyOutOfRange, msg.str());
    }
    std::vector<double> out(grid.size());
    kernels::active().poly_eval(p.coeffs().data(), Poly4::kNumCoeffs, grid.points().data(),
                                out.data(), out.size());
    return out;
}

Poly4 fit_poly4(const FrequencyGrid& grid, std::span<const double> values) {
    constexpr std::size_t kCols = Poly4::kNumCoeffs;
    const std::size_t n = grid.size();
    if (values.size() != n) {
        raise(Errc::ShapeMismatch, "values length differs from grid length");
    }
    // The grid type guarantees distinct abscissae, so point count is the
    // only rank condition left to check up front.
    if (n < kCols) {
        std::ostringstream msg;
        msg << "degree-4 fit needs at least 5 distinct frequencies, got " << n;
        raise(Errc::RankDeficient, msg.str());
    }

    // Column-major Vandermonde: A[c][r] = f_r^c.
    std::vector<std::array<double, kCols>> a(n);
    std::vector<double> rhs(values.begin(), values.end());
    for (std::size_t r = 0; r < n; ++r) {
        double power = 1.0;
        for (std::size_t c = 0; c < kCols; ++c) {
            a[r][c] = power;
            power *= grid[r];
        }
    }

    // Householder QR, applied column by column.
    std::array<std::array<double, kCols>, kCols> r_mat{};
    for (std::size_t c = 0; c < kCols; ++c) {
        double norm2 = 0.0;
        for (std::size_t r = c; r < n; ++r) norm2 += a[r][c] * a[r][c];
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) {
            raise(Errc::RankDeficient, "Vandermonde column is numerically rank deficient");
        }
        const double alpha = (a[c][c] >= 0.0) ? -norm : norm;
        std::vector<double> v(n - c);
        v[0] = a[c][c] - alpha;
        for (std::size_t r = c + 1; r < n; ++r) v[r - c] = a[r][c];
        double vnorm2 = 0.0;
        for (double x : v) vnorm2 += x * x;

        a[c][c] = alpha;
        for (std::size_t r = c + 1; r < n; ++r) a[r][c] = 0.0;

        if (vnorm2 > 0.0) {
            for (std::size_t c2 = c + 1; c2 < kCols; ++c2) {
                double dot = 0.0;
                for (std::size_t r = c; r < n; ++r) dot += v[r - c] * a[r][c2];
                const double scale = 2.0 * dot / vnorm2;
                for (std::size_t r = c; r < n; ++r) a[r][c2] -= scale * v[r - c];
            }
            double dot = 0.0;
            for (std::size_t r = c; r < n; ++r) dot += v[r - c] * rhs[r];
            const double scale = 2.0 * dot / vnorm2;
            for (std::size_t r = c; r < n; ++r) rhs[r] -= scale * v[r - c];
        }
        for (std::size_t c2 = 0; c2 < kCols; ++c2) r_mat[c][c2] = a[c][c2];
    }

    // Relative rank test on the R diagonal.
    double diag_max = 0.0;
    for (std::size_t c = 0; c < kCols; ++c) diag_max = std::max(diag_max, std::fabs(r_mat[c][c]));
    for (std::size_t c = 0; c < kCols; ++c) {
        if (std::fabs(r_mat[c][c]) <= diag_max * 1e-13) {
            raise(Errc::RankDeficient, "Vandermonde system is numerically rank deficient");
        }
    }

    std::array<double, kCols> coeffs{};
    for (std::size_t c = kCols; c-- > 0;) {
        double acc = rhs[c];
        for (std::size_t c2 = c + 1; c2 < kCols; ++c2) acc -= r_mat[c][c2] * coeffs[c2];
        coeffs[c] = acc / r_mat[c][c];
    }
    return Poly4(coeffs, grid.lo(), grid.hi());
}

SgModel::SgModel(Poly4 c1_poly, Poly4 c2_poly, std::string source,
                 std::optional<std::int64_t> n_train, std::optional<std::string> created_utc)
    : c1_poly_(std::move(c1_poly)),
      c2_poly_(std::move(c2_poly)),
      source_(std::move(source)),
      n_train_(n_train),
      created_utc_(std::move(created_utc)) {
    if (c1_poly_.f_lo() != c2_poly_.f_lo() || c1_poly_.f_hi() != c2_poly_.f_hi()) {
        raise(Errc::InvalidValue, "C1 and C2 polynomials must share one validity range");
    }
}

std::optional<std::string> SgModel::c1_sign_warning() const {
    const FrequencyGrid scan = FrequencyGrid::uniform(f_lo(), f_hi(), kDefaultGridPoints);
    const std::vector<double> c1 = eval_poly_grid(c1_poly_, scan);
    for (std::size_t i = 0; i < c1.size(); ++i) {
        if (c1[i] >= 0.0) {
            std::ostringstream msg;
            msg << "C1(" << scan[i] << " GHz) = " << c1[i]
                << " is non-negative; a physically sensible model has C1 < 0 over its range";
            return msg.str();
        }
    }
    return std::nullopt;
}

SgModel reference_model() {
    const Poly4 c1({-5.222e-3, 2.320e-3, -1.707e-3, 0.564e-3, -0.068e-3}, kBandLoGhz, kBandHiGhz);
    const Poly4 c2({1.451, -0.215, 0.151, -0.050, 0.006}, kBandLoGhz, kBandHiGhz);
    return SgModel(c1, c2, "reference");
}

}  // namespace tubersg
