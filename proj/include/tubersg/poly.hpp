#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tubersg/core.hpp"

namespace tubersg {

// Degree-4 polynomial in frequency (GHz). Coefficients are stored in
// ascending degree a0..a4 and evaluated by Horner's scheme; the validity
// range is inclusive at both ends.
class Poly4 {
public:
    static constexpr std::size_t kNumCoeffs = 5;

    Poly4(std::array<double, kNumCoeffs> coeffs, double f_lo_ghz, double f_hi_ghz);

    const std::array<double, kNumCoeffs>& coeffs() const noexcept { return coeffs_; }
    double f_lo() const noexcept { return f_lo_; }
    double f_hi() const noexcept { return f_hi_; }
    bool in_range(double f_ghz) const noexcept { return f_ghz >= f_lo_ && f_ghz <= f_hi_; }

private:
    std::array<double, kNumCoeffs> coeffs_;
    double f_lo_;
    double f_hi_;
};

// Horner evaluation; throws FrequencyOutOfRange outside the validity range.
double eval_poly(const Poly4& p, double f_ghz);

// Evaluate at every point of a grid (all points must be in range).
std::vector<double> eval_poly_grid(const Poly4& p, const FrequencyGrid& grid);

// Degree-4 least-squares fit in the raw monomial basis, solved by
// Householder QR of the Vandermonde matrix. Validity range becomes
// [grid.lo, grid.hi]. Throws RankDeficient with fewer than 5 points.
Poly4 fit_poly4(const FrequencyGrid& grid, std::span<const double> values);

// The combined estimation model: SG = C1(f) * eps' + C2(f) with both
// coefficient polynomials sharing one validity range.
class SgModel {
public:
    static constexpr int kFormatVersion = 1;

    SgModel(Poly4 c1_poly, Poly4 c2_poly, std::string source = {},
            std::optional<std::int64_t> n_train = std::nullopt,
            std::optional<std::string> created_utc = std::nullopt);

    const Poly4& c1_poly() const noexcept { return c1_poly_; }
    const Poly4& c2_poly() const noexcept { return c2_poly_; }
    double f_lo() const noexcept { return c1_poly_.f_lo(); }
    double f_hi() const noexcept { return c1_poly_.f_hi(); }
    bool in_range(double f_ghz) const noexcept { return c1_poly_.in_range(f_ghz); }

    const std::string& source() const noexcept { return source_; }
    std::optional<std::int64_t> n_train() const noexcept { return n_train_; }
    const std::optional<std::string>& created_utc() const noexcept { return created_utc_; }

    // A physically sensible model has C1 < 0 everywhere (eps' falls as SG
    // rises). Returns a message when that fails; advisory, never an error.
    std::optional<std::string> c1_sign_warning() const;

private:
    Poly4 c1_poly_;
    Poly4 c2_poly_;
    std::string source_;
    std::optional<std::int64_t> n_train_;
    std::optional<std::string> created_utc_;
};

// The published reference model over [0.3, 3.0] GHz.
SgModel reference_model();

}  // namespace tubersg
