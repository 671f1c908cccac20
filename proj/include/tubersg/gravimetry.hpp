#pragma once

#include <string>

#include "tubersg/errors.hpp"

namespace tubersg {

// Flotation-based specific gravity. Water density is taken as exactly
// 1 g/cm^3 with no temperature correction; the tared scale reading in
// buoyancy mode equals the displaced water mass in grams.

// SG = w_air / (w_air - w_uww). Requires w_air > 0 and w_air > w_uww.
double sg_traditional(double w_air_g, double w_uww_g);

// SG = w_air / f_float_reading. Requires both weights > 0.
double sg_buoyancy(double w_air_g, double f_float_reading_g);

enum class SgVerdictLevel { Ok, Warning, Error };

struct SgVerdict {
    SgVerdictLevel level = SgVerdictLevel::Ok;
    std::string message;  // empty for Ok

    bool ok() const noexcept { return level == SgVerdictLevel::Ok; }
};

const char* verdict_level_name(SgVerdictLevel level) noexcept;

// Plausibility screen for a computed SG value.
//   Error   : sg <= 1.0 or sg >= 1.5 (cannot hold for a fully submerged tuber)
//   Warning : outside the [1.02, 1.15] band around the observed cultivar range
//   Ok      : otherwise
// Throws InvalidValue for non-finite input.
SgVerdict validate_sg(double sg);

inline constexpr double kSgWarnLo = 1.02;
inline constexpr double kSgWarnHi = 1.15;
inline constexpr double kSgErrorLo = 1.0;   // exclusive lower bound for Ok/Warning
inline constexpr double kSgErrorHi = 1.5;   // exclusive upper bound

}  // namespace tubersg
