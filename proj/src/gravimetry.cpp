#include "tubersg/gravimetry.hpp"

#include <cmath>
#include <sstream>

namespace tubersg {

double sg_traditional(double w_air_g, double w_uww_g) {
    if (!std::isfinite(w_air_g) || !std::isfinite(w_uww_g)) {
        raise(Errc::InvalidValue, "non-finite weight");
    }
    if (w_air_g <= 0.0) {
        raise(Errc::InvalidWeight, "w_air must be > 0 g");
    }
    const double buoyancy = w_air_g - w_uww_g;
    if (buoyancy <= 0.0) {
        raise(Errc::NonPositiveBuoyancy, "w_air - w_uww must be > 0 g (sample must displace water)");
    }
    return w_air_g / buoyancy;
}

double sg_buoyancy(double w_air_g, double f_float_reading_g) {
    if (!std::isfinite(w_air_g) || !std::isfinite(f_float_reading_g)) {
        raise(Errc::InvalidValue, "non-finite weight");
    }
    if (w_air_g <= 0.0 || f_float_reading_g <= 0.0) {
        raise(Errc::InvalidWeight, "weights must be > 0 g");
    }
    return w_air_g / f_float_reading_g;
}

const char* verdict_level_name(SgVerdictLevel level) noexcept {
    switch (level) {
        case SgVerdictLevel::Ok: return "Ok";
        case SgVerdictLevel::Warning: return "Warning";
        case SgVerdictLevel::Error: return "Error";
    }
    return "Ok";
}

SgVerdict validate_sg(double sg) {
    if (!std::isfinite(sg)) {
        raise(Errc::InvalidValue, "SG is not finite");
    }
    std::ostringstream msg;
    if (sg <= kSgErrorLo || sg >= kSgErrorHi) {
        msg << "SG " << sg << " is outside the physical range (" << kSgErrorLo << ", " << kSgErrorHi
            << ") for a submerged tuber";
        return {SgVerdictLevel::Error, msg.str()};
    }
    if (sg < kSgWarnLo || sg > kSgWarnHi) {
        msg << "SG " << sg << " is outside the expected band [" << kSgWarnLo << ", " << kSgWarnHi << "]";
        return {SgVerdictLevel::Warning, msg.str()};
    }
    return {};
}

}  // namespace tubersg
