#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tubersg/core.hpp"
#include "tubersg/gravimetry.hpp"
#include "tubersg/poly.hpp"

namespace tubersg {

// One SG estimate together with the coefficients that produced it, so the
// arithmetic is reproducible from the stored fields.
struct Estimate {
    double sg = 0.0;
    double frequency_ghz = 0.0;
    double c1_used = 0.0;
    double c2_used = 0.0;
    SgVerdict flags;
    std::string sample_id;  // set by batch estimation
};

// SG = C1(f) * eps' + C2(f). Throws FrequencyOutOfRange or
// InvalidPermittivity (eps' <= 1 or non-finite).
Estimate estimate_sg(const SgModel& m, double eps_real, double f_ghz);

// Per-sample estimates at f. Replicates are averaged first; when f falls
// between grid points, eps'(f) is linearly interpolated between the two
// bracketing points. Errors carry the offending sample id.
std::vector<Estimate> estimate_batch(const SgModel& m, const Dataset& ds, double f_ghz);

// |C1(f)| * delta_eps: the SG shift bound for a permittivity change of
// delta_eps at one frequency.
double sensitivity_at(const SgModel& m, double delta_eps, double f_ghz);

struct SensitivityScan {
    std::vector<double> f_ghz;
    std::vector<double> abs_c1;
    std::vector<double> delta_sg;
    double max_delta_sg = 0.0;
    double argmax_f_ghz = 0.0;
};

// Band maximum of |C1(f)| * delta_eps over an npoints uniform scan.
SensitivityScan sensitivity_band(const SgModel& m, double delta_eps, double f_lo_ghz,
                                 double f_hi_ghz, std::size_t npoints = kDefaultGridPoints);

// Model file: line-oriented `key = value` text, format_version 1, with
// coefficients in round-trip-exact scientific notation (17 significant
// digits). Unknown keys are rejected. See README for the full grammar.
void save_model(const SgModel& m, const std::filesystem::path& path);
SgModel load_model(const std::filesystem::path& path,
                   std::vector<std::string>* warnings = nullptr);

}  // namespace tubersg
