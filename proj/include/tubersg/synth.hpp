#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tubersg/core.hpp"
#include "tubersg/poly.hpp"

namespace tubersg {

struct SgRange {
    double lo = 0.0;
    double hi = 0.0;
};

// Per-type SG ranges observed across the five market types.
std::vector<std::pair<PotatoType, SgRange>> default_sg_ranges();

struct SynthConfig {
    std::size_t n_per_type = 50;
    std::vector<std::pair<PotatoType, SgRange>> sg_ranges = default_sg_ranges();
    // Additive Gaussian noise per replicate eps' point.
    double noise_eps_std = 0.35;
    // One per-sample SG-equivalent offset modelling biological heterogeneity.
    double bio_resid_std = 4.5e-3;
    std::size_t replicates = 3;
    std::uint64_t seed = 0;
};

// Solid-water mixture defaults: room-temperature single-Debye water with an
// ionic conduction term, dry matter as constant-plus-slope, and an affine
// SG -> water-volume-fraction map. Declared defaults, tunable.
struct MixtureParams {
    double water_eps_static = 78.4;
    double water_eps_inf = 5.2;
    double water_tau_ps = 8.27;
    double sigma_ion_s_per_m = 0.05;
    double starch_eps_at_band_lo = 6.5;      // at 0.3 GHz
    double starch_eps_slope_per_ghz = -0.3;
    double water_fraction_slope = 4.0;       // v_w = 1 - slope * (SG - 1)
};

// Invert the model: draw SG per type, set eps'(f) = (SG + b - C2(f)) / C1(f)
// with one per-sample offset b ~ N(0, bio_resid_std), then add per-replicate
// per-point noise. Gravimetric fields are synthesized consistently.
Dataset gen_inverse_model(const SynthConfig& cfg, const SgModel& m, const FrequencyGrid& grid);

// Physics-flavoured generator: complex-refractive-index mixing of Debye
// water (with conduction) and dry matter; emits both eps' and eps''.
Dataset gen_mixture(const SynthConfig& cfg, const MixtureParams& p, const FrequencyGrid& grid);

// Complex permittivity of the mixture at one frequency for a given SG
// (exposed for tests/diagnostics). Returns {eps_real, eps_imag}.
std::pair<double, double> mixture_permittivity(const MixtureParams& p, double sg, double f_ghz);

// Seeded per-type split with exact counts; train and test are disjoint.
std::pair<Dataset, Dataset> stratified_split(const Dataset& ds, std::size_t train_per_type,
                                             std::size_t test_per_type, std::uint64_t seed);

}  // namespace tubersg
