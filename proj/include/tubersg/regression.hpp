#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tubersg/core.hpp"

namespace tubersg {

// Result of one simple linear fit SG = c1 * eps' + c2.
struct LinearFit {
    double c1 = 0.0;
    double c2 = 0.0;
    double r2 = 0.0;
    // All targets identical (SST = 0): the fit degrades to the horizontal
    // line c1 = 0, c2 = mean(SG) with r2 = 0.
    bool degenerate_target = false;
};

// The (C1, C2) pair fitted independently at each grid frequency.
struct PerFrequencyCoefficients {
    FrequencyGrid grid;
    std::vector<double> c1;
    std::vector<double> c2;
    std::vector<double> r2;
    std::vector<std::uint8_t> degenerate_target;
    std::size_t n_samples = 0;
};

// Least-squares line through (eps', SG) pairs via centered compensated sums.
// Throws InsufficientData (n < 2) or DegenerateDesign (zero eps' variance).
LinearFit fit_linear_at_frequency(std::span<const std::pair<double, double>> pairs);

// Independent per-frequency fits over the replicate-averaged spectra.
// Bit-for-bit identical to running fit_linear_at_frequency per frequency.
PerFrequencyCoefficients fit_all_frequencies(const Dataset& ds);

enum class Channel { Real, Imag };

// r2 of the per-frequency linear fit of SG on the chosen permittivity
// channel; demonstrates eps' suitability vs eps'' unsuitability.
std::vector<double> correlation_sweep(const Dataset& ds, Channel channel);

}  // namespace tubersg
