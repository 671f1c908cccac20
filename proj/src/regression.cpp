#include "tubersg/regression.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tubersg/kernels.hpp"
#include "kernels/kernels_detail.hpp"

namespace tubersg {

namespace {

struct SeriesFit {
    std::vector<double> c1, c2, r2;
    std::vector<std::uint8_t> degenerate_target;
};

// Shared engine: rows[s] points at sample s's regressor values (width per
// sample), y[s] is the target. Both fit_all_frequencies and the single-
// frequency fit run through here, so their results match bit for bit.
SeriesFit fit_series(const std::vector<const double*>& rows, std::size_t width,
                     std::span<const double> y, const FrequencyGrid* grid_for_messages) {
    const std::size_t n = rows.size();
    if (n < 2) {
        raise(Errc::InsufficientData, "linear fit needs at least 2 samples");
    }
    const auto& ops = kernels::active();

    // Anchored compensated mean of y; identical targets give dy == 0 exactly.
    const double y_anchor = y[0];
    double ysum = 0.0, ycomp = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        kernels::detail::neumaier_step(ysum, ycomp, y[s] - y_anchor);
    }
    const double ybar = y_anchor + (ysum + ycomp) / static_cast<double>(n);
    double syy = 0.0, syy_comp = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        const double dy = y[s] - ybar;
        kernels::detail::neumaier_step(syy, syy_comp, dy * dy);
    }
    const double sst = syy + syy_comp;

    std::vector<double> xsum(width, 0.0), xcomp(width, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        ops.kahan_add_delta(xsum.data(), xcomp.data(), rows[s], rows[0], width);
    }
    std::vector<double> xbar(width);
    for (std::size_t i = 0; i < width; ++i) {
        xbar[i] = rows[0][i] + (xsum[i] + xcomp[i]) / static_cast<double>(n);
    }

    std::vector<double> sxx(width, 0.0), sxx_comp(width, 0.0);
    std::vector<double> sxy(width, 0.0), sxy_comp(width, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        ops.centered_moments(sxx.data(), sxx_comp.data(), sxy.data(), sxy_comp.data(), rows[s],
                             xbar.data(), y[s] - ybar, width);
    }

    SeriesFit out;
    out.c1.resize(width);
    out.c2.resize(width);
    out.r2.resize(width);
    out.degenerate_target.assign(width, 0);
    for (std::size_t i = 0; i < width; ++i) {
        const double sxx_i = sxx[i] + sxx_comp[i];
        const double sxy_i = sxy[i] + sxy_comp[i];
        if (sxx_i <= 0.0) {
            std::ostringstream msg;
            msg << "zero variance in regressor";
            if (grid_for_messages != nullptr) {
                msg << " at frequency index " << i << " (" << (*grid_for_messages)[i] << " GHz)";
            }
            raise(Errc::DegenerateDesign, msg.str());
        }
        out.c1[i] = sxy_i / sxx_i;
        out.c2[i] = ybar - out.c1[i] * xbar[i];
        if (sst <= 0.0) {
            out.r2[i] = 0.0;
            out.degenerate_target[i] = 1;
        } else {
            out.r2[i] = std::clamp((sxy_i * sxy_i) / (sxx_i * sst), 0.0, 1.0);
        }
    }
    return out;
}

std::vector<DielectricSpectrum> averaged_spectra(const Dataset& ds) {
    std::vector<DielectricSpectrum> avg;
    avg.reserve(ds.size());
    for (const auto& s : ds.samples()) {
        avg.push_back(average_replicates(s.replicates()));
    }
    return avg;
}

}  // namespace

LinearFit fit_linear_at_frequency(std::span<const std::pair<double, double>> pairs) {
    const std::size_t n = pairs.size();
    if (n < 2) {
        raise(Errc::InsufficientData, "linear fit needs at least 2 (eps', SG) pairs");
    }
    std::vector<double> x(n), y(n);
    for (std::size_t s = 0; s < n; ++s) {
        x[s] = pairs[s].first;
        y[s] = pairs[s].second;
    }
    std::vector<const double*> rows(n);
    for (std::size_t s = 0; s < n; ++s) rows[s] = &x[s];

    const SeriesFit fit = fit_series(rows, 1, y, nullptr);
    return {fit.c1[0], fit.c2[0], fit.r2[0], fit.degenerate_target[0] != 0};
}

PerFrequencyCoefficients fit_all_frequencies(const Dataset& ds) {
    if (ds.size() < 2) {
        raise(Errc::InsufficientData, "per-frequency fit needs at least 2 samples");
    }
    const std::vector<DielectricSpectrum> avg = averaged_spectra(ds);
    std::vector<const double*> rows(avg.size());
    std::vector<double> y(avg.size());
    for (std::size_t s = 0; s < avg.size(); ++s) {
        rows[s] = avg[s].eps_real().data();
        y[s] = ds.samples()[s].sg();
    }
    SeriesFit fit = fit_series(rows, ds.grid().size(), y, &ds.grid());
    return {ds.grid(),         std::move(fit.c1),
            std::move(fit.c2), std::move(fit.r2),
            std::move(fit.degenerate_target), avg.size()};
}

std::vector<double> correlation_sweep(const Dataset& ds, Channel channel) {
    if (ds.size() < 2) {
        raise(Errc::InsufficientData, "correlation sweep needs at least 2 samples");
    }
    const std::vector<DielectricSpectrum> avg = averaged_spectra(ds);
    std::vector<const double*> rows(avg.size());
    std::vector<double> y(avg.size());
    for (std::size_t s = 0; s < avg.size(); ++s) {
        if (channel == Channel::Imag) {
            if (!avg[s].has_imag()) {
                raise(Errc::MissingChannel,
                      "sample '" + ds.samples()[s].id() + "' has no eps_imag channel");
            }
            rows[s] = avg[s].eps_imag()->data();
        } else {
            rows[s] = avg[s].eps_real().data();
        }
        y[s] = ds.samples()[s].sg();
    }
    return fit_series(rows, ds.grid().size(), y, &ds.grid()).r2;
}

}  // namespace tubersg
