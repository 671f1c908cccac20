#pragma once

#include <span>
#include <string>
#include <vector>

#include "tubersg/core.hpp"
#include "tubersg/poly.hpp"

namespace tubersg {

// Mean absolute error (1/n) * sum |truth - est|.
double mae(std::span<const double> truth, std::span<const double> est);

// Mean absolute percentage error, percent of the true value.
double mape_pct(std::span<const double> truth, std::span<const double> est);

struct FrequencyErrors {
    std::vector<double> f_ghz;
    std::vector<double> mae;
    std::vector<double> mape_pct;
};

// Estimate every sample at each grid frequency and compare against the
// gravimetric SG.
FrequencyErrors frequency_sweep_errors(const SgModel& m, const Dataset& ds);

struct TypeErrors {
    PotatoType type;
    double mae = 0.0;
    double mape_pct = 0.0;
    std::size_t n = 0;  // samples of this type
};

struct EvaluationReport {
    struct Overall {
        double mae = 0.0;
        double mape_pct = 0.0;
        // R^2 between truth and estimate pooled over all (sample, frequency)
        // pairs of the sweep.
        double r2 = 0.0;
        std::size_t n = 0;  // samples
    };
    Overall overall;
    std::vector<TypeErrors> per_type;   // canonical order first, then others
    FrequencyErrors per_frequency;
    std::string model_id;
    std::string dataset_id;
};

// Frequency-averaged MAE/MAPE per potato type plus overall; per-type values
// average each type's samples across every grid frequency with equal
// weights.
EvaluationReport per_type_report(const SgModel& m, const Dataset& ds,
                                 std::string model_id = {}, std::string dataset_id = {});

}  // namespace tubersg
