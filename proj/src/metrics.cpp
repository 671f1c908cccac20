#include "tubersg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tubersg/kernels.hpp"
#include "kernels/kernels_detail.hpp"

namespace tubersg {

namespace {

using kernels::detail::neumaier_step;

void check_series(std::span<const double> truth, std::span<const double> est) {
    if (truth.size() != est.size()) {
        std::ostringstream msg;
        msg << "series lengths differ (" << truth.size() << " vs " << est.size() << ")";
        raise(Errc::ShapeMismatch, msg.str());
    }
    if (truth.empty()) {
        raise(Errc::EmptyInput, "series must be non-empty");
    }
}

}  // namespace

double mae(std::span<const double> truth, std::span<const double> est) {
    check_series(truth, est);
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        neumaier_step(sum, comp, std::fabs(truth[i] - est[i]));
    }
    return (sum + comp) / static_cast<double>(truth.size());
}

double mape_pct(std::span<const double> truth, std::span<const double> est) {
    check_series(truth, est);
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] == 0.0) {
            std::ostringstream msg;
            msg << "truth[" << i << "] is zero";
            raise(Errc::DivisionByZeroTruth, msg.str());
        }
        neumaier_step(sum, comp, std::fabs(truth[i] - est[i]) / std::fabs(truth[i]));
    }
    return 100.0 * (sum + comp) / static_cast<double>(truth.size());
}

namespace {

// Shared sweep: per-frequency |err| and |err|/|truth| sums over all samples,
// plus per-sample whole-row aggregates for the per-type report.
struct SweepAccumulators {
    std::vector<double> f_ghz;
    std::vector<double> sum_abs, abs_comp;
    std::vector<double> sum_ape, ape_comp;
    // Per sample: compensated row totals of |err| and |err|/|truth|, and the
    // row sum of squared errors for the pooled R^2.
    std::vector<double> sample_abs_total;
    std::vector<double> sample_ape_total;
    std::vector<double> sample_sq_total;
    std::size_t n_samples = 0;
    std::size_t n_freq = 0;
};

SweepAccumulators run_sweep(const SgModel& m, const Dataset& ds) {
    const FrequencyGrid& grid = ds.grid();
    if (!m.in_range(grid.lo()) || !m.in_range(grid.hi())) {
        std::ostringstream msg;
        msg << "dataset grid [" << grid.lo() << ", " << grid.hi() << "] GHz exceeds model range ["
            << m.f_lo() << ", " << m.f_hi() << "]";
        raise(Errc::FrequencyOutOfRange, msg.str());
    }
    if (ds.empty()) {
        raise(Errc::EmptyInput, "dataset has no samples");
    }

    const std::size_t nf = grid.size();
    const auto& ops = kernels::active();
    const std::vector<double> c1 = eval_poly_grid(m.c1_poly(), grid);
    const std::vector<double> c2 = eval_poly_grid(m.c2_poly(), grid);

    SweepAccumulators acc;
    acc.f_ghz = grid.points();
    acc.sum_abs.assign(nf, 0.0);
    acc.abs_comp.assign(nf, 0.0);
    acc.sum_ape.assign(nf, 0.0);
    acc.ape_comp.assign(nf, 0.0);
    acc.n_samples = ds.size();
    acc.n_freq = nf;

    std::vector<double> est_row(nf);
    for (const auto& sample : ds.samples()) {
        const DielectricSpectrum avg = average_replicates(sample.replicates());
        ops.mul_add(c1.data(), avg.eps_real().data(), c2.data(), est_row.data(), nf);
        const double truth = sample.sg();
        ops.abs_err_acc(acc.sum_abs.data(), acc.abs_comp.data(), acc.sum_ape.data(),
                        acc.ape_comp.data(), est_row.data(), truth, nf);

        double row_abs = 0.0, row_abs_c = 0.0;
        double row_ape = 0.0, row_ape_c = 0.0;
        double row_sq = 0.0, row_sq_c = 0.0;
        const double abs_truth = std::fabs(truth);
        for (std::size_t i = 0; i < nf; ++i) {
            const double err = std::fabs(est_row[i] - truth);
            neumaier_step(row_abs, row_abs_c, err);
            neumaier_step(row_ape, row_ape_c, err / abs_truth);
            neumaier_step(row_sq, row_sq_c, err * err);
        }
        acc.sample_abs_total.push_back(row_abs + row_abs_c);
        acc.sample_ape_total.push_back(row_ape + row_ape_c);
        acc.sample_sq_total.push_back(row_sq + row_sq_c);
    }
    return acc;
}

FrequencyErrors to_frequency_errors(const SweepAccumulators& acc) {
    FrequencyErrors out;
    out.f_ghz = acc.f_ghz;
    out.mae.resize(acc.n_freq);
    out.mape_pct.resize(acc.n_freq);
    const double n = static_cast<double>(acc.n_samples);
    for (std::size_t i = 0; i < acc.n_freq; ++i) {
        out.mae[i] = (acc.sum_abs[i] + acc.abs_comp[i]) / n;
        out.mape_pct[i] = 100.0 * (acc.sum_ape[i] + acc.ape_comp[i]) / n;
    }
    return out;
}

}  // namespace

FrequencyErrors frequency_sweep_errors(const SgModel& m, const Dataset& ds) {
    return to_frequency_errors(run_sweep(m, ds));
}

EvaluationReport per_type_report(const SgModel& m, const Dataset& ds, std::string model_id,
                                 std::string dataset_id) {
    const SweepAccumulators acc = run_sweep(m, ds);

    EvaluationReport report;
    report.model_id = std::move(model_id);
    report.dataset_id = std::move(dataset_id);
    report.per_frequency = to_frequency_errors(acc);

    // Type list: canonical order first, then custom types by appearance.
    std::vector<PotatoType> types;
    for (const auto& t : canonical_types()) {
        if (std::any_of(ds.samples().begin(), ds.samples().end(),
                        [&](const TuberSample& s) { return s.type() == t; })) {
            types.push_back(t);
        }
    }
    for (const auto& s : ds.samples()) {
        if (std::find(types.begin(), types.end(), s.type()) == types.end()) {
            types.push_back(s.type());
        }
    }

    const double denom_per_sample = static_cast<double>(acc.n_freq);
    for (const auto& type : types) {
        double abs_sum = 0.0, abs_comp = 0.0;
        double ape_sum = 0.0, ape_comp = 0.0;
        std::size_t n = 0;
        for (std::size_t s = 0; s < ds.size(); ++s) {
            if (ds.samples()[s].type() != type) continue;
            neumaier_step(abs_sum, abs_comp, acc.sample_abs_total[s]);
            neumaier_step(ape_sum, ape_comp, acc.sample_ape_total[s]);
            ++n;
        }
        TypeErrors te;
        te.type = type;
        te.n = n;
        te.mae = (abs_sum + abs_comp) / (static_cast<double>(n) * denom_per_sample);
        te.mape_pct = 100.0 * (ape_sum + ape_comp) / (static_cast<double>(n) * denom_per_sample);
        report.per_type.push_back(std::move(te));
    }

    double abs_sum = 0.0, abs_comp = 0.0;
    double ape_sum = 0.0, ape_comp = 0.0;
    double sse = 0.0, sse_comp = 0.0;
    for (std::size_t s = 0; s < ds.size(); ++s) {
        neumaier_step(abs_sum, abs_comp, acc.sample_abs_total[s]);
        neumaier_step(ape_sum, ape_comp, acc.sample_ape_total[s]);
        neumaier_step(sse, sse_comp, acc.sample_sq_total[s]);
    }
    const double total = static_cast<double>(acc.n_samples) * denom_per_sample;
    report.overall.n = acc.n_samples;
    report.overall.mae = (abs_sum + abs_comp) / total;
    report.overall.mape_pct = 100.0 * (ape_sum + ape_comp) / total;

    // Pooled R^2: truth values repeat across the frequency axis, so the
    // pooled SST is n_freq times the SST over samples.
    const double anchor = ds.samples()[0].sg();
    double ysum = 0.0, ycomp = 0.0;
    for (const auto& s : ds.samples()) neumaier_step(ysum, ycomp, s.sg() - anchor);
    const double ybar = anchor + (ysum + ycomp) / static_cast<double>(acc.n_samples);
    double syy = 0.0, syy_comp = 0.0;
    for (const auto& s : ds.samples()) {
        const double dy = s.sg() - ybar;
        neumaier_step(syy, syy_comp, dy * dy);
    }
    const double sst = (syy + syy_comp) * denom_per_sample;
    const double sse_total = sse + sse_comp;
    report.overall.r2 = (sst > 0.0) ? 1.0 - sse_total / sst : 0.0;
    return report;
}

}  // namespace tubersg
