#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "tubersg/estimator.hpp"
#include "tubersg/io.hpp"
#include "tubersg/metrics.hpp"
#include "tubersg/synth.hpp"
#include "oracles.hpp"

using namespace tubersg;

TEST_CASE("mae basics") {
    CHECK(mae(std::vector<double>{1.05, 1.10}, std::vector<double>{1.05, 1.10}) == 0.0);
    CHECK(mae(std::vector<double>{1.05}, std::vector<double>{1.06}) ==
          doctest::Approx(0.01).epsilon(1e-12));
    CHECK(mae(std::vector<double>{1.00, 1.10}, std::vector<double>{1.01, 1.08}) ==
          doctest::Approx(0.015).epsilon(1e-12));
    CHECK_THROWS_WITH_AS(mae(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}),
                         doctest::Contains("ShapeMismatch"), Error);
    CHECK_THROWS_WITH_AS(mae(std::vector<double>{}, std::vector<double>{}),
                         doctest::Contains("EmptyInput"), Error);
}

TEST_CASE("mape basics") {
    CHECK(mape_pct(std::vector<double>{1.05, 1.10}, std::vector<double>{1.05, 1.10}) == 0.0);
    CHECK(mape_pct(std::vector<double>{1.06}, std::vector<double>{1.05}) ==
          doctest::Approx(0.9434).epsilon(1e-4));
    CHECK_THROWS_WITH_AS(mape_pct(std::vector<double>{0.0, 1.0}, std::vector<double>{1.0, 1.0}),
                         doctest::Contains("DivisionByZeroTruth"), Error);
}

TEST_CASE("mae is symmetric and permutation invariant; mape is not symmetric") {
    const std::vector<double> t = {1.05, 1.08, 1.11, 1.04};
    const std::vector<double> e = {1.06, 1.07, 1.12, 1.02};
    CHECK(mae(t, e) == mae(e, t));

    std::vector<double> t2 = t, e2 = e;
    std::reverse(t2.begin(), t2.end());
    std::reverse(e2.begin(), e2.end());
    CHECK(mae(t2, e2) == doctest::Approx(mae(t, e)).epsilon(1e-15));
    CHECK(mape_pct(t2, e2) == doctest::Approx(mape_pct(t, e)).epsilon(1e-15));

    // Counterexample to mape symmetry.
    CHECK(mape_pct(std::vector<double>{1.0}, std::vector<double>{2.0}) !=
          mape_pct(std::vector<double>{2.0}, std::vector<double>{1.0}));
}

TEST_CASE("mae matches the long-double reference and is bounded by the max error") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dist(1.0, 1.2);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> t(64), e(64);
        double max_err = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            t[i] = dist(rng);
            e[i] = dist(rng);
            max_err = std::max(max_err, std::fabs(t[i] - e[i]));
        }
        const double value = mae(t, e);
        CHECK(value == doctest::Approx(oracles::reference_mae(t, e)).epsilon(1e-13));
        CHECK(value >= 0.0);
        CHECK(value <= max_err);
    }
}

namespace {

Dataset calibrated_testing_set(std::uint64_t seed, std::size_t n_per_type) {
    SynthConfig cfg;  // default noise calibration
    cfg.n_per_type = n_per_type;
    cfg.seed = seed;
    return gen_inverse_model(cfg, reference_model(), FrequencyGrid::default_grid());
}

}  // namespace

TEST_CASE("frequency sweep on noise-free data is numerically zero") {
    SynthConfig cfg;
    cfg.n_per_type = 3;
    cfg.noise_eps_std = 0.0;
    cfg.bio_resid_std = 0.0;
    cfg.seed = 5;
    const SgModel m = reference_model();
    const Dataset ds = gen_inverse_model(cfg, m, FrequencyGrid::uniform(0.3, 3.0, 51));
    const FrequencyErrors errs = frequency_sweep_errors(m, ds);
    REQUIRE(errs.mae.size() == 51);
    for (std::size_t i = 0; i < errs.mae.size(); ++i) {
        CHECK(errs.mae[i] <= 1e-12);
        CHECK(errs.mape_pct[i] <= 1e-10);
    }
}

TEST_CASE("frequency sweep with the calibrated noise defaults stays inside the bounds") {
    const SgModel m = reference_model();
    const Dataset ds = calibrated_testing_set(40, 10);  // 50 samples
    const FrequencyErrors errs = frequency_sweep_errors(m, ds);
    REQUIRE(errs.mae.size() == 283);
    for (std::size_t i = 0; i < errs.mae.size(); ++i) {
        CHECK(errs.mae[i] < 4.8e-3);
        CHECK(errs.mape_pct[i] < 0.45);
    }
}

TEST_CASE("single-sample sweep reports that sample's absolute error") {
    const SgModel m = reference_model();
    const FrequencyGrid grid({1.0});
    ReplicateSet reps({DielectricSpectrum(grid, {60.0})});
    std::vector<TuberSample> samples;
    samples.emplace_back("solo", PotatoType::red(), reps, std::nullopt, std::nullopt, 1.09);
    const Dataset ds(grid, std::move(samples));
    const FrequencyErrors errs = frequency_sweep_errors(m, ds);
    const double est = estimate_sg(m, 60.0, 1.0).sg;
    CHECK(errs.mae[0] == doctest::Approx(std::fabs(est - 1.09)).epsilon(1e-15));
}

TEST_CASE("per-type report bookkeeping") {
    const SgModel m = reference_model();
    const Dataset ds = calibrated_testing_set(41, 4);  // 20 samples, 5 types
    const EvaluationReport report = per_type_report(m, ds, "reference", "synthetic");

    CHECK(report.model_id == "reference");
    CHECK(report.dataset_id == "synthetic");
    REQUIRE(report.per_type.size() == 5);
    std::size_t n_total = 0;
    long double weighted = 0.0L;
    for (const auto& te : report.per_type) {
        CHECK(te.n == 4);
        n_total += te.n;
        weighted += static_cast<long double>(te.mae) * te.n;
    }
    CHECK(n_total == report.overall.n);
    // Overall MAE is the sample-count-weighted mean of the per-type MAEs.
    CHECK(report.overall.mae ==
          doctest::Approx(static_cast<double>(weighted / n_total)).epsilon(1e-12));
    CHECK(report.overall.r2 > 0.0);
    CHECK(report.overall.r2 <= 1.0);
    CHECK(report.per_frequency.mae.size() == 283);
}

TEST_CASE("single-type dataset: the one per-type row equals overall") {
    const SgModel m = reference_model();
    SynthConfig cfg;
    cfg.n_per_type = 8;
    cfg.sg_ranges = {{PotatoType::yellow(), {1.05, 1.10}}};
    cfg.seed = 9;
    const Dataset ds = gen_inverse_model(cfg, m, FrequencyGrid::uniform(0.3, 3.0, 37));
    const EvaluationReport report = per_type_report(m, ds);
    REQUIRE(report.per_type.size() == 1);
    CHECK(report.per_type[0].type == PotatoType::yellow());
    CHECK(report.per_type[0].n == report.overall.n);
    CHECK(report.per_type[0].mae == doctest::Approx(report.overall.mae).epsilon(1e-12));
    CHECK(report.per_type[0].mape_pct == doctest::Approx(report.overall.mape_pct).epsilon(1e-12));
}

TEST_CASE("report errors propagate") {
    const SgModel m = reference_model();
    const Dataset empty(FrequencyGrid::default_grid(), {});
    CHECK_THROWS_WITH_AS(frequency_sweep_errors(m, empty), doctest::Contains("EmptyInput"), Error);
}

TEST_CASE("report rendering fixture: one row per type plus Total") {
    // Hand-authored accuracy figures; exercises the exporters' layout only.
    EvaluationReport report;
    report.model_id = "fixture-model";
    report.dataset_id = "fixture-data";
    report.overall = {3.57e-3, 0.33, 0.95, 50};
    report.per_type = {
        {PotatoType::red(), 4.55e-3, 0.43, 10},    {PotatoType::russet(), 2.45e-3, 0.23, 10},
        {PotatoType::yellow(), 3.34e-3, 0.31, 10}, {PotatoType::purple(), 2.15e-3, 0.20, 10},
        {PotatoType::chipper(), 5.37e-3, 0.49, 10}};
    report.per_frequency = {{1.0}, {3.57e-3}, {0.33}};

    const auto dir = std::filesystem::temp_directory_path() / "tubersg_test" / "report_fixture";
    std::filesystem::create_directories(dir);
    io::write_per_type_csv(dir / "per_type.csv", report);
    io::write_summary_text(dir / "summary.txt", report);
    io::write_per_frequency_csv(dir / "per_frequency.csv", report.per_frequency);

    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    };
    CHECK(slurp(dir / "per_type.csv") ==
          "type,n,mae,mape_pct\n"
          "Total,50,0.00357,0.33\n"
          "Red,10,0.00455,0.43\n"
          "Russet,10,0.00245,0.23\n"
          "Yellow,10,0.00334,0.31\n"
          "Purple,10,0.00215,0.2\n"
          "Chipper,10,0.00537,0.49\n");
    const std::string summary = slurp(dir / "summary.txt");
    CHECK(summary.find("overall: mae=0.003570 mape_pct=0.330000") != std::string::npos);
    CHECK(summary.find("Chipper  n=10   mae=0.005370") != std::string::npos);
    CHECK(slurp(dir / "per_frequency.csv") == "f_ghz,mae,mape_pct\n1,0.00357,0.33\n");
}
