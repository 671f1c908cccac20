#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include <doctest.h>

#include "tubersg/kernels.hpp"
#include "tubersg/poly.hpp"
#include "tubersg/regression.hpp"
#include "tubersg/synth.hpp"
#include "oracles.hpp"

using namespace tubersg;

namespace {

// Single-replicate dataset with directly supplied SG targets.
Dataset make_dataset(const FrequencyGrid& grid, const std::vector<std::vector<double>>& rows,
                     const std::vector<double>& sgs) {
    std::vector<TuberSample> samples;
    for (std::size_t s = 0; s < rows.size(); ++s) {
        ReplicateSet reps({DielectricSpectrum(grid, rows[s])});
        samples.emplace_back("s" + std::to_string(s), PotatoType::yellow(), reps, std::nullopt,
                             std::nullopt, sgs[s]);
    }
    return Dataset(grid, std::move(samples));
}

std::vector<std::pair<double, double>> make_pairs(const std::vector<double>& x,
                                                  const std::vector<double>& y) {
    std::vector<std::pair<double, double>> pairs(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) pairs[i] = {x[i], y[i]};
    return pairs;
}

}  // namespace

TEST_CASE("exact collinear data is recovered exactly") {
    std::vector<double> x = {50.0, 55.0, 60.0, 65.0, 70.0, 75.0};
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = -0.004 * x[i] + 1.30;
    const LinearFit fit = fit_linear_at_frequency(make_pairs(x, y));
    CHECK(fit.c1 == doctest::Approx(-0.004).epsilon(1e-12));
    CHECK(fit.c2 == doctest::Approx(1.30).epsilon(1e-12));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(fit.degenerate_target);
}

TEST_CASE("line through two points") {
    const LinearFit fit = fit_linear_at_frequency(make_pairs({60.0, 70.0}, {1.10, 1.06}));
    CHECK(fit.c1 == doctest::Approx(-0.004).epsilon(1e-12));
    CHECK(fit.c2 == doctest::Approx(1.34).epsilon(1e-12));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("noisy synthetic pairs: slope near the reference value, matches the oracle") {
    const SgModel m = reference_model();
    const double c1_true = eval_poly(m.c1_poly(), 1.0);
    const double c2_true = eval_poly(m.c2_poly(), 1.0);

    std::mt19937_64 rng(1618);
    std::uniform_real_distribution<double> eps(54.0, 75.0);
    std::normal_distribution<double> noise(0.0, 4.5e-3);
    std::vector<std::pair<double, double>> pairs(200);
    for (auto& p : pairs) {
        const double e = eps(rng);
        p = {e, c1_true * e + c2_true + noise(rng)};
    }
    const LinearFit fit = fit_linear_at_frequency(pairs);
    CHECK(std::fabs(fit.c1 - (-4.113e-3)) <= 0.10 * 4.113e-3);

    const oracles::LineFit ref = oracles::normal_equation_fit(pairs);
    CHECK(std::fabs(fit.c1 - ref.slope) <= 1e-10 * std::fabs(ref.slope));
    CHECK(std::fabs(fit.c2 - ref.intercept) <= 1e-10 * std::fabs(ref.intercept));
    CHECK(fit.r2 == doctest::Approx(ref.r2).epsilon(1e-9));
}

TEST_CASE("degenerate inputs") {
    CHECK_THROWS_WITH_AS(fit_linear_at_frequency(make_pairs({60.0}, {1.1})),
                         doctest::Contains("InsufficientData"), Error);
    CHECK_THROWS_WITH_AS(fit_linear_at_frequency(make_pairs({60.0, 60.0, 60.0}, {1.0, 1.1, 1.2})),
                         doctest::Contains("DegenerateDesign"), Error);

    // Constant target: horizontal line, r2 = 0, flagged.
    const LinearFit fit = fit_linear_at_frequency(make_pairs({60.0, 65.0, 70.0}, {1.1, 1.1, 1.1}));
    CHECK(fit.degenerate_target);
    CHECK(fit.c1 == 0.0);
    CHECK(fit.c2 == 1.1);
    CHECK(fit.r2 == 0.0);
}

TEST_CASE("fit_all_frequencies equals independent per-frequency fits bit for bit") {
    std::mt19937_64 rng(91);
    std::uniform_real_distribution<double> eps(40.0, 80.0);
    std::uniform_real_distribution<double> sg(1.03, 1.12);
    const FrequencyGrid grid = FrequencyGrid::uniform(0.3, 3.0, 17);

    std::vector<std::vector<double>> rows(8);
    std::vector<double> sgs(rows.size());
    for (std::size_t s = 0; s < rows.size(); ++s) {
        rows[s].resize(grid.size());
        for (auto& v : rows[s]) v = eps(rng);
        sgs[s] = sg(rng);
    }
    const Dataset ds = make_dataset(grid, rows, sgs);

    for (auto backend : {kernels::Backend::Scalar, kernels::Backend::Avx2}) {
        if (!kernels::set_backend(backend)) continue;
        CAPTURE(kernels::active().name);
        const PerFrequencyCoefficients all = fit_all_frequencies(ds);
        REQUIRE(all.c1.size() == grid.size());
        CHECK(all.n_samples == rows.size());
        for (std::size_t f = 0; f < grid.size(); ++f) {
            std::vector<std::pair<double, double>> pairs(rows.size());
            for (std::size_t s = 0; s < rows.size(); ++s) pairs[s] = {rows[s][f], sgs[s]};
            const LinearFit one = fit_linear_at_frequency(pairs);
            CHECK(all.c1[f] == one.c1);  // bitwise
            CHECK(all.c2[f] == one.c2);
            CHECK(all.r2[f] == one.r2);
        }
    }
    kernels::set_backend(kernels::Backend::Auto);
}

TEST_CASE("residuals sum to zero and are orthogonal to the regressor") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> eps(30.0, 90.0);
    std::uniform_real_distribution<double> sg(1.02, 1.15);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng() % 40);
        std::vector<std::pair<double, double>> pairs(n);
        bool distinct = false;
        for (std::size_t i = 0; i < n; ++i) {
            pairs[i] = {eps(rng), sg(rng)};
            if (i > 0 && pairs[i].first != pairs[0].first) distinct = true;
        }
        if (!distinct) continue;
        const LinearFit fit = fit_linear_at_frequency(pairs);

        long double rsum = 0.0L, rdot = 0.0L, xscale = 0.0L;
        for (const auto& [x, y] : pairs) {
            const long double r = static_cast<long double>(y) - (fit.c1 * x + fit.c2);
            rsum += r;
            rdot += r * x;
            xscale = std::max(xscale, std::fabs(static_cast<long double>(x)));
        }
        const double n_scale = static_cast<double>(n) * 1.2;  // |sg| <= 1.2
        CHECK(std::fabs(static_cast<double>(rsum)) <= 1e-9 * n_scale);
        CHECK(std::fabs(static_cast<double>(rdot)) <=
              1e-9 * n_scale * static_cast<double>(xscale));
    }
}

TEST_CASE("fit is equivariant under affine target maps") {
    std::mt19937_64 rng(321);
    std::uniform_real_distribution<double> eps(30.0, 90.0);
    std::uniform_real_distribution<double> sg(1.02, 1.15);
    std::uniform_real_distribution<double> a_dist(0.1, 5.0);
    std::uniform_real_distribution<double> b_dist(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::pair<double, double>> pairs(20);
        for (auto& p : pairs) p = {eps(rng), sg(rng)};
        const double a = a_dist(rng);
        const double b = b_dist(rng);
        auto mapped = pairs;
        for (auto& p : mapped) p.second = a * p.second + b;

        const LinearFit base = fit_linear_at_frequency(pairs);
        const LinearFit scaled = fit_linear_at_frequency(mapped);
        CHECK(scaled.c1 == doctest::Approx(a * base.c1).epsilon(1e-12));
        CHECK(scaled.c2 == doctest::Approx(a * base.c2 + b).epsilon(1e-12));
        CHECK(scaled.r2 == doctest::Approx(base.r2).epsilon(1e-9));
    }
}

TEST_CASE("r2 is invariant under affine transforms of either variable") {
    std::mt19937_64 rng(555);
    std::uniform_real_distribution<double> eps(30.0, 90.0);
    std::uniform_real_distribution<double> sg(1.02, 1.15);
    std::vector<std::pair<double, double>> pairs(30);
    for (auto& p : pairs) p = {eps(rng), sg(rng)};
    const double base_r2 = fit_linear_at_frequency(pairs).r2;

    for (double a : {-3.0, -0.5, 0.25, 7.0}) {
        auto xs = pairs;
        for (auto& p : xs) p.first = a * p.first + 11.0;
        CHECK(fit_linear_at_frequency(xs).r2 == doctest::Approx(base_r2).epsilon(1e-9));
        auto ys = pairs;
        for (auto& p : ys) p.second = a * p.second - 0.3;
        CHECK(fit_linear_at_frequency(ys).r2 == doctest::Approx(base_r2).epsilon(1e-9));
    }
}

TEST_CASE("noise-free inverse-model dataset: unit r2 everywhere") {
    SynthConfig cfg;
    cfg.n_per_type = 6;
    cfg.noise_eps_std = 0.0;
    cfg.bio_resid_std = 0.0;
    cfg.seed = 11;
    const FrequencyGrid grid = FrequencyGrid::uniform(0.3, 3.0, 41);
    const Dataset ds = gen_inverse_model(cfg, reference_model(), grid);

    const PerFrequencyCoefficients fit = fit_all_frequencies(ds);
    for (std::size_t f = 0; f < grid.size(); ++f) {
        CHECK(std::fabs(fit.r2[f] - 1.0) <= 1e-9);
    }

    const auto sweep = correlation_sweep(ds, Channel::Real);
    REQUIRE(sweep.size() == grid.size());
    for (double r2 : sweep) CHECK(std::fabs(r2 - 1.0) <= 1e-9);
}

TEST_CASE("identical targets: r2 is exactly zero at every frequency") {
    const FrequencyGrid grid = FrequencyGrid::uniform(0.3, 3.0, 9);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> eps(40.0, 80.0);
    std::vector<std::vector<double>> rows(5);
    for (auto& row : rows) {
        row.resize(grid.size());
        for (auto& v : row) v = eps(rng);
    }
    const std::vector<double> sgs(rows.size(), 1.0999999999);
    const Dataset ds = make_dataset(grid, rows, sgs);
    const PerFrequencyCoefficients fit = fit_all_frequencies(ds);
    for (std::size_t f = 0; f < grid.size(); ++f) {
        CHECK(fit.r2[f] == 0.0);
        CHECK(fit.c1[f] == 0.0);
        CHECK(fit.c2[f] == sgs[0]);
        CHECK(fit.degenerate_target[f] == 1);
    }
}

TEST_CASE("correlation sweep channels") {
    const FrequencyGrid grid({1.0});
    std::vector<TuberSample> samples;
    for (int s = 0; s < 4; ++s) {
        const double eps = 60.0 + s;
        ReplicateSet reps({DielectricSpectrum(grid, {eps}, std::vector<double>{10.0 + s})});
        samples.emplace_back("s" + std::to_string(s), PotatoType::red(), reps, std::nullopt,
                             std::nullopt, 1.05 + 0.01 * s);
    }
    const Dataset ds(grid, std::move(samples));

    // Single-frequency grid gives a length-1 series.
    CHECK(correlation_sweep(ds, Channel::Real).size() == 1);
    CHECK(correlation_sweep(ds, Channel::Imag).size() == 1);

    std::vector<TuberSample> no_imag;
    ReplicateSet reps1({DielectricSpectrum(grid, {60.0})});
    ReplicateSet reps2({DielectricSpectrum(grid, {62.0})});
    no_imag.emplace_back("a", PotatoType::red(), reps1, std::nullopt, std::nullopt, 1.05);
    no_imag.emplace_back("b", PotatoType::red(), reps2, std::nullopt, std::nullopt, 1.06);
    const Dataset ds2(grid, std::move(no_imag));
    CHECK_THROWS_WITH_AS(correlation_sweep(ds2, Channel::Imag),
                         doctest::Contains("MissingChannel"), Error);
}

TEST_CASE("calibrated-noise dataset: r2 above 0.90 at every frequency") {
    SynthConfig cfg;  // defaults: noise 0.35, bio 4.5e-3, 3 replicates
    cfg.n_per_type = 40;
    cfg.seed = 2;
    const FrequencyGrid grid = FrequencyGrid::uniform(0.3, 3.0, 61);
    const Dataset ds = gen_inverse_model(cfg, reference_model(), grid);
    const PerFrequencyCoefficients fit = fit_all_frequencies(ds);
    for (std::size_t f = 0; f < grid.size(); ++f) {
        CAPTURE(grid[f]);
        CHECK(fit.r2[f] > 0.90);
    }
}
