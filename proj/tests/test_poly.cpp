#include <array>
#include <cmath>
#include <random>

#include <doctest.h>

#include "tubersg/poly.hpp"
#include "oracles.hpp"

using namespace tubersg;

TEST_CASE("reference model coefficient columns") {
    const SgModel m = reference_model();
    CHECK(m.source() == "reference");
    CHECK(m.f_lo() == 0.3);
    CHECK(m.f_hi() == 3.0);

    // At f = 1 the polynomial value is the plain column sum.
    const auto& c1 = m.c1_poly().coeffs();
    const auto& c2 = m.c2_poly().coeffs();
    double c1_sum = 0.0, c2_sum = 0.0;
    for (std::size_t k = 0; k < 5; ++k) {
        c1_sum += c1[k];
        c2_sum += c2[k];
    }
    CHECK(eval_poly(m.c1_poly(), 1.0) == doctest::Approx(c1_sum).epsilon(1e-13));
    CHECK(eval_poly(m.c2_poly(), 1.0) == doctest::Approx(c2_sum).epsilon(1e-13));
    CHECK(eval_poly(m.c1_poly(), 1.0) == doctest::Approx(-4.113e-3).epsilon(1e-9));
    CHECK(eval_poly(m.c2_poly(), 1.0) == doctest::Approx(1.343).epsilon(1e-9));

    // Band-edge evaluations, cross-checked against the naive oracle.
    CHECK(eval_poly(m.c2_poly(), 0.3) == doctest::Approx(1.39879).epsilon(1e-5));
    CHECK(eval_poly(m.c2_poly(), 0.3) ==
          doctest::Approx(oracles::naive_poly_eval(c2, 0.3)).epsilon(1e-13));
    CHECK(eval_poly(m.c1_poly(), 3.0) == doctest::Approx(-3.905e-3).epsilon(1e-9));
    CHECK(eval_poly(m.c1_poly(), 3.0) ==
          doctest::Approx(oracles::naive_poly_eval(c1, 3.0)).epsilon(1e-13));
    CHECK(eval_poly(m.c1_poly(), 0.3) == doctest::Approx(-4.665e-3).epsilon(1e-4));
}

TEST_CASE("evaluation outside the validity range is rejected, endpoints included") {
    const SgModel m = reference_model();
    CHECK_THROWS_WITH_AS(eval_poly(m.c1_poly(), 3.5), doctest::Contains("FrequencyOutOfRange"),
                         Error);
    CHECK_THROWS_AS(eval_poly(m.c1_poly(), 0.29), Error);
    CHECK_NOTHROW(eval_poly(m.c1_poly(), 0.3));
    CHECK_NOTHROW(eval_poly(m.c1_poly(), 3.0));
}

TEST_CASE("reference model C1 is strictly negative over the band") {
    const SgModel m = reference_model();
    const auto vals = eval_poly_grid(m.c1_poly(), FrequencyGrid::default_grid());
    for (double v : vals) CHECK(v < 0.0);
    CHECK_FALSE(m.c1_sign_warning().has_value());
}

TEST_CASE("fit_poly4 recovers the reference C1 polynomial exactly") {
    const SgModel m = reference_model();
    const FrequencyGrid grid = FrequencyGrid::default_grid();
    const auto values = eval_poly_grid(m.c1_poly(), grid);
    const Poly4 fitted = fit_poly4(grid, values);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(fitted.coeffs()[k] ==
              doctest::Approx(m.c1_poly().coeffs()[k]).epsilon(1e-9));
    }
    CHECK(fitted.f_lo() == grid.lo());
    CHECK(fitted.f_hi() == grid.hi());
}

TEST_CASE("fit_poly4 on a constant series") {
    const FrequencyGrid grid = FrequencyGrid::default_grid();
    const std::vector<double> values(grid.size(), 1.337);
    const Poly4 fitted = fit_poly4(grid, values);
    CHECK(std::fabs(fitted.coeffs()[0] - 1.337) <= 1e-9);
    for (std::size_t k = 1; k < 5; ++k) {
        CHECK(std::fabs(fitted.coeffs()[k]) <= 1e-9);
    }
}

TEST_CASE("fit_poly4 needs five distinct abscissae") {
    const FrequencyGrid four({0.5, 1.0, 1.5, 2.0});
    CHECK_THROWS_WITH_AS(fit_poly4(four, std::vector<double>(4, 1.0)),
                         doctest::Contains("RankDeficient"), Error);
    const FrequencyGrid five({0.5, 1.0, 1.5, 2.0, 2.5});
    CHECK_NOTHROW(fit_poly4(five, std::vector<double>(5, 1.0)));
    CHECK_THROWS_AS(fit_poly4(five, std::vector<double>(4, 1.0)), Error);  // shape mismatch
}

TEST_CASE("fit_poly4 recovers random degree <= 4 polynomials") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> coeff(-10.0, 10.0);
    const FrequencyGrid grid = FrequencyGrid::default_grid();
    for (int trial = 0; trial < 50; ++trial) {
        std::array<double, 5> truth;
        for (auto& c : truth) c = coeff(rng);
        if (trial % 5 == 0) truth[4] = 0.0;  // lower-degree data now and then
        std::vector<double> values(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            values[i] = oracles::naive_poly_eval(truth, grid[i]);
        }
        const Poly4 fitted = fit_poly4(grid, values);
        for (std::size_t k = 0; k < 5; ++k) {
            CHECK(std::fabs(fitted.coeffs()[k] - truth[k]) <=
                  1e-9 * std::max(1.0, std::fabs(truth[k])));
        }
    }
}

TEST_CASE("fit_poly4 is least-squares optimal against perturbed candidates") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> noise(-0.05, 0.05);
    const FrequencyGrid grid = FrequencyGrid::uniform(0.3, 3.0, 61);
    const SgModel m = reference_model();
    std::vector<double> values = eval_poly_grid(m.c2_poly(), grid);
    for (auto& v : values) v += noise(rng);  // make the fit non-trivial

    const Poly4 fitted = fit_poly4(grid, values);
    std::vector<double> fitted_coeffs(fitted.coeffs().begin(), fitted.coeffs().end());
    const double best_rms = oracles::poly4_rms(fitted_coeffs, grid.points(), values);

    std::uniform_real_distribution<double> bump(-1e-3, 1e-3);
    std::uniform_int_distribution<int> which(0, 4);
    for (int trial = 0; trial < 200; ++trial) {
        auto candidate = fitted_coeffs;
        candidate[static_cast<std::size_t>(which(rng))] += bump(rng);
        CHECK(oracles::poly4_rms(candidate, grid.points(), values) >= best_rms - 1e-15);
    }
}

TEST_CASE("polynomial and model validation") {
    CHECK_THROWS_AS(Poly4({1.0, 0.0, 0.0, 0.0, std::nan("")}, 0.3, 3.0), Error);
    CHECK_THROWS_AS(Poly4({1.0, 0.0, 0.0, 0.0, 0.0}, 2.0, 1.0), Error);
    CHECK_THROWS_AS(Poly4({1.0, 0.0, 0.0, 0.0, 0.0}, 0.1, 3.0), Error);

    const Poly4 narrow({1.0, 0.0, 0.0, 0.0, 0.0}, 0.5, 2.0);
    const Poly4 wide({1.0, 0.0, 0.0, 0.0, 0.0}, 0.3, 3.0);
    CHECK_THROWS_WITH_AS(SgModel(narrow, wide), doctest::Contains("validity range"), Error);

    // A non-negative C1 is flagged, not rejected.
    const SgModel odd(wide, wide);
    CHECK(odd.c1_sign_warning().has_value());
}
