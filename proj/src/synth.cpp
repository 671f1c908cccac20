#include "tubersg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>

#include "tubersg/rng.hpp"

namespace tubersg {

namespace {

constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m
constexpr std::uint64_t kSplitSalt = 0x73706c6974ULL;      // distinct stream family for splits

void validate_config(const SynthConfig& cfg) {
    if (cfg.n_per_type < 1) raise(Errc::InvalidValue, "n_per_type must be >= 1");
    if (cfg.replicates < 1) raise(Errc::InvalidValue, "replicates must be >= 1");
    if (!(cfg.noise_eps_std >= 0.0) || !(cfg.bio_resid_std >= 0.0)) {
        raise(Errc::InvalidValue, "noise standard deviations must be >= 0");
    }
    if (cfg.sg_ranges.empty()) raise(Errc::InvalidValue, "sg_ranges must not be empty");
    std::set<PotatoType> seen;
    for (const auto& [type, range] : cfg.sg_ranges) {
        if (!(range.lo < range.hi) || range.lo <= 1.0 || range.hi >= 1.2) {
            std::ostringstream msg;
            msg << "SG range for " << type.name() << " [" << range.lo << ", " << range.hi
                << "] must satisfy 1.0 < lo < hi < 1.2";
            raise(Errc::InvalidValue, msg.str());
        }
        if (!seen.insert(type).second) {
            raise(Errc::InvalidValue, "duplicate type '" + type.name() + "' in sg_ranges");
        }
    }
}

std::string sample_id(const PotatoType& type, std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "_%03zu", index + 1);
    return type.name() + buf;
}

// Per-sample draw order (fixed, see README): sg, bio offset, w_air,
// temperature, then per-replicate per-point eps' noise.
struct SampleDraws {
    double sg = 0.0;
    double bio = 0.0;
    double w_air = 0.0;
    double temperature = 0.0;
};

SampleDraws draw_sample_header(PinnedRng& rng, const SgRange& range, double bio_resid_std) {
    SampleDraws d;
    d.sg = rng.uniform(range.lo, range.hi);
    d.bio = rng.normal(0.0, bio_resid_std);
    d.w_air = rng.uniform(80.0, 400.0);
    d.temperature = rng.uniform(19.0, 24.0);
    return d;
}

}  // namespace

std::vector<std::pair<PotatoType, SgRange>> default_sg_ranges() {
    return {
        {PotatoType::red(), {1.036, 1.079}},
        {PotatoType::russet(), {1.047, 1.088}},
        {PotatoType::yellow(), {1.056, 1.100}},
        {PotatoType::purple(), {1.058, 1.101}},
        {PotatoType::chipper(), {1.081, 1.121}},
    };
}

Dataset gen_inverse_model(const SynthConfig& cfg, const SgModel& m, const FrequencyGrid& grid) {
    validate_config(cfg);
    if (!m.in_range(grid.lo()) || !m.in_range(grid.hi())) {
        raise(Errc::FrequencyOutOfRange, "model validity range does not cover the grid");
    }
    const std::vector<double> c1 = eval_poly_grid(m.c1_poly(), grid);
    const std::vector<double> c2 = eval_poly_grid(m.c2_poly(), grid);
    const std::size_t nf = grid.size();

    std::vector<TuberSample> samples;
    samples.reserve(cfg.sg_ranges.size() * cfg.n_per_type);
    for (std::size_t t = 0; t < cfg.sg_ranges.size(); ++t) {
        const auto& [type, range] = cfg.sg_ranges[t];
        for (std::size_t i = 0; i < cfg.n_per_type; ++i) {
            PinnedRng rng(derive_stream_seed(cfg.seed, t, i));
            const SampleDraws d = draw_sample_header(rng, range, cfg.bio_resid_std);

            std::vector<double> base(nf);
            for (std::size_t k = 0; k < nf; ++k) {
                base[k] = (d.sg + d.bio - c2[k]) / c1[k];
            }
            std::vector<DielectricSpectrum> reps;
            reps.reserve(cfg.replicates);
            for (std::size_t r = 0; r < cfg.replicates; ++r) {
                std::vector<double> row(nf);
                for (std::size_t k = 0; k < nf; ++k) {
                    row[k] = base[k] + rng.normal(0.0, cfg.noise_eps_std);
                }
                reps.emplace_back(grid, std::move(row));
            }
            samples.emplace_back(sample_id(type, i), type, ReplicateSet(std::move(reps)), d.w_air,
                                 d.w_air / d.sg, std::nullopt, d.temperature);
        }
    }
    return Dataset(grid, std::move(samples));
}

std::pair<double, double> mixture_permittivity(const MixtureParams& p, double sg, double f_ghz) {
    if (!(p.water_eps_static > p.water_eps_inf) || !(p.water_eps_inf > 1.0)) {
        raise(Errc::InvalidValue, "water Debye parameters need eps_static > eps_inf > 1");
    }
    if (!(p.water_tau_ps > 0.0) || !(p.sigma_ion_s_per_m >= 0.0)) {
        raise(Errc::InvalidValue, "water Debye parameters need tau > 0 and sigma_ion >= 0");
    }
    const double v_water = 1.0 - p.water_fraction_slope * (sg - 1.0);
    if (!(v_water > 0.0) || v_water > 1.0) {
        std::ostringstream msg;
        msg << "SG " << sg << " maps to water volume fraction " << v_water << " outside (0, 1]";
        raise(Errc::InvalidValue, msg.str());
    }

    const double omega = 2.0 * std::numbers::pi * f_ghz * 1e9;
    const double x = omega * p.water_tau_ps * 1e-12;
    const double delta = p.water_eps_static - p.water_eps_inf;
    const double eps_w_real = p.water_eps_inf + delta / (1.0 + x * x);
    const double eps_w_imag = delta * x / (1.0 + x * x) +
                              p.sigma_ion_s_per_m / (omega * kVacuumPermittivity);
    const std::complex<double> eps_water(eps_w_real, -eps_w_imag);

    const double eps_dry = p.starch_eps_at_band_lo + p.starch_eps_slope_per_ghz * (f_ghz - kBandLoGhz);
    if (!(eps_dry > 1.0)) {
        raise(Errc::InvalidValue, "dry-matter permittivity fell to <= 1 inside the band");
    }
    const std::complex<double> eps_solid(eps_dry, 0.0);

    // Complex-refractive-index mixing rule.
    const std::complex<double> root =
        v_water * std::sqrt(eps_water) + (1.0 - v_water) * std::sqrt(eps_solid);
    const std::complex<double> eps_mix = root * root;
    return {eps_mix.real(), -eps_mix.imag()};
}

Dataset gen_mixture(const SynthConfig& cfg, const MixtureParams& p, const FrequencyGrid& grid) {
    validate_config(cfg);
    const std::size_t nf = grid.size();

    std::vector<TuberSample> samples;
    samples.reserve(cfg.sg_ranges.size() * cfg.n_per_type);
    for (std::size_t t = 0; t < cfg.sg_ranges.size(); ++t) {
        const auto& [type, range] = cfg.sg_ranges[t];
        for (std::size_t i = 0; i < cfg.n_per_type; ++i) {
            PinnedRng rng(derive_stream_seed(cfg.seed, t, i));
            const SampleDraws d = draw_sample_header(rng, range, cfg.bio_resid_std);

            std::vector<double> base_real(nf), base_imag(nf);
            for (std::size_t k = 0; k < nf; ++k) {
                const auto [re, im] = mixture_permittivity(p, d.sg + d.bio, grid[k]);
                base_real[k] = re;
                base_imag[k] = im;
            }
            std::vector<DielectricSpectrum> reps;
            reps.reserve(cfg.replicates);
            for (std::size_t r = 0; r < cfg.replicates; ++r) {
                std::vector<double> row(nf);
                for (std::size_t k = 0; k < nf; ++k) {
                    row[k] = base_real[k] + rng.normal(0.0, cfg.noise_eps_std);
                }
                reps.emplace_back(grid, std::move(row), base_imag);
            }
            samples.emplace_back(sample_id(type, i), type, ReplicateSet(std::move(reps)), d.w_air,
                                 d.w_air / d.sg, std::nullopt, d.temperature);
        }
    }
    return Dataset(grid, std::move(samples));
}

std::pair<Dataset, Dataset> stratified_split(const Dataset& ds, std::size_t train_per_type,
                                             std::size_t test_per_type, std::uint64_t seed) {
    if (train_per_type < 1 || test_per_type < 1) {
        raise(Errc::InvalidValue, "per-type train and test counts must be >= 1");
    }

    // Type order: canonical first, then custom types by first appearance.
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

    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t t = 0; t < types.size(); ++t) {
        std::vector<std::size_t> idx;
        for (std::size_t s = 0; s < ds.size(); ++s) {
            if (ds.samples()[s].type() == types[t]) idx.push_back(s);
        }
        if (idx.size() < train_per_type + test_per_type) {
            std::ostringstream msg;
            msg << "type '" << types[t].name() << "' has " << idx.size() << " samples, need "
                << (train_per_type + test_per_type);
            raise(Errc::InsufficientSamplesForType, msg.str());
        }
        PinnedRng rng(derive_stream_seed(seed ^ kSplitSalt, t, 0));
        for (std::size_t k = idx.size(); k > 1; --k) {
            std::swap(idx[k - 1], idx[rng.below(k)]);
        }
        train_idx.insert(train_idx.end(), idx.begin(), idx.begin() + train_per_type);
        test_idx.insert(test_idx.end(), idx.begin() + train_per_type,
                        idx.begin() + train_per_type + test_per_type);
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());

    auto build = [&](const std::vector<std::size_t>& idx) {
        std::vector<TuberSample> picked;
        picked.reserve(idx.size());
        for (std::size_t s : idx) picked.push_back(ds.samples()[s]);
        return Dataset(ds.grid(), std::move(picked));
    };
    return {build(train_idx), build(test_idx)};
}

}  // namespace tubersg
