// tubersg: estimate potato tuber specific gravity from dielectric spectra.
//
// Exit codes: 0 success, 1 usage error, 2 data/validation error, 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tubersg/estimator.hpp"
#include "tubersg/io.hpp"
#include "tubersg/metrics.hpp"
#include "tubersg/regression.hpp"
#include "tubersg/synth.hpp"

namespace fs = std::filesystem;
using namespace tubersg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitIo = 3;

struct GlobalOptions {
    std::uint64_t seed = 0;
    std::string grid_spec = "0.3:3.0:283";
    bool quiet = false;
};

FrequencyGrid parse_grid_spec(const std::string& spec) {
    double lo = 0.0, hi = 0.0;
    unsigned long n = 0;
    char tail = '\0';
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lu%c", &lo, &hi, &n, &tail) != 3) {
        throw CLI::ValidationError("--grid", "expected LO:HI:N, e.g. 0.3:3.0:283");
    }
    return FrequencyGrid::uniform(lo, hi, static_cast<std::size_t>(n));
}

SgRange parse_sg_range(const std::string& spec) {
    double lo = 0.0, hi = 0.0;
    char tail = '\0';
    if (std::sscanf(spec.c_str(), "%lf:%lf%c", &lo, &hi, &tail) != 2) {
        throw CLI::ValidationError("--sg-range", "expected LO:HI, e.g. 1.05:1.10");
    }
    return {lo, hi};
}

SgModel load_model_or_reference(const std::string& model_path, const GlobalOptions& global) {
    if (model_path.empty()) {
        return reference_model();  // the built-in published calibration
    }
    std::vector<std::string> warnings;
    SgModel m = load_model(model_path, &warnings);
    if (!global.quiet) {
        for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    }
    return m;
}

std::string format_fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

// --- sg ---------------------------------------------------------------

int cmd_sg(const std::string& in_path, const std::string& out_path, const GlobalOptions& global) {
    const auto rows = io::read_weights_csv(in_path);
    std::vector<io::SgResultRow> results;
    results.reserve(rows.size());
    bool any_error = false;
    for (const auto& row : rows) {
        io::SgResultRow out;
        out.id = row.id;
        try {
            const double sg = row.f_float_g ? sg_buoyancy(row.w_air_g, *row.f_float_g)
                                            : sg_traditional(row.w_air_g, *row.w_uww_g);
            const SgVerdict verdict = validate_sg(sg);
            out.sg = sg;
            out.verdict = verdict_level_name(verdict.level);
            if (verdict.level == SgVerdictLevel::Error) {
                any_error = true;
                std::cerr << "error: row '" << row.id << "' (line " << row.line_no << "): "
                          << verdict.message << '\n';
            } else if (verdict.level == SgVerdictLevel::Warning && !global.quiet) {
                std::cerr << "warning: row '" << row.id << "': " << verdict.message << '\n';
            }
        } catch (const Error& e) {
            any_error = true;
            out.verdict = "Error";
            std::cerr << "error: row '" << row.id << "' (line " << row.line_no << "): " << e.what()
                      << '\n';
        }
        results.push_back(std::move(out));
    }
    io::write_sg_results_csv(out_path, results);
    if (!global.quiet) {
        std::cout << "wrote " << results.size() << " rows to " << out_path << '\n';
    }
    return any_error ? kExitData : kExitOk;
}

// --- fit ----------------------------------------------------------------

int cmd_fit(const std::string& data_dir, const std::string& out_model,
            const std::string& report_path, const GlobalOptions& global) {
    const Dataset ds = io::read_dataset(data_dir);
    const PerFrequencyCoefficients coeffs = fit_all_frequencies(ds);
    if (coeffs.grid.size() < Poly4::kNumCoeffs) {
        raise(Errc::RankDeficient, "dataset grid has fewer than 5 frequencies");
    }
    const Poly4 c1 = fit_poly4(coeffs.grid, coeffs.c1);
    const Poly4 c2 = fit_poly4(coeffs.grid, coeffs.c2);
    const SgModel model(c1, c2, fs::path(data_dir).filename().string(),
                        static_cast<std::int64_t>(coeffs.n_samples));
    save_model(model, out_model);

    if (!report_path.empty()) {
        std::ofstream report(report_path, std::ios::binary);
        if (!report) {
            raise(Errc::IoError, "cannot open '" + report_path + "' for writing");
        }
        report << "f_ghz,c1,c2,r2\n";
        for (std::size_t i = 0; i < coeffs.grid.size(); ++i) {
            report << io::format_shortest(coeffs.grid[i]) << ',' << io::format_shortest(coeffs.c1[i])
                   << ',' << io::format_shortest(coeffs.c2[i]) << ','
                   << io::format_shortest(coeffs.r2[i]) << '\n';
        }
    }
    if (auto warning = model.c1_sign_warning()) {
        std::cerr << "warning: " << *warning << '\n';
    }
    if (!global.quiet) {
        std::cout << "fitted " << coeffs.grid.size() << " frequencies from " << ds.size()
                  << " samples; model written to " << out_model << '\n';
    }
    return kExitOk;
}

// --- estimate -----------------------------------------------------------

int cmd_estimate(const std::string& model_path, double eps, double freq_ghz,
                 const GlobalOptions& global) {
    const SgModel m = load_model_or_reference(model_path, global);
    const Estimate est = estimate_sg(m, eps, freq_ghz);
    if (global.quiet) {
        std::cout << format_fixed6(est.sg) << '\n';
    } else {
        std::cout << "estimated_sg = " << format_fixed6(est.sg) << '\n';
        std::cout << "c1 = " << io::format_shortest(est.c1_used)
                  << ", c2 = " << io::format_shortest(est.c2_used) << " at "
                  << io::format_shortest(est.frequency_ghz) << " GHz\n";
        std::cout << "verdict: " << verdict_level_name(est.flags.level);
        if (!est.flags.message.empty()) std::cout << " (" << est.flags.message << ')';
        std::cout << '\n';
    }
    return kExitOk;
}

// --- validate -----------------------------------------------------------

int cmd_validate(const std::string& model_path, const std::string& data_dir,
                 const std::string& out_dir, const GlobalOptions& global) {
    const SgModel m = load_model_or_reference(model_path, global);
    const Dataset ds = io::read_dataset(data_dir);
    const std::string model_id = model_path.empty() ? "reference" : model_path;
    const EvaluationReport report = per_type_report(m, ds, model_id, data_dir);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        raise(Errc::IoError, "cannot create directory '" + out_dir + "': " + ec.message());
    }
    io::write_per_frequency_csv(fs::path(out_dir) / "per_frequency.csv", report.per_frequency);
    io::write_per_type_csv(fs::path(out_dir) / "per_type.csv", report);
    io::write_summary_text(fs::path(out_dir) / "summary.txt", report);

    if (!global.quiet) {
        std::cout << "overall mae=" << format_fixed6(report.overall.mae)
                  << " mape_pct=" << format_fixed6(report.overall.mape_pct) << " over "
                  << report.overall.n << " samples; reports in " << out_dir << '\n';
    }
    return kExitOk;  // validation reports, it does not gate
}

// --- synth ----------------------------------------------------------------

int cmd_synth(const std::string& out_dir, const std::string& generator,
              const std::string& model_path, std::size_t n_per_type, const std::string& types_csv,
              const std::string& sg_range_spec, double noise_eps_std, double bio_resid_std,
              std::size_t replicates, const GlobalOptions& global) {
    SynthConfig cfg;
    cfg.n_per_type = n_per_type;
    cfg.noise_eps_std = noise_eps_std;
    cfg.bio_resid_std = bio_resid_std;
    cfg.replicates = replicates;
    cfg.seed = global.seed;

    if (!types_csv.empty()) {
        std::vector<std::pair<PotatoType, SgRange>> selected;
        for (const auto& name : io::split_csv_line(types_csv)) {
            const PotatoType t = PotatoType::parse(name);
            bool known = false;
            for (const auto& [type, range] : default_sg_ranges()) {
                if (type == t) {
                    selected.emplace_back(type, range);
                    known = true;
                    break;
                }
            }
            if (!known) {
                // Custom type: needs an explicit --sg-range.
                if (sg_range_spec.empty()) {
                    raise(Errc::InvalidValue,
                          "type '" + t.name() + "' has no default SG range; pass --sg-range");
                }
                selected.emplace_back(t, SgRange{});
            }
        }
        cfg.sg_ranges = std::move(selected);
    }
    if (!sg_range_spec.empty()) {
        const SgRange range = parse_sg_range(sg_range_spec);
        for (auto& [type, r] : cfg.sg_ranges) r = range;
    }

    const FrequencyGrid grid = parse_grid_spec(global.grid_spec);
    Dataset ds = (generator == "mixture")
                     ? gen_mixture(cfg, MixtureParams{}, grid)
                     : gen_inverse_model(cfg, load_model_or_reference(model_path, global), grid);
    io::write_dataset(out_dir, ds);
    if (!global.quiet) {
        std::cout << "wrote " << ds.size() << " samples (" << grid.size() << " frequencies, "
                  << cfg.replicates << " replicates) to " << out_dir << '\n';
    }
    return kExitOk;
}

// --- split ------------------------------------------------------------

int cmd_split(const std::string& data_dir, const std::string& train_dir,
              const std::string& test_dir, std::size_t train_per_type, std::size_t test_per_type,
              const GlobalOptions& global) {
    const Dataset ds = io::read_dataset(data_dir);
    const auto [train, test] = stratified_split(ds, train_per_type, test_per_type, global.seed);
    io::write_dataset(train_dir, train);
    io::write_dataset(test_dir, test);
    if (!global.quiet) {
        std::cout << "split " << ds.size() << " samples into " << train.size() << " train / "
                  << test.size() << " test\n";
    }
    return kExitOk;
}

// --- sensitivity --------------------------------------------------------

int cmd_sensitivity(const std::string& model_path, double delta_eps, double f_lo, double f_hi,
                    const std::string& out_path, const GlobalOptions& global) {
    const SgModel m = load_model_or_reference(model_path, global);
    const SensitivityScan scan = sensitivity_band(m, delta_eps, f_lo, f_hi);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            raise(Errc::IoError, "cannot open '" + out_path + "' for writing");
        }
        out << "f_ghz,abs_c1,delta_sg\n";
        for (std::size_t i = 0; i < scan.f_ghz.size(); ++i) {
            out << io::format_shortest(scan.f_ghz[i]) << ',' << io::format_shortest(scan.abs_c1[i])
                << ',' << io::format_shortest(scan.delta_sg[i]) << '\n';
        }
    }
    std::cout << "max delta_sg = " << io::format_shortest(scan.max_delta_sg) << " at "
              << format_fixed6(scan.argmax_f_ghz) << " GHz (delta_eps = "
              << io::format_shortest(delta_eps) << ")\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Potato tuber specific-gravity estimation from dielectric spectra"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--seed", global.seed, "Seed for synthetic generation and splits")
        ->capture_default_str();
    app.add_option("--grid", global.grid_spec, "Synthetic frequency grid as LO:HI:N (GHz)")
        ->capture_default_str();
    app.add_flag("--quiet", global.quiet, "Suppress informational output");

    // sg
    auto* sg_cmd = app.add_subcommand("sg", "Compute SG from flotation weights");
    std::string sg_in, sg_out;
    sg_cmd->add_option("--in", sg_in, "Weights CSV (id,w_air_g,w_uww_g,f_float_g)")->required();
    sg_cmd->add_option("--out", sg_out, "Output CSV (id,sg,verdict)")->required();

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "Fit an SG model from a dataset directory");
    std::string fit_data, fit_out, fit_report;
    fit_cmd->add_option("--data", fit_data, "Dataset directory")->required();
    fit_cmd->add_option("--out", fit_out, "Output model file")->required();
    fit_cmd->add_option("--report", fit_report, "Per-frequency fit report CSV (f_ghz,c1,c2,r2)");

    // estimate
    auto* est_cmd = app.add_subcommand("estimate", "Estimate SG from one eps' value");
    std::string est_model;
    double est_eps = 0.0, est_freq = 0.0;
    est_cmd->add_option("--model", est_model, "Model file (defaults to the built-in reference)");
    est_cmd->add_option("--eps", est_eps, "Dielectric constant eps'")->required();
    est_cmd->add_option("--freq-ghz", est_freq, "Frequency in GHz")->required();

    // validate
    auto* val_cmd = app.add_subcommand("validate", "Evaluate a model against a dataset");
    std::string val_model, val_data, val_out;
    val_cmd->add_option("--model", val_model, "Model file (defaults to the built-in reference)");
    val_cmd->add_option("--data", val_data, "Dataset directory")->required();
    val_cmd->add_option("--out-dir", val_out, "Report output directory")->required();

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset");
    std::string synth_out, synth_generator = "inverse", synth_model, synth_types, synth_range;
    std::size_t synth_n = 50, synth_reps = 3;
    double synth_noise = 0.35, synth_bio = 4.5e-3;
    synth_cmd->add_option("--out", synth_out, "Output dataset directory")->required();
    synth_cmd->add_option("--generator", synth_generator, "inverse | mixture")
        ->check(CLI::IsMember({"inverse", "mixture"}))
        ->capture_default_str();
    synth_cmd->add_option("--model", synth_model,
                          "Model to invert (defaults to the built-in reference)");
    synth_cmd->add_option("--n-per-type", synth_n, "Samples per type")->capture_default_str();
    synth_cmd->add_option("--types", synth_types, "Comma-separated type subset (default: all five)");
    synth_cmd->add_option("--sg-range", synth_range, "Override SG range LO:HI for selected types");
    synth_cmd->add_option("--noise-eps-std", synth_noise, "Gaussian eps' noise per replicate point")
        ->capture_default_str();
    synth_cmd->add_option("--bio-resid-std", synth_bio, "Per-sample SG-equivalent offset sigma")
        ->capture_default_str();
    synth_cmd->add_option("--replicates", synth_reps, "Replicates per sample")
        ->capture_default_str();

    // split
    auto* split_cmd = app.add_subcommand("split", "Stratified train/test split of a dataset");
    std::string split_data, split_train, split_test;
    std::size_t split_train_n = 40, split_test_n = 10;
    split_cmd->add_option("--data", split_data, "Dataset directory")->required();
    split_cmd->add_option("--train-out", split_train, "Training output directory")->required();
    split_cmd->add_option("--test-out", split_test, "Testing output directory")->required();
    split_cmd->add_option("--train-per-type", split_train_n, "Training samples per type")
        ->capture_default_str();
    split_cmd->add_option("--test-per-type", split_test_n, "Testing samples per type")
        ->capture_default_str();

    // sensitivity
    auto* sens_cmd = app.add_subcommand("sensitivity", "SG shift bound for an eps' change");
    std::string sens_model, sens_out;
    double sens_delta = 0.0, sens_lo = kBandLoGhz, sens_hi = kBandHiGhz;
    sens_cmd->add_option("--model", sens_model, "Model file (defaults to the built-in reference)");
    sens_cmd->add_option("--delta-eps", sens_delta, "Permittivity change")->required();
    sens_cmd->add_option("--f-lo", sens_lo, "Band lower edge in GHz")->capture_default_str();
    sens_cmd->add_option("--f-hi", sens_hi, "Band upper edge in GHz")->capture_default_str();
    sens_cmd->add_option("--out", sens_out, "Per-frequency CSV (f_ghz,abs_c1,delta_sg)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sg_cmd->parsed()) return cmd_sg(sg_in, sg_out, global);
        if (fit_cmd->parsed()) return cmd_fit(fit_data, fit_out, fit_report, global);
        if (est_cmd->parsed()) return cmd_estimate(est_model, est_eps, est_freq, global);
        if (val_cmd->parsed()) return cmd_validate(val_model, val_data, val_out, global);
        if (synth_cmd->parsed()) {
            return cmd_synth(synth_out, synth_generator, synth_model, synth_n, synth_types,
                             synth_range, synth_noise, synth_bio, synth_reps, global);
        }
        if (split_cmd->parsed()) {
            return cmd_split(split_data, split_train, split_test, split_train_n, split_test_n,
                             global);
        }
        if (sens_cmd->parsed()) {
            return cmd_sensitivity(sens_model, sens_delta, sens_lo, sens_hi, sens_out, global);
        }
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == Errc::IoError ? kExitIo : kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}
