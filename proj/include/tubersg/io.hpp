#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tubersg/core.hpp"
#include "tubersg/gravimetry.hpp"
#include "tubersg/metrics.hpp"

namespace tubersg::io {

// Shortest decimal form that round-trips the exact double (std::to_chars).
std::string format_shortest(double value);

// Scientific notation with 17 significant digits; the model-file contract.
std::string format_sci17(double value);

// Strict full-string parse; context goes into the error message.
double parse_double(std::string_view text, const std::string& context);
std::int64_t parse_int(std::string_view text, const std::string& context);

// Minimal CSV: comma-separated, no quoting, fields must not contain commas.
std::vector<std::string> split_csv_line(std::string_view line);

// --- weights files (`sg` command) -------------------------------------

struct WeightsRow {
    std::string id;
    double w_air_g = 0.0;
    std::optional<double> w_uww_g;     // traditional mode
    std::optional<double> f_float_g;   // buoyancy mode
    std::size_t line_no = 0;
};

// Header: id,w_air_g,w_uww_g,f_float_g ; exactly one of the last two fields
// is non-empty per row.
std::vector<WeightsRow> read_weights_csv(const std::filesystem::path& path);

struct SgResultRow {
    std::string id;
    std::optional<double> sg;  // absent when the row failed to compute
    std::string verdict;       // Ok | Warning | Error
};

// Output columns id,sg,verdict with sg fixed to 6 decimals.
void write_sg_results_csv(const std::filesystem::path& path,
                          const std::vector<SgResultRow>& rows);

// --- dataset directories ----------------------------------------------
//
// Layout: <dir>/manifest.csv with columns
//   id,type,w_air_g,f_float_g,temperature_c,replicates
// where `replicates` is a ';'-separated list of per-replicate spectrum CSV
// files (columns f_ghz,eps_real[,eps_imag]) relative to the directory.

void write_dataset(const std::filesystem::path& dir, const Dataset& ds);
Dataset read_dataset(const std::filesystem::path& dir);

// --- evaluation report export -------------------------------------------
//
// Column contracts: per-frequency CSV is f_ghz,mae,mape_pct (one row per
// grid frequency); per-type CSV is type,n,mae,mape_pct with the Total row
// first. The text summary uses fixed 6-decimal formatting.

void write_per_frequency_csv(const std::filesystem::path& path, const FrequencyErrors& errs);
void write_per_type_csv(const std::filesystem::path& path, const EvaluationReport& report);
void write_summary_text(const std::filesystem::path& path, const EvaluationReport& report);

}  // namespace tubersg::io
