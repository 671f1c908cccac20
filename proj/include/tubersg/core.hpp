#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tubersg/errors.hpp"

namespace tubersg {

inline constexpr double kBandLoGhz = 0.3;
inline constexpr double kBandHiGhz = 3.0;
inline constexpr std::size_t kDefaultGridPoints = 283;

// Grids compare equal when same length and pointwise |df| <= 1e-9 GHz
// (CSV round-trip safety). Duplicate detection is tighter.
inline constexpr double kGridEqualTolGhz = 1e-9;
inline constexpr double kGridDuplicateTolGhz = 1e-12;

// Ordered frequency sample points in GHz, all within [0.3, 3.0].
class FrequencyGrid {
public:
    explicit FrequencyGrid(std::vector<double> points_ghz);

    // n uniformly spaced points over [lo, hi], endpoints included exactly.
    static FrequencyGrid uniform(double lo_ghz, double hi_ghz, std::size_t n);

    // The measurement grid: 283 points over [0.3, 3.0] GHz.
    static FrequencyGrid default_grid();

    const std::vector<double>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    double lo() const noexcept { return points_.front(); }
    double hi() const noexcept { return points_.back(); }

    bool approx_equal(const FrequencyGrid& other, double tol_ghz = kGridEqualTolGhz) const noexcept;

    // Index i such that points[i] <= f <= points[i+1]; throws
    // FrequencyOutOfRange when f is outside [lo, hi].
    std::size_t bracket(double f_ghz) const;

private:
    std::vector<double> points_;
};

// Complex relative permittivity sampled on a grid; the imaginary channel is
// optional (estimation never uses it, diagnostics do when present).
class DielectricSpectrum {
public:
    DielectricSpectrum(FrequencyGrid grid, std::vector<double> eps_real,
                       std::optional<std::vector<double>> eps_imag = std::nullopt);

    const FrequencyGrid& grid() const noexcept { return grid_; }
    const std::vector<double>& eps_real() const noexcept { return eps_real_; }
    const std::optional<std::vector<double>>& eps_imag() const noexcept { return eps_imag_; }
    bool has_imag() const noexcept { return eps_imag_.has_value(); }
    std::size_t size() const noexcept { return eps_real_.size(); }

    // Piecewise-linear interpolation of eps_real at f (GHz).
    double eps_real_at(double f_ghz) const;

private:
    FrequencyGrid grid_;
    std::vector<double> eps_real_;
    std::optional<std::vector<double>> eps_imag_;
};

// Spectra measured at different positions on one sample; all replicates
// share one grid.
class ReplicateSet {
public:
    explicit ReplicateSet(std::vector<DielectricSpectrum> replicates);

    const std::vector<DielectricSpectrum>& replicates() const noexcept { return replicates_; }
    std::size_t count() const noexcept { return replicates_.size(); }
    const FrequencyGrid& grid() const noexcept { return replicates_.front().grid(); }

private:
    std::vector<DielectricSpectrum> replicates_;
};

// Pointwise arithmetic mean of the replicates. eps_imag is averaged only
// when every replicate carries it.
DielectricSpectrum average_replicates(const ReplicateSet& r);

// Pointwise sample standard deviation (divisor N-1) of eps_real.
// Requires N >= 2.
std::vector<double> replicate_std(const ReplicateSet& r);

enum class TypeKind : std::uint8_t { Red, Russet, Yellow, Purple, Chipper, Other };

class PotatoType {
public:
    PotatoType() : kind_(TypeKind::Other), label_("unknown") {}

    static PotatoType red() { return PotatoType(TypeKind::Red); }
    static PotatoType russet() { return PotatoType(TypeKind::Russet); }
    static PotatoType yellow() { return PotatoType(TypeKind::Yellow); }
    static PotatoType purple() { return PotatoType(TypeKind::Purple); }
    static PotatoType chipper() { return PotatoType(TypeKind::Chipper); }
    static PotatoType other(std::string_view label);

    // Case-insensitive; unrecognized non-empty names become Other(label).
    static PotatoType parse(std::string_view text);

    TypeKind kind() const noexcept { return kind_; }
    // Canonical lowercase name used in CSV files ("red", "russet", ...).
    std::string name() const;
    // Capitalized name used in reports ("Red", "Russet", ...).
    std::string display_name() const;

    friend bool operator==(const PotatoType&, const PotatoType&) = default;
    friend std::strong_ordering operator<=>(const PotatoType& a, const PotatoType& b) {
        if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
        return a.label_ <=> b.label_;
    }

private:
    explicit PotatoType(TypeKind kind) : kind_(kind) {}
    TypeKind kind_;
    std::string label_;  // only for Other
};

// Report/display order used throughout (mirrors the per-type tables).
const std::vector<PotatoType>& canonical_types();

// One potato: identity, type, gravimetric reading, replicate spectra and the
// derived (or directly supplied) SG. SG must land in (1.0, 1.2).
class TuberSample {
public:
    TuberSample(std::string id, PotatoType type, ReplicateSet replicates,
                std::optional<double> w_air_g, std::optional<double> f_float_g,
                std::optional<double> sg_direct = std::nullopt,
                std::optional<double> temperature_c = std::nullopt);

    const std::string& id() const noexcept { return id_; }
    const PotatoType& type() const noexcept { return type_; }
    const ReplicateSet& replicates() const noexcept { return replicates_; }
    double sg() const noexcept { return sg_; }
    std::optional<double> w_air_g() const noexcept { return w_air_g_; }
    std::optional<double> f_float_g() const noexcept { return f_float_g_; }
    std::optional<double> temperature_c() const noexcept { return temperature_c_; }

private:
    std::string id_;
    PotatoType type_;
    ReplicateSet replicates_;
    std::optional<double> w_air_g_;
    std::optional<double> f_float_g_;
    std::optional<double> temperature_c_;
    double sg_ = 0.0;
};

// Samples sharing one frequency grid, unique ids.
class Dataset {
public:
    Dataset(FrequencyGrid grid, std::vector<TuberSample> samples);

    const FrequencyGrid& grid() const noexcept { return grid_; }
    const std::vector<TuberSample>& samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }

private:
    FrequencyGrid grid_;
    std::vector<TuberSample> samples_;
};

}  // namespace tubersg
