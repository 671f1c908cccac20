#include "tubersg/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

#include "tubersg/gravimetry.hpp"
#include "tubersg/kernels.hpp"

namespace tubersg {

namespace {

std::string trim_copy(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string lower_copy(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

FrequencyGrid::FrequencyGrid(std::vector<double> points_ghz) : points_(std::move(points_ghz)) {
    if (points_.empty()) {
        raise(Errc::InvalidValue, "frequency grid must be non-empty");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const double f = points_[i];
        if (!std::isfinite(f) || f < kBandLoGhz || f > kBandHiGhz) {
            std::ostringstream msg;
            msg << "grid point " << i << " (" << f << " GHz) outside [" << kBandLoGhz << ", "
                << kBandHiGhz << "]";
            raise(Errc::InvalidValue, msg.str());
        }
        if (i > 0 && f - points_[i - 1] <= kGridDuplicateTolGhz) {
            std::ostringstream msg;
            msg << "grid points must be strictly increasing (index " << i << ")";
            raise(Errc::InvalidValue, msg.str());
        }
    }
}

FrequencyGrid FrequencyGrid::uniform(double lo_ghz, double hi_ghz, std::size_t n) {
    if (n < 1 || !(lo_ghz < hi_ghz)) {
        raise(Errc::InvalidValue, "uniform grid needs lo < hi and n >= 1");
    }
    if (n == 1) {
        return FrequencyGrid({lo_ghz});
    }
    std::vector<double> pts(n);
    const double step = (hi_ghz - lo_ghz) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i] = lo_ghz + static_cast<double>(i) * step;
    }
    pts.back() = hi_ghz;  // keep the upper endpoint exact
    return FrequencyGrid(std::move(pts));
}

FrequencyGrid FrequencyGrid::default_grid() {
    return uniform(kBandLoGhz, kBandHiGhz, kDefaultGridPoints);
}

bool FrequencyGrid::approx_equal(const FrequencyGrid& other, double tol_ghz) const noexcept {
    if (points_.size() != other.points_.size()) return false;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (std::fabs(points_[i] - other.points_[i]) > tol_ghz) return false;
    }
    return true;
}

std::size_t FrequencyGrid::bracket(double f_ghz) const {
    if (!std::isfinite(f_ghz) || f_ghz < points_.front() || f_ghz > points_.back()) {
        std::ostringstream msg;
        msg << f_ghz << " GHz is outside the grid range [" << points_.front() << ", "
            << points_.back() << "]";
        raise(Errc::FrequencyOutOfRange, msg.str());
    }
    if (points_.size() == 1) return 0;
    const auto it = std::upper_bound(points_.begin(), points_.end(), f_ghz);
    const std::size_t hi = static_cast<std::size_t>(it - points_.begin());
    if (hi == 0) return 0;
    if (hi >= points_.size()) return points_.size() - 2;
    return hi - 1;
}

DielectricSpectrum::DielectricSpectrum(FrequencyGrid grid, std::vector<double> eps_real,
                                       std::optional<std::vector<double>> eps_imag)
    : grid_(std::move(grid)), eps_real_(std::move(eps_real)), eps_imag_(std::move(eps_imag)) {
    if (eps_real_.size() != grid_.size()) {
        raise(Errc::ShapeMismatch, "eps_real length differs from grid length");
    }
    for (std::size_t i = 0; i < eps_real_.size(); ++i) {
        if (!std::isfinite(eps_real_[i]) || eps_real_[i] <= 1.0) {
            std::ostringstream msg;
            msg << "eps_real[" << i << "] = " << eps_real_[i]
                << " must be finite and > 1 (physical media exceed vacuum)";
            raise(Errc::InvalidValue, msg.str());
        }
    }
    if (eps_imag_) {
        if (eps_imag_->size() != grid_.size()) {
            raise(Errc::ShapeMismatch, "eps_imag length differs from grid length");
        }
        for (std::size_t i = 0; i < eps_imag_->size(); ++i) {
            if (!std::isfinite((*eps_imag_)[i]) || (*eps_imag_)[i] < 0.0) {
                std::ostringstream msg;
                msg << "eps_imag[" << i << "] = " << (*eps_imag_)[i] << " must be finite and >= 0";
                raise(Errc::InvalidValue, msg.str());
            }
        }
    }
}

double DielectricSpectrum::eps_real_at(double f_ghz) const {
    const std::size_t i = grid_.bracket(f_ghz);
    const double f0 = grid_[i];
    if (grid_.size() == 1 || f_ghz == f0) return eps_real_[i];
    const double f1 = grid_[i + 1];
    const double t = (f_ghz - f0) / (f1 - f0);
    return eps_real_[i] + t * (eps_real_[i + 1] - eps_real_[i]);
}

ReplicateSet::ReplicateSet(std::vector<DielectricSpectrum> replicates)
    : replicates_(std::move(replicates)) {
    if (replicates_.empty()) {
        raise(Errc::InsufficientReplicates, "replicate set must contain at least one spectrum");
    }
    for (std::size_t r = 1; r < replicates_.size(); ++r) {
        if (!replicates_[r].grid().approx_equal(replicates_[0].grid())) {
            std::ostringstream msg;
            msg << "replicate " << r << " is on a different frequency grid";
            raise(Errc::GridMismatch, msg.str());
        }
    }
}

DielectricSpectrum average_replicates(const ReplicateSet& r) {
    const auto& reps = r.replicates();
    const std::size_t n = reps.front().size();

    std::vector<const double*> rows(reps.size());
    for (std::size_t k = 0; k < reps.size(); ++k) rows[k] = reps[k].eps_real().data();
    std::vector<double> mean_real(n);
    kernels::active().mean_rows(rows.data(), rows.size(), mean_real.data(), n);

    const bool all_imag = std::all_of(reps.begin(), reps.end(),
                                      [](const DielectricSpectrum& s) { return s.has_imag(); });
    std::optional<std::vector<double>> mean_imag;
    if (all_imag) {
        for (std::size_t k = 0; k < reps.size(); ++k) rows[k] = reps[k].eps_imag()->data();
        mean_imag.emplace(n);
        kernels::active().mean_rows(rows.data(), rows.size(), mean_imag->data(), n);
    }
    return DielectricSpectrum(reps.front().grid(), std::move(mean_real), std::move(mean_imag));
}

std::vector<double> replicate_std(const ReplicateSet& r) {
    const auto& reps = r.replicates();
    if (reps.size() < 2) {
        raise(Errc::InsufficientReplicates,
              "per-frequency standard deviation needs at least 2 replicates");
    }
    std::vector<const double*> rows(reps.size());
    for (std::size_t k = 0; k < reps.size(); ++k) rows[k] = reps[k].eps_real().data();
    std::vector<double> out(reps.front().size());
    kernels::active().std_rows(rows.data(), rows.size(), out.data(), out.size());
    return out;
}

PotatoType PotatoType::other(std::string_view label) {
    PotatoType t(TypeKind::Other);
    t.label_ = trim_copy(label);
    if (t.label_.empty()) {
        raise(Errc::InvalidValue, "custom potato type label must be non-empty");
    }
    return t;
}

PotatoType PotatoType::parse(std::string_view text) {
    const std::string s = lower_copy(trim_copy(text));
    if (s == "red") return red();
    if (s == "russet") return russet();
    if (s == "yellow") return yellow();
    if (s == "purple") return purple();
    if (s == "chipper" || s == "chipping") return chipper();
    return other(s);
}

std::string PotatoType::name() const {
    switch (kind_) {
        case TypeKind::Red: return "red";
        case TypeKind::Russet: return "russet";
        case TypeKind::Yellow: return "yellow";
        case TypeKind::Purple: return "purple";
        case TypeKind::Chipper: return "chipper";
        case TypeKind::Other: return label_;
    }
    return label_;
}

std::string PotatoType::display_name() const {
    std::string n = name();
    if (!n.empty()) n[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(n[0])));
    return n;
}

const std::vector<PotatoType>& canonical_types() {
    static const std::vector<PotatoType> types = {
        PotatoType::red(), PotatoType::russet(), PotatoType::yellow(),
        PotatoType::purple(), PotatoType::chipper()};
    return types;
}

TuberSample::TuberSample(std::string id, PotatoType type, ReplicateSet replicates,
                         std::optional<double> w_air_g, std::optional<double> f_float_g,
                         std::optional<double> sg_direct, std::optional<double> temperature_c)
    : id_(std::move(id)),
      type_(std::move(type)),
      replicates_(std::move(replicates)),
      w_air_g_(w_air_g),
      f_float_g_(f_float_g),
      temperature_c_(temperature_c) {
    if (id_.empty()) {
        raise(Errc::InvalidValue, "sample id must be non-empty");
    }
    if (sg_direct) {
        sg_ = *sg_direct;
    } else if (w_air_g_ && f_float_g_) {
        sg_ = sg_buoyancy(*w_air_g_, *f_float_g_);
    } else {
        raise(Errc::InvalidValue,
              "sample '" + id_ + "' needs either sg or both w_air_g and f_float_g");
    }
    if (!std::isfinite(sg_) || sg_ <= 1.0 || sg_ >= 1.2) {
        std::ostringstream msg;
        msg << "sample '" << id_ << "' SG " << sg_ << " outside (1.0, 1.2)";
        raise(Errc::InvalidValue, msg.str());
    }
}

Dataset::Dataset(FrequencyGrid grid, std::vector<TuberSample> samples)
    : grid_(std::move(grid)), samples_(std::move(samples)) {
    std::set<std::string> ids;
    for (const auto& s : samples_) {
        if (!s.replicates().grid().approx_equal(grid_)) {
            raise(Errc::GridMismatch,
                  "sample '" + s.id() + "' replicate grid differs from dataset grid");
        }
        if (!ids.insert(s.id()).second) {
            raise(Errc::InvalidValue, "duplicate sample id '" + s.id() + "'");
        }
    }
}

}  // namespace tubersg
