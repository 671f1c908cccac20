#include "tubersg/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "tubersg/io.hpp"
#include "tubersg/kernels.hpp"

namespace tubersg {

Estimate estimate_sg(const SgModel& m, double eps_real, double f_ghz) {
    if (!std::isfinite(f_ghz) || !m.in_range(f_ghz)) {
        std::ostringstream msg;
        msg << f_ghz << " GHz outside model range [" << m.f_lo() << ", " << m.f_hi() << "]";
        raise(Errc::FrequencyOutOfRange, msg.str());
    }
    if (!std::isfinite(eps_real) || eps_real <= 1.0) {
        std::ostringstream msg;
        msg << "eps' = " << eps_real << " must be finite and > 1";
        raise(Errc::InvalidPermittivity, msg.str());
    }
    Estimate est;
    est.frequency_ghz = f_ghz;
    est.c1_used = eval_poly(m.c1_poly(), f_ghz);
    est.c2_used = eval_poly(m.c2_poly(), f_ghz);
    est.sg = est.c1_used * eps_real + est.c2_used;
    est.flags = validate_sg(est.sg);
    return est;
}

std::vector<Estimate> estimate_batch(const SgModel& m, const Dataset& ds, double f_ghz) {
    std::vector<Estimate> out;
    out.reserve(ds.size());
    for (const auto& sample : ds.samples()) {
        try {
            const DielectricSpectrum avg = average_replicates(sample.replicates());
            Estimate est = estimate_sg(m, avg.eps_real_at(f_ghz), f_ghz);
            est.sample_id = sample.id();
            out.push_back(std::move(est));
        } catch (const Error& e) {
            throw Error(e.code(), "sample '" + sample.id() + "': " + e.what());
        }
    }
    return out;
}

double sensitivity_at(const SgModel& m, double delta_eps, double f_ghz) {
    if (!std::isfinite(delta_eps) || delta_eps < 0.0) {
        raise(Errc::InvalidValue, "delta_eps must be finite and >= 0");
    }
    if (!std::isfinite(f_ghz) || !m.in_range(f_ghz)) {
        std::ostringstream msg;
        msg << f_ghz << " GHz outside model range [" << m.f_lo() << ", " << m.f_hi() << "]";
        raise(Errc::FrequencyOutOfRange, msg.str());
    }
    return std::fabs(eval_poly(m.c1_poly(), f_ghz)) * delta_eps;
}

SensitivityScan sensitivity_band(const SgModel& m, double delta_eps, double f_lo_ghz,
                                 double f_hi_ghz, std::size_t npoints) {
    if (!std::isfinite(delta_eps) || delta_eps < 0.0) {
        raise(Errc::InvalidValue, "delta_eps must be finite and >= 0");
    }
    if (!m.in_range(f_lo_ghz) || !m.in_range(f_hi_ghz) || !(f_lo_ghz < f_hi_ghz)) {
        std::ostringstream msg;
        msg << "band [" << f_lo_ghz << ", " << f_hi_ghz << "] GHz must lie inside the model range ["
            << m.f_lo() << ", " << m.f_hi() << "]";
        raise(Errc::FrequencyOutOfRange, msg.str());
    }
    const FrequencyGrid scan = FrequencyGrid::uniform(f_lo_ghz, f_hi_ghz, npoints);
    const std::vector<double> c1 = eval_poly_grid(m.c1_poly(), scan);

    SensitivityScan out;
    out.f_ghz = scan.points();
    out.abs_c1.resize(c1.size());
    out.delta_sg.resize(c1.size());
    out.max_delta_sg = -1.0;
    for (std::size_t i = 0; i < c1.size(); ++i) {
        out.abs_c1[i] = std::fabs(c1[i]);
        out.delta_sg[i] = out.abs_c1[i] * delta_eps;
        if (out.delta_sg[i] > out.max_delta_sg) {
            out.max_delta_sg = out.delta_sg[i];
            out.argmax_f_ghz = scan[i];
        }
    }
    return out;
}

namespace {

constexpr const char* kCoeffKeys[2][5] = {
    {"c1_a0", "c1_a1", "c1_a2", "c1_a3", "c1_a4"},
    {"c2_a0", "c2_a1", "c2_a2", "c2_a3", "c2_a4"},
};

}  // namespace

void save_model(const SgModel& m, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        raise(Errc::IoError, "cannot open '" + path.string() + "' for writing");
    }
    out << "format_version = " << SgModel::kFormatVersion << '\n';
    out << "f_lo_ghz = " << io::format_sci17(m.f_lo()) << '\n';
    out << "f_hi_ghz = " << io::format_sci17(m.f_hi()) << '\n';
    for (std::size_t k = 0; k < Poly4::kNumCoeffs; ++k) {
        out << kCoeffKeys[0][k] << " = " << io::format_sci17(m.c1_poly().coeffs()[k]) << '\n';
    }
    for (std::size_t k = 0; k < Poly4::kNumCoeffs; ++k) {
        out << kCoeffKeys[1][k] << " = " << io::format_sci17(m.c2_poly().coeffs()[k]) << '\n';
    }
    if (!m.source().empty()) out << "source = " << m.source() << '\n';
    if (m.n_train()) out << "n_train = " << *m.n_train() << '\n';
    if (m.created_utc()) out << "created_utc = " << *m.created_utc() << '\n';
    if (!out) {
        raise(Errc::IoError, "failed writing '" + path.string() + "'");
    }
}

SgModel load_model(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) {
        raise(Errc::IoError, "cannot open model file '" + path.string() + "'");
    }

    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        std::string_view view = line;
        while (!view.empty() && (view.front() == ' ' || view.front() == '\t')) view.remove_prefix(1);
        if (view.empty() || view.front() == '#') continue;
        const std::size_t eq = view.find('=');
        if (eq == std::string_view::npos) {
            std::ostringstream msg;
            msg << "'" << path.string() << "' line " << line_no << ": expected 'key = value'";
            raise(Errc::MalformedModelFile, msg.str());
        }
        auto strip = [](std::string_view s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
            return std::string(s);
        };
        const std::string key = strip(view.substr(0, eq));
        const std::string value = strip(view.substr(eq + 1));
        if (key.empty() || value.empty()) {
            std::ostringstream msg;
            msg << "'" << path.string() << "' line " << line_no << ": empty key or value";
            raise(Errc::MalformedModelFile, msg.str());
        }
        if (!kv.emplace(key, value).second) {
            raise(Errc::MalformedModelFile,
                  "'" + path.string() + "': duplicate key '" + key + "'");
        }
    }

    const auto version_it = kv.find("format_version");
    if (version_it == kv.end()) {
        raise(Errc::MalformedModelFile, "'" + path.string() + "': missing format_version");
    }
    if (version_it->second != std::to_string(SgModel::kFormatVersion)) {
        raise(Errc::UnsupportedVersion,
              "'" + path.string() + "': format_version " + version_it->second +
                  " is not supported (expected " + std::to_string(SgModel::kFormatVersion) + ")");
    }

    const std::vector<std::string> known = {
        "format_version", "f_lo_ghz", "f_hi_ghz", "c1_a0", "c1_a1", "c1_a2", "c1_a3", "c1_a4",
        "c2_a0", "c2_a1", "c2_a2", "c2_a3", "c2_a4", "source", "n_train", "created_utc"};
    for (const auto& [key, value] : kv) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            raise(Errc::MalformedModelFile,
                  "'" + path.string() + "': unknown key '" + key + "' under format_version 1");
        }
    }

    auto require = [&](const std::string& key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end()) {
            raise(Errc::MalformedModelFile, "'" + path.string() + "': missing key '" + key + "'");
        }
        return it->second;
    };
    auto number = [&](const std::string& key) {
        try {
            return io::parse_double(require(key), "key '" + key + "'");
        } catch (const Error& e) {
            if (e.code() == Errc::ParseError) {
                throw Error(Errc::MalformedModelFile, "'" + path.string() + "': " + e.what());
            }
            throw;
        }
    };

    const double f_lo = number("f_lo_ghz");
    const double f_hi = number("f_hi_ghz");
    std::array<double, Poly4::kNumCoeffs> c1{}, c2{};
    for (std::size_t k = 0; k < Poly4::kNumCoeffs; ++k) {
        c1[k] = number(kCoeffKeys[0][k]);
        c2[k] = number(kCoeffKeys[1][k]);
    }

    std::string source;
    if (const auto it = kv.find("source"); it != kv.end()) source = it->second;
    std::optional<std::int64_t> n_train;
    if (const auto it = kv.find("n_train"); it != kv.end()) {
        try {
            n_train = io::parse_int(it->second, "key 'n_train'");
        } catch (const Error& e) {
            throw Error(Errc::MalformedModelFile, "'" + path.string() + "': " + e.what());
        }
    }
    std::optional<std::string> created;
    if (const auto it = kv.find("created_utc"); it != kv.end()) created = it->second;

    try {
        SgModel model(Poly4(c1, f_lo, f_hi), Poly4(c2, f_lo, f_hi), std::move(source), n_train,
                      std::move(created));
        if (warnings != nullptr) {
            if (auto w = model.c1_sign_warning()) warnings->push_back(*w);
        }
        return model;
    } catch (const Error& e) {
        if (e.code() == Errc::InvalidValue) {
            throw Error(Errc::MalformedModelFile, "'" + path.string() + "': " + e.what());
        }
        throw;
    }
}

}  // namespace tubersg
