#include "tubersg/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tubersg::io {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        raise(Errc::IoError, "cannot open '" + path.string() + "' for reading");
    }
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // '\n' line endings everywhere
    if (!out) {
        raise(Errc::IoError, "cannot open '" + path.string() + "' for writing");
    }
    return out;
}

void expect_header(const std::string& got, const std::string& want,
                   const std::filesystem::path& path) {
    if (trim(got) != want) {
        raise(Errc::ParseError,
              "'" + path.string() + "' line 1: expected header '" + want + "', got '" + trim(got) + "'");
    }
}

std::string row_context(const std::filesystem::path& path, std::size_t line_no, std::size_t col) {
    std::ostringstream msg;
    msg << "'" << path.string() << "' line " << line_no << ", column " << col;
    return msg.str();
}

std::vector<std::string> split_list(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == sep) {
            out.push_back(trim(text.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

}  // namespace

std::string format_shortest(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string format_sci17(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::scientific, 16);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, const std::string& context) {
    const std::string t = trim(text);
    double value = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || t.empty()) {
        raise(Errc::ParseError, context + ": '" + t + "' is not a number");
    }
    return value;
}

std::int64_t parse_int(std::string_view text, const std::string& context) {
    const std::string t = trim(text);
    std::int64_t value = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || t.empty()) {
        raise(Errc::ParseError, context + ": '" + t + "' is not an integer");
    }
    return value;
}

std::vector<std::string> split_csv_line(std::string_view line) {
    return split_list(line, ',');
}

std::vector<WeightsRow> read_weights_csv(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) {
        raise(Errc::ParseError, "'" + path.string() + "' is empty, expected a header line");
    }
    expect_header(line, "id,w_air_g,w_uww_g,f_float_g", path);

    std::vector<WeightsRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 4) {
            raise(Errc::ParseError, row_context(path, line_no, fields.size()) +
                                        ": expected 4 fields (id,w_air_g,w_uww_g,f_float_g)");
        }
        WeightsRow row;
        row.id = fields[0];
        row.line_no = line_no;
        if (row.id.empty()) {
            raise(Errc::ParseError, row_context(path, line_no, 1) + ": empty id");
        }
        row.w_air_g = parse_double(fields[1], row_context(path, line_no, 2));
        const bool has_uww = !fields[2].empty();
        const bool has_float = !fields[3].empty();
        if (has_uww == has_float) {
            raise(Errc::ParseError, row_context(path, line_no, 3) +
                                        ": exactly one of w_uww_g and f_float_g must be set");
        }
        if (has_uww) row.w_uww_g = parse_double(fields[2], row_context(path, line_no, 3));
        if (has_float) row.f_float_g = parse_double(fields[3], row_context(path, line_no, 4));
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_sg_results_csv(const std::filesystem::path& path, const std::vector<SgResultRow>& rows) {
    std::ofstream out = open_output(path);
    out << "id,sg,verdict\n";
    char buf[32];
    for (const auto& row : rows) {
        out << row.id << ',';
        if (row.sg) {
            std::snprintf(buf, sizeof(buf), "%.6f", *row.sg);
            out << buf;
        }
        out << ',' << row.verdict << '\n';
    }
}

void write_dataset(const std::filesystem::path& dir, const Dataset& ds) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        raise(Errc::IoError, "cannot create directory '" + dir.string() + "': " + ec.message());
    }

    std::ofstream manifest = open_output(dir / "manifest.csv");
    manifest << "id,type,w_air_g,f_float_g,temperature_c,replicates\n";
    for (const auto& sample : ds.samples()) {
        std::vector<std::string> rep_files;
        const auto& reps = sample.replicates().replicates();
        for (std::size_t r = 0; r < reps.size(); ++r) {
            std::string fname = sample.id() + "_r" + std::to_string(r + 1) + ".csv";
            std::ofstream spec = open_output(dir / fname);
            const bool with_imag = reps[r].has_imag();
            spec << (with_imag ? "f_ghz,eps_real,eps_imag\n" : "f_ghz,eps_real\n");
            for (std::size_t i = 0; i < reps[r].size(); ++i) {
                spec << format_shortest(reps[r].grid()[i]) << ','
                     << format_shortest(reps[r].eps_real()[i]);
                if (with_imag) spec << ',' << format_shortest((*reps[r].eps_imag())[i]);
                spec << '\n';
            }
            rep_files.push_back(std::move(fname));
        }
        manifest << sample.id() << ',' << sample.type().name() << ',';
        if (sample.w_air_g()) manifest << format_shortest(*sample.w_air_g());
        manifest << ',';
        if (sample.f_float_g()) manifest << format_shortest(*sample.f_float_g());
        manifest << ',';
        if (sample.temperature_c()) manifest << format_shortest(*sample.temperature_c());
        manifest << ',';
        for (std::size_t r = 0; r < rep_files.size(); ++r) {
            if (r > 0) manifest << ';';
            manifest << rep_files[r];
        }
        manifest << '\n';
    }
}

namespace {

DielectricSpectrum read_spectrum_csv(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) {
        raise(Errc::ParseError, "'" + path.string() + "' is empty, expected a header line");
    }
    const std::string header = trim(line);
    bool with_imag = false;
    if (header == "f_ghz,eps_real,eps_imag") {
        with_imag = true;
    } else if (header != "f_ghz,eps_real") {
        raise(Errc::ParseError, "'" + path.string() +
                                    "' line 1: expected header 'f_ghz,eps_real[,eps_imag]', got '" +
                                    header + "'");
    }

    std::vector<double> f, re, im;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        const std::size_t want = with_imag ? 3 : 2;
        if (fields.size() != want) {
            std::ostringstream msg;
            msg << row_context(path, line_no, fields.size()) << ": expected " << want << " fields";
            raise(Errc::ParseError, msg.str());
        }
        f.push_back(parse_double(fields[0], row_context(path, line_no, 1)));
        re.push_back(parse_double(fields[1], row_context(path, line_no, 2)));
        if (with_imag) im.push_back(parse_double(fields[2], row_context(path, line_no, 3)));
    }
    std::optional<std::vector<double>> imag;
    if (with_imag) imag = std::move(im);
    return DielectricSpectrum(FrequencyGrid(std::move(f)), std::move(re), std::move(imag));
}

}  // namespace

Dataset read_dataset(const std::filesystem::path& dir) {
    const std::filesystem::path manifest_path = dir / "manifest.csv";
    std::ifstream in = open_input(manifest_path);
    std::string line;
    if (!std::getline(in, line)) {
        raise(Errc::ParseError, "'" + manifest_path.string() + "' is empty, expected a header line");
    }
    expect_header(line, "id,type,w_air_g,f_float_g,temperature_c,replicates", manifest_path);

    std::vector<TuberSample> samples;
    std::optional<FrequencyGrid> grid;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 6) {
            raise(Errc::ParseError, row_context(manifest_path, line_no, fields.size()) +
                                        ": expected 6 fields");
        }
        const std::string& id = fields[0];
        const PotatoType type = PotatoType::parse(fields[1]);
        if (fields[2].empty() || fields[3].empty()) {
            raise(Errc::ParseError, row_context(manifest_path, line_no, 3) +
                                        ": w_air_g and f_float_g are required");
        }
        const double w_air = parse_double(fields[2], row_context(manifest_path, line_no, 3));
        const double f_float = parse_double(fields[3], row_context(manifest_path, line_no, 4));
        std::optional<double> temperature;
        if (!fields[4].empty()) {
            temperature = parse_double(fields[4], row_context(manifest_path, line_no, 5));
        }
        const auto rep_files = split_list(fields[5], ';');
        if (rep_files.empty() || rep_files.front().empty()) {
            raise(Errc::ParseError,
                  row_context(manifest_path, line_no, 6) + ": no replicate files listed");
        }
        std::vector<DielectricSpectrum> reps;
        reps.reserve(rep_files.size());
        for (const auto& fname : rep_files) {
            reps.push_back(read_spectrum_csv(dir / fname));
        }
        samples.emplace_back(id, type, ReplicateSet(std::move(reps)), w_air, f_float, std::nullopt,
                             temperature);
        if (!grid) grid = samples.back().replicates().grid();
    }
    if (samples.empty()) {
        raise(Errc::EmptyInput, "'" + manifest_path.string() + "' lists no samples");
    }
    return Dataset(std::move(*grid), std::move(samples));
}

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

void write_per_frequency_csv(const std::filesystem::path& path, const FrequencyErrors& errs) {
    std::ofstream out = open_output(path);
    out << "f_ghz,mae,mape_pct\n";
    for (std::size_t i = 0; i < errs.f_ghz.size(); ++i) {
        out << format_shortest(errs.f_ghz[i]) << ',' << format_shortest(errs.mae[i]) << ','
            << format_shortest(errs.mape_pct[i]) << '\n';
    }
}

void write_per_type_csv(const std::filesystem::path& path, const EvaluationReport& report) {
    std::ofstream out = open_output(path);
    out << "type,n,mae,mape_pct\n";
    out << "Total," << report.overall.n << ',' << format_shortest(report.overall.mae) << ','
        << format_shortest(report.overall.mape_pct) << '\n';
    for (const auto& te : report.per_type) {
        out << te.type.display_name() << ',' << te.n << ',' << format_shortest(te.mae) << ','
            << format_shortest(te.mape_pct) << '\n';
    }
}

void write_summary_text(const std::filesystem::path& path, const EvaluationReport& report) {
    std::ofstream out = open_output(path);
    out << "model: " << report.model_id << '\n';
    out << "dataset: " << report.dataset_id << " (" << report.overall.n << " samples, "
        << report.per_frequency.f_ghz.size() << " frequencies)\n";
    out << "overall: mae=" << fixed6(report.overall.mae)
        << " mape_pct=" << fixed6(report.overall.mape_pct) << " r2=" << fixed6(report.overall.r2)
        << '\n';
    if (!report.per_frequency.mae.empty()) {
        std::size_t max_mae = 0, max_mape = 0;
        for (std::size_t i = 1; i < report.per_frequency.mae.size(); ++i) {
            if (report.per_frequency.mae[i] > report.per_frequency.mae[max_mae]) max_mae = i;
            if (report.per_frequency.mape_pct[i] > report.per_frequency.mape_pct[max_mape]) {
                max_mape = i;
            }
        }
        out << "max per-frequency mae=" << fixed6(report.per_frequency.mae[max_mae]) << " at "
            << fixed6(report.per_frequency.f_ghz[max_mae]) << " GHz\n";
        out << "max per-frequency mape_pct=" << fixed6(report.per_frequency.mape_pct[max_mape])
            << " at " << fixed6(report.per_frequency.f_ghz[max_mape]) << " GHz\n";
    }
    out << "per type:\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "  %-8s n=%-4zu mae=%s mape_pct=%s\n", "Total",
                  report.overall.n, fixed6(report.overall.mae).c_str(),
                  fixed6(report.overall.mape_pct).c_str());
    out << buf;
    for (const auto& te : report.per_type) {
        std::snprintf(buf, sizeof(buf), "  %-8s n=%-4zu mae=%s mape_pct=%s\n",
                      te.type.display_name().c_str(), te.n, fixed6(te.mae).c_str(),
                      fixed6(te.mape_pct).c_str());
        out << buf;
    }
}

}  // namespace tubersg::io
