#pragma once

// Loss-curve CSV files.
//
//   d,l_hat,stderr,reps,a,J,M,K,N,seed
//
// UTF-8, LF line endings, '.' decimal separator, reals printed with 17
// significant digits so that parsing restores them exactly.

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bucb/errors.hpp"
#include "bucb/sweep.hpp"

namespace bucb {

inline constexpr std::string_view kCurveCsvHeader = "d,l_hat,stderr,reps,a,J,M,K,N,seed";

inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// One parsed CSV row.
struct CurveRow {
    double d = 0.0;
    double l_hat = 0.0;
    double std_error = 0.0;
    std::uint64_t reps = 0;
    double a = 0.0;
    std::uint64_t J = 0;
    std::uint64_t M = 0;
    std::uint64_t K = 0;
    std::uint64_t N = 0;
    std::uint64_t seed = 0;

    bool operator==(const CurveRow&) const = default;
};

inline std::string render_curve_csv(const LossCurve& curve, const SweepConfig& config) {
    std::ostringstream os;
    os << kCurveCsvHeader << '\n';
    if (curve.points.empty()) return os.str();
    const BatchGrid grid = config.grid();
    for (const auto& p : curve.points) {
        os << format_real(p.d) << ',' << format_real(p.estimate.mean) << ',' << format_real(p.estimate.std_error)
           << ',' << p.estimate.reps << ',' << format_real(config.a) << ',' << grid.arms() << ','
           << grid.batch_size() << ',' << grid.batches() << ',' << grid.horizon() << ',' << config.master_seed
           << '\n';
    }
    return os.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

inline void emit_csv(const LossCurve& curve, const SweepConfig& config, const std::filesystem::path& path) {
    write_text_file(path, render_curve_csv(curve, config));
}

namespace detail {
inline double parse_real(const std::string& field, std::size_t line) {
    if (field.empty()) throw ParseError("empty numeric field", line);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size() || errno == ERANGE) {
        throw ParseError("invalid real '" + field + "'", line);
    }
    return v;
}

inline std::uint64_t parse_unsigned(const std::string& field, std::size_t line) {
    if (field.empty() || field[0] == '-' || field[0] == '+') throw ParseError("invalid integer '" + field + "'", line);
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(field.c_str(), &end, 10);
    if (end != field.c_str() + field.size() || errno == ERANGE) {
        throw ParseError("invalid integer '" + field + "'", line);
    }
    return v;
}
}  // namespace detail

inline std::vector<CurveRow> parse_curve_csv(std::string_view text) {
    std::vector<CurveRow> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool saw_header = false;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string line(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!saw_header) {
            if (line != kCurveCsvHeader) throw ParseError("unexpected header", line_no);
            saw_header = true;
            continue;
        }
        if (line.empty()) continue;

        std::vector<std::string> f;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            f.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (f.size() != 10) {
            throw ParseError("expected 10 fields, found " + std::to_string(f.size()), line_no);
        }
        CurveRow r;
        r.d = detail::parse_real(f[0], line_no);
        r.l_hat = detail::parse_real(f[1], line_no);
        r.std_error = detail::parse_real(f[2], line_no);
        r.reps = detail::parse_unsigned(f[3], line_no);
        r.a = detail::parse_real(f[4], line_no);
        r.J = detail::parse_unsigned(f[5], line_no);
        r.M = detail::parse_unsigned(f[6], line_no);
        r.K = detail::parse_unsigned(f[7], line_no);
        r.N = detail::parse_unsigned(f[8], line_no);
        r.seed = detail::parse_unsigned(f[9], line_no);
        rows.push_back(r);
    }
    if (!saw_header) throw ParseError("missing header", 1);
    return rows;
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::vector<CurveRow> read_curve_csv(const std::filesystem::path& path) {
    return parse_curve_csv(read_text_file(path));
}

}  // namespace bucb
