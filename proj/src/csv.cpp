#include "agdn/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string_view>

namespace agdn {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace

std::vector<IoSample> read_samples(std::istream& in) {
    std::vector<IoSample> out;
    std::string line;
    std::size_t lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        const auto view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        const auto comma = view.find(',');
        const bool two_fields = comma != std::string_view::npos && view.find(',', comma + 1) == std::string_view::npos;
        const auto x = two_fields ? parse_number(view.substr(0, comma)) : std::nullopt;
        const auto y = two_fields ? parse_number(view.substr(comma + 1)) : std::nullopt;
        if (x && y) {
            out.push_back({*x, *y});
        } else if (!(first && two_fields)) {
            throw CsvError("line " + std::to_string(lineno) + ": expected two numeric columns x,y");
        }
        first = false;
    }
    if (out.empty()) throw CsvError("no samples found");
    return out;
}

std::vector<IoSample> read_samples_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open '" + path + "'");
    return read_samples(in);
}

std::string format_number(double v) {
    if (std::isnan(v)) return {};
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return ec == std::errc() ? std::string(buf, ptr) : std::string();
}

void write_samples(std::ostream& out, const std::vector<IoSample>& samples) {
    out << "x,y\n";
    for (const auto& s : samples) out << format_number(s.x) << ',' << format_number(s.y) << '\n';
}

void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << kSweepHeader << '\n';
    for (const auto& r : rows) {
        out << format_number(r.snr_db) << ',' << format_number(r.pe_upper_theory) << ','
            << format_number(r.pe_lower_theory) << ',' << format_number(r.pe_awgn_theory) << ','
            << format_number(r.pe_empirical) << ',' << format_number(r.ci_half_width) << ',' << r.trials << '\n';
    }
}

void write_comparison(std::ostream& out, const std::vector<ComparisonRow>& rows) {
    out << kComparisonHeader << '\n';
    for (const auto& r : rows) {
        out << format_number(r.snr_db) << ',' << format_number(r.threshold_optimal) << ','
            << format_number(r.threshold_min_distance) << ',' << format_number(r.theory_optimal.pe_upper) << ','
            << format_number(r.theory_optimal.pe_lower) << ',' << format_number(r.theory_min_distance.pe_upper) << ','
            << format_number(r.theory_min_distance.pe_lower) << ',' << format_number(r.optimal.rate) << ','
            << format_number(r.optimal.ci_half_width) << ',' << format_number(r.min_distance.rate) << ','
            << format_number(r.min_distance.ci_half_width) << ',' << r.optimal.trials << '\n';
    }
}

}  // namespace agdn
