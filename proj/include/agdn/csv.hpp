#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "agdn/estimation.hpp"
#include "agdn/experiments.hpp"

namespace agdn {

class CsvError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two numeric columns x,y. A non-numeric first row is taken as a header;
/// blank lines and lines starting with '#' are skipped.
std::vector<IoSample> read_samples(std::istream& in);
std::vector<IoSample> read_samples_file(const std::string& path);

/// '.' decimal point, 17 significant digits, no locale. NaN prints as an
/// empty cell.
std::string format_number(double v);

void write_samples(std::ostream& out, const std::vector<IoSample>& samples);

inline constexpr const char* kSweepHeader =
    "snr_db,pe_upper_theory,pe_lower_theory,pe_awgn_theory,pe_empirical,ci_half_width,trials";
void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows);

inline constexpr const char* kComparisonHeader =
    "snr_db,threshold_optimal,threshold_min_distance,pe_upper_optimal,pe_lower_optimal,pe_upper_min_distance,"
    "pe_lower_min_distance,pe_empirical_optimal,ci_half_width_optimal,pe_empirical_min_distance,"
    "ci_half_width_min_distance,trials";
void write_comparison(std::ostream& out, const std::vector<ComparisonRow>& rows);

}  // namespace agdn
