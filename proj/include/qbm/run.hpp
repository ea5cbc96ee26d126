#pragma once

// Run orchestration: builds the model from a RunConfig, evaluates the
// requested products and writes deterministic CSV files plus a gnuplot script.
//
// CSV schema: a header row, then one record per grid point; floating-point
// fields use 17 significant digits in scientific notation ("%.16e").

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "qbm/config.hpp"
#include "qbm/langevin.hpp"
#include "qbm/spectrum.hpp"
#include "qbm/timegrid.hpp"

namespace qbm {

struct Report {
    std::size_t eigenvalue_count = 0;
    double sum_rule_m0_residual = 0.0;  // |sum w - 1|
    double sum_rule_m1_residual = 0.0;  // |sum alpha w - Omega|
    double sum_rule_m2_residual = 0.0;  // relative
    GammaEstimate gamma;
    RecurrenceTime recurrence;
    double plateau_mean = 0.0;
    double plateau_expected = 0.0;  // 1 / (exp(beta Omega) - 1)
    double revival_peak = 0.0;      // max |A|^2 over [0.9 t_r, 1.1 t_r]
    double revival_baseline = 0.0;  // median |A|^2 over [100, 1000]
};

// Grid step used for the recurrence scan in the report.
inline constexpr double kLongGridStep = 0.25;

Report make_report(const RunConfig& config, const Spectrum& spec, const InitialOccupations& occ0);
std::string format_report(const Report& report, const RunConfig& config);

// Bath + occupations as configured (thermal unless overridden).
InitialOccupations initial_occupations(const RunConfig& config, const DiscretizedBath& bath);

std::string format_csv_double(double x);
void write_spectrum_csv(std::ostream& out, const Spectrum& spec);
void write_series_csv(std::ostream& out, const TimeSeries& series);
void write_coefficients_csv(std::ostream& out, const std::vector<CoefficientSample>& samples);

// Writes every requested product under out_dir and returns the written paths
// in a fixed order. Throws Error on failure.
std::vector<std::filesystem::path> run(const RunConfig& config);

// gnuplot script (plot.gp) with one panel per curve product, reading the CSVs
// already present in out_dir. Throws MissingProduct when nothing plottable is
// requested or a referenced CSV is absent.
std::filesystem::path emit_plot_script(const std::vector<Product>& products,
                                       const std::filesystem::path& out_dir);

}  // namespace qbm
