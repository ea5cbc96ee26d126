#include "qbm/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "qbm/error.hpp"
#include "qbm/evolution.hpp"
#include "qbm/parallel.hpp"

namespace qbm {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    return out;
}

void close_output(std::ofstream& out, const fs::path& path) {
    out.close();
    if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

double median(std::vector<double> xs) {
    if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
    const auto mid = xs.begin() + static_cast<std::ptrdiff_t>(xs.size() / 2);
    std::nth_element(xs.begin(), mid, xs.end());
    if (xs.size() % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(xs.begin(), mid);
    return 0.5 * (lower + upper);
}

std::vector<double> survival_on(const Spectrum& spec, const TimeGrid& grid) {
    std::vector<double> out(grid.size());
    parallel_for(out.size(), [&](std::size_t i) { out[i] = std::norm(survival_amplitude(spec, grid.at(i))); });
    return out;
}

bool wants(const RunConfig& c, Product p) {
    return std::find(c.outputs.begin(), c.outputs.end(), p) != c.outputs.end();
}

}  // namespace

InitialOccupations initial_occupations(const RunConfig& config, const DiscretizedBath& bath) {
    if (config.bath_occupations) {
        InitialOccupations occ{config.n_omega0, *config.bath_occupations};
        validate(occ, bath.size());
        return occ;
    }
    return thermal_occupations(bath, config.model.beta, config.n_omega0);
}

Report make_report(const RunConfig& config, const Spectrum& spec, const InitialOccupations& occ0) {
    Report r;
    r.eigenvalue_count = spec.size();
    const auto rules = sum_rules(spec);
    r.sum_rule_m0_residual = std::abs(rules.m0 - 1.0);
    r.sum_rule_m1_residual = std::abs(rules.m1 - rules.expected_m1);
    r.sum_rule_m2_residual = std::abs(rules.m2 - rules.expected_m2) / std::abs(rules.expected_m2);
    r.gamma = estimate_gamma(spec, config.fit);
    r.recurrence = recurrence_time(spec);

    const auto plateau_grid = span_grid(config.plateau_start, config.plateau_end, config.grid.t_step);
    const auto decomposition = population_decomposition(spec, occ0, plateau_grid);
    double sum = 0.0;
    for (const auto& s : decomposition.total.samples) sum += s.value;
    r.plateau_mean = sum / static_cast<double>(decomposition.total.samples.size());
    r.plateau_expected = bose_einstein(config.model.omega0, config.model.beta);

    constexpr double kMaxLongGridPoints = 5e7;
    const double t_r = r.recurrence.t_r;
    if (std::isfinite(t_r) && 0.2 * t_r / kLongGridStep < kMaxLongGridPoints) {
        const auto peak = survival_on(spec, span_grid(0.9 * t_r, 1.1 * t_r, kLongGridStep));
        r.revival_peak = *std::max_element(peak.begin(), peak.end());
        r.revival_baseline = median(survival_on(spec, span_grid(100.0, 1000.0, kLongGridStep)));
    } else {
        r.revival_peak = std::numeric_limits<double>::quiet_NaN();
        r.revival_baseline = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

std::string format_report(const Report& r, const RunConfig& c) {
    std::ostringstream out;
    auto line = [&](const char* key, double v) { out << key << " = " << format_csv_double(v) << '\n'; };
    out << "# quantum Brownian motion run report\n";
    out << "eigenvalue_count = " << r.eigenvalue_count << '\n';
    line("sum_rule_m0_residual", r.sum_rule_m0_residual);
    line("sum_rule_m1_residual", r.sum_rule_m1_residual);
    line("sum_rule_m2_relative_residual", r.sum_rule_m2_residual);
    line("fit_start", c.fit.begin);
    line("fit_end", c.fit.end);
    line("gamma_fitted", r.gamma.fitted);
    line("gamma_fit_residual_rms", r.gamma.residual_rms);
    line("gamma_golden_rule", r.gamma.golden_rule);
    line("recurrence_time", r.recurrence.t_r);
    line("min_eigenvalue_gap", r.recurrence.min_gap);
    line("oscillator_period", r.recurrence.tau_omega);
    line("recurrence_over_period", r.recurrence.t_r / r.recurrence.tau_omega);
    line("plateau_start", c.plateau_start);
    line("plateau_end", c.plateau_end);
    line("plateau_mean", r.plateau_mean);
    line("plateau_bose_einstein", r.plateau_expected);
    line("revival_peak", r.revival_peak);
    line("revival_baseline_median", r.revival_baseline);
    return out.str();
}

std::string format_csv_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spec) {
    out << "nu,alpha,weight\n";
    for (std::size_t nu = 0; nu < spec.size(); ++nu)
        out << nu << ',' << format_csv_double(spec.alphas[nu]) << ','
            << format_csv_double(spec.weights[nu]) << '\n';
}

void write_series_csv(std::ostream& out, const TimeSeries& series) {
    out << "t,value\n";
    for (const auto& s : series.samples) {
        out << format_csv_double(s.t) << ',';
        if (!s.flagged) out << format_csv_double(s.value);
        out << '\n';
    }
}

void write_coefficients_csv(std::ostream& out, const std::vector<CoefficientSample>& samples) {
    out << "t,omega2,gamma,denominator_ok\n";
    for (const auto& s : samples) {
        out << format_csv_double(s.time) << ',';
        if (s.denominator_ok)
            out << format_csv_double(s.omega2) << ',' << format_csv_double(s.gamma) << ",1\n";
        else
            out << ",,0\n";
    }
}

std::vector<fs::path> run(const RunConfig& config) {
    validate(config);
    const DiscretizedBath bath = build_bath(config.model);
    const InitialOccupations occ0 = initial_occupations(config, bath);
    const Spectrum spec = solve_spectrum(bath, config.model.omega0);

    const fs::path dir(config.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create '" + dir.string() + "': " + ec.message());

    std::vector<fs::path> written;
    auto emit = [&](const std::string& name, auto&& writer) {
        const fs::path path = dir / name;
        auto out = open_output(path);
        writer(out);
        close_output(out, path);
        written.push_back(path);
    };

    if (wants(config, Product::Spectrum))
        emit("spectrum.csv", [&](std::ostream& o) { write_spectrum_csv(o, spec); });

    if (wants(config, Product::Population) || wants(config, Product::Survival)) {
        const auto parts = population_decomposition(spec, occ0, config.grid);
        if (wants(config, Product::Population))
            emit("population.csv", [&](std::ostream& o) { write_series_csv(o, parts.total); });
        if (wants(config, Product::Survival)) {
            emit("survival.csv", [&](std::ostream& o) { write_series_csv(o, parts.survival); });
            emit("bath_contribution.csv", [&](std::ostream& o) { write_series_csv(o, parts.bath); });
        }
    }

    if (wants(config, Product::Position)) {
        const auto series = position_series(spec, config.langevin, config.grid);
        emit("position.csv", [&](std::ostream& o) { write_series_csv(o, series); });
    }

    if (wants(config, Product::Coefficients)) {
        const auto samples = coefficient_series(spec, config.grid);
        emit("coefficients.csv", [&](std::ostream& o) { write_coefficients_csv(o, samples); });
    }

    if (wants(config, Product::Report)) {
        const auto report = make_report(config, spec, occ0);
        emit("report.txt", [&](std::ostream& o) { o << format_report(report, config); });
    }

    std::vector<Product> curves;
    for (Product p : config.outputs)
        if (p != Product::Spectrum && p != Product::Report) curves.push_back(p);
    if (!curves.empty()) written.push_back(emit_plot_script(curves, dir));
    return written;
}

fs::path emit_plot_script(const std::vector<Product>& products, const fs::path& out_dir) {
    struct Panel {
        std::string title;
        std::string ylabel;
        std::vector<std::pair<std::string, std::string>> curves;  // file, using-spec
        std::vector<std::string> labels;
    };

    std::vector<Panel> panels;
    for (Product p : products) {
        switch (p) {
            case Product::Population:
                panels.push_back({"Population of the Brownian oscillator vs. t", "⟨N_Ω⟩",
                                  {{"population.csv", "1:2"}}, {"⟨N_Ω⟩"}});
                break;
            case Product::Survival:
                panels.push_back({"Survival probability vs. t", "⟨N_Ω⟩ contributions",
                                  {{"survival.csv", "1:2"}, {"bath_contribution.csv", "1:2"}},
                                  {"P_{ΩΩ}(t)⟨N_Ω(0)⟩", "Σ_n P_{Ωn}(t)⟨N_n(0)⟩"}});
                break;
            case Product::Position:
                panels.push_back({"Mean position of the Brownian oscillator vs. t", "X(t)",
                                  {{"position.csv", "1:2"}}, {"X(t)"}});
                break;
            case Product::Coefficients:
                panels.push_back({"Damping factor of the Langevin equation vs. t", "Γ(t)",
                                  {{"coefficients.csv", "1:3"}}, {"Γ(t)"}});
                break;
            case Product::Spectrum:
            case Product::Report:
                break;
        }
    }
    if (panels.empty())
        throw Error(ErrorCode::MissingProduct, "no plottable product requested");
    for (const auto& panel : panels)
        for (const auto& [file, cols] : panel.curves)
            if (!fs::exists(out_dir / file))
                throw Error(ErrorCode::MissingProduct, "'" + (out_dir / file).string() + "' does not exist");

    std::ostringstream gp;
    gp << "# gnuplot script generated by qbm; run from this directory: gnuplot plot.gp\n";
    gp << "set encoding utf8\n";
    gp << "set terminal pngcairo enhanced size 900," << 300 * panels.size() << "\n";
    gp << "set output 'figures.png'\n";
    gp << "set datafile separator ','\n";
    gp << "set datafile missing ''\n";
    gp << "set multiplot layout " << panels.size() << ",1\n";
    for (const auto& panel : panels) {
        gp << "set title '" << panel.title << "'\n";
        gp << "set xlabel 't'\n";
        gp << "set ylabel '" << panel.ylabel << "'\n";
        gp << (panel.curves.size() > 1 ? "set key top right\n" : "set key off\n");
        gp << "plot ";
        for (std::size_t i = 0; i < panel.curves.size(); ++i) {
            if (i) gp << ", \\\n     ";
            gp << "'" << panel.curves[i].first << "' every ::1 using " << panel.curves[i].second
               << " with lines title '" << panel.labels[i] << "'";
        }
        gp << '\n';
    }
    gp << "unset multiplot\n";

    const fs::path path = out_dir / "plot.gp";
    auto out = open_output(path);
    out << gp.str();
    close_output(out, path);
    return path;
}

}  // namespace qbm
