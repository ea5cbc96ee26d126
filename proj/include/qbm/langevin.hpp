#pragma once

// Langevin-channel quantities built on the spectral moment signals
//
//   S_k(t) = sum_v alpha_v^k w_v exp(-i alpha_v t),  k = 0, 1, 2,
//
// with S_0 = A_OmegaOmega, dS_0/dt = -i S_1 and d^2S_0/dt^2 = -S_2, all
// evaluated analytically.

#include <complex>
#include <vector>

#include "qbm/evolution.hpp"
#include "qbm/spectrum.hpp"
#include "qbm/timegrid.hpp"

namespace qbm {

struct LangevinInput {
    double x0 = 1.0;
    double p0 = 0.0;
    double mass = 1.0;

    bool operator==(const LangevinInput&) const = default;
};

void validate(const LangevinInput& inp);

std::complex<double> moment_signal(const Spectrum& spec, int order, double t);

struct CoefficientSample {
    double time = 0.0;
    double omega2 = 0.0;  // Omega^2(t)
    double gamma = 0.0;   // Gamma(t)
    bool denominator_ok = true;
};

// Relative threshold on |Re[conj(S_1) S_0]| against sum |alpha| w below which
// a sample is flagged.
inline constexpr double kDenominatorFloor = 1e-12;

// Omega^2(t) = Re[S_1 conj(S_2)] / Re[conj(S_1) S_0]
// Gamma(t)   = Im[conj(S_2) S_0] / Re[conj(S_1) S_0]
// These are the coefficients of  X'' + Gamma X' + Omega^2 X = 0  satisfied by
// both homogeneous solutions Re S_0 and Im S_0 of the mean path. Naive mode
// evaluates the equivalent double sums over (mu, nu) term by term.
CoefficientSample coefficients(const Spectrum& spec, double t, EvalMode mode = EvalMode::Fast,
                               bool allow_large = false);

std::vector<CoefficientSample> coefficient_series(const Spectrum& spec, const TimeGrid& grid);

// -2 Re[A'(t) / A(t)] with A' = -i S_1. Throws AmplitudeVanishes when
// |A(t)| <= 1e-12.
double gamma_from_survival(const Spectrum& spec, double t);

// sum_v w_v cos(alpha_v t) X(0) + sum_v w_v sin(alpha_v t) P(0)/M, taking the
// fluctuating force to have zero mean.
double mean_position(const Spectrum& spec, const LangevinInput& inp, double t);

TimeSeries position_series(const Spectrum& spec, const LangevinInput& inp, const TimeGrid& grid);

struct FitWindow {
    double begin = 1.0;
    double end = 20.0;
    std::size_t samples = 400;

    bool operator==(const FitWindow&) const = default;
};

struct GammaEstimate {
    double fitted = 0.0;        // least-squares slope of -ln|A|^2
    double intercept = 0.0;
    double residual_rms = 0.0;  // RMS deviation of -ln|A|^2 from the line
    double golden_rule = 0.0;   // 2 pi g(Omega)^2 / A
};

// Throws WindowTooShort when fewer than 16 samples are requested.
GammaEstimate estimate_gamma(const Spectrum& spec, const FitWindow& window);

// 2 pi g(Omega)^2 / A. For Lorentzian baths g(Omega) = A exactly; for explicit
// baths the mode nearest omega0 and its local grid spacing are used (NaN for
// N = 1).
double golden_rule_rate(const DiscretizedBath& bath, double omega0);

struct RecurrenceTime {
    double t_r = 0.0;        // 2 pi / min adjacent gap
    double tau_omega = 0.0;  // 2 pi / omega0
    double min_gap = 0.0;
};

RecurrenceTime recurrence_time(const Spectrum& spec);

}  // namespace qbm
