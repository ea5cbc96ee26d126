#include "qbm/langevin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qbm/error.hpp"
#include "qbm/kernels/kernels.hpp"
#include "qbm/parallel.hpp"

namespace qbm {

void validate(const LangevinInput& inp) {
    if (!(inp.mass > 0.0) || !std::isfinite(inp.mass))
        throw Error(ErrorCode::InvalidValue, "mass must be > 0");
    if (!std::isfinite(inp.x0) || !std::isfinite(inp.p0))
        throw Error(ErrorCode::InvalidValue, "X0 and P0 must be finite");
}

std::complex<double> moment_signal(const Spectrum& spec, int order, double t) {
    const auto s = kernels::active().spectral_sums(spec.alphas, spec.weights, t);
    switch (order) {
        case 0: return s.s0;
        case 1: return s.s1;
        case 2: return s.s2;
        default:
            throw Error(ErrorCode::IndexOutOfRange,
                        "moment order must be 0, 1 or 2, got " + std::to_string(order));
    }
}

namespace {

double abs_first_moment(const Spectrum& spec) {
    double s = 0.0;
    for (std::size_t nu = 0; nu < spec.size(); ++nu) s += std::abs(spec.alphas[nu]) * spec.weights[nu];
    return s;
}

CoefficientSample finish(double t, double num_omega2, double num_gamma, double den, double scale) {
    CoefficientSample out;
    out.time = t;
    out.denominator_ok = std::abs(den) >= kDenominatorFloor * scale;
    if (out.denominator_ok) {
        out.omega2 = num_omega2 / den;
        out.gamma = num_gamma / den;
    } else {
        out.omega2 = std::numeric_limits<double>::quiet_NaN();
        out.gamma = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

CoefficientSample naive_coefficients(const Spectrum& spec, double t) {
    const auto& a = spec.alphas;
    const auto& w = spec.weights;
    double num_omega2 = 0.0, num_gamma = 0.0, den = 0.0;
    for (std::size_t mu = 0; mu < spec.size(); ++mu) {
        for (std::size_t nu = 0; nu < spec.size(); ++nu) {
            const double ww = 1.0 / (1.0 / w[mu] * (1.0 / w[nu]));
            const double c = std::cos((a[nu] - a[mu]) * t);
            const double s = std::sin((a[nu] - a[mu]) * t);
            num_omega2 += c * a[nu] * a[mu] * a[mu] * ww;
            num_gamma += s * a[nu] * a[nu] * ww;
            den += c * a[nu] * ww;
        }
    }
    return finish(t, num_omega2, num_gamma, den, abs_first_moment(spec));
}

}  // namespace

CoefficientSample coefficients(const Spectrum& spec, double t, EvalMode mode, bool allow_large) {
    if (mode == EvalMode::Naive) {
        if (spec.bath.size() > kNaiveSizeLimit && !allow_large)
            throw Error(ErrorCode::SizeGuard, "naive coefficient evaluation limited to N <= " +
                                                  std::to_string(kNaiveSizeLimit));
        return naive_coefficients(spec, t);
    }
    const auto s = kernels::active().spectral_sums(spec.alphas, spec.weights, t);
    const double den = (std::conj(s.s1) * s.s0).real();
    const double num_omega2 = (s.s1 * std::conj(s.s2)).real();
    const double num_gamma = (std::conj(s.s2) * s.s0).imag();
    return finish(t, num_omega2, num_gamma, den, abs_first_moment(spec));
}

std::vector<CoefficientSample> coefficient_series(const Spectrum& spec, const TimeGrid& grid) {
    validate(grid);
    std::vector<CoefficientSample> out(grid.size());
    parallel_for(out.size(), [&](std::size_t i) { out[i] = coefficients(spec, grid.at(i)); });
    return out;
}

double gamma_from_survival(const Spectrum& spec, double t) {
    const auto s = kernels::active().spectral_sums(spec.alphas, spec.weights, t);
    if (std::abs(s.s0) <= 1e-12)
        throw Error(ErrorCode::AmplitudeVanishes, "|A(t)| <= 1e-12 at t = " + std::to_string(t));
    const std::complex<double> derivative = -std::complex<double>(0.0, 1.0) * s.s1;
    return -2.0 * (derivative / s.s0).real();
}

double mean_position(const Spectrum& spec, const LangevinInput& inp, double t) {
    const auto s0 = survival_amplitude(spec, t);
    // Re S_0 = sum w cos(alpha t), -Im S_0 = sum w sin(alpha t)
    return s0.real() * inp.x0 - s0.imag() * inp.p0 / inp.mass;
}

TimeSeries position_series(const Spectrum& spec, const LangevinInput& inp, const TimeGrid& grid) {
    validate(inp);
    validate(grid);
    TimeSeries out{"position", std::vector<TimeSample>(grid.size())};
    parallel_for(grid.size(), [&](std::size_t i) {
        const double t = grid.at(i);
        out.samples[i] = {t, mean_position(spec, inp, t), false};
    });
    return out;
}

double golden_rule_rate(const DiscretizedBath& bath, double omega0) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (bath.width && bath.step) {
        const double g = *bath.step;  // A a^2 / (a^2 + 0)
        return two_pi * g * g / *bath.step;
    }
    if (bath.size() < 2) return std::numeric_limits<double>::quiet_NaN();

    std::size_t best = 0;
    for (std::size_t n = 1; n < bath.size(); ++n)
        if (std::abs(bath.omegas[n] - omega0) < std::abs(bath.omegas[best] - omega0)) best = n;
    double spacing;
    if (best == 0)
        spacing = bath.omegas[1] - bath.omegas[0];
    else if (best + 1 == bath.size())
        spacing = bath.omegas[best] - bath.omegas[best - 1];
    else
        spacing = 0.5 * (bath.omegas[best + 1] - bath.omegas[best - 1]);
    const double g = bath.couplings[best];
    return two_pi * g * g / spacing;
}

GammaEstimate estimate_gamma(const Spectrum& spec, const FitWindow& window) {
    if (window.samples < 16)
        throw Error(ErrorCode::WindowTooShort,
                    "fit window has " + std::to_string(window.samples) + " samples, need >= 16");
    if (!(window.end > window.begin))
        throw Error(ErrorCode::InvalidValue, "fit window end must exceed its start");

    const std::size_t n = window.samples;
    const double dt = (window.end - window.begin) / static_cast<double>(n - 1);
    std::vector<double> ts(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        ts[i] = window.begin + static_cast<double>(i) * dt;
        ys[i] = -std::log(std::norm(survival_amplitude(spec, ts[i])));
    }

    GammaEstimate est;
    est.golden_rule = golden_rule_rate(spec.bath, spec.omega0);
    // |A| hitting zero inside the window: no exponential regime to fit.
    if (!std::all_of(ys.begin(), ys.end(), [](double y) { return std::isfinite(y); })) {
        est.fitted = std::numeric_limits<double>::quiet_NaN();
        est.intercept = std::numeric_limits<double>::quiet_NaN();
        est.residual_rms = std::numeric_limits<double>::infinity();
        return est;
    }

    double mean_t = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_t += ts[i];
        mean_y += ys[i];
    }
    mean_t /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        stt += (ts[i] - mean_t) * (ts[i] - mean_t);
        sty += (ts[i] - mean_t) * (ys[i] - mean_y);
    }

    est.fitted = sty / stt;
    est.intercept = mean_y - est.fitted * mean_t;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (est.intercept + est.fitted * ts[i]);
        rss += r * r;
    }
    est.residual_rms = std::sqrt(rss / static_cast<double>(n));
    return est;
}

RecurrenceTime recurrence_time(const Spectrum& spec) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t nu = 0; nu + 1 < spec.size(); ++nu)
        min_gap = std::min(min_gap, spec.alphas[nu + 1] - spec.alphas[nu]);
    return {two_pi / min_gap, two_pi / spec.omega0, min_gap};
}

}  // namespace qbm
