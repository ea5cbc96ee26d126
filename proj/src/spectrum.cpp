#include "qbm/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qbm/error.hpp"
#include "qbm/kernels/kernels.hpp"

namespace qbm {
namespace {

constexpr double kPoleOffset = 1e-13;
constexpr double kRootTolerance = 1e-14;
constexpr int kMaxBisections = 200;
constexpr int kMaxExpansions = 2000;

struct SecularFunction {
    const DiscretizedBath& bath;
    double omega0;
    std::vector<double> g2;
    const kernels::KernelTable& k;

    SecularFunction(const DiscretizedBath& b, double w0)
        : bath(b), omega0(w0), g2(b.size()), k(kernels::active()) {
        for (std::size_t n = 0; n < b.size(); ++n) g2[n] = b.couplings[n] * b.couplings[n];
    }

    double operator()(double alpha) const {
        return alpha - omega0 - k.pole_sums(alpha, bath.omegas, g2).first;
    }

    double weight(double alpha) const {
        return 1.0 / (1.0 + k.pole_sums(alpha, bath.omegas, g2).second);
    }
};

double pole_offset(double pole) { return kPoleOffset * std::max(1.0, std::abs(pole)); }

// Bisection on a bracket with F(lo) < 0 < F(hi).
double bisect(const SecularFunction& f, Bracket& br) {
    for (int it = 0; it < kMaxBisections; ++it) {
        const double mid = 0.5 * (br.lo + br.hi);
        if (br.hi - br.lo <= kRootTolerance * std::max(1.0, std::abs(mid))) return mid;
        if (mid <= br.lo || mid >= br.hi) return mid;  // adjacent doubles
        if (f(mid) < 0.0)
            br.lo = mid;
        else
            br.hi = mid;
    }
    throw Error(ErrorCode::ToleranceNotReached,
                "bisection did not reach tolerance in " + std::to_string(kMaxBisections) +
                    " iterations near alpha = " + std::to_string(0.5 * (br.lo + br.hi)));
}

// Root in (left_pole, right_pole). Each end starts at a tiny offset from its
// pole and walks inwards while the sign condition still holds.
Bracket interior_bracket(const SecularFunction& f, double left_pole, double right_pole) {
    const double mid = 0.5 * (left_pole + right_pole);
    if (!(left_pole + pole_offset(left_pole) < mid && mid < right_pole - pole_offset(right_pole)))
        throw Error(ErrorCode::RootNotBracketed,
                    "poles " + std::to_string(left_pole) + " and " + std::to_string(right_pole) +
                        " are too close to bracket a root between them");

    double lo = left_pole + pole_offset(left_pole);
    if (!(f(lo) < 0.0))
        throw Error(ErrorCode::RootNotBracketed,
                    "F not negative just above pole " + std::to_string(left_pole));
    for (double off = pole_offset(left_pole) * 4.0; left_pole + off < mid; off *= 4.0) {
        const double x = left_pole + off;
        if (!(f(x) < 0.0)) break;
        lo = x;
    }

    double hi = right_pole - pole_offset(right_pole);
    if (!(f(hi) > 0.0))
        throw Error(ErrorCode::RootNotBracketed,
                    "F not positive just below pole " + std::to_string(right_pole));
    for (double off = pole_offset(right_pole) * 4.0; right_pole - off > lo; off *= 4.0) {
        const double x = right_pole - off;
        if (!(f(x) > 0.0)) break;
        hi = x;
    }
    return {lo, hi};
}

}  // namespace

double secular_residual(double alpha, const DiscretizedBath& bath, double omega0) {
    double pole_sum = 0.0;
    for (std::size_t n = 0; n < bath.size(); ++n) {
        const double d = alpha - bath.omegas[n];
        if (std::abs(d) <= 4.0 * std::numeric_limits<double>::epsilon() *
                               std::max(1.0, std::abs(bath.omegas[n])))
            throw Error(ErrorCode::PoleEvaluation,
                        "alpha coincides with omega_" + std::to_string(n + 1));
        pole_sum += bath.couplings[n] * bath.couplings[n] / d;
    }
    return alpha - omega0 - pole_sum;
}

Spectrum solve_spectrum(const DiscretizedBath& bath, double omega0) {
    validate(bath);
    const SecularFunction f(bath, omega0);
    const std::size_t n_bath = bath.size();

    double spread = 0.0;
    for (double g : bath.couplings) spread += std::abs(g);

    Spectrum spec;
    spec.omega0 = omega0;
    spec.bath = bath;
    spec.alphas.reserve(n_bath + 1);
    spec.brackets.reserve(n_bath + 1);

    // Below the band: F(-inf) = -inf, F(omega_1^-) = +inf.
    {
        const double pole = bath.omegas.front();
        Bracket br{pole - spread, pole - pole_offset(pole)};
        if (!(f(br.hi) > 0.0))
            throw Error(ErrorCode::RootNotBracketed, "F not positive just below omega_1");
        for (double width = spread; !(f(br.lo) < 0.0); width *= 2.0) {
            if (!std::isfinite(width) || width > 1e300)
                throw Error(ErrorCode::RootNotBracketed, "no sign change below omega_1");
            br.lo = pole - width;
        }
        spec.alphas.push_back(bisect(f, br));
        spec.brackets.push_back(br);
    }

    for (std::size_t n = 0; n + 1 < n_bath; ++n) {
        Bracket br = interior_bracket(f, bath.omegas[n], bath.omegas[n + 1]);
        spec.alphas.push_back(bisect(f, br));
        spec.brackets.push_back(br);
    }

    // Above the band.
    {
        const double pole = bath.omegas.back();
        Bracket br{pole + pole_offset(pole), pole + spread};
        if (!(f(br.lo) < 0.0))
            throw Error(ErrorCode::RootNotBracketed, "F not negative just above omega_N");
        int expansions = 0;
        for (double width = spread; !(f(br.hi) > 0.0); width *= 2.0) {
            if (++expansions > kMaxExpansions || !std::isfinite(width))
                throw Error(ErrorCode::RootNotBracketed, "no sign change above omega_N");
            br.hi = pole + width;
        }
        spec.alphas.push_back(bisect(f, br));
        spec.brackets.push_back(br);
    }

    spec.weights.reserve(n_bath + 1);
    for (double alpha : spec.alphas) spec.weights.push_back(f.weight(alpha));
    return spec;
}

Spectrum dense_diagonalize_oracle(const DiscretizedBath& bath, double omega0) {
    validate(bath);
    const std::size_t dim = bath.size() + 1;

    // Row-major symmetric matrix and accumulated rotations.
    std::vector<double> h(dim * dim, 0.0);
    std::vector<double> v(dim * dim, 0.0);
    auto at = [dim](std::vector<double>& m, std::size_t r, std::size_t c) -> double& {
        return m[r * dim + c];
    };
    at(h, 0, 0) = omega0;
    for (std::size_t n = 1; n < dim; ++n) {
        at(h, n, n) = bath.omegas[n - 1];
        at(h, 0, n) = bath.couplings[n - 1];
        at(h, n, 0) = bath.couplings[n - 1];
    }
    for (std::size_t i = 0; i < dim; ++i) at(v, i, i) = 1.0;

    double frob = 0.0;
    for (double x : h) frob += x * x;
    const double threshold = 1e-13 * std::sqrt(frob);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = r + 1; c < dim; ++c) s += 2.0 * at(h, r, c) * at(h, r, c);
        return std::sqrt(s);
    };

    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    for (; sweep < kMaxSweeps && off_norm() > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < dim; ++p) {
            for (std::size_t q = p + 1; q < dim; ++q) {
                const double apq = at(h, p, q);
                if (apq == 0.0) continue;
                const double app = at(h, p, p);
                const double aqq = at(h, q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < dim; ++k) {
                    const double hkp = at(h, k, p);
                    const double hkq = at(h, k, q);
                    at(h, k, p) = c * hkp - s * hkq;
                    at(h, k, q) = s * hkp + c * hkq;
                }
                for (std::size_t k = 0; k < dim; ++k) {
                    const double hpk = at(h, p, k);
                    const double hqk = at(h, q, k);
                    at(h, p, k) = c * hpk - s * hqk;
                    at(h, q, k) = s * hpk + c * hqk;
                }
                at(h, p, q) = 0.0;
                at(h, q, p) = 0.0;
                for (std::size_t k = 0; k < dim; ++k) {
                    const double vkp = at(v, k, p);
                    const double vkq = at(v, k, q);
                    at(v, k, p) = c * vkp - s * vkq;
                    at(v, k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (off_norm() > threshold)
        throw Error(ErrorCode::NoConvergence,
                    "Jacobi sweeps exhausted after " + std::to_string(kMaxSweeps));

    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return at(h, a, a) < at(h, b, b); });

    Spectrum spec;
    spec.omega0 = omega0;
    spec.bath = bath;
    for (std::size_t idx : order) {
        spec.alphas.push_back(at(h, idx, idx));
        const double first = at(v, 0, idx);
        spec.weights.push_back(first * first);
    }
    return spec;
}

double eigenvector_overlap(const Spectrum& spec, std::size_t n, std::size_t nu) {
    if (n < 1 || n > spec.bath.size() || nu >= spec.size())
        throw Error(ErrorCode::IndexOutOfRange, "overlap index (n = " + std::to_string(n) +
                                                    ", nu = " + std::to_string(nu) + ")");
    return spec.bath.couplings[n - 1] / (spec.alphas[nu] - spec.bath.omegas[n - 1]) *
           std::sqrt(spec.weights[nu]);
}

std::vector<double> eigenvector_matrix(const Spectrum& spec) {
    const std::size_t dim = spec.size();
    std::vector<double> v(dim * dim);
    for (std::size_t nu = 0; nu < dim; ++nu) {
        const double root_w = std::sqrt(spec.weights[nu]);
        v[nu] = root_w;
        for (std::size_t n = 1; n < dim; ++n)
            v[n * dim + nu] =
                spec.bath.couplings[n - 1] / (spec.alphas[nu] - spec.bath.omegas[n - 1]) * root_w;
    }
    return v;
}

SumRules sum_rules(const Spectrum& spec) {
    SumRules r;
    for (std::size_t nu = 0; nu < spec.size(); ++nu) {
        const double a = spec.alphas[nu];
        const double w = spec.weights[nu];
        r.m0 += w;
        r.m1 += a * w;
        r.m2 += a * a * w;
    }
    double g2 = 0.0;
    for (double g : spec.bath.couplings) g2 += g * g;
    r.expected_m1 = spec.omega0;
    r.expected_m2 = spec.omega0 * spec.omega0 + g2;
    return r;
}

bool interlaces(const Spectrum& spec) {
    const auto& a = spec.alphas;
    const auto& w = spec.bath.omegas;
    if (a.size() != w.size() + 1) return false;
    for (std::size_t n = 0; n < w.size(); ++n)
        if (!(a[n] < w[n] && w[n] < a[n + 1])) return false;
    return true;
}

}  // namespace qbm
