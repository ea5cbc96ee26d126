#pragma once

// Test-only helpers and oracles. Nothing here calls into the secular-equation
// or spectral-sum code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qbm/model.hpp"

namespace qbm::testing {

inline DiscretizedBath symmetric_two_level() { return {{1.0}, {0.1}, std::nullopt, std::nullopt}; }

inline DiscretizedBath golden_two_level() { return {{1.0}, {1.0}, std::nullopt, std::nullopt}; }

inline DiscretizedBath paper_bath() {
    return build_bath(ModelParams{});
}

// Admissible random bath: distinct sorted frequencies in [0.2, 2.2] at least
// 0.01 apart, couplings of random sign with |g| in [0.01, 0.2].
inline DiscretizedBath random_bath(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> freq(0.2, 2.2);
    std::uniform_real_distribution<double> mag(0.01, 0.2);
    std::bernoulli_distribution sign(0.5);
    DiscretizedBath bath;
    while (bath.omegas.size() < n) {
        const double w = freq(rng);
        const bool clash = std::any_of(bath.omegas.begin(), bath.omegas.end(),
                                       [&](double x) { return std::abs(x - w) < 0.01; });
        if (!clash) bath.omegas.push_back(w);
    }
    std::sort(bath.omegas.begin(), bath.omegas.end());
    for (std::size_t i = 0; i < n; ++i) bath.couplings.push_back(sign(rng) ? mag(rng) : -mag(rng));
    return bath;
}

// Dense arrowhead Hamiltonian, row-major (N+1)x(N+1).
inline std::vector<double> hamiltonian(const DiscretizedBath& bath, double omega0) {
    const std::size_t dim = bath.size() + 1;
    std::vector<double> h(dim * dim, 0.0);
    h[0] = omega0;
    for (std::size_t n = 1; n < dim; ++n) {
        h[n * dim + n] = bath.omegas[n - 1];
        h[n] = bath.couplings[n - 1];
        h[n * dim] = bath.couplings[n - 1];
    }
    return h;
}

// <0|h^k|0> by repeated matrix-vector products.
inline double matrix_moment(const DiscretizedBath& bath, double omega0, int k) {
    const std::size_t dim = bath.size() + 1;
    const auto h = hamiltonian(bath, omega0);
    std::vector<double> v(dim, 0.0), next(dim);
    v[0] = 1.0;
    for (int p = 0; p < k; ++p) {
        for (std::size_t r = 0; r < dim; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < dim; ++c) s += h[r * dim + c] * v[c];
            next[r] = s;
        }
        v.swap(next);
    }
    return v[0];
}

// P_nm(t) = |<n|exp(-iht)|m>|^2 by RK4 integration of i d psi/dt = h psi from
// each basis state.
inline std::vector<double> rk4_probabilities(const DiscretizedBath& bath, double omega0, double t,
                                             std::size_t steps) {
    using cplx = std::complex<double>;
    const std::size_t dim = bath.size() + 1;
    const auto h = hamiltonian(bath, omega0);
    const double dt = t / static_cast<double>(steps);
    const cplx minus_i(0.0, -1.0);

    auto deriv = [&](const std::vector<cplx>& psi) {
        std::vector<cplx> out(dim);
        for (std::size_t r = 0; r < dim; ++r) {
            cplx s = 0.0;
            for (std::size_t c = 0; c < dim; ++c) s += h[r * dim + c] * psi[c];
            out[r] = minus_i * s;
        }
        return out;
    };
    auto axpy = [&](const std::vector<cplx>& x, const std::vector<cplx>& k, double a) {
        std::vector<cplx> out(dim);
        for (std::size_t i = 0; i < dim; ++i) out[i] = x[i] + a * k[i];
        return out;
    };

    std::vector<double> p(dim * dim);
    for (std::size_t m = 0; m < dim; ++m) {
        std::vector<cplx> psi(dim, 0.0);
        psi[m] = 1.0;
        for (std::size_t s = 0; s < steps; ++s) {
            const auto k1 = deriv(psi);
            const auto k2 = deriv(axpy(psi, k1, dt / 2));
            const auto k3 = deriv(axpy(psi, k2, dt / 2));
            const auto k4 = deriv(axpy(psi, k3, dt));
            for (std::size_t i = 0; i < dim; ++i)
                psi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        for (std::size_t n = 0; n < dim; ++n) p[n * dim + m] = std::norm(psi[n]);
    }
    return p;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

inline LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

inline double relative_diff(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace qbm::testing

namespace qbm::testing {

// |actual - expected| <= tol * |expected|
inline bool close_rel(double actual, double expected, double tol) {
    return std::abs(actual - expected) <= tol * std::abs(expected);
}

}  // namespace qbm::testing
