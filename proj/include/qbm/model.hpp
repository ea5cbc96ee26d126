#pragma once

// Discretized oscillator-bath model: one privileged oscillator at frequency
// omega0 coupled bilinearly to N bath modes. Units hbar = k_B = 1.
//
// Index convention used throughout the library: the Brownian oscillator is
// level 0, bath mode n (1-based in the physics) is level n.

#include <optional>
#include <variant>
#include <vector>

namespace qbm {

struct LorentzianCoupling {
    bool operator==(const LorentzianCoupling&) const = default;
};

struct ExplicitCoupling {
    std::vector<double> omegas;
    std::vector<double> couplings;

    bool operator==(const ExplicitCoupling&) const = default;
};

using CouplingRule = std::variant<LorentzianCoupling, ExplicitCoupling>;

struct ModelParams {
    int n_bath = 100;
    double step = 0.018;
    double omega0 = 1.0;
    double beta = 1.0;
    CouplingRule coupling = LorentzianCoupling{};

    bool operator==(const ModelParams&) const = default;
};

struct DiscretizedBath {
    std::vector<double> omegas;
    std::vector<double> couplings;
    // Lorentzian half-width a; empty for explicit baths.
    std::optional<double> width;
    // Grid step A; empty for explicit baths.
    std::optional<double> step;

    std::size_t size() const noexcept { return omegas.size(); }
};

struct InitialOccupations {
    double n_omega0 = 1.0;
    std::vector<double> n_bath_modes;

    // Level-indexed vector (0 = Brownian oscillator, 1..N = bath).
    std::vector<double> as_levels() const;
};

// Throws InvalidParams for range violations.
void validate(const ModelParams& params);

// omega_n = omega0 + A (n - N/2), n = 1..N, verbatim (one step asymmetric about
// omega0); g_n = A a^2 / (a^2 + (omega_n - omega0)^2), a = A (N - 2) / 2.
DiscretizedBath build_bath(const ModelParams& params);

// Validates frequencies strictly increasing and couplings nonzero and finite.
void validate(const DiscretizedBath& bath);

// Bose-Einstein occupations 1 / (exp(beta omega_n) - 1).
InitialOccupations thermal_occupations(const DiscretizedBath& bath, double beta,
                                       double n_omega0 = 1.0);

void validate(const InitialOccupations& occ, std::size_t n_bath);

double bose_einstein(double omega, double beta);

}  // namespace qbm
