#pragma once

// Exact one-excitation spectrum of the oscillator-bath Hamiltonian.
//
// The eigenvalues are the N+1 roots of the secular function
//
//   F(alpha) = alpha - omega0 - sum_n g_n^2 / (alpha - omega_n),
//
// which is strictly increasing between consecutive poles, so every root is
// isolated by bisection on its own pole interval. Overlap weights
// w_v = |<omega0|alpha_v>|^2 follow from normalisation of the eigenvector.

#include <cstddef>
#include <vector>

#include "qbm/model.hpp"

namespace qbm {

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

struct Spectrum {
    std::vector<double> alphas;   // ascending, size N+1
    std::vector<double> weights;  // w_v, same order
    double omega0 = 0.0;
    DiscretizedBath bath;
    // Final bisection bracket of each root; empty for the dense oracle.
    std::vector<Bracket> brackets;

    std::size_t size() const noexcept { return alphas.size(); }
};

// Throws PoleEvaluation when alpha sits on a bath frequency.
double secular_residual(double alpha, const DiscretizedBath& bath, double omega0);

Spectrum solve_spectrum(const DiscretizedBath& bath, double omega0);

// Cyclic Jacobi diagonalisation of the (N+1)x(N+1) arrowhead matrix.
// Verification path only; weights come from the eigenvectors, not the
// secular formula.
Spectrum dense_diagonalize_oracle(const DiscretizedBath& bath, double omega0);

// <omega_n|alpha_v> = g_n / (alpha_v - omega_n) * sqrt(w_v), with the phase
// convention <omega0|alpha_v> = +sqrt(w_v). n is 1-based (1..N).
double eigenvector_overlap(const Spectrum& spec, std::size_t n, std::size_t nu);

// Row-major (N+1)x(N+1) matrix V[level][nu] = <psi_level|alpha_nu>, level 0
// being the Brownian oscillator.
std::vector<double> eigenvector_matrix(const Spectrum& spec);

struct SumRules {
    double m0 = 0.0;  // sum w
    double m1 = 0.0;  // sum alpha w
    double m2 = 0.0;  // sum alpha^2 w
    // Direct matrix moments <0|h^k|0>: 1, omega0, omega0^2 + sum g^2.
    double expected_m1 = 0.0;
    double expected_m2 = 0.0;
};

SumRules sum_rules(const Spectrum& spec);

// True when alpha_0 < omega_1 < alpha_1 < ... < omega_N < alpha_N.
bool interlaces(const Spectrum& spec);

}  // namespace qbm
