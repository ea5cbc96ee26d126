#pragma once

// Exact master-equation channel: transition probabilities
//
//   P_nm(t) = |U_nm(t)|^2,  U_nm(t) = sum_v <psi_n|alpha_v><alpha_v|psi_m> exp(-i alpha_v t),
//
// and populations <N_n(t)> = sum_m P_nm(t) <N_m(0)>. Level 0 is the Brownian
// oscillator, levels 1..N the bath modes.

#include <complex>
#include <cstddef>
#include <vector>

#include "qbm/model.hpp"
#include "qbm/spectrum.hpp"
#include "qbm/timegrid.hpp"

namespace qbm {

enum class EvalMode { Fast, Naive };

// Largest N for which the literal double-sum evaluators run without an
// explicit override.
inline constexpr std::size_t kNaiveSizeLimit = 32;

struct ProbabilityMatrix {
    double time = 0.0;
    std::size_t dim = 0;
    std::vector<double> entries;  // row-major

    double operator()(std::size_t n, std::size_t m) const { return entries[n * dim + m]; }
};

struct OccupationVector {
    double time = 0.0;
    std::vector<double> values;  // index 0 = <N_Omega(t)>
};

// A_OmegaOmega(t) = sum_v w_v exp(-i alpha_v t).
std::complex<double> survival_amplitude(const Spectrum& spec, double t);

// Caches the eigenvector matrix so repeated time evaluations stay O(N^2)
// (row 0) or O(N^3) (full matrix).
class Propagator {
public:
    explicit Propagator(const Spectrum& spec);

    const Spectrum& spectrum() const noexcept { return *spec_; }
    std::size_t dim() const noexcept { return dim_; }

    ProbabilityMatrix probabilities(double t) const;
    // Row 0 of P(t): P_{Omega m}(t), m = 0..N.
    std::vector<double> oscillator_row(double t) const;

private:
    const Spectrum* spec_;
    std::size_t dim_;
    std::vector<double> vectors_;  // V[level][nu]
    std::vector<double> row0_;     // V[0][nu] V[m][nu], row-major in m
};

// mode = Naive evaluates the three displayed double sums for P_OmegaOmega,
// P_Omega n and P_nm literally; it throws SizeGuard for N > kNaiveSizeLimit
// unless allow_large is set.
ProbabilityMatrix transition_probabilities(const Spectrum& spec, double t,
                                           EvalMode mode = EvalMode::Fast,
                                           bool allow_large = false);

OccupationVector populations(const Spectrum& spec, const InitialOccupations& occ0, double t);

struct PopulationDecomposition {
    TimeSeries total;     // <N_Omega(t)>
    TimeSeries survival;  // P_OmegaOmega(t) <N_Omega(0)>
    TimeSeries bath;      // sum_n P_Omega n(t) <N_n(0)>
};

PopulationDecomposition population_decomposition(const Spectrum& spec,
                                                 const InitialOccupations& occ0,
                                                 const TimeGrid& grid);

}  // namespace qbm
