#include "qbm/evolution.hpp"

#include <cmath>
#include <string>

#include "qbm/error.hpp"
#include "qbm/kernels/kernels.hpp"
#include "qbm/parallel.hpp"

namespace qbm {

std::complex<double> survival_amplitude(const Spectrum& spec, double t) {
    return kernels::active().spectral_sums(spec.alphas, spec.weights, t).s0;
}

Propagator::Propagator(const Spectrum& spec)
    : spec_(&spec), dim_(spec.size()), vectors_(eigenvector_matrix(spec)), row0_(dim_ * dim_) {
    for (std::size_t m = 0; m < dim_; ++m)
        for (std::size_t nu = 0; nu < dim_; ++nu)
            row0_[m * dim_ + nu] = vectors_[nu] * vectors_[m * dim_ + nu];
}

std::vector<double> Propagator::oscillator_row(double t) const {
    const auto& k = kernels::active();
    std::vector<double> re(dim_), im(dim_);
    k.phases(spec_->alphas, t, re, im);

    std::vector<double> row(dim_);
    for (std::size_t m = 0; m < dim_; ++m) {
        const std::span<const double> coeff(row0_.data() + m * dim_, dim_);
        row[m] = std::norm(k.real_complex_dot(coeff, re, im));
    }
    return row;
}

ProbabilityMatrix Propagator::probabilities(double t) const {
    const auto& k = kernels::active();
    std::vector<double> re(dim_), im(dim_);
    k.phases(spec_->alphas, t, re, im);

    ProbabilityMatrix p{t, dim_, std::vector<double>(dim_ * dim_)};
    std::vector<double> cr(dim_), ci(dim_);
    for (std::size_t n = 0; n < dim_; ++n) {
        // c_v = V[n][v] exp(-i alpha_v t); U_nm = sum_v V[m][v] c_v
        for (std::size_t nu = 0; nu < dim_; ++nu) {
            cr[nu] = vectors_[n * dim_ + nu] * re[nu];
            ci[nu] = vectors_[n * dim_ + nu] * im[nu];
        }
        // U is symmetric; fill the upper triangle and mirror
        for (std::size_t m = n; m < dim_; ++m) {
            const std::span<const double> vm(vectors_.data() + m * dim_, dim_);
            const std::complex<double> u = k.real_complex_dot(vm, cr, ci);
            p.entries[n * dim_ + m] = std::norm(u);
            p.entries[m * dim_ + n] = p.entries[n * dim_ + m];
        }
    }
    return p;
}

namespace {

// Literal double sums: 2 sum_{mu>nu} cos((a_mu - a_nu) t) c_mu c_nu + sum_nu c_nu^2,
// where c_nu is the per-eigenvalue factor of each displayed formula.
ProbabilityMatrix naive_probabilities(const Spectrum& spec, double t) {
    const std::size_t dim = spec.size();
    const auto& a = spec.alphas;
    const auto& w = spec.weights;
    const auto& om = spec.bath.omegas;
    const auto& g = spec.bath.couplings;

    ProbabilityMatrix p{t, dim, std::vector<double>(dim * dim)};

    // P_OmegaOmega
    {
        double off = 0.0, diag = 0.0;
        for (std::size_t mu = 0; mu < dim; ++mu) {
            for (std::size_t nu = 0; nu < mu; ++nu)
                off += std::cos((a[mu] - a[nu]) * t) / (1.0 / w[mu] * (1.0 / w[nu]));
            diag += 1.0 / (1.0 / (w[mu] * w[mu]));
        }
        p.entries[0] = 2.0 * off + diag;
    }

    // P_Omega n = P_n Omega
    for (std::size_t n = 1; n < dim; ++n) {
        const double gn2 = g[n - 1] * g[n - 1];
        const double wn = om[n - 1];
        double off = 0.0, diag = 0.0;
        for (std::size_t mu = 0; mu < dim; ++mu) {
            for (std::size_t nu = 0; nu < mu; ++nu)
                off += gn2 * std::cos((a[mu] - a[nu]) * t) /
                       (1.0 / w[mu] * (1.0 / w[nu]) * (a[mu] - wn) * (a[nu] - wn));
            diag += gn2 / (1.0 / (w[mu] * w[mu]) * (a[mu] - wn) * (a[mu] - wn));
        }
        p.entries[n] = 2.0 * off + diag;
        p.entries[n * dim] = p.entries[n];
    }

    // P_nm
    for (std::size_t n = 1; n < dim; ++n) {
        for (std::size_t m = 1; m < dim; ++m) {
            const double gg = g[n - 1] * g[n - 1] * g[m - 1] * g[m - 1];
            const double wn = om[n - 1];
            const double wm = om[m - 1];
            double off = 0.0, diag = 0.0;
            for (std::size_t mu = 0; mu < dim; ++mu) {
                for (std::size_t nu = 0; nu < mu; ++nu)
                    off += gg * std::cos((a[mu] - a[nu]) * t) /
                           (1.0 / w[mu] * (1.0 / w[nu]) * (a[mu] - wn) * (a[nu] - wn) *
                            (a[mu] - wm) * (a[nu] - wm));
                diag += gg / (1.0 / (w[mu] * w[mu]) * (a[mu] - wn) * (a[mu] - wn) *
                              (a[mu] - wm) * (a[mu] - wm));
            }
            p.entries[n * dim + m] = 2.0 * off + diag;
        }
    }
    return p;
}

}  // namespace

ProbabilityMatrix transition_probabilities(const Spectrum& spec, double t, EvalMode mode,
                                           bool allow_large) {
    if (mode == EvalMode::Naive) {
        if (spec.bath.size() > kNaiveSizeLimit && !allow_large)
            throw Error(ErrorCode::SizeGuard,
                        "naive Eq. evaluation is O(N^4); N = " + std::to_string(spec.bath.size()) +
                            " exceeds " + std::to_string(kNaiveSizeLimit));
        return naive_probabilities(spec, t);
    }
    return Propagator(spec).probabilities(t);
}

OccupationVector populations(const Spectrum& spec, const InitialOccupations& occ0, double t) {
    validate(occ0, spec.bath.size());
    const auto p = Propagator(spec).probabilities(t);
    const auto n0 = occ0.as_levels();

    OccupationVector out{t, std::vector<double>(p.dim, 0.0)};
    for (std::size_t n = 0; n < p.dim; ++n) {
        double s = 0.0;
        for (std::size_t m = 0; m < p.dim; ++m) s += p(n, m) * n0[m];
        out.values[n] = s;
    }
    return out;
}

PopulationDecomposition population_decomposition(const Spectrum& spec,
                                                 const InitialOccupations& occ0,
                                                 const TimeGrid& grid) {
    validate(grid);
    validate(occ0, spec.bath.size());
    const Propagator prop(spec);
    const auto n0 = occ0.as_levels();
    const std::size_t count = grid.size();

    PopulationDecomposition out;
    out.total.name = "population";
    out.survival.name = "survival";
    out.bath.name = "bath_contribution";
    out.total.samples.resize(count);
    out.survival.samples.resize(count);
    out.bath.samples.resize(count);

    parallel_for(count, [&](std::size_t i) {
        const double t = grid.at(i);
        const auto row = prop.oscillator_row(t);
        const double survival = row[0] * n0[0];
        double bath = 0.0;
        for (std::size_t m = 1; m < row.size(); ++m) bath += row[m] * n0[m];
        double total = 0.0;
        for (std::size_t m = 0; m < row.size(); ++m) total += row[m] * n0[m];
        out.total.samples[i] = {t, total, false};
        out.survival.samples[i] = {t, survival, false};
        out.bath.samples[i] = {t, bath, false};
    });
    return out;
}

}  // namespace qbm
