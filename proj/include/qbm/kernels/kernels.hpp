#pragma once

// Inner-loop kernels shared by the spectrum, evolution and langevin code.
//
// Every kernel has a portable scalar reference implementation. Vector
// variants (AVX2+FMA on x86-64, NEON on aarch64) are selected at runtime and
// must agree with the scalar reference to within a few ulps of the summed
// magnitudes; tests/test_kernels.cpp enforces that.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qbm::kernels {

// S_k(t) = sum_v alpha_v^k w_v exp(-i alpha_v t), for k = 0, 1, 2.
struct SpectralSums {
    std::complex<double> s0;
    std::complex<double> s1;
    std::complex<double> s2;
};

// first = sum_n g2_n / (x - p_n), second = sum_n g2_n / (x - p_n)^2.
struct PoleSums {
    double first = 0.0;
    double second = 0.0;
};

enum class Isa { Scalar, Avx2, Neon };

struct KernelTable {
    Isa isa;
    std::string_view name;

    SpectralSums (*spectral_sums)(std::span<const double> alphas,
                                  std::span<const double> weights, double t);

    PoleSums (*pole_sums)(double x, std::span<const double> poles,
                          std::span<const double> g2);

    // re[v] = cos(alpha_v t), im[v] = -sin(alpha_v t), i.e. exp(-i alpha_v t).
    void (*phases)(std::span<const double> alphas, double t, std::span<double> re,
                   std::span<double> im);

    // sum_v coeff_v (re_v + i im_v)
    std::complex<double> (*real_complex_dot)(std::span<const double> coeff,
                                             std::span<const double> re,
                                             std::span<const double> im);
};

const KernelTable& scalar_table() noexcept;

// nullptr when the variant is not compiled in or the CPU lacks the feature.
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;

// Best supported table, unless QBM_SIMD (auto|scalar|avx2|neon) forces one.
// Resolved once per process.
const KernelTable& active() noexcept;

const KernelTable* table_for(Isa isa) noexcept;

}  // namespace qbm::kernels
