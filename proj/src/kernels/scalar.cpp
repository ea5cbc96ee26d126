#include "qbm/kernels/kernels.hpp"

#include <cmath>

namespace qbm::kernels {
namespace {

SpectralSums spectral_sums_scalar(std::span<const double> alphas,
                                  std::span<const double> weights, double t) {
    double c0 = 0.0, s0 = 0.0, c1 = 0.0, s1 = 0.0, c2 = 0.0, s2 = 0.0;
    for (std::size_t v = 0; v < alphas.size(); ++v) {
        const double a = alphas[v];
        const double phase = a * t;
        const double c = std::cos(phase);
        const double s = std::sin(phase);
        const double w0 = weights[v];
        const double w1 = w0 * a;
        const double w2 = w1 * a;
        c0 += w0 * c;
        s0 += w0 * s;
        c1 += w1 * c;
        s1 += w1 * s;
        c2 += w2 * c;
        s2 += w2 * s;
    }
    return {{c0, -s0}, {c1, -s1}, {c2, -s2}};
}

PoleSums pole_sums_scalar(double x, std::span<const double> poles,
                          std::span<const double> g2) {
    PoleSums out;
    for (std::size_t n = 0; n < poles.size(); ++n) {
        const double inv = 1.0 / (x - poles[n]);
        const double term = g2[n] * inv;
        out.first += term;
        out.second += term * inv;
    }
    return out;
}

void phases_scalar(std::span<const double> alphas, double t, std::span<double> re,
                   std::span<double> im) {
    for (std::size_t v = 0; v < alphas.size(); ++v) {
        const double phase = alphas[v] * t;
        re[v] = std::cos(phase);
        im[v] = -std::sin(phase);
    }
}

std::complex<double> real_complex_dot_scalar(std::span<const double> coeff,
                                             std::span<const double> re,
                                             std::span<const double> im) {
    double sr = 0.0, si = 0.0;
    for (std::size_t v = 0; v < coeff.size(); ++v) {
        sr += coeff[v] * re[v];
        si += coeff[v] * im[v];
    }
    return {sr, si};
}

constexpr KernelTable kScalar{
    Isa::Scalar,          "scalar",         &spectral_sums_scalar,
    &pole_sums_scalar,    &phases_scalar,   &real_complex_dot_scalar,
};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace qbm::kernels
