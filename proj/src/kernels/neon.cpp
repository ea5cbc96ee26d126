// NEON (aarch64, float64x2) kernels. Advanced SIMD is mandatory on aarch64,
// so no runtime feature probe is needed beyond the compile-time guard.

#include "qbm/kernels/kernels.hpp"

#if defined(QBM_HAVE_NEON)

#include <arm_neon.h>

#include <cmath>

#include "trig_constants.hpp"

namespace qbm::kernels {
namespace {

using namespace detail;

constexpr std::size_t kLanes = 2;

inline bool needs_libm(float64x2_t x) {
    const uint64x2_t big = vcgtq_f64(vabsq_f64(x), vdupq_n_f64(kMaxReducedArgument));
    const uint64x2_t not_nan = vceqq_f64(x, x);
    const uint64x2_t bad = vorrq_u64(big, veorq_u64(not_nan, vdupq_n_u64(~0ULL)));
    return vmaxvq_u32(vreinterpretq_u32_u64(bad)) != 0;
}

inline void sincos2(float64x2_t x, float64x2_t& sin_out, float64x2_t& cos_out) {
    const float64x2_t q = vrndnq_f64(vmulq_n_f64(x, kTwoOverPi));
    float64x2_t z = vfmsq_f64(x, q, vdupq_n_f64(kPiOver2Hi));
    z = vfmsq_f64(z, q, vdupq_n_f64(kPiOver2Mid));
    z = vfmsq_f64(z, q, vdupq_n_f64(kPiOver2Lo));

    const float64x2_t zz = vmulq_f64(z, z);

    float64x2_t ps = vdupq_n_f64(kSin0);
    ps = vfmaq_f64(vdupq_n_f64(kSin1), ps, zz);
    ps = vfmaq_f64(vdupq_n_f64(kSin2), ps, zz);
    ps = vfmaq_f64(vdupq_n_f64(kSin3), ps, zz);
    ps = vfmaq_f64(vdupq_n_f64(kSin4), ps, zz);
    ps = vfmaq_f64(vdupq_n_f64(kSin5), ps, zz);
    const float64x2_t s = vfmaq_f64(z, vmulq_f64(z, zz), ps);

    float64x2_t pc = vdupq_n_f64(kCos0);
    pc = vfmaq_f64(vdupq_n_f64(kCos1), pc, zz);
    pc = vfmaq_f64(vdupq_n_f64(kCos2), pc, zz);
    pc = vfmaq_f64(vdupq_n_f64(kCos3), pc, zz);
    pc = vfmaq_f64(vdupq_n_f64(kCos4), pc, zz);
    pc = vfmaq_f64(vdupq_n_f64(kCos5), pc, zz);
    const float64x2_t c =
        vfmaq_f64(vfmsq_f64(vdupq_n_f64(1.0), vdupq_n_f64(0.5), zz), vmulq_f64(zz, zz), pc);

    const int64x2_t qi = vcvtq_s64_f64(q);
    const int64x2_t one = vdupq_n_s64(1);
    const int64x2_t two = vdupq_n_s64(2);
    const uint64x2_t swap = vceqq_s64(vandq_s64(qi, one), one);
    const uint64x2_t sin_sign = vreinterpretq_u64_s64(vshlq_n_s64(vandq_s64(qi, two), 62));
    const uint64x2_t cos_sign =
        vreinterpretq_u64_s64(vshlq_n_s64(vandq_s64(vaddq_s64(qi, one), two), 62));

    sin_out = vreinterpretq_f64_u64(
        veorq_u64(vreinterpretq_u64_f64(vbslq_f64(swap, c, s)), sin_sign));
    cos_out = vreinterpretq_f64_u64(
        veorq_u64(vreinterpretq_u64_f64(vbslq_f64(swap, s, c)), cos_sign));
}

inline void sincos2_checked(float64x2_t x, float64x2_t& sin_out, float64x2_t& cos_out) {
    if (!needs_libm(x)) {
        sincos2(x, sin_out, cos_out);
        return;
    }
    double xs[kLanes], ss[kLanes], cs[kLanes];
    vst1q_f64(xs, x);
    for (std::size_t l = 0; l < kLanes; ++l) {
        ss[l] = std::sin(xs[l]);
        cs[l] = std::cos(xs[l]);
    }
    sin_out = vld1q_f64(ss);
    cos_out = vld1q_f64(cs);
}

SpectralSums spectral_sums_neon(std::span<const double> alphas,
                                std::span<const double> weights, double t) {
    const std::size_t n = alphas.size();
    float64x2_t c0 = vdupq_n_f64(0.0), s0 = vdupq_n_f64(0.0);
    float64x2_t c1 = vdupq_n_f64(0.0), s1 = vdupq_n_f64(0.0);
    float64x2_t c2 = vdupq_n_f64(0.0), s2 = vdupq_n_f64(0.0);

    std::size_t v = 0;
    for (; v + kLanes <= n; v += kLanes) {
        const float64x2_t a = vld1q_f64(alphas.data() + v);
        const float64x2_t w0 = vld1q_f64(weights.data() + v);
        float64x2_t s, c;
        sincos2_checked(vmulq_n_f64(a, t), s, c);
        const float64x2_t w1 = vmulq_f64(w0, a);
        const float64x2_t w2 = vmulq_f64(w1, a);
        c0 = vfmaq_f64(c0, w0, c);
        s0 = vfmaq_f64(s0, w0, s);
        c1 = vfmaq_f64(c1, w1, c);
        s1 = vfmaq_f64(s1, w1, s);
        c2 = vfmaq_f64(c2, w2, c);
        s2 = vfmaq_f64(s2, w2, s);
    }

    double rc0 = vaddvq_f64(c0), rs0 = vaddvq_f64(s0), rc1 = vaddvq_f64(c1);
    double rs1 = vaddvq_f64(s1), rc2 = vaddvq_f64(c2), rs2 = vaddvq_f64(s2);
    for (; v < n; ++v) {
        const double a = alphas[v];
        const double c = std::cos(a * t);
        const double s = std::sin(a * t);
        const double w0 = weights[v];
        const double w1 = w0 * a;
        const double w2 = w1 * a;
        rc0 += w0 * c;
        rs0 += w0 * s;
        rc1 += w1 * c;
        rs1 += w1 * s;
        rc2 += w2 * c;
        rs2 += w2 * s;
    }
    return {{rc0, -rs0}, {rc1, -rs1}, {rc2, -rs2}};
}

PoleSums pole_sums_neon(double x, std::span<const double> poles, std::span<const double> g2) {
    const std::size_t n = poles.size();
    const float64x2_t xv = vdupq_n_f64(x);
    float64x2_t first = vdupq_n_f64(0.0);
    float64x2_t second = vdupq_n_f64(0.0);

    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const float64x2_t inv = vdivq_f64(vdupq_n_f64(1.0), vsubq_f64(xv, vld1q_f64(poles.data() + i)));
        const float64x2_t term = vmulq_f64(vld1q_f64(g2.data() + i), inv);
        first = vaddq_f64(first, term);
        second = vfmaq_f64(second, term, inv);
    }

    PoleSums out{vaddvq_f64(first), vaddvq_f64(second)};
    for (; i < n; ++i) {
        const double inv = 1.0 / (x - poles[i]);
        const double term = g2[i] * inv;
        out.first += term;
        out.second += term * inv;
    }
    return out;
}

void phases_neon(std::span<const double> alphas, double t, std::span<double> re,
                 std::span<double> im) {
    const std::size_t n = alphas.size();
    std::size_t v = 0;
    for (; v + kLanes <= n; v += kLanes) {
        float64x2_t s, c;
        sincos2_checked(vmulq_n_f64(vld1q_f64(alphas.data() + v), t), s, c);
        vst1q_f64(re.data() + v, c);
        vst1q_f64(im.data() + v, vnegq_f64(s));
    }
    for (; v < n; ++v) {
        re[v] = std::cos(alphas[v] * t);
        im[v] = -std::sin(alphas[v] * t);
    }
}

std::complex<double> real_complex_dot_neon(std::span<const double> coeff,
                                           std::span<const double> re,
                                           std::span<const double> im) {
    const std::size_t n = coeff.size();
    float64x2_t sr = vdupq_n_f64(0.0);
    float64x2_t si = vdupq_n_f64(0.0);
    std::size_t v = 0;
    for (; v + kLanes <= n; v += kLanes) {
        const float64x2_t c = vld1q_f64(coeff.data() + v);
        sr = vfmaq_f64(sr, c, vld1q_f64(re.data() + v));
        si = vfmaq_f64(si, c, vld1q_f64(im.data() + v));
    }
    double rr = vaddvq_f64(sr), ri = vaddvq_f64(si);
    for (; v < n; ++v) {
        rr += coeff[v] * re[v];
        ri += coeff[v] * im[v];
    }
    return {rr, ri};
}

constexpr KernelTable kNeon{
    Isa::Neon,        "neon",         &spectral_sums_neon,
    &pole_sums_neon,  &phases_neon,   &real_complex_dot_neon,
};

}  // namespace

namespace detail {
const KernelTable* neon_table_unchecked() noexcept { return &kNeon; }
}  // namespace detail

}  // namespace qbm::kernels

#endif  // QBM_HAVE_NEON
