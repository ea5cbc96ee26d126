// AVX2 + FMA kernels. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after the runtime feature check in dispatch.cpp.

#include "qbm/kernels/kernels.hpp"

#if defined(QBM_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>

#include "trig_constants.hpp"

namespace qbm::kernels {
namespace {

using namespace detail;

constexpr std::size_t kLanes = 4;

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

inline bool needs_libm(__m256d x) {
    const __m256d abs_x = _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
    const __m256d big = _mm256_cmp_pd(abs_x, _mm256_set1_pd(kMaxReducedArgument), _CMP_GT_OQ);
    // NaN lanes also take the libm path.
    const __m256d nan = _mm256_cmp_pd(x, x, _CMP_UNORD_Q);
    return _mm256_movemask_pd(_mm256_or_pd(big, nan)) != 0;
}

inline void sincos4(__m256d x, __m256d& sin_out, __m256d& cos_out) {
    const __m256d q = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d z = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPiOver2Hi), x);
    z = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPiOver2Mid), z);
    z = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPiOver2Lo), z);

    const __m256d zz = _mm256_mul_pd(z, z);

    __m256d ps = _mm256_set1_pd(kSin0);
    ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(kSin1));
    ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(kSin2));
    ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(kSin3));
    ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(kSin4));
    ps = _mm256_fmadd_pd(ps, zz, _mm256_set1_pd(kSin5));
    const __m256d s = _mm256_fmadd_pd(_mm256_mul_pd(z, zz), ps, z);

    __m256d pc = _mm256_set1_pd(kCos0);
    pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(kCos1));
    pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(kCos2));
    pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(kCos3));
    pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(kCos4));
    pc = _mm256_fmadd_pd(pc, zz, _mm256_set1_pd(kCos5));
    const __m256d c = _mm256_fmadd_pd(_mm256_mul_pd(zz, zz), pc,
                                      _mm256_fnmadd_pd(_mm256_set1_pd(0.5), zz, _mm256_set1_pd(1.0)));

    // quadrant q mod 4: sin -> {s, c, -s, -c}, cos -> {c, -s, -c, s}
    const __m256i q64 = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(q));
    const __m256i one = _mm256_set1_epi64x(1);
    const __m256i two = _mm256_set1_epi64x(2);
    const __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q64, one), one));
    const __m256d sin_sign = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_and_si256(q64, two), 62));
    const __m256d cos_sign = _mm256_castsi256_pd(
        _mm256_slli_epi64(_mm256_and_si256(_mm256_add_epi64(q64, one), two), 62));

    sin_out = _mm256_xor_pd(_mm256_blendv_pd(s, c, swap), sin_sign);
    cos_out = _mm256_xor_pd(_mm256_blendv_pd(c, s, swap), cos_sign);
}

inline void sincos4_checked(__m256d x, __m256d& sin_out, __m256d& cos_out) {
    if (!needs_libm(x)) {
        sincos4(x, sin_out, cos_out);
        return;
    }
    alignas(32) double xs[kLanes], ss[kLanes], cs[kLanes];
    _mm256_store_pd(xs, x);
    for (std::size_t l = 0; l < kLanes; ++l) {
        ss[l] = std::sin(xs[l]);
        cs[l] = std::cos(xs[l]);
    }
    sin_out = _mm256_load_pd(ss);
    cos_out = _mm256_load_pd(cs);
}

SpectralSums spectral_sums_avx2(std::span<const double> alphas,
                                std::span<const double> weights, double t) {
    const std::size_t n = alphas.size();
    const __m256d tv = _mm256_set1_pd(t);
    __m256d c0 = _mm256_setzero_pd(), s0 = _mm256_setzero_pd();
    __m256d c1 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    __m256d c2 = _mm256_setzero_pd(), s2 = _mm256_setzero_pd();

    std::size_t v = 0;
    for (; v + kLanes <= n; v += kLanes) {
        const __m256d a = _mm256_loadu_pd(alphas.data() + v);
        const __m256d w0 = _mm256_loadu_pd(weights.data() + v);
        __m256d s, c;
        sincos4_checked(_mm256_mul_pd(a, tv), s, c);
        const __m256d w1 = _mm256_mul_pd(w0, a);
        const __m256d w2 = _mm256_mul_pd(w1, a);
        c0 = _mm256_fmadd_pd(w0, c, c0);
        s0 = _mm256_fmadd_pd(w0, s, s0);
        c1 = _mm256_fmadd_pd(w1, c, c1);
        s1 = _mm256_fmadd_pd(w1, s, s1);
        c2 = _mm256_fmadd_pd(w2, c, c2);
        s2 = _mm256_fmadd_pd(w2, s, s2);
    }

    double rc0 = hsum(c0), rs0 = hsum(s0), rc1 = hsum(c1), rs1 = hsum(s1);
    double rc2 = hsum(c2), rs2 = hsum(s2);
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

PoleSums pole_sums_avx2(double x, std::span<const double> poles, std::span<const double> g2) {
    const std::size_t n = poles.size();
    const __m256d xv = _mm256_set1_pd(x);
    const __m256d ones = _mm256_set1_pd(1.0);
    __m256d first = _mm256_setzero_pd();
    __m256d second = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d inv = _mm256_div_pd(ones, _mm256_sub_pd(xv, _mm256_loadu_pd(poles.data() + i)));
        const __m256d term = _mm256_mul_pd(_mm256_loadu_pd(g2.data() + i), inv);
        first = _mm256_add_pd(first, term);
        second = _mm256_fmadd_pd(term, inv, second);
    }

    PoleSums out{hsum(first), hsum(second)};
    for (; i < n; ++i) {
        const double inv = 1.0 / (x - poles[i]);
        const double term = g2[i] * inv;
        out.first += term;
        out.second += term * inv;
    }
    return out;
}

void phases_avx2(std::span<const double> alphas, double t, std::span<double> re,
                 std::span<double> im) {
    const std::size_t n = alphas.size();
    const __m256d tv = _mm256_set1_pd(t);
    const __m256d neg = _mm256_set1_pd(-0.0);
    std::size_t v = 0;
    for (; v + kLanes <= n; v += kLanes) {
        __m256d s, c;
        sincos4_checked(_mm256_mul_pd(_mm256_loadu_pd(alphas.data() + v), tv), s, c);
        _mm256_storeu_pd(re.data() + v, c);
        _mm256_storeu_pd(im.data() + v, _mm256_xor_pd(s, neg));
    }
    for (; v < n; ++v) {
        re[v] = std::cos(alphas[v] * t);
        im[v] = -std::sin(alphas[v] * t);
    }
}

std::complex<double> real_complex_dot_avx2(std::span<const double> coeff,
                                           std::span<const double> re,
                                           std::span<const double> im) {
    const std::size_t n = coeff.size();
    __m256d sr = _mm256_setzero_pd();
    __m256d si = _mm256_setzero_pd();
    std::size_t v = 0;
    for (; v + kLanes <= n; v += kLanes) {
        const __m256d c = _mm256_loadu_pd(coeff.data() + v);
        sr = _mm256_fmadd_pd(c, _mm256_loadu_pd(re.data() + v), sr);
        si = _mm256_fmadd_pd(c, _mm256_loadu_pd(im.data() + v), si);
    }
    double rr = hsum(sr), ri = hsum(si);
    for (; v < n; ++v) {
        rr += coeff[v] * re[v];
        ri += coeff[v] * im[v];
    }
    return {rr, ri};
}

constexpr KernelTable kAvx2{
    Isa::Avx2,        "avx2",         &spectral_sums_avx2,
    &pole_sums_avx2,  &phases_avx2,   &real_complex_dot_avx2,
};

}  // namespace

namespace detail {
const KernelTable* avx2_table_unchecked() noexcept { return &kAvx2; }
}  // namespace detail

}  // namespace qbm::kernels

#endif  // QBM_HAVE_AVX2
