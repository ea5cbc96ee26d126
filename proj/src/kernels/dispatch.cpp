#include <cstdlib>
#include <string_view>

#include "qbm/kernels/kernels.hpp"

namespace qbm::kernels {

namespace detail {
#if defined(QBM_HAVE_AVX2)
const KernelTable* avx2_table_unchecked() noexcept;
#endif
#if defined(QBM_HAVE_NEON)
const KernelTable* neon_table_unchecked() noexcept;
#endif
}  // namespace detail

const KernelTable* avx2_table() noexcept {
#if defined(QBM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? detail::avx2_table_unchecked() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable* neon_table() noexcept {
#if defined(QBM_HAVE_NEON)
    return detail::neon_table_unchecked();
#else
    return nullptr;
#endif
}

const KernelTable* table_for(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return &scalar_table();
        case Isa::Avx2: return avx2_table();
        case Isa::Neon: return neon_table();
    }
    return nullptr;
}

namespace {

const KernelTable& resolve() noexcept {
    const char* env = std::getenv("QBM_SIMD");
    const std::string_view request = env ? env : "auto";
    if (request == "scalar") return scalar_table();
    if (request == "avx2" && avx2_table()) return *avx2_table();
    if (request == "neon" && neon_table()) return *neon_table();
    if (const auto* t = avx2_table()) return *t;
    if (const auto* t = neon_table()) return *t;
    return scalar_table();
}

}  // namespace

const KernelTable& active() noexcept {
    static const KernelTable& table = resolve();
    return table;
}

}  // namespace qbm::kernels
