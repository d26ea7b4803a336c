#include <cstdlib>
#include <string_view>

#include "mueller/kernels.hpp"

namespace mueller::kernels {

bool backend_available(Backend b) {
    switch (b) {
        case Backend::scalar: return true;
        case Backend::avx2:
#if defined(MUELLER_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

Backend active_backend() {
    static const Backend chosen = [] {
        const char* forced = std::getenv("MUELLER_KERNEL");
        if (forced != nullptr && std::string_view(forced) == "scalar") return Backend::scalar;
        return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
    }();
    return chosen;
}

std::string_view backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

void matmul4(Backend b, const double* a, const double* rhs, double* out, std::size_t count) {
#if defined(MUELLER_HAVE_AVX2)
    if (b == Backend::avx2 && backend_available(b)) return detail::matmul4_avx2(a, rhs, out, count);
#endif
    (void)b;
    detail::matmul4_scalar(a, rhs, out, count);
}

void matmul4(const double* a, const double* rhs, double* out, std::size_t count) {
    matmul4(active_backend(), a, rhs, out, count);
}

void pauli_mul(Backend b, const double* x, const double* y, double* out, std::size_t count) {
#if defined(MUELLER_HAVE_AVX2)
    if (b == Backend::avx2 && backend_available(b)) return detail::pauli_mul_avx2(x, y, out, count);
#endif
    (void)b;
    detail::pauli_mul_scalar(x, y, out, count);
}

void pauli_mul(const double* x, const double* y, double* out, std::size_t count) {
    pauli_mul(active_backend(), x, y, out, count);
}

}  // namespace mueller::kernels
