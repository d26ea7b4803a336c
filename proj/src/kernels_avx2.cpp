#include "mueller/kernels.hpp"

#if defined(MUELLER_HAVE_AVX2)
#include <immintrin.h>

namespace mueller::kernels::detail {

void matmul4_avx2(const double* a, const double* rhs, double* out, std::size_t count) {
    for (std::size_t m = 0; m < count; ++m) {
        const double* x = a + 16 * m;
        const double* y = rhs + 16 * m;
        double* z = out + 16 * m;
        const __m256d b0 = _mm256_loadu_pd(y);
        const __m256d b1 = _mm256_loadu_pd(y + 4);
        const __m256d b2 = _mm256_loadu_pd(y + 8);
        const __m256d b3 = _mm256_loadu_pd(y + 12);
        for (int i = 0; i < 4; ++i) {
            const double* row = x + 4 * i;
            __m256d r = _mm256_mul_pd(_mm256_broadcast_sd(row), b0);
            r = _mm256_fmadd_pd(_mm256_broadcast_sd(row + 1), b1, r);
            r = _mm256_fmadd_pd(_mm256_broadcast_sd(row + 2), b2, r);
            r = _mm256_fmadd_pd(_mm256_broadcast_sd(row + 3), b3, r);
            _mm256_storeu_pd(z + 4 * i, r);
        }
    }
}

// z = x0*[y0,y1,y2,y3] + x1*[y1,y0,-y3,-y2] + x2*[-y2,-y3,y0,y1] + x3*[y3,y2,y1,y0]
void pauli_mul_avx2(const double* x, const double* y, double* out, std::size_t count) {
    const __m256d sign1 = _mm256_setr_pd(1.0, 1.0, -1.0, -1.0);
    const __m256d sign2 = _mm256_setr_pd(-1.0, -1.0, 1.0, 1.0);
    for (std::size_t v = 0; v < count; ++v) {
        const double* p = x + 4 * v;
        const __m256d q = _mm256_loadu_pd(y + 4 * v);
        const __m256d q1 = _mm256_permute4x64_pd(q, 0xB1);
        const __m256d q2 = _mm256_permute4x64_pd(q, 0x4E);
        const __m256d q3 = _mm256_permute4x64_pd(q, 0x1B);
        __m256d z = _mm256_mul_pd(_mm256_broadcast_sd(p), q);
        z = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_broadcast_sd(p + 1), sign1), q1, z);
        z = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_broadcast_sd(p + 2), sign2), q2, z);
        z = _mm256_fmadd_pd(_mm256_broadcast_sd(p + 3), q3, z);
        _mm256_storeu_pd(out + 4 * v, z);
    }
}

}  // namespace mueller::kernels::detail
#endif
