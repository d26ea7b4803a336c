#pragma once

#include <cstddef>
#include <string_view>

// Batched fixed-size kernels with a scalar reference and an AVX2 variant.
// Callers normally use the best backend reported by active_backend(); the
// explicit overloads exist so both paths can be tested against each other.
namespace mueller::kernels {

enum class Backend { scalar, avx2 };

bool backend_available(Backend b);
// Best available backend, cached after the first call. MUELLER_KERNEL=scalar
// in the environment forces the reference path.
Backend active_backend();
std::string_view backend_name(Backend b);

// count row-major 4x4 products: out[i] = a[i] * b[i], 16 doubles each.
void matmul4(Backend b, const double* a, const double* rhs, double* out, std::size_t count);
void matmul4(const double* a, const double* rhs, double* out, std::size_t count);

// count 2x2 block products in Pauli coordinates (a0, a1, a2im, a3), 4 doubles each.
void pauli_mul(Backend b, const double* x, const double* y, double* out, std::size_t count);
void pauli_mul(const double* x, const double* y, double* out, std::size_t count);

namespace detail {
void matmul4_scalar(const double* a, const double* rhs, double* out, std::size_t count);
void pauli_mul_scalar(const double* x, const double* y, double* out, std::size_t count);
#if defined(MUELLER_HAVE_AVX2)
void matmul4_avx2(const double* a, const double* rhs, double* out, std::size_t count);
void pauli_mul_avx2(const double* x, const double* y, double* out, std::size_t count);
#endif
}  // namespace detail

}  // namespace mueller::kernels
