#include "mueller/kernels.hpp"

namespace mueller::kernels::detail {

void matmul4_scalar(const double* a, const double* rhs, double* out, std::size_t count) {
    for (std::size_t m = 0; m < count; ++m) {
        const double* x = a + 16 * m;
        const double* y = rhs + 16 * m;
        double* z = out + 16 * m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0.0;
                for (int k = 0; k < 4; ++k) s += x[i * 4 + k] * y[k * 4 + j];
                z[i * 4 + j] = s;
            }
    }
}

void pauli_mul_scalar(const double* x, const double* y, double* out, std::size_t count) {
    for (std::size_t v = 0; v < count; ++v) {
        const double* p = x + 4 * v;
        const double* q = y + 4 * v;
        double* z = out + 4 * v;
        const double x0 = p[0], x1 = p[1], x2 = p[2], x3 = p[3];
        const double y0 = q[0], y1 = q[1], y2 = q[2], y3 = q[3];
        z[0] = x0 * y0 + x1 * y1 - x2 * y2 + x3 * y3;
        z[1] = x0 * y1 + x1 * y0 - x2 * y3 + x3 * y2;
        z[2] = x0 * y2 - x1 * y3 + x2 * y0 + x3 * y1;
        z[3] = x0 * y3 - x1 * y2 + x2 * y1 + x3 * y0;
    }
}

}  // namespace mueller::kernels::detail
