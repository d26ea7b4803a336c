#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mueller/kernels.hpp"

using namespace mueller;
using namespace testing;

namespace {

std::vector<kernels::Backend> available() {
    std::vector<kernels::Backend> out{kernels::Backend::scalar};
    if (kernels::backend_available(kernels::Backend::avx2)) out.push_back(kernels::Backend::avx2);
    return out;
}

}  // namespace

TEST_CASE("kernel matmul4: every backend matches the naive product") {
    Rng rng(1);
    const std::size_t count = 257;
    std::vector<double> a(16 * count), b(16 * count);
    for (double& x : a) x = uniform(rng, -10, 10);
    for (double& x : b) x = uniform(rng, -10, 10);
    for (auto backend : available()) {
        CAPTURE(kernels::backend_name(backend));
        std::vector<double> c(16 * count);
        kernels::matmul4(backend, a.data(), b.data(), c.data(), count);
        for (std::size_t m = 0; m < count; ++m) {
            RealMatrix4 x, y, z;
            std::copy_n(&a[16 * m], 16, x.e.begin());
            std::copy_n(&b[16 * m], 16, y.e.begin());
            std::copy_n(&c[16 * m], 16, z.e.begin());
            REQUIRE(max_diff(z, naive_product(x, y)) <= 1e-12 * std::max(1.0, max_abs(z)));
        }
    }
}

TEST_CASE("kernel pauli_mul: every backend matches 2x2 block products") {
    Rng rng(2);
    const std::size_t count = 333;
    std::vector<double> x(4 * count), y(4 * count);
    for (double& v : x) v = uniform(rng, -10, 10);
    for (double& v : y) v = uniform(rng, -10, 10);
    for (auto backend : available()) {
        CAPTURE(kernels::backend_name(backend));
        std::vector<double> z(4 * count);
        kernels::pauli_mul(backend, x.data(), y.data(), z.data(), count);
        for (std::size_t i = 0; i < count; ++i) {
            const FourVector a{x[4 * i], x[4 * i + 1], x[4 * i + 2], x[4 * i + 3]};
            const FourVector b{y[4 * i], y[4 * i + 1], y[4 * i + 2], y[4 * i + 3]};
            const FourVector expect = from_block(mul2(to_block(a), to_block(b)));
            for (std::size_t j = 0; j < 4; ++j) REQUIRE(z[4 * i + j] == doctest::Approx(expect[j]).epsilon(1e-12).scale(100));
        }
    }
}

TEST_CASE("kernel backends agree with each other") {
    if (!kernels::backend_available(kernels::Backend::avx2)) return;
    Rng rng(3);
    const std::size_t count = 64;
    std::vector<double> a(16 * count), b(16 * count), c1(16 * count), c2(16 * count);
    for (double& x : a) x = uniform(rng, -2, 2);
    for (double& x : b) x = uniform(rng, -2, 2);
    kernels::matmul4(kernels::Backend::scalar, a.data(), b.data(), c1.data(), count);
    kernels::matmul4(kernels::Backend::avx2, a.data(), b.data(), c2.data(), count);
    for (std::size_t i = 0; i < c1.size(); ++i) CHECK(c1[i] == doctest::Approx(c2[i]).epsilon(1e-13).scale(1));
    kernels::pauli_mul(kernels::Backend::scalar, a.data(), b.data(), c1.data(), 4 * count);
    kernels::pauli_mul(kernels::Backend::avx2, a.data(), b.data(), c2.data(), 4 * count);
    for (std::size_t i = 0; i < c1.size(); ++i) CHECK(c1[i] == doctest::Approx(c2[i]).epsilon(1e-13).scale(1));
}

TEST_CASE("kernel-backed multiply_batch matches multiply_blockwise") {
    Rng rng(4);
    std::vector<ParamSet> p, q, r(500);
    for (int i = 0; i < 500; ++i) {
        p.push_back(random_params(rng, -10, 10));
        q.push_back(random_params(rng, -10, 10));
    }
    multiply_batch(p, q, r);
    for (int i = 0; i < 500; ++i) {
        const ParamSet expect = multiply_blockwise(p[i], q[i]);
        REQUIRE(max_diff(r[i], expect) <= 1e-12 * std::max(1.0, max_abs(params_to_matrix(expect))));
    }
    std::vector<ParamSet> wrong(3);
    CHECK_THROWS(multiply_batch(p, q, wrong));
}
