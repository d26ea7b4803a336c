#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>

namespace mueller {

// (a0, a1, i*a2im, a3): the second spatial component is stored as its
// imaginary coefficient, so every block built from it is real.
struct FourVector {
    double a0 = 0.0;
    double a1 = 0.0;
    double a2im = 0.0;
    double a3 = 0.0;

    double operator[](std::size_t i) const;
    double& operator[](std::size_t i);

    friend bool operator==(const FourVector&, const FourVector&) = default;
};

FourVector operator+(const FourVector& x, const FourVector& y);
FourVector operator-(const FourVector& x, const FourVector& y);
FourVector operator*(double c, const FourVector& x);

enum class Slot { k, m, n, l };
inline constexpr std::array<Slot, 4> all_slots{Slot::k, Slot::m, Slot::n, Slot::l};
const char* slot_name(Slot s);

// G = [[K, N], [L, M]]
struct ParamSet {
    FourVector k;
    FourVector m;
    FourVector l;
    FourVector n;

    FourVector& operator[](Slot s);
    const FourVector& operator[](Slot s) const;

    static ParamSet identity();

    friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

ParamSet operator+(const ParamSet& p, const ParamSet& q);
ParamSet operator-(const ParamSet& p, const ParamSet& q);
ParamSet operator*(double c, const ParamSet& p);

struct RealMatrix4 {
    std::array<double, 16> e{};

    double operator()(int row, int col) const { return e[static_cast<std::size_t>(row * 4 + col)]; }
    double& operator()(int row, int col) { return e[static_cast<std::size_t>(row * 4 + col)]; }

    static RealMatrix4 identity();

    friend bool operator==(const RealMatrix4&, const RealMatrix4&) = default;
};

RealMatrix4 operator-(const RealMatrix4& a, const RealMatrix4& b);

// Row-major 2x2 real block x0*I + x.sigma.
struct Block2 {
    std::array<double, 4> e{};

    friend bool operator==(const Block2&, const Block2&) = default;
};

Block2 to_block(const FourVector& x);
FourVector from_block(const Block2& b);
Block2 operator*(const Block2& a, const Block2& b);
Block2 operator+(const Block2& a, const Block2& b);
double det(const Block2& b);

RealMatrix4 params_to_matrix(const ParamSet& p);
ParamSet matrix_to_params(const RealMatrix4& g);

// Product G'' = G' G with `left` = G', computed from the Pauli component
// formulas in complex arithmetic. Kept as an oracle for multiply_blockwise.
ParamSet multiply_componentwise(const ParamSet& left, const ParamSet& right);
// K'' = K'K + N'L, N'' = K'N + N'M, L'' = L'K + M'L, M'' = L'N + M'M.
ParamSet multiply_blockwise(const ParamSet& left, const ParamSet& right);
inline ParamSet multiply(const ParamSet& left, const ParamSet& right) { return multiply_blockwise(left, right); }

// Batched products through the SIMD block kernel; out[i] = left[i] * right[i].
void multiply_batch(std::span<const ParamSet> left, std::span<const ParamSet> right, std::span<ParamSet> out);

RealMatrix4 matmul(const RealMatrix4& a, const RealMatrix4& b);

// a0 b0 - a1 b1 + a2im b2im - a3 b3, i.e. (ab) with the complex second component.
double minkowski_form(const FourVector& a, const FourVector& b);

std::complex<double> det_paper_complex(const ParamSet& p);
double det_paper(const ParamSet& p);
double det_direct(const RealMatrix4& g);

inline constexpr double default_rank_tol = 1e-9;
int numerical_rank(const RealMatrix4& g, double tol = default_rank_tol);

double frobenius_norm(const RealMatrix4& g);
double max_abs(const RealMatrix4& g);
double norm_sq(const FourVector& x);

}  // namespace mueller
