#include "mueller/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mueller/kernels.hpp"

namespace mueller {

double FourVector::operator[](std::size_t i) const {
    switch (i) {
        case 0: return a0;
        case 1: return a1;
        case 2: return a2im;
        default: return a3;
    }
}

double& FourVector::operator[](std::size_t i) {
    switch (i) {
        case 0: return a0;
        case 1: return a1;
        case 2: return a2im;
        default: return a3;
    }
}

FourVector operator+(const FourVector& x, const FourVector& y) {
    return {x.a0 + y.a0, x.a1 + y.a1, x.a2im + y.a2im, x.a3 + y.a3};
}

FourVector operator-(const FourVector& x, const FourVector& y) {
    return {x.a0 - y.a0, x.a1 - y.a1, x.a2im - y.a2im, x.a3 - y.a3};
}

FourVector operator*(double c, const FourVector& x) { return {c * x.a0, c * x.a1, c * x.a2im, c * x.a3}; }

const char* slot_name(Slot s) {
    switch (s) {
        case Slot::k: return "k";
        case Slot::m: return "m";
        case Slot::n: return "n";
        case Slot::l: return "l";
    }
    return "?";
}

FourVector& ParamSet::operator[](Slot s) {
    switch (s) {
        case Slot::k: return k;
        case Slot::m: return m;
        case Slot::n: return n;
        case Slot::l: return l;
    }
    return k;
}

const FourVector& ParamSet::operator[](Slot s) const { return const_cast<ParamSet&>(*this)[s]; }

ParamSet ParamSet::identity() {
    ParamSet p;
    p.k.a0 = 1.0;
    p.m.a0 = 1.0;
    return p;
}

ParamSet operator+(const ParamSet& p, const ParamSet& q) { return {p.k + q.k, p.m + q.m, p.l + q.l, p.n + q.n}; }
ParamSet operator-(const ParamSet& p, const ParamSet& q) { return {p.k - q.k, p.m - q.m, p.l - q.l, p.n - q.n}; }
ParamSet operator*(double c, const ParamSet& p) { return {c * p.k, c * p.m, c * p.l, c * p.n}; }

RealMatrix4 RealMatrix4::identity() {
    RealMatrix4 g;
    for (int i = 0; i < 4; ++i) g(i, i) = 1.0;
    return g;
}

RealMatrix4 operator-(const RealMatrix4& a, const RealMatrix4& b) {
    RealMatrix4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
}

Block2 to_block(const FourVector& x) {
    return {{x.a0 + x.a3, x.a1 + x.a2im, x.a1 - x.a2im, x.a0 - x.a3}};
}

FourVector from_block(const Block2& b) {
    const auto& e = b.e;
    return {(e[0] + e[3]) / 2, (e[1] + e[2]) / 2, (e[1] - e[2]) / 2, (e[0] - e[3]) / 2};
}

Block2 operator*(const Block2& a, const Block2& b) {
    const auto& x = a.e;
    const auto& y = b.e;
    return {{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
             x[2] * y[1] + x[3] * y[3]}};
}

Block2 operator+(const Block2& a, const Block2& b) {
    return {{a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2], a.e[3] + b.e[3]}};
}

double det(const Block2& b) { return b.e[0] * b.e[3] - b.e[1] * b.e[2]; }

namespace {

void put_block(RealMatrix4& g, int row, int col, const Block2& b) {
    g(row, col) = b.e[0];
    g(row, col + 1) = b.e[1];
    g(row + 1, col) = b.e[2];
    g(row + 1, col + 1) = b.e[3];
}

Block2 get_block(const RealMatrix4& g, int row, int col) {
    return {{g(row, col), g(row, col + 1), g(row + 1, col), g(row + 1, col + 1)}};
}

using cvec4 = std::array<std::complex<double>, 4>;

cvec4 encode(const FourVector& x) { return {x.a0, x.a1, std::complex<double>(0.0, x.a2im), x.a3}; }

FourVector decode(const cvec4& z) { return {z[0].real(), z[1].real(), z[2].imag(), z[3].real()}; }

// (x0 + x.sigma)(y0 + y.sigma) = x0 y0 + x.y + (x0 y + y0 x + i x cross y).sigma
cvec4 pauli_product(const cvec4& x, const cvec4& y) {
    const std::complex<double> i(0.0, 1.0);
    cvec4 z;
    z[0] = x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
    z[1] = x[0] * y[1] + y[0] * x[1] + i * (x[2] * y[3] - x[3] * y[2]);
    z[2] = x[0] * y[2] + y[0] * x[2] + i * (x[3] * y[1] - x[1] * y[3]);
    z[3] = x[0] * y[3] + y[0] * x[3] + i * (x[1] * y[2] - x[2] * y[1]);
    return z;
}

cvec4 operator+(const cvec4& a, const cvec4& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}; }

std::array<std::complex<double>, 3> spatial(const cvec4& x) { return {x[1], x[2], x[3]}; }

}  // namespace

RealMatrix4 params_to_matrix(const ParamSet& p) {
    RealMatrix4 g;
    put_block(g, 0, 0, to_block(p.k));
    put_block(g, 0, 2, to_block(p.n));
    put_block(g, 2, 0, to_block(p.l));
    put_block(g, 2, 2, to_block(p.m));
    return g;
}

ParamSet matrix_to_params(const RealMatrix4& g) {
    ParamSet p;
    p.k = from_block(get_block(g, 0, 0));
    p.n = from_block(get_block(g, 0, 2));
    p.l = from_block(get_block(g, 2, 0));
    p.m = from_block(get_block(g, 2, 2));
    return p;
}

ParamSet multiply_componentwise(const ParamSet& left, const ParamSet& right) {
    const cvec4 k1 = encode(left.k), m1 = encode(left.m), n1 = encode(left.n), l1 = encode(left.l);
    const cvec4 k = encode(right.k), m = encode(right.m), n = encode(right.n), l = encode(right.l);
    ParamSet out;
    out.k = decode(pauli_product(k1, k) + pauli_product(n1, l));
    out.n = decode(pauli_product(k1, n) + pauli_product(n1, m));
    out.l = decode(pauli_product(l1, k) + pauli_product(m1, l));
    out.m = decode(pauli_product(l1, n) + pauli_product(m1, m));
    return out;
}

ParamSet multiply_blockwise(const ParamSet& left, const ParamSet& right) {
    const Block2 K1 = to_block(left.k), N1 = to_block(left.n), L1 = to_block(left.l), M1 = to_block(left.m);
    const Block2 K = to_block(right.k), N = to_block(right.n), L = to_block(right.l), M = to_block(right.m);
    ParamSet out;
    out.k = from_block(K1 * K + N1 * L);
    out.n = from_block(K1 * N + N1 * M);
    out.l = from_block(L1 * K + M1 * L);
    out.m = from_block(L1 * N + M1 * M);
    return out;
}

void multiply_batch(std::span<const ParamSet> left, std::span<const ParamSet> right, std::span<ParamSet> out) {
    if (left.size() != right.size() || out.size() != left.size())
        throw std::invalid_argument("multiply_batch: size mismatch");
    const std::size_t count = left.size();
    // Eight block products per pair, in the order k'k, n'l, k'n, n'm, l'k, m'l, l'n, m'm.
    std::vector<double> xs(count * 32), ys(count * 32), zs(count * 32);
    auto store = [](double* dst, const FourVector& v) {
        dst[0] = v.a0;
        dst[1] = v.a1;
        dst[2] = v.a2im;
        dst[3] = v.a3;
    };
    for (std::size_t i = 0; i < count; ++i) {
        const ParamSet& a = left[i];
        const ParamSet& b = right[i];
        const FourVector* lhs[8] = {&a.k, &a.n, &a.k, &a.n, &a.l, &a.m, &a.l, &a.m};
        const FourVector* rhs[8] = {&b.k, &b.l, &b.n, &b.m, &b.k, &b.l, &b.n, &b.m};
        for (std::size_t j = 0; j < 8; ++j) {
            store(&xs[(i * 8 + j) * 4], *lhs[j]);
            store(&ys[(i * 8 + j) * 4], *rhs[j]);
        }
    }
    kernels::pauli_mul(xs.data(), ys.data(), zs.data(), count * 8);
    auto load = [](const double* src) { return FourVector{src[0], src[1], src[2], src[3]}; };
    for (std::size_t i = 0; i < count; ++i) {
        const double* z = &zs[i * 32];
        out[i].k = load(z) + load(z + 4);
        out[i].n = load(z + 8) + load(z + 12);
        out[i].l = load(z + 16) + load(z + 20);
        out[i].m = load(z + 24) + load(z + 28);
    }
}

RealMatrix4 matmul(const RealMatrix4& a, const RealMatrix4& b) {
    RealMatrix4 c;
    kernels::matmul4(a.e.data(), b.e.data(), c.e.data(), 1);
    return c;
}

double minkowski_form(const FourVector& a, const FourVector& b) {
    return a.a0 * b.a0 - a.a1 * b.a1 + a.a2im * b.a2im - a.a3 * b.a3;
}

std::complex<double> det_paper_complex(const ParamSet& p) {
    const std::complex<double> i(0.0, 1.0);
    const cvec4 k = encode(p.k), m = encode(p.m), n = encode(p.n), l = encode(p.l);
    auto cross = [](const std::array<std::complex<double>, 3>& x, const std::array<std::complex<double>, 3>& y) {
        return std::array<std::complex<double>, 3>{x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2],
                                                   x[0] * y[1] - x[1] * y[0]};
    };
    const auto kv = spatial(k), mv = spatial(m), nv = spatial(n), lv = spatial(l);
    const auto kn = cross(kv, nv);
    const auto ml = cross(mv, lv);
    std::complex<double> uw = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
        const auto u = -k[0] * nv[j] + n[0] * kv[j] + i * kn[j];
        const auto w = -m[0] * lv[j] + l[0] * mv[j] + i * ml[j];
        uw += u * w;
    }
    const double kk = minkowski_form(p.k, p.k), mm = minkowski_form(p.m, p.m);
    const double nn = minkowski_form(p.n, p.n), ll = minkowski_form(p.l, p.l);
    const double kn_form = minkowski_form(p.k, p.n), ml_form = minkowski_form(p.m, p.l);
    return kk * mm + nn * ll - 2.0 * kn_form * ml_form - 2.0 * uw;
}

double det_paper(const ParamSet& p) { return det_paper_complex(p).real(); }

double det_direct(const RealMatrix4& g) {
    RealMatrix4 a = g;
    double d = 1.0;
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
        if (a(piv, c) == 0.0) return 0.0;
        if (piv != c) {
            for (int j = 0; j < 4; ++j) std::swap(a(c, j), a(piv, j));
            d = -d;
        }
        d *= a(c, c);
        for (int r = c + 1; r < 4; ++r) {
            const double f = a(r, c) / a(c, c);
            for (int j = c; j < 4; ++j) a(r, j) -= f * a(c, j);
        }
    }
    return d;
}

int numerical_rank(const RealMatrix4& g, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("numerical_rank: tol must be positive");
    const double largest = max_abs(g);
    const double threshold = tol * (largest > 0.0 ? largest : 1.0);
    RealMatrix4 a = g;
    int rank = 0;
    for (int step = 0; step < 4; ++step) {
        int pr = step, pc = step;
        for (int r = step; r < 4; ++r)
            for (int c = step; c < 4; ++c)
                if (std::abs(a(r, c)) > std::abs(a(pr, pc))) {
                    pr = r;
                    pc = c;
                }
        if (std::abs(a(pr, pc)) <= threshold) break;
        for (int j = 0; j < 4; ++j) std::swap(a(step, j), a(pr, j));
        for (int r = 0; r < 4; ++r) std::swap(a(r, step), a(r, pc));
        ++rank;
        for (int r = step + 1; r < 4; ++r) {
            const double f = a(r, step) / a(step, step);
            for (int c = step; c < 4; ++c) a(r, c) -= f * a(step, c);
        }
    }
    return rank;
}

double frobenius_norm(const RealMatrix4& g) {
    double s = 0.0;
    for (double x : g.e) s += x * x;
    return std::sqrt(s);
}

double max_abs(const RealMatrix4& g) {
    double m = 0.0;
    for (double x : g.e) m = std::max(m, std::abs(x));
    return m;
}

double norm_sq(const FourVector& x) { return x.a0 * x.a0 + x.a1 * x.a1 + x.a2im * x.a2im + x.a3 * x.a3; }

}  // namespace mueller
