#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mueller/core.hpp"
#include "mueller/random.hpp"

namespace testing {

using namespace mueller;

// Plain triple loop, independent of the kernel layer.
inline RealMatrix4 naive_product(const RealMatrix4& a, const RealMatrix4& b) {
    RealMatrix4 c;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            long double s = 0;
            for (int k = 0; k < 4; ++k) s += static_cast<long double>(a(i, k)) * b(k, j);
            c(i, j) = static_cast<double>(s);
        }
    return c;
}

inline double max_diff(const RealMatrix4& a, const RealMatrix4& b) {
    double m = 0;
    for (std::size_t i = 0; i < 16; ++i) m = std::max(m, std::abs(a.e[i] - b.e[i]));
    return m;
}

inline double max_diff(const ParamSet& a, const ParamSet& b) { return max_diff(params_to_matrix(a), params_to_matrix(b)); }

// Assemble [[K, N], [L, M]] from explicit 2x2 blocks.
inline RealMatrix4 from_blocks(const Block2& K, const Block2& N, const Block2& L, const Block2& M) {
    RealMatrix4 g;
    const Block2* bs[4] = {&K, &N, &L, &M};
    const int rows[4] = {0, 0, 2, 2}, cols[4] = {0, 2, 0, 2};
    for (int b = 0; b < 4; ++b) {
        g(rows[b], cols[b]) = bs[b]->e[0];
        g(rows[b], cols[b] + 1) = bs[b]->e[1];
        g(rows[b] + 1, cols[b]) = bs[b]->e[2];
        g(rows[b] + 1, cols[b] + 1) = bs[b]->e[3];
    }
    return g;
}

inline Block2 scaled(double c, const Block2& b) { return {{c * b.e[0], c * b.e[1], c * b.e[2], c * b.e[3]}}; }
inline Block2 minus(const Block2& a, const Block2& b) {
    return {{a.e[0] - b.e[0], a.e[1] - b.e[1], a.e[2] - b.e[2], a.e[3] - b.e[3]}};
}
inline Block2 plus(const Block2& a, const Block2& b) {
    return {{a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2], a.e[3] + b.e[3]}};
}
inline const Block2 zero2{};

inline Block2 mul2(const Block2& a, const Block2& b) {
    Block2 c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c.e[i * 2 + j] = a.e[i * 2] * b.e[j] + a.e[i * 2 + 1] * b.e[2 + j];
    return c;
}

// Cofactor expansion along the first row.
inline double det3(const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline double cofactor_det(const RealMatrix4& g) {
    double d = 0;
    for (int c = 0; c < 4; ++c) {
        double minor[3][3];
        for (int i = 1; i < 4; ++i)
            for (int j = 0, jj = 0; j < 4; ++j)
                if (j != c) minor[i - 1][jj++] = g(i, j);
        d += ((c % 2) ? -1.0 : 1.0) * g(0, c) * det3(minor);
    }
    return d;
}

// Parameter constraints per zeroed cell "ij", as sums over components.
inline const std::map<std::string, std::string> rank3_constraint_table{
    {"00", "k1=0,k2=0,k0=-k3,n0=-n3,l0=-l3,in2=n1,-il2=l1"},
    {"01", "k0=0,k3=0,k1=ik2,l1=il2,l0=l3,n0=-n3,n1=in2"},
    {"02", "n1=0,n2=0,n0=-n3,m0=-m3,m1=-im2,k0=-k3,k1=ik2"},
    {"03", "n0=0,n3=0,n1=in2,m0=m3,m1=im2,k0=-k3,k1=ik2"},
    {"10", "k0=0,k3=0,k1=-ik2,l0=-l3,l1=-il2,n1=-in2,n0=n3"},
    {"11", "k1=0,k2=0,k0=k3,l0=l3,l1=il2,n1=-in2,n0=n3"},
    {"12", "n0=0,n3=0,n1=-in2,m0=-m3,m1=-im2,k1=-ik2,k0=k3"},
    {"13", "n1=0,n2=0,n0=n3,m0=m3,m1=im2,k1=-ik2,k0=k3"},
    {"20", "l1=0,l2=0,l0=-l3,m0=-m3,m1=im2,k1=-ik2,k0=-k3"},
    {"21", "l0=0,l3=0,l1=il2,m0=-m3,m1=im2,k1=ik2,k0=k3"},
    {"22", "m1=0,m2=0,m0=-m3,n0=-n3,n1=-in2,l1=il2,l0=-l3"},
    {"23", "m0=0,m3=0,m1=im2,n0=n3,n1=in2,l1=il2,l0=-l3"},
    {"30", "l0=0,l3=0,l1=-il2,k0=-k3,k1=-ik2,m1=-im2,m0=m3"},
    {"31", "l1=0,l2=0,l0=l3,k0=k3,k1=ik2,m1=-im2,m0=m3"},
    {"32", "m0=0,m3=0,m1=-im2,l0=l3,l1=-il2,n1=-in2,n0=-n3"},
    {"33", "m1=0,m2=0,m0=m3,l0=l3,l1=-il2,n1=in2,n0=n3"},
};

inline std::vector<std::string> rank3_constraints(const std::string& key) {
    std::vector<std::string> out;
    std::stringstream ss(rank3_constraint_table.at(key));
    for (std::string eq; std::getline(ss, eq, ',');) out.push_back(eq);
    return out;
}

// One side of a constraint such as "-il2" under the encoding x2 = i*x2im.
inline double side_value(std::string term, const ParamSet& p) {
    double sign = 1;
    if (term[0] == '-') {
        sign = -1;
        term = term.substr(1);
    }
    if (term == "0") return 0;
    const bool imag = term[0] == 'i';
    if (imag) term = term.substr(1);
    const std::map<char, Slot> slots{{'k', Slot::k}, {'m', Slot::m}, {'n', Slot::n}, {'l', Slot::l}};
    const double x = p[slots.at(term[0])][static_cast<std::size_t>(term[1] - '0')];
    if (term[1] == '2') return sign * (imag ? -x : x);
    if (imag) throw std::invalid_argument("imaginary real component in " + term);
    return sign * x;
}

inline double constraint_gap(const std::string& eq, const ParamSet& p) {
    const auto pos = eq.find('=');
    return std::abs(side_value(eq.substr(0, pos), p) - side_value(eq.substr(pos + 1), p));
}

}  // namespace testing
