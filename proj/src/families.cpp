#include "mueller/families.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace mueller {

namespace {

using enum Coef;

struct Combo {
    std::array<double, 4> w{};  // weights over k, m, n, l
};

constexpr Combo cK{{1, 0, 0, 0}};
constexpr Combo cM{{0, 1, 0, 0}};
constexpr Combo cN{{0, 0, 1, 0}};
constexpr Combo cL{{0, 0, 0, 1}};

constexpr Combo operator-(Combo a, Combo b) {
    for (std::size_t i = 0; i < 4; ++i) a.w[i] -= b.w[i];
    return a;
}

enum class Part { all, scalar, vector };

// Seed for one scalar: regress `target` on one or two regressor combinations
// over the chosen Pauli components and take the first regression coefficient.
struct FitRule {
    Combo target;
    Combo reg0;
    std::optional<Combo> reg1 = std::nullopt;
    Part part = Part::all;
};

using CoefMap = CoefVector (*)(std::span<const double>);

struct Spec {
    FamilyId id;
    std::string label;
    std::optional<AnsatzTag> variant;
    std::string formula;
    std::vector<ScalarSpec> scalars;
    CoefMap coefs;
    std::vector<FitRule> fits;
    RankClaim rank;
    Closure closure;
    std::string anchor;
};

CoefVector make(std::initializer_list<std::pair<Coef, double>> values) {
    CoefVector c{};
    for (const auto& [name, v] : values) c[static_cast<std::size_t>(name)] = v;
    return c;
}

const ScalarSpec sA{"A", ScalarDomain::any};
const ScalarSpec sAnz{"A", ScalarDomain::nonzero};
const ScalarSpec sBnz{"B", ScalarDomain::nonzero};
const ScalarSpec sC{"C", ScalarDomain::any};
const ScalarSpec sD{"D", ScalarDomain::any};
const ScalarSpec sAlpha{"alpha", ScalarDomain::any};
const ScalarSpec sBeta{"beta", ScalarDomain::any};
const ScalarSpec sT{"t", ScalarDomain::any};

RankClaim rank(int generic, std::optional<int> stated = std::nullopt) {
    RankClaim r;
    r.generic = generic;
    r.stated_value = stated;
    return r;
}

std::vector<Spec> build_specs() {
    using T = AnsatzTag;
    const auto semi = Closure::semigroup;
    std::vector<Spec> out;

    CoefMap none = +[](std::span<const double>) { return CoefVector{}; };

    // One independent vector k.
    RankClaim k1_rank = rank(2);
    k1_rank.special_value = 1;
    k1_rank.special_condition = "det K = 0";
    out.push_back({FamilyId::K1, "K-1", T::Ik, "[[K,0],[0,0]]", {}, none, {}, k1_rank, semi, "(B3.3x)"});
    out.push_back({FamilyId::K2, "K-2", T::Ik, "[[K,0],[0,K]]", {},
                 +[](std::span<const double>) { return make({{B, 1}, {beta, 1}}); }, {}, rank(4), Closure::group,
                 "(B3.4c)"});
    out.push_back({FamilyId::K3, "K-3", T::Ik, "[[K,0],[D*K,0]]", {sD},
                 +[](std::span<const double> x) { return make({{D, x[0]}, {t, x[0]}}); }, {{cL, cK}}, rank(2),
                 semi, "(B3.5c)"});
    out.push_back({FamilyId::K4, "K-4", T::Ik, "[[K,A*K],[0,0]]", {sA},
                 +[](std::span<const double> x) { return make({{A, x[0]}, {alpha, x[0]}}); }, {{cN, cK}},
                 rank(2), semi, "(B3.6c)"});
    out.push_back({FamilyId::K5, "K-5", T::Ik, "[[K,A*K],[D*K,A*D*K]]", {sA, sD},
                 +[](std::span<const double> x) {
                     return make({{A, x[0]}, {alpha, x[0]}, {B, x[0] * x[1]}, {beta, x[0] * x[1]}, {D, x[1]},
                                  {t, x[1]}});
                 },
                 {{cN, cK}, {cL, cK}}, rank(2, 4), semi, "(B3.12a)"});
    out.push_back({FamilyId::K5P, "K-5'", T::Ik, "[[K,A*K],[-A^-1*K,-K]]", {sAnz},
                 +[](std::span<const double> x) {
                     return make({{A, x[0]}, {alpha, x[0]}, {B, -1}, {beta, -1}, {D, -1 / x[0]}, {t, -1 / x[0]}});
                 },
                 {{cN, cK}}, rank(2), Closure::null_product, "(B3.12c)"});
    out.push_back({FamilyId::K6, "K-6", T::Ik,
                 "[[K,A*K],[t*k0*I - A^-1*k.sigma, A*t*k0*I - k.sigma]]", {sAnz, sT},
                 +[](std::span<const double> x) {
                     return make({{A, x[0]}, {alpha, x[0]}, {B, -1}, {beta, x[0] * x[1]}, {D, -1 / x[0]},
                                  {t, x[1]}});
                 },
                 {{cN, cK}, {cL, cK, std::nullopt, Part::scalar}}, rank(2), semi, "(B3.13a)"});
    out.push_back({FamilyId::K7, "K-7", T::Ik,
                 "[[K, alpha*k0*I + A*k.sigma],[-A^-1*K, -alpha*A^-1*k0*I - k.sigma]]", {sAnz, sAlpha},
                 +[](std::span<const double> x) {
                     return make({{A, x[0]}, {alpha, x[1]}, {B, -1}, {beta, -x[1] / x[0]}, {D, -1 / x[0]},
                                  {t, -1 / x[0]}});
                 },
                 {{cN, cK, std::nullopt, Part::vector}, {cN, cK, std::nullopt, Part::scalar}}, rank(2), semi,
                 "(B3.14c)"});

    // One independent vector m.
    out.push_back({FamilyId::M1, "M-1", T::Im, "[[0,0],[0,M]]", {}, none, {}, rank(2), semi, "(B4.4)"});
    out.push_back({FamilyId::M2, "M-2", T::Im, "[[M,0],[0,M]]", {},
                 +[](std::span<const double>) { return make({{B, 1}, {beta, 1}}); }, {}, rank(4), semi,
                 "(B4.7)"});
    out.push_back({FamilyId::M3, "M-3", T::Im, "[[0,0],[D*M,M]]", {sD},
                 +[](std::span<const double> x) { return make({{D, x[0]}, {t, x[0]}}); }, {{cL, cM}}, rank(2),
                 semi, "(B4.8cx)"});
    out.push_back({FamilyId::M4, "M-4", T::Im, "[[0,A*M],[0,M]]", {sA},
                 +[](std::span<const double> x) { return make({{A, x[0]}, {alpha, x[0]}}); }, {{cN, cM}},
                 rank(2), semi, "(B4.9c)"});
    out.push_back({FamilyId::M5, "M-5", T::Im,
                 "[[A*t*m0*I - m.sigma, A*M],[t*m0*I - A^-1*m.sigma, M]]", {sAnz, sT},
                 +[](std::span<const double> x) {
                     return make({{A, x[0]}, {alpha, x[0]}, {B, -1}, {beta, x[0] * x[1]}, {D, -1 / x[0]},
                                  {t, x[1]}});
                 },
                 {{cN, cM}, {cL, cM, std::nullopt, Part::scalar}}, rank(2), semi, "(B4.14b)"});
    out.push_back({FamilyId::M6, "M-6", T::Im,
                 "[[-alpha*A^-1*m0*I - m.sigma, alpha*m0*I + A*m.sigma],[-A^-1*M, M]]", {sAnz, sAlpha},
                 +[](std::span<const double> x) {
                     return make({{A, x[0]}, {alpha, x[1]}, {B, -1}, {beta, -x[1] / x[0]}, {D, -1 / x[0]},
                                  {t, -1 / x[0]}});
                 },
                 {{cN, cM, std::nullopt, Part::vector}, {cN, cM, std::nullopt, Part::scalar}}, rank(2), semi,
                 "(B4.14c)"});
    out.push_back({FamilyId::M7, "M-7", T::Im, "[[A*D*M,A*M],[D*M,M]]", {sA, sD},
                 +[](std::span<const double> x) {
                     return make({{A, x[0]}, {alpha, x[0]}, {B, x[0] * x[1]}, {beta, x[0] * x[1]}, {D, x[1]},
                                  {t, x[1]}});
                 },
                 {{cN, cM}, {cL, cM}}, rank(2), semi, "(B4.15b)"});

    // One independent vector n.
    out.push_back({FamilyId::N1, "N-1", T::In, "[[A*N,N],[0,0]]", {sA},
                 +[](std::span<const double> x) { return make({{A, x[0]}, {alpha, x[0]}}); }, {{cK, cN}},
                 rank(2), semi, "(B5.7)"});
    out.push_back({FamilyId::N2, "N-2", T::In, "[[A*N,N],[A^2*N,A*N]]", {sA},
                 +[](std::span<const double> x) {
                     const double a = x[0];
                     return make({{A, a}, {alpha, a}, {B, a}, {beta, a}, {D, a * a}, {t, a * a}});
                 },
                 {{cK, cN}}, rank(2), semi, "(B5.8)"});
    out.push_back({FamilyId::N3, "N-3", T::In,
                 "[[alpha*n0*I + A*n.sigma, N],[-A*alpha*n0*I - A^2*n.sigma, -A*N]]", {sA, sAlpha},
                 +[](std::span<const double> x) {
                     const double a = x[0], al = x[1];
                     return make({{A, a}, {alpha, al}, {B, -a}, {beta, -a}, {D, -a * a}, {t, -al * a}});
                 },
                 {{cK, cN, std::nullopt, Part::vector}, {cK, cN, std::nullopt, Part::scalar}}, rank(2), semi,
                 "(B5.10)"});
    out.push_back({FamilyId::N4, "N-4", T::In,
                 "[[A*N, N],[A*beta*n0*I - A^2*n.sigma, beta*n0*I - A*n.sigma]]", {sA, sBeta},
                 +[](std::span<const double> x) {
                     const double a = x[0], be = x[1];
                     return make({{A, a}, {alpha, a}, {B, -a}, {beta, be}, {D, -a * a}, {t, a * be}});
                 },
                 {{cK, cN}, {cM, cN, std::nullopt, Part::scalar}}, rank(2), semi, "(B5.11)"});

    // One independent vector l (same coefficient solutions as n).
    out.push_back({FamilyId::L1, "L-1", T::Il, "[[A*L,0],[L,0]]", {sA},
                 +[](std::span<const double> x) { return make({{A, x[0]}, {alpha, x[0]}}); }, {{cK, cL}},
                 rank(2), semi, "(B6.6)"});
    out.push_back({FamilyId::L2, "L-2", T::Il, "[[A*L,A^2*L],[L,A*L]]", {sA},
                 +[](std::span<const double> x) {
                     const double a = x[0];
                     return make({{A, a}, {alpha, a}, {B, a}, {beta, a}, {D, a * a}, {t, a * a}});
                 },
                 {{cK, cL}}, rank(2), semi, "(B6.7)"});
    out.push_back({FamilyId::L3, "L-3", T::Il,
                 "[[alpha*l0*I + A*l.sigma, -A*alpha*l0*I - A^2*l.sigma],[L, -A*L]]", {sA, sAlpha},
                 +[](std::span<const double> x) {
                     const double a = x[0], al = x[1];
                     return make({{A, a}, {alpha, al}, {B, -a}, {beta, -a}, {D, -a * a}, {t, -al * a}});
                 },
                 {{cK, cL, std::nullopt, Part::vector}, {cK, cL, std::nullopt, Part::scalar}}, rank(2), semi,
                 "(B6.8)"});
    out.push_back({FamilyId::L4, "L-4", T::Il,
                 "[[A*L, A*beta*l0*I - A^2*l.sigma],[L, beta*l0*I - A*l.sigma]]", {sA, sBeta},
                 +[](std::span<const double> x) {
                     const double a = x[0], be = x[1];
                     return make({{A, a}, {alpha, a}, {B, -a}, {beta, be}, {D, -a * a}, {t, a * be}});
                 },
                 {{cK, cL}, {cM, cL, std::nullopt, Part::scalar}}, rank(2), semi, "(B6.9)"});

    // Two independent vectors k, m.
    out.push_back({FamilyId::KM1, "KM-1", T::IIkm, "[[K,0],[0,M]]", {}, none, {}, rank(4), semi, "(B7.8b)"});
    out.push_back({FamilyId::KM2, "KM-2", T::IIkm, "[[K,0],[D*(M-K),M]]", {sD},
                 +[](std::span<const double> x) { return make({{D, x[0]}, {t, x[0]}, {C, -x[0]}, {s, -x[0]}}); },
                 {{cL, cM - cK}}, rank(4), semi, "(B7.14d)"});
    out.push_back({FamilyId::KM3, "KM-3", T::IIkm, "[[K,B*M],[B^-1*K,M]]", {sBnz},
                 +[](std::span<const double> x) {
                     return make({{B, x[0]}, {beta, x[0]}, {C, 1 / x[0]}, {s, 1 / x[0]}});
                 },
                 {{cN, cM}}, rank(2), semi, "(B7.15c)"});
    out.push_back({FamilyId::KM4, "KM-4", T::IIkm, "[[K,A*(K-M)],[0,M]]", {sA},
                 +[](std::span<const double> x) {
                     return make({{A, x[0]}, {alpha, x[0]}, {B, -x[0]}, {beta, -x[0]}});
                 },
                 {{cN, cK - cM}}, rank(4), semi, "(B7.17c)"});
    out.push_back({FamilyId::KM5, "KM-5", T::IIkm, "[[K,A*(K-M)],[C*(K-M),M]]", {sA, sC},
                 +[](std::span<const double> x) {
                     return make({{A, x[0]}, {alpha, x[0]}, {B, -x[0]}, {beta, -x[0]}, {C, x[1]}, {s, x[1]},
                                  {D, -x[1]}, {t, -x[1]}});
                 },
                 {{cN, cK - cM}, {cL, cK - cM}}, rank(4), Closure::group, "(B7.23b)"});

    // Remaining two-vector variants.
    out.push_back({FamilyId::LN1, "LN-1", T::IIln, "[[A*L,N],[L,A^-1*N]]", {sAnz},
                 +[](std::span<const double> x) {
                     return make({{A, x[0]}, {alpha, x[0]}, {C, 1 / x[0]}, {s, 1 / x[0]}});
                 },
                 {{cK, cL}}, rank(2), semi, "(B8.10c)"});
    out.push_back({FamilyId::LN2, "LN-2", T::IIln, "[[B*N,N],[L,B^-1*L]]", {sBnz},
                 +[](std::span<const double> x) {
                     return make({{B, x[0]}, {beta, x[0]}, {D, 1 / x[0]}, {t, 1 / x[0]}});
                 },
                 {{cK, cN}}, rank(2), semi, "(B8.12c)"});
    out.push_back({FamilyId::KL1, "KL-1", T::IIkl, "[[K,A*K],[L,A*L]]", {sA},
                 +[](std::span<const double> x) {
                     return make({{A, x[0]}, {alpha, x[0]}, {D, x[0]}, {t, x[0]}});
                 },
                 {{cN, cK}}, rank(2), semi, "(B9.9a)"});
    out.push_back({FamilyId::KL2, "KL-2", T::IIkl, "[[K,L],[L,K+L]]", {},
                 +[](std::span<const double>) {
                     return make({{C, 1}, {s, 1}, {D, 1}, {t, 1}, {B, 1}, {beta, 1}});
                 },
                 {}, rank(4), semi, "(B9.10a)"});
    out.push_back({FamilyId::NM1, "NM-1", T::IInm, "[[A*N,N],[A*M,M]]", {sA},
                 +[](std::span<const double> x) {
                     return make({{A, x[0]}, {alpha, x[0]}, {D, x[0]}, {t, x[0]}});
                 },
                 {{cL, cM}}, rank(2), semi, "(B10.2)"});
    out.push_back({FamilyId::NM2, "NM-2", T::IInm, "[[M+N,N],[N,M]]", {},
                 +[](std::span<const double>) {
                     return make({{D, 1}, {t, 1}, {C, 1}, {s, 1}, {B, 1}, {beta, 1}});
                 },
                 {}, rank(4), semi, "(B10.3)"});
    out.push_back({FamilyId::KN1, "KN-1", T::IIkn, "[[K,N],[A*K,A*N]]", {sA},
                 +[](std::span<const double> x) {
                     return make({{A, x[0]}, {alpha, x[0]}, {D, x[0]}, {t, x[0]}});
                 },
                 {{cL, cK}}, rank(2), semi, "(B11.7b)"});
    out.push_back({FamilyId::KN2, "KN-2", T::IIkn, "[[K,N],[0,K]]", {},
                 +[](std::span<const double>) { return make({{C, 1}, {s, 1}}); }, {}, rank(4), semi, "(B11.8a)"});
    out.push_back({FamilyId::ML1, "ML-1", T::IIml, "[[A*L,A*M],[L,M]]", {sA},
                 +[](std::span<const double> x) {
                     return make({{A, x[0]}, {alpha, x[0]}, {D, x[0]}, {t, x[0]}});
                 },
                 {{cN, cM}}, rank(2), semi, "(B12.2)"});
    out.push_back({FamilyId::ML2, "ML-2", T::IIml, "[[M,0],[L,M]]", {},
                 +[](std::span<const double>) { return make({{C, 1}, {s, 1}}); }, {}, rank(4), semi, "(B12.3)"});

    // Three independent vectors.
    out.push_back({FamilyId::KMN1, "KMN-1", T::IIIkmn, "[[K,N],[0,M]]", {}, none, {}, rank(4, 2), semi, "(B13.5)"});
    out.push_back({FamilyId::KMN2, "KMN-2", T::IIIkmn, "[[K,N],[-K+M+N,M]]", {},
                 +[](std::span<const double>) {
                     return make({{A, -1}, {alpha, -1}, {B, 1}, {beta, 1}, {C, 1}, {s, 1}});
                 },
                 {}, rank(4, 2), semi, "(B13.6a)"});
    out.push_back({FamilyId::KML1, "KML-1", T::IIIkml, "[[K,0],[L,M]]", {}, none, {}, rank(4), semi, "(B13.7a)"});
    out.push_back({FamilyId::KML2, "KML-2", T::IIIkml, "[[K,-M+K+L],[L,M]]", {},
                 +[](std::span<const double>) {
                     return make({{A, 1}, {alpha, 1}, {B, -1}, {beta, -1}, {C, 1}, {s, 1}});
                 },
                 {}, rank(4), semi, "(B13.7b)"});
    out.push_back({FamilyId::NLK1, "NLK-1", T::IIInlk, "[[K,N],[L,K+A*N-A^-1*L]]", {sAnz},
                 +[](std::span<const double> x) {
                     return make({{A, x[0]}, {alpha, x[0]}, {B, -1 / x[0]}, {beta, -1 / x[0]}, {C, 1}, {s, 1}});
                 },
                 {{cM - cK, cN, cL}}, rank(4, 2), semi, "(B14.3b)"});
    out.push_back({FamilyId::NLM1, "NLM-1", T::IIInlm, "[[M+A*L-A^-1*N,N],[L,M]]", {sAnz},
                 +[](std::span<const double> x) {
                     return make({{A, -1 / x[0]}, {alpha, -1 / x[0]}, {B, x[0]}, {beta, x[0]}, {C, 1}, {s, 1}});
                 },
                 {{cK - cM, cL, cN}}, rank(4), semi, "(B14.5)"});

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const auto id = static_cast<FamilyId>(static_cast<int>(FamilyId::R3_00) + 4 * i + j);
            const std::string cell = std::to_string(i) + std::to_string(j);
            out.push_back({id, "(" + cell + ")", std::nullopt,
                         "row " + std::to_string(i) + " and column " + std::to_string(j) + " zero", {}, none, {},
                         rank(3), semi, "(" + cell + ")"});
        }
    return out;
}

const std::vector<Spec>& specs() {
    static const std::vector<Spec> table = build_specs();
    return table;
}

const Spec& spec(FamilyId id) { return specs().at(static_cast<std::size_t>(id)); }

std::string id_name(FamilyId id) {
    static const char* names[] = {
        "K1",    "K2",    "K3",    "K4",    "K5",    "K5P",   "K6",    "K7",    "M1",    "M2",
        "M3",    "M4",    "M5",    "M6",    "M7",    "N1",    "N2",    "N3",    "N4",    "L1",
        "L2",    "L3",    "L4",    "KM1",   "KM2",   "KM3",   "KM4",   "KM5",   "LN1",   "LN2",
        "KL1",   "KL2",   "NM1",   "NM2",   "KN1",   "KN2",   "ML1",   "ML2",   "KMN1",  "KMN2",
        "KML1",  "KML2",  "NLK1",  "NLM1",  "R3_00", "R3_01", "R3_02", "R3_03", "R3_10", "R3_11",
        "R3_12", "R3_13", "R3_20", "R3_21", "R3_22", "R3_23", "R3_30", "R3_31", "R3_32", "R3_33",
    };
    return names[static_cast<int>(id)];
}

std::vector<FamilyDescriptor> build_descriptors() {
    std::vector<FamilyDescriptor> out;
    for (const auto& sp : specs()) {
        FamilyDescriptor d;
        d.id = sp.id;
        d.name = id_name(sp.id);
        d.label = sp.label;
        d.variant = sp.variant;
        d.block_formula = sp.formula;
        d.free_scalars = sp.scalars;
        if (sp.variant)
            d.free_blocks = ansatz_variant(*sp.variant).independent;
        else
            d.free_blocks.assign(all_slots.begin(), all_slots.end());
        d.claimed_rank = sp.rank;
        d.closure = sp.closure;
        d.paper_anchor = sp.anchor;
        out.push_back(std::move(d));
    }
    return out;
}

double combo_component(const Combo& c, const ParamSet& p, std::size_t comp) {
    double v = 0.0;
    for (std::size_t s = 0; s < 4; ++s)
        if (c.w[s] != 0.0) v += c.w[s] * p[all_slots[s]][comp];
    return v;
}

std::vector<std::size_t> components(Part part) {
    switch (part) {
        case Part::scalar: return {0};
        case Part::vector: return {1, 2, 3};
        case Part::all: break;
    }
    return {0, 1, 2, 3};
}

// Closed-form seed; nullopt when the regressors carry no information.
std::optional<double> seed_scalar(const FitRule& rule, const ParamSet& p, double scale) {
    const double floor = 1e-12 * scale;
    double xx = 0, xy = 0, zz = 0, xz = 0, zy = 0;
    for (std::size_t comp : components(rule.part)) {
        const double y = combo_component(rule.target, p, comp);
        const double x = combo_component(rule.reg0, p, comp);
        const double z = rule.reg1 ? combo_component(*rule.reg1, p, comp) : 0.0;
        xx += x * x;
        xy += x * y;
        zz += z * z;
        xz += x * z;
        zy += z * y;
    }
    if (xx <= floor * floor) return std::nullopt;
    const double detm = xx * zz - xz * xz;
    if (!rule.reg1 || zz <= floor * floor || detm <= 1e-12 * xx * zz) return xy / xx;
    return (xy * zz - zy * xz) / detm;
}

// Least-squares projection onto {ansatz members with coefficients c}; the
// problem splits into one small system per Pauli component.
double projection_residual_sq(const AnsatzVariant& v, const CoefVector& c, const ParamSet& p, ParamSet* fitted) {
    const std::size_t nind = v.independent.size();
    double total = 0.0;
    for (std::size_t comp = 0; comp < 4; ++comp) {
        // rows: slot -> coefficients over independent columns
        std::array<std::array<double, 3>, 4> rows{};
        std::array<double, 4> y{};
        for (std::size_t s = 0; s < 4; ++s) y[s] = p[all_slots[s]][comp];
        for (std::size_t j = 0; j < nind; ++j) rows[static_cast<std::size_t>(v.independent[j])][j] = 1.0;
        for (const auto& rel : v.dependent) {
            auto& row = rows[static_cast<std::size_t>(rel.target)];
            for (const auto& term : rel.terms) {
                const std::size_t col = static_cast<std::size_t>(
                    std::find(v.independent.begin(), v.independent.end(), term.source) - v.independent.begin());
                row[col] += c[static_cast<std::size_t>(comp == 0 ? term.scalar_coef : term.vector_coef)];
            }
        }
        std::array<std::array<double, 4>, 3> aug{};  // normal equations [BtB | Bty]
        for (std::size_t i = 0; i < nind; ++i) {
            for (std::size_t j = 0; j < nind; ++j)
                for (std::size_t s = 0; s < 4; ++s) aug[i][j] += rows[s][i] * rows[s][j];
            for (std::size_t s = 0; s < 4; ++s) aug[i][3] += rows[s][i] * y[s];
        }
        for (std::size_t col = 0; col < nind; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < nind; ++r)
                if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
            std::swap(aug[col], aug[piv]);
            for (std::size_t r = 0; r < nind; ++r) {
                if (r == col) continue;
                const double f = aug[r][col] / aug[col][col];
                for (std::size_t j = col; j < 4; ++j) aug[r][j] -= f * aug[col][j];
            }
        }
        std::array<double, 3> x{};
        for (std::size_t i = 0; i < nind; ++i) x[i] = aug[i][3] / aug[i][i];
        for (std::size_t s = 0; s < 4; ++s) {
            double model = 0.0;
            for (std::size_t j = 0; j < nind; ++j) model += rows[s][j] * x[j];
            const double r = y[s] - model;
            total += r * r;
        }
        if (fitted != nullptr)
            for (std::size_t j = 0; j < nind; ++j) (*fitted)[v.independent[j]][comp] = x[j];
    }
    return total;
}

double rank3_residual(FamilyId id, const RealMatrix4& g) {
    const auto [row, col] = *rank3_cell(id);
    double sq = 0.0;
    for (int j = 0; j < 4; ++j) sq += g(row, j) * g(row, j);
    for (int i = 0; i < 4; ++i)
        if (i != row) sq += g(i, col) * g(i, col);
    return std::sqrt(sq) / std::max(1.0, frobenius_norm(g));
}

RealMatrix4 zero_cell(RealMatrix4 g, int row, int col) {
    for (int j = 0; j < 4; ++j) g(row, j) = 0.0;
    for (int i = 0; i < 4; ++i) g(i, col) = 0.0;
    return g;
}

double golden_min(const std::function<double(double)>& f, double lo, double hi, double& best_x) {
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - ratio * (b - a), d = a + ratio * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && (b - a) > 1e-15 * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    best_x = fc < fd ? c : d;
    return std::min(fc, fd);
}

void check_tol(double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

}  // namespace

std::string_view family_name(FamilyId id) { return descriptor(id).name; }

std::optional<FamilyId> parse_family(std::string_view name) {
    for (const auto& d : catalog())
        if (d.name == name) return d.id;
    return std::nullopt;
}

std::vector<FamilyId> all_families() {
    std::vector<FamilyId> ids;
    for (const auto& d : catalog()) ids.push_back(d.id);
    return ids;
}

std::string_view closure_name(Closure c) {
    switch (c) {
        case Closure::semigroup: return "semigroup";
        case Closure::group: return "group";
        case Closure::null_product: return "null-product";
        case Closure::unverified: return "unverified";
    }
    return "?";
}

std::span<const FamilyDescriptor> catalog() {
    static const std::vector<FamilyDescriptor> table = build_descriptors();
    return table;
}

const FamilyDescriptor& descriptor(FamilyId id) { return catalog()[static_cast<std::size_t>(id)]; }

std::optional<double> FamilyParams::scalar(std::string_view name) const {
    for (const auto& s : scalars)
        if (s.name == name) return s.value;
    return std::nullopt;
}

std::optional<FourVector> FamilyParams::block(Slot s) const {
    for (const auto& b : blocks)
        if (b.slot == s) return b.value;
    return std::nullopt;
}

std::optional<std::pair<int, int>> rank3_cell(FamilyId id) {
    const int offset = static_cast<int>(id) - static_cast<int>(FamilyId::R3_00);
    if (offset < 0 || offset >= 16) return std::nullopt;
    return std::pair{offset / 4, offset % 4};
}

std::vector<double> scalar_values(FamilyId id, std::span<const NamedScalar> scalars) {
    const auto& d = descriptor(id);
    if (scalars.size() != d.free_scalars.size())
        throw std::invalid_argument(d.name + " takes " + std::to_string(d.free_scalars.size()) + " scalar(s), got " +
                                    std::to_string(scalars.size()));
    std::vector<double> values;
    for (const auto& sp : d.free_scalars) {
        const auto it = std::find_if(scalars.begin(), scalars.end(), [&](const NamedScalar& s) {
            const auto c = parse_coef(s.name);
            return c && coef_name(*c) == sp.name;
        });
        if (it == scalars.end()) throw std::invalid_argument(d.name + " requires scalar " + sp.name);
        if (!std::isfinite(it->value)) throw std::invalid_argument("scalar " + sp.name + " is not finite");
        if (sp.domain == ScalarDomain::nonzero && std::abs(it->value) < nonzero_floor)
            throw std::invalid_argument(d.name + " requires " + sp.name + " != 0");
        values.push_back(it->value);
    }
    return values;
}

CoefVector family_coefficients(FamilyId id, std::span<const double> scalars) {
    const Spec& sp = spec(id);
    if (scalars.size() != sp.scalars.size()) throw std::invalid_argument("family_coefficients: wrong scalar count");
    return sp.coefs(scalars);
}

ParamSet construct(FamilyId id, const FamilyParams& params) {
    const auto& d = descriptor(id);
    const std::vector<double> values = scalar_values(id, params.scalars);
    if (params.blocks.size() != d.free_blocks.size())
        throw std::invalid_argument(d.name + " takes " + std::to_string(d.free_blocks.size()) + " free block(s), got " +
                                    std::to_string(params.blocks.size()));
    ParamSet free;
    for (Slot s : d.free_blocks) {
        const auto b = params.block(s);
        if (!b) throw std::invalid_argument(d.name + " requires free block " + slot_name(s));
        for (std::size_t i = 0; i < 4; ++i)
            if (!std::isfinite((*b)[i])) throw std::invalid_argument("block entries must be finite");
        free[s] = *b;
    }
    if (rank3_cell(id)) return construct_rank3(id, params_to_matrix(free));
    return ansatz_member(ansatz_variant(*d.variant), family_coefficients(id, values), free);
}

ParamSet construct_rank3(FamilyId id, const RealMatrix4& g) {
    const auto cell = rank3_cell(id);
    if (!cell) throw std::invalid_argument("construct_rank3: not a rank-3 family");
    return matrix_to_params(zero_cell(g, cell->first, cell->second));
}

double fixed_scalar_residual(FamilyId id, std::span<const double> scalars, const RealMatrix4& g) {
    if (rank3_cell(id)) return rank3_residual(id, g);
    const Spec& sp = spec(id);
    const double sq = projection_residual_sq(ansatz_variant(*sp.variant), family_coefficients(id, scalars),
                                             matrix_to_params(g), nullptr);
    return std::sqrt(2.0 * sq) / std::max(1.0, frobenius_norm(g));
}

MembershipResult membership_residual(FamilyId id, const RealMatrix4& g, double tol) {
    check_tol(tol);
    const auto& d = descriptor(id);
    const ParamSet p = matrix_to_params(g);
    MembershipResult out;

    if (const auto cell = rank3_cell(id)) {
        out.residual = rank3_residual(id, g);
        const ParamSet z = matrix_to_params(zero_cell(g, cell->first, cell->second));
        FamilyParams fp;
        for (Slot s : all_slots) fp.blocks.push_back({s, z[s]});
        out.fitted = fp;
        return out;
    }

    const Spec& sp = spec(id);
    const AnsatzVariant& v = ansatz_variant(*sp.variant);
    const double scale = std::max(1.0, frobenius_norm(g));
    std::vector<double> values(sp.scalars.size(), 1.0);
    bool identifiable = true;
    for (std::size_t i = 0; i < sp.scalars.size(); ++i) {
        auto seed = seed_scalar(sp.fits[i], p, scale);
        if (seed && sp.scalars[i].domain == ScalarDomain::nonzero && std::abs(*seed) < nonzero_floor) seed.reset();
        if (seed)
            values[i] = *seed;
        else
            identifiable = false;
    }

    auto residual_at = [&](const std::vector<double>& x) {
        return std::sqrt(2.0 * projection_residual_sq(v, family_coefficients(id, x), p, nullptr)) / scale;
    };
    double best = residual_at(values);

    // Skipping refinement below 1e-3 tol keeps membership monotone in tol.
    if (best > 1e-3 * tol && !sp.scalars.empty()) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t i = 0; i < values.size(); ++i) {
                const double x0 = values[i];
                double lo, hi;
                if (sp.scalars[i].domain == ScalarDomain::nonzero) {
                    lo = std::min(x0 / 3.0, x0 * 3.0);
                    hi = std::max(x0 / 3.0, x0 * 3.0);
                } else {
                    const double w = 0.5 * std::max(1.0, std::abs(x0));
                    lo = x0 - w;
                    hi = x0 + w;
                }
                std::vector<double> trial = values;
                double xbest = x0;
                const double f = golden_min(
                    [&](double x) {
                        trial[i] = x;
                        return residual_at(trial);
                    },
                    lo, hi, xbest);
                if (f < best) {
                    best = f;
                    values[i] = xbest;
                }
            }
    }

    out.residual = best;
    if (identifiable) {
        ParamSet proj;
        projection_residual_sq(v, family_coefficients(id, values), p, &proj);
        FamilyParams fp;
        for (std::size_t i = 0; i < values.size(); ++i) fp.scalars.push_back({sp.scalars[i].name, values[i]});
        for (Slot s : d.free_blocks) fp.blocks.push_back({s, proj[s]});
        out.fitted = fp;
    }
    return out;
}

std::vector<double> random_scalars(FamilyId id, Rng& rng) {
    std::vector<double> values;
    for (std::size_t i = 0; i < descriptor(id).free_scalars.size(); ++i) values.push_back(random_nonzero_scalar(rng));
    return values;
}

ParamSet random_member(FamilyId id, std::span<const double> scalars, Rng& rng) {
    const auto& d = descriptor(id);
    if (d.closure == Closure::null_product) {
        // K = A*q with q on a 1/16 grid, so K/A is exactly -L and products cancel
        // bit for bit whenever A has a short mantissa (A = 3, powers of two).
        FourVector q;
        do {
            q = random_vector(rng);
            for (std::size_t j = 0; j < 4; ++j) q[j] = std::round(q[j] * 16) / 16;
        } while (std::abs(det(to_block(q))) < 1e-6);
        const double a = scalar_values(id, std::vector<NamedScalar>{{"A", scalars[0]}})[0];
        ParamSet p;
        p.k = a * q;
        p.n = a * p.k;
        p.l = -1.0 * q;
        p.m = -1.0 * p.k;
        return p;
    }
    ParamSet free;
    for (Slot s : d.free_blocks) {
        FourVector x;
        do {
            x = random_vector(rng);
        } while (std::abs(det(to_block(x))) < 1e-6);
        free[s] = x;
    }
    if (rank3_cell(id)) return construct_rank3(id, params_to_matrix(free));
    return ansatz_member(ansatz_variant(*d.variant), family_coefficients(id, scalars), free);
}

FamilyParams random_family_params(FamilyId id, Rng& rng) {
    const auto& d = descriptor(id);
    const std::vector<double> values = random_scalars(id, rng);
    const ParamSet member = random_member(id, values, rng);
    FamilyParams fp;
    for (std::size_t i = 0; i < values.size(); ++i) fp.scalars.push_back({d.free_scalars[i].name, values[i]});
    for (Slot s : d.free_blocks) fp.blocks.push_back({s, member[s]});
    return fp;
}

ClosureReport closure_check(FamilyId id, std::span<const NamedScalar> scalars, int samples, double tol,
                            std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("closure_check: samples must be >= 1");
    check_tol(tol);
    const auto& d = descriptor(id);
    const std::vector<double> values = scalar_values(id, scalars);

    Rng rng(seed);
    std::vector<ParamSet> left, right, prod(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        left.push_back(random_member(id, values, rng));
        right.push_back(random_member(id, values, rng));
    }
    multiply_batch(left, right, prod);

    ClosureReport rep;
    rep.family = id;
    rep.samples = samples;
    rep.tol = tol;
    for (std::size_t k = 0; k < prod.size(); ++k) {
        const RealMatrix4 g = params_to_matrix(prod[k]);
        double res = fixed_scalar_residual(id, values, g);
        if (d.closure == Closure::null_product) {
            const double scale = std::max(1.0, frobenius_norm(params_to_matrix(left[k])) *
                                                   frobenius_norm(params_to_matrix(right[k])));
            res = std::max(res, frobenius_norm(g) / scale);
        }
        rep.max_product_residual = std::max(rep.max_product_residual, res);
        const MembershipResult fit = membership_residual(id, g, tol);
        if (fit.fitted)
            for (std::size_t i = 0; i < values.size(); ++i)
                rep.product_param_drift =
                    std::max(rep.product_param_drift, std::abs(fit.fitted->scalars[i].value - values[i]));
    }
    rep.pass = rep.max_product_residual <= tol;
    if (d.closure == Closure::unverified) rep.note = "closure not claimed for this family";
    if (d.closure == Closure::null_product) rep.note = "products must vanish";
    return rep;
}

RankCheckReport claimed_rank_check(FamilyId id, int samples, double tol, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("claimed_rank_check: samples must be >= 1");
    const auto& d = descriptor(id);
    Rng rng(seed);
    RankCheckReport rep;
    rep.family = id;
    rep.samples = samples;
    rep.expected = d.claimed_rank.generic;
    rep.stated_value = d.claimed_rank.stated_value;
    rep.stated_agrees = !d.claimed_rank.stated_value || *d.claimed_rank.stated_value == d.claimed_rank.generic;
    for (int i = 0; i < samples; ++i) {
        const auto values = random_scalars(id, rng);
        const int r = numerical_rank(params_to_matrix(random_member(id, values, rng)), tol);
        rep.observed_min = std::min(rep.observed_min, r);
        rep.observed_max = std::max(rep.observed_max, r);
    }
    rep.pass = rep.observed_min == rep.expected && rep.observed_max == rep.expected;

    if (id == FamilyId::K1 && d.claimed_rank.special_value) {
        bool ok = true;
        for (int i = 0; i < samples; ++i) {
            // k on the null cone: k0^2 = k1^2 - k2im^2 + k3^2, so det K = 0.
            FourVector k;
            double cone = -1.0;
            while (cone < 0.25) {
                k = random_vector(rng);
                cone = k.a1 * k.a1 - k.a2im * k.a2im + k.a3 * k.a3;
            }
            k.a0 = std::sqrt(cone);
            FamilyParams fp;
            fp.blocks.push_back({Slot::k, k});
            ok = ok && numerical_rank(params_to_matrix(construct(id, fp)), tol) == *d.claimed_rank.special_value;
        }
        rep.special_case_pass = ok;
        rep.pass = rep.pass && ok;
    }
    return rep;
}

}  // namespace mueller
