#include "mueller/ansatz.hpp"

#include <stdexcept>

namespace mueller {

namespace {

using enum Slot;
using enum Coef;

AnsatzVariant one_vector(AnsatzTag tag, std::string_view name, Slot src, Slot d1, Slot d2, Slot d3) {
    return {tag, name, {src},
            {{d1, {{src, alpha, A}}}, {d2, {{src, beta, B}}}, {d3, {{src, t, D}}}},
            {A, B, D, alpha, beta, t}};
}

AnsatzVariant two_vector(AnsatzTag tag, std::string_view name, std::vector<Slot> indep, AnsatzRelation first,
                         AnsatzRelation second) {
    return {tag, name, std::move(indep), {std::move(first), std::move(second)}, {A, B, C, D, alpha, beta, s, t}};
}

AnsatzVariant three_vector(AnsatzTag tag, std::string_view name, Slot x, Slot y, Slot z, Slot target) {
    return {tag, name, {x, y, z}, {{target, {{x, alpha, A}, {y, beta, B}, {z, s, C}}}}, {A, B, C, alpha, beta, s}};
}

const std::vector<AnsatzVariant>& table() {
    static const std::vector<AnsatzVariant> variants = {
        one_vector(AnsatzTag::Ik, "Ik", k, n, m, l),
        one_vector(AnsatzTag::Im, "Im", m, n, k, l),
        one_vector(AnsatzTag::In, "In", n, k, m, l),
        one_vector(AnsatzTag::Il, "Il", l, k, m, n),
        two_vector(AnsatzTag::IIkm, "IIkm", {k, m}, {n, {{k, alpha, A}, {m, beta, B}}},
                   {l, {{k, s, C}, {m, t, D}}}),
        two_vector(AnsatzTag::IIln, "IIln", {l, n}, {k, {{l, alpha, A}, {n, beta, B}}},
                   {m, {{l, t, D}, {n, s, C}}}),
        two_vector(AnsatzTag::IIkl, "IIkl", {k, l}, {n, {{k, alpha, A}, {l, beta, B}}},
                   {m, {{l, t, D}, {k, s, C}}}),
        two_vector(AnsatzTag::IInm, "IInm", {n, m}, {l, {{m, alpha, A}, {n, beta, B}}},
                   {k, {{n, t, D}, {m, s, C}}}),
        two_vector(AnsatzTag::IIkn, "IIkn", {k, n}, {l, {{k, alpha, A}, {n, beta, B}}},
                   {m, {{n, t, D}, {k, s, C}}}),
        two_vector(AnsatzTag::IIml, "IIml", {m, l}, {n, {{m, alpha, A}, {l, beta, B}}},
                   {k, {{l, t, D}, {m, s, C}}}),
        three_vector(AnsatzTag::IIIkmn, "IIIkmn", k, m, n, l),
        three_vector(AnsatzTag::IIIkml, "IIIkml", k, m, l, n),
        three_vector(AnsatzTag::IIInlk, "IIInlk", n, l, k, m),
        three_vector(AnsatzTag::IIInlm, "IIInlm", n, l, m, k),
    };
    return variants;
}

}  // namespace

std::string_view coef_name(Coef c) {
    switch (c) {
        case A: return "A";
        case B: return "B";
        case C: return "C";
        case D: return "D";
        case alpha: return "alpha";
        case beta: return "beta";
        case s: return "s";
        case t: return "t";
    }
    return "?";
}

std::optional<Coef> parse_coef(std::string_view name) {
    if (name == "α") return alpha;
    if (name == "β") return beta;
    for (std::size_t i = 0; i < coef_count; ++i)
        if (coef_name(static_cast<Coef>(i)) == name) return static_cast<Coef>(i);
    return std::nullopt;
}

std::span<const AnsatzVariant> ansatz_variants() { return table(); }

const AnsatzVariant& ansatz_variant(AnsatzTag tag) { return table().at(static_cast<std::size_t>(tag)); }

std::optional<AnsatzTag> parse_ansatz_tag(std::string_view name) {
    for (const auto& v : table())
        if (v.name == name) return v.tag;
    return std::nullopt;
}

FourVector apply_relation(const AnsatzRelation& rel, const CoefVector& c, const ParamSet& p) {
    FourVector out;
    for (const auto& term : rel.terms) {
        const FourVector& x = p[term.source];
        const double cs = c[static_cast<std::size_t>(term.scalar_coef)];
        const double cv = c[static_cast<std::size_t>(term.vector_coef)];
        out.a0 += cs * x.a0;
        out.a1 += cv * x.a1;
        out.a2im += cv * x.a2im;
        out.a3 += cv * x.a3;
    }
    return out;
}

ParamSet ansatz_member(const AnsatzVariant& v, const CoefVector& c, const ParamSet& free) {
    ParamSet p;
    for (Slot s : v.independent) p[s] = free[s];
    for (const auto& rel : v.dependent) p[rel.target] = apply_relation(rel, c, p);
    return p;
}

}  // namespace mueller
