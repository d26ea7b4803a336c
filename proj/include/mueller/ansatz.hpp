#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mueller/core.hpp"

namespace mueller {

enum class AnsatzTag { Ik, Im, In, Il, IIkm, IIln, IIkl, IInm, IIkn, IIml, IIIkmn, IIIkml, IIInlk, IIInlm };
inline constexpr std::size_t ansatz_count = 14;

enum class Coef { A, B, C, D, alpha, beta, s, t };
inline constexpr std::size_t coef_count = 8;
using CoefVector = std::array<double, coef_count>;

std::string_view coef_name(Coef c);
// Accepts ASCII names and the Greek letters for alpha and beta.
std::optional<Coef> parse_coef(std::string_view name);

// One term of a dependent vector: scalar part scaled by scalar_coef, spatial
// part scaled by vector_coef, both applied to `source`.
struct AnsatzTerm {
    Slot source;
    Coef scalar_coef;
    Coef vector_coef;
};

struct AnsatzRelation {
    Slot target;
    std::vector<AnsatzTerm> terms;
};

struct AnsatzVariant {
    AnsatzTag tag;
    std::string_view name;
    std::vector<Slot> independent;
    std::vector<AnsatzRelation> dependent;
    std::vector<Coef> coefficient_names;
};

std::span<const AnsatzVariant> ansatz_variants();
const AnsatzVariant& ansatz_variant(AnsatzTag tag);
std::optional<AnsatzTag> parse_ansatz_tag(std::string_view name);

FourVector apply_relation(const AnsatzRelation& rel, const CoefVector& c, const ParamSet& p);
// Copies the independent vectors of `free` and fills the dependent ones.
ParamSet ansatz_member(const AnsatzVariant& v, const CoefVector& c, const ParamSet& free);

}  // namespace mueller
