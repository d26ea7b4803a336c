#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mueller/ansatz.hpp"
#include "mueller/core.hpp"
#include "mueller/random.hpp"

namespace mueller {

// clang-format off
enum class FamilyId : int {
    K1, K2, K3, K4, K5, K5P, K6, K7,
    M1, M2, M3, M4, M5, M6, M7,
    N1, N2, N3, N4,
    L1, L2, L3, L4,
    KM1, KM2, KM3, KM4, KM5,
    LN1, LN2, KL1, KL2, NM1, NM2, KN1, KN2, ML1, ML2,
    KMN1, KMN2, KML1, KML2, NLK1, NLM1,
    R3_00, R3_01, R3_02, R3_03, R3_10, R3_11, R3_12, R3_13,
    R3_20, R3_21, R3_22, R3_23, R3_30, R3_31, R3_32, R3_33,
};
// clang-format on
inline constexpr std::size_t family_count = 60;

std::string_view family_name(FamilyId id);
std::optional<FamilyId> parse_family(std::string_view name);
std::vector<FamilyId> all_families();

enum class ScalarDomain { any, nonzero };
inline constexpr double nonzero_floor = 1e-12;

struct ScalarSpec {
    std::string name;
    ScalarDomain domain = ScalarDomain::any;
};

enum class Closure { semigroup, group, null_product, unverified };
std::string_view closure_name(Closure c);

struct RankClaim {
    int generic = 4;                  // rank of generic members, confirmed by elimination
    std::optional<int> stated_value;   // set when the source states a different rank
    std::optional<int> special_value; // rank on the special locus described by special_condition
    std::string special_condition;
};

struct FamilyDescriptor {
    FamilyId id;
    std::string name;
    std::string label;
    std::optional<AnsatzTag> variant;
    std::string block_formula;
    std::vector<ScalarSpec> free_scalars;
    std::vector<Slot> free_blocks;
    RankClaim claimed_rank;
    Closure closure = Closure::semigroup;
    std::string paper_anchor;
};

std::span<const FamilyDescriptor> catalog();
const FamilyDescriptor& descriptor(FamilyId id);

struct NamedScalar {
    std::string name;
    double value = 0.0;
};

struct NamedBlock {
    Slot slot;
    FourVector value;
};

struct FamilyParams {
    std::vector<NamedScalar> scalars;
    std::vector<NamedBlock> blocks;

    std::optional<double> scalar(std::string_view name) const;
    std::optional<FourVector> block(Slot s) const;
};

// Throws std::invalid_argument on name/arity mismatch or a scalar outside its domain.
ParamSet construct(FamilyId id, const FamilyParams& params);
// Rank-3 families: zero row i and column j of g. Throws for other ids.
ParamSet construct_rank3(FamilyId id, const RealMatrix4& g);
std::optional<std::pair<int, int>> rank3_cell(FamilyId id);

// Ansatz coefficients of a family for the given scalar values (in descriptor order).
CoefVector family_coefficients(FamilyId id, std::span<const double> scalars);
// Scalar values in descriptor order; throws like construct().
std::vector<double> scalar_values(FamilyId id, std::span<const NamedScalar> scalars);

struct MembershipResult {
    double residual = 0.0;
    std::optional<FamilyParams> fitted;
};

MembershipResult membership_residual(FamilyId id, const RealMatrix4& g, double tol = 1e-9);
// Residual against the family with the scalars held fixed (descriptor order).
double fixed_scalar_residual(FamilyId id, std::span<const double> scalars, const RealMatrix4& g);

// Random scalars in descriptor order, magnitudes in [0.5, 2] with random sign.
std::vector<double> random_scalars(FamilyId id, Rng& rng);
// Random member with the given scalars; free blocks uniform in [-2, 2] with
// |det| >= 1e-6 for every free 2x2 block.
ParamSet random_member(FamilyId id, std::span<const double> scalars, Rng& rng);
FamilyParams random_family_params(FamilyId id, Rng& rng);

struct ClosureReport {
    FamilyId family;
    int samples = 0;
    double max_product_residual = 0.0;
    // Largest |refitted scalar - fixed scalar| over products where the scalars are identifiable.
    double product_param_drift = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::string note;
};

ClosureReport closure_check(FamilyId id, std::span<const NamedScalar> scalars, int samples, double tol,
                            std::uint64_t seed = 1);

struct RankCheckReport {
    FamilyId family;
    int samples = 0;
    int expected = 0;
    int observed_min = 4;
    int observed_max = 0;
    bool pass = false;
    std::optional<int> stated_value;
    bool stated_agrees = true;
    std::optional<bool> special_case_pass;
};

RankCheckReport claimed_rank_check(FamilyId id, int samples, double tol = default_rank_tol, std::uint64_t seed = 1);

}  // namespace mueller
