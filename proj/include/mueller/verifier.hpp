#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mueller/ansatz.hpp"
#include "mueller/core.hpp"
#include "mueller/families.hpp"

namespace mueller {

using NamedCoefficients = std::vector<std::pair<std::string, double>>;

// Missing names default to 0; a name that is not a coefficient of the
// variant throws std::invalid_argument.
CoefVector resolve_coefficients(AnsatzTag v, const NamedCoefficients& coeffs);

// For each dependent vector of v, 4 entries: product component minus the
// ansatz applied to the product's independent vectors. Product is P*Q.
std::vector<double> ansatz_residual(AnsatzTag v, const CoefVector& coeffs, const ParamSet& p, const ParamSet& q);
std::vector<double> ansatz_residual(AnsatzTag v, const NamedCoefficients& coeffs, const ParamSet& p,
                                    const ParamSet& q);

struct FamilyVerification {
    FamilyId family;
    int samples = 0;
    double max_residual = 0.0;
    bool pass = false;
};

struct VariantReport {
    std::string variant;  // ansatz tag, or "R3" for the row/column-zero group
    double tol = 0.0;
    std::vector<FamilyVerification> families;
    bool pass = false;
};

struct SuiteReport {
    std::vector<VariantReport> variants;
    bool pass = false;
    std::size_t family_count() const;
};

inline constexpr double default_verify_tol = 1e-9;
inline constexpr std::uint64_t default_verify_seed = 42;

VariantReport verify_solution_table(AnsatzTag v, int samples, double tol = default_verify_tol,
                                    std::uint64_t seed = default_verify_seed);
// Products of R3_ij members keep row i and column j zero.
VariantReport verify_rank3(int samples, double tol = default_verify_tol, std::uint64_t seed = default_verify_seed);
SuiteReport verify_all(int samples, double tol = default_verify_tol, std::uint64_t seed = default_verify_seed);

// True iff the relative ansatz residual stays <= 1e-10 on `trials` random pairs.
bool verify_constraint_system(AnsatzTag v, const CoefVector& coeffs, int trials,
                              std::uint64_t seed = default_verify_seed);
bool verify_constraint_system(AnsatzTag v, const NamedCoefficients& coeffs, int trials,
                              std::uint64_t seed = default_verify_seed);

struct DiscriminationReport {
    AnsatzTag variant;
    int drawn = 0;
    int rejected_near_catalog = 0;
    int failed = 0;  // draws that fail verify_constraint_system, as they should
};

// Draws `count` coefficient vectors uniform in [-2, 2] away from every
// catalog solution of v and counts how many fail the constraint system.
DiscriminationReport discrimination_check(AnsatzTag v, int count, int trials = 5,
                                          std::uint64_t seed = default_verify_seed);

std::string format_text(const SuiteReport& rep);

}  // namespace mueller
