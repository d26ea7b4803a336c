#pragma once

#include <optional>
#include <vector>

#include "mueller/core.hpp"
#include "mueller/families.hpp"

namespace mueller {

struct FamilyMatch {
    FamilyId family;
    double residual = 0.0;
    std::optional<FamilyParams> fitted;
};

struct ClassificationReport {
    int rank = 0;
    double det = 0.0;
    double tol = 0.0;
    std::vector<FamilyMatch> matches;  // ascending residual, ties in catalog order
};

inline constexpr double default_membership_tol = 1e-9;

// tol is used both for membership and for the numerical rank.
ClassificationReport classify(const RealMatrix4& g, double tol = default_membership_tol);

}  // namespace mueller
