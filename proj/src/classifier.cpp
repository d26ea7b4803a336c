#include "mueller/classifier.hpp"

#include <algorithm>
#include <stdexcept>

namespace mueller {

ClassificationReport classify(const RealMatrix4& g, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("classify: tol must be positive");
    ClassificationReport rep;
    rep.tol = tol;
    rep.rank = numerical_rank(g, tol);
    rep.det = det_direct(g);
    for (FamilyId id : all_families()) {
        MembershipResult m = membership_residual(id, g, tol);
        if (m.residual <= tol) rep.matches.push_back({id, m.residual, std::move(m.fitted)});
    }
    std::stable_sort(rep.matches.begin(), rep.matches.end(),
                     [](const FamilyMatch& a, const FamilyMatch& b) { return a.residual < b.residual; });
    return rep;
}

}  // namespace mueller
