#include <algorithm>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "mueller/classifier.hpp"

using namespace mueller;
using namespace testing;

namespace {

bool has(const ClassificationReport& rep, FamilyId id) {
    return std::any_of(rep.matches.begin(), rep.matches.end(), [&](const FamilyMatch& m) { return m.family == id; });
}

}  // namespace

TEST_CASE("classify: identity") {
    const ClassificationReport rep = classify(RealMatrix4::identity(), 1e-9);
    CHECK(rep.rank == 4);
    CHECK(rep.det == 1.0);
    for (FamilyId id : {FamilyId::K2, FamilyId::M2, FamilyId::KM1, FamilyId::KMN1, FamilyId::KML1, FamilyId::KM5,
                        FamilyId::KN2, FamilyId::ML2})
        CHECK(has(rep, id));
    CHECK(!has(rep, FamilyId::K1));
    CHECK(!has(rep, FamilyId::R3_00));
}

TEST_CASE("classify: rank-3 member and LN2 member") {
    Rng rng(4);
    RealMatrix4 full;
    for (double& x : full.e) x = uniform(rng, -2, 2);
    const ClassificationReport r3 = classify(params_to_matrix(construct_rank3(FamilyId::R3_00, full)), 1e-9);
    CHECK(r3.rank == 3);
    CHECK(has(r3, FamilyId::R3_00));

    FamilyParams fp;
    fp.scalars = {{"B", 1.5}};
    fp.blocks = {{Slot::l, random_vector(rng)}, {Slot::n, random_vector(rng)}};
    const ClassificationReport ln2 = classify(params_to_matrix(construct(FamilyId::LN2, fp)), 1e-9);
    const auto it = std::find_if(ln2.matches.begin(), ln2.matches.end(),
                                 [](const FamilyMatch& m) { return m.family == FamilyId::LN2; });
    REQUIRE(it != ln2.matches.end());
    REQUIRE(it->fitted);
    CHECK(it->fitted->scalar("B").value() == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("classify: round trip for every family") {
    Rng rng(99);
    for (FamilyId id : all_families()) {
        CAPTURE(family_name(id));
        for (int i = 0; i < 5; ++i) {
            const ClassificationReport rep = classify(params_to_matrix(construct(id, random_family_params(id, rng))));
            REQUIRE(has(rep, id));
        }
    }
}

TEST_CASE("classify: ordering, nesting and monotonicity") {
    Rng rng(7);
    ParamSet p;
    p.k = random_vector(rng);
    const RealMatrix4 g = params_to_matrix(p);
    const ClassificationReport rep = classify(g, 1e-9);
    CHECK(has(rep, FamilyId::K1));
    CHECK(has(rep, FamilyId::KM1));
    CHECK(has(rep, FamilyId::KMN1));
    for (std::size_t i = 1; i < rep.matches.size(); ++i) {
        const auto& a = rep.matches[i - 1];
        const auto& b = rep.matches[i];
        CHECK((a.residual < b.residual || (a.residual == b.residual && a.family < b.family)));
    }

    RealMatrix4 noisy = params_to_matrix(construct(FamilyId::KN1, random_family_params(FamilyId::KN1, rng)));
    noisy.e[5] += 1e-5;
    std::size_t previous = 0;
    for (double tol : {1e-9, 1e-7, 1e-5, 1e-3, 1e-1, 1.0}) {
        const ClassificationReport r = classify(noisy, tol);
        CHECK(r.matches.size() >= previous);
        previous = r.matches.size();
    }
    CHECK_THROWS_AS(classify(g, 0.0), std::invalid_argument);
}
