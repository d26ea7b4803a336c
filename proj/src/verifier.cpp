#include "mueller/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace mueller {

namespace {

double max_component(const ParamSet& p) {
    double m = 0.0;
    for (Slot s : all_slots)
        for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(p[s][i]));
    return m;
}

std::vector<double> relation_residual(const AnsatzVariant& v, const CoefVector& c, const ParamSet& prod) {
    std::vector<double> out;
    for (const auto& rel : v.dependent) {
        const FourVector diff = prod[rel.target] - apply_relation(rel, c, prod);
        for (std::size_t i = 0; i < 4; ++i) out.push_back(diff[i]);
    }
    return out;
}

double relative_max(const std::vector<double>& r, const ParamSet& prod) {
    double m = 0.0;
    for (double x : r) m = std::max(m, std::abs(x));
    return m / std::max(1.0, max_component(prod));
}

std::vector<FamilyId> families_of(AnsatzTag v) {
    std::vector<FamilyId> out;
    for (const auto& d : catalog())
        if (d.variant == v) out.push_back(d.id);
    return out;
}

// Coefficient index that equals scalar i of the family identically.
std::optional<std::size_t> bound_coefficient(FamilyId id, std::size_t i) {
    const std::size_t n = descriptor(id).free_scalars.size();
    std::vector<double> a(n), b(n);
    for (std::size_t j = 0; j < n; ++j) {
        a[j] = 1.3 + 0.37 * static_cast<double>(j);
        b[j] = -0.71 - 0.29 * static_cast<double>(j);
    }
    const CoefVector ca = family_coefficients(id, a), cb = family_coefficients(id, b);
    for (std::size_t c = 0; c < coef_count; ++c)
        if (ca[c] == a[i] && cb[c] == b[i]) return c;
    return std::nullopt;
}

bool near_catalog(AnsatzTag v, const CoefVector& cand) {
    const auto& names = ansatz_variant(v).coefficient_names;
    for (FamilyId id : families_of(v)) {
        const auto& d = descriptor(id);
        std::vector<double> scalars;
        bool usable = true;
        for (std::size_t i = 0; i < d.free_scalars.size(); ++i) {
            const auto c = bound_coefficient(id, i);
            if (!c) {
                usable = false;
                break;
            }
            const double x = cand[*c];
            if (d.free_scalars[i].domain == ScalarDomain::nonzero && std::abs(x) < nonzero_floor) usable = false;
            scalars.push_back(x);
        }
        if (!usable) continue;
        const CoefVector fam = family_coefficients(id, scalars);
        double dist = 0.0;
        for (Coef c : names)
            dist = std::max(dist, std::abs(fam[static_cast<std::size_t>(c)] - cand[static_cast<std::size_t>(c)]));
        if (dist < 1e-6) return true;
    }
    return false;
}

}  // namespace

CoefVector resolve_coefficients(AnsatzTag v, const NamedCoefficients& coeffs) {
    const auto& var = ansatz_variant(v);
    CoefVector c{};
    for (const auto& [name, value] : coeffs) {
        const auto coef = parse_coef(name);
        if (!coef || std::find(var.coefficient_names.begin(), var.coefficient_names.end(), *coef) ==
                         var.coefficient_names.end())
            throw std::invalid_argument("coefficient '" + name + "' is not used by variant " +
                                        std::string(var.name));
        c[static_cast<std::size_t>(*coef)] = value;
    }
    return c;
}

std::vector<double> ansatz_residual(AnsatzTag v, const CoefVector& coeffs, const ParamSet& p, const ParamSet& q) {
    return relation_residual(ansatz_variant(v), coeffs, multiply(p, q));
}

std::vector<double> ansatz_residual(AnsatzTag v, const NamedCoefficients& coeffs, const ParamSet& p,
                                    const ParamSet& q) {
    return ansatz_residual(v, resolve_coefficients(v, coeffs), p, q);
}

std::size_t SuiteReport::family_count() const {
    std::size_t n = 0;
    for (const auto& v : variants) n += v.families.size();
    return n;
}

VariantReport verify_solution_table(AnsatzTag v, int samples, double tol, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    const auto& var = ansatz_variant(v);
    VariantReport rep;
    rep.variant = std::string(var.name);
    rep.tol = tol;
    rep.pass = true;
    Rng rng(seed);
    for (FamilyId id : families_of(v)) {
        std::vector<ParamSet> left, right, prod(static_cast<std::size_t>(samples));
        std::vector<CoefVector> coefs;
        for (int i = 0; i < samples; ++i) {
            const auto scalars = random_scalars(id, rng);
            coefs.push_back(family_coefficients(id, scalars));
            left.push_back(random_member(id, scalars, rng));
            right.push_back(random_member(id, scalars, rng));
        }
        multiply_batch(left, right, prod);
        FamilyVerification fv{id, samples, 0.0, false};
        for (std::size_t i = 0; i < prod.size(); ++i)
            fv.max_residual = std::max(fv.max_residual, relative_max(relation_residual(var, coefs[i], prod[i]), prod[i]));
        fv.pass = fv.max_residual <= tol;
        rep.pass = rep.pass && fv.pass;
        rep.families.push_back(fv);
    }
    return rep;
}

VariantReport verify_rank3(int samples, double tol, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    VariantReport rep;
    rep.variant = "R3";
    rep.tol = tol;
    rep.pass = true;
    Rng rng(seed);
    for (FamilyId id : all_families()) {
        const auto cell = rank3_cell(id);
        if (!cell) continue;
        FamilyVerification fv{id, samples, 0.0, false};
        for (int i = 0; i < samples; ++i) {
            const RealMatrix4 a = params_to_matrix(random_member(id, {}, rng));
            const RealMatrix4 b = params_to_matrix(random_member(id, {}, rng));
            const RealMatrix4 g = matmul(a, b);
            double worst = 0.0;
            for (int j = 0; j < 4; ++j) worst = std::max({worst, std::abs(g(cell->first, j)), std::abs(g(j, cell->second))});
            fv.max_residual = std::max(fv.max_residual, worst / std::max(1.0, max_abs(g)));
        }
        fv.pass = fv.max_residual <= tol;
        rep.pass = rep.pass && fv.pass;
        rep.families.push_back(fv);
    }
    return rep;
}

SuiteReport verify_all(int samples, double tol, std::uint64_t seed) {
    SuiteReport rep;
    rep.pass = true;
    for (const auto& v : ansatz_variants()) {
        rep.variants.push_back(verify_solution_table(v.tag, samples, tol, seed));
        rep.pass = rep.pass && rep.variants.back().pass;
    }
    rep.variants.push_back(verify_rank3(samples, tol, seed));
    rep.pass = rep.pass && rep.variants.back().pass;
    return rep;
}

bool verify_constraint_system(AnsatzTag v, const CoefVector& coeffs, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const auto& var = ansatz_variant(v);
    Rng rng(seed);
    for (int i = 0; i < trials; ++i) {
        const ParamSet p = ansatz_member(var, coeffs, random_params(rng));
        const ParamSet q = ansatz_member(var, coeffs, random_params(rng));
        const ParamSet prod = multiply(p, q);
        if (relative_max(relation_residual(var, coeffs, prod), prod) > 1e-10) return false;
    }
    return true;
}

bool verify_constraint_system(AnsatzTag v, const NamedCoefficients& coeffs, int trials, std::uint64_t seed) {
    return verify_constraint_system(v, resolve_coefficients(v, coeffs), trials, seed);
}

DiscriminationReport discrimination_check(AnsatzTag v, int count, int trials, std::uint64_t seed) {
    const auto& names = ansatz_variant(v).coefficient_names;
    DiscriminationReport rep{v, 0, 0, 0};
    Rng rng(seed);
    while (rep.drawn < count) {
        CoefVector c{};
        for (Coef name : names) c[static_cast<std::size_t>(name)] = uniform(rng, -2.0, 2.0);
        if (near_catalog(v, c)) {
            ++rep.rejected_near_catalog;
            continue;
        }
        ++rep.drawn;
        if (!verify_constraint_system(v, c, trials, rng())) ++rep.failed;
    }
    return rep;
}

std::string format_text(const SuiteReport& rep) {
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof line, "%-8s %-7s %8s %14s  %s\n", "variant", "family", "samples", "max_residual",
                  "verdict");
    os << line;
    for (const auto& v : rep.variants)
        for (const auto& f : v.families) {
            std::snprintf(line, sizeof line, "%-8s %-7s %8d %14.3e  %s\n", v.variant.c_str(),
                          std::string(family_name(f.family)).c_str(), f.samples, f.max_residual,
                          f.pass ? "pass" : "FAIL");
            os << line;
        }
    os << rep.family_count() << " families, " << (rep.pass ? "all pass" : "failures present") << "\n";
    return os.str();
}

}  // namespace mueller
