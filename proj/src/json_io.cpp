#include "mueller/json_io.hpp"

#include <cmath>

namespace mueller {

MatrixDocument parse_matrix_document(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw DocumentError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw DocumentError("matrix document must be a JSON object");
    if (!j.contains("g")) throw DocumentError("matrix document has no \"g\" array");
    const Json& g = j["g"];
    if (!g.is_array()) throw DocumentError("\"g\" must be an array of 16 numbers");
    if (g.size() != 16)
        throw DocumentError("\"g\" must have 16 entries, got " + std::to_string(g.size()));
    MatrixDocument doc;
    for (std::size_t i = 0; i < 16; ++i) {
        if (!g[i].is_number()) throw DocumentError("entry " + std::to_string(i) + " of \"g\" is not a number");
        const double x = g[i].get<double>();
        if (!std::isfinite(x)) throw DocumentError("entry " + std::to_string(i) + " of \"g\" is not finite");
        doc.g.e[i] = x;
    }
    if (j.contains("label")) {
        if (!j["label"].is_string()) throw DocumentError("\"label\" must be a string");
        doc.label = j["label"].get<std::string>();
    }
    return doc;
}

Json to_json(const FourVector& v) { return Json::array({v.a0, v.a1, v.a2im, v.a3}); }

Json to_json(const ParamSet& p) {
    Json j = Json::object();
    j["k"] = to_json(p.k);
    j["m"] = to_json(p.m);
    j["l"] = to_json(p.l);
    j["n"] = to_json(p.n);
    return j;
}

Json to_json(const RealMatrix4& g) {
    Json j = Json::array();
    for (double x : g.e) j.push_back(x);
    return j;
}

Json scalars_json(const FamilyParams& fp) {
    Json j = Json::object();
    for (const auto& s : fp.scalars) j[s.name] = s.value;
    return j;
}

Json to_json(const FamilyDescriptor& d) {
    Json j = Json::object();
    j["id"] = d.name;
    j["label"] = d.label;
    j["variant"] = d.variant ? Json(std::string(ansatz_variant(*d.variant).name)) : Json(nullptr);
    j["block_formula"] = d.block_formula;
    Json scalars = Json::array();
    for (const auto& s : d.free_scalars)
        scalars.push_back({{"name", s.name}, {"domain", s.domain == ScalarDomain::nonzero ? "nonzero" : "real"}});
    j["free_scalars"] = scalars;
    Json blocks = Json::array();
    for (Slot s : d.free_blocks) blocks.push_back(slot_name(s));
    j["free_blocks"] = blocks;
    Json rank = Json::object();
    rank["generic"] = d.claimed_rank.generic;
    if (d.claimed_rank.stated_value) rank["stated_value"] = *d.claimed_rank.stated_value;
    if (d.claimed_rank.special_value)
        rank["special"] = {{"condition", d.claimed_rank.special_condition}, {"rank", *d.claimed_rank.special_value}};
    j["claimed_rank"] = rank;
    j["closure"] = std::string(closure_name(d.closure));
    j["paper_anchor"] = d.paper_anchor;
    return j;
}

Json catalog_json() {
    Json j = Json::array();
    for (const auto& d : catalog()) j.push_back(to_json(d));
    return j;
}

Json to_json(const ClassificationReport& rep) {
    Json j = Json::object();
    j["rank"] = rep.rank;
    j["det"] = rep.det;
    j["tol"] = rep.tol;
    Json matches = Json::array();
    for (const auto& m : rep.matches) {
        Json e = Json::object();
        e["family"] = std::string(family_name(m.family));
        e["residual"] = m.residual;
        e["fitted"] = m.fitted ? scalars_json(*m.fitted) : Json(nullptr);
        matches.push_back(e);
    }
    j["matches"] = matches;
    return j;
}

Json to_json(const VariantReport& rep) {
    Json j = Json::object();
    j["variant"] = rep.variant;
    j["tol"] = rep.tol;
    Json fams = Json::array();
    for (const auto& f : rep.families)
        fams.push_back({{"family", std::string(family_name(f.family))},
                        {"samples", f.samples},
                        {"max_residual", f.max_residual},
                        {"verdict", f.pass ? "pass" : "fail"}});
    j["families"] = fams;
    j["verdict"] = rep.pass ? "pass" : "fail";
    return j;
}

Json to_json(const SuiteReport& rep) {
    Json j = Json::object();
    Json vs = Json::array();
    for (const auto& v : rep.variants) vs.push_back(to_json(v));
    j["variants"] = vs;
    j["family_count"] = rep.family_count();
    j["verdict"] = rep.pass ? "pass" : "fail";
    return j;
}

Json to_json(const ClosureReport& rep) {
    Json j = Json::object();
    j["family"] = std::string(family_name(rep.family));
    j["samples"] = rep.samples;
    j["max_product_residual"] = rep.max_product_residual;
    j["product_param_drift"] = rep.product_param_drift;
    j["tol"] = rep.tol;
    j["verdict"] = rep.pass ? "pass" : "fail";
    if (!rep.note.empty()) j["note"] = rep.note;
    return j;
}

Json to_json(const RankCheckReport& rep) {
    Json j = Json::object();
    j["family"] = std::string(family_name(rep.family));
    j["samples"] = rep.samples;
    j["expected"] = rep.expected;
    j["observed_min"] = rep.observed_min;
    j["observed_max"] = rep.observed_max;
    if (rep.stated_value) j["stated_value"] = *rep.stated_value;
    j["stated_agrees"] = rep.stated_agrees;
    if (rep.special_case_pass) j["special_case_pass"] = *rep.special_case_pass;
    j["verdict"] = rep.pass ? "pass" : "fail";
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace mueller
