#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "mueller/classifier.hpp"
#include "mueller/core.hpp"
#include "mueller/families.hpp"
#include "mueller/verifier.hpp"

namespace mueller {

using Json = nlohmann::ordered_json;

struct MatrixDocument {
    RealMatrix4 g;
    std::optional<std::string> label;
};

struct DocumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Throws DocumentError on malformed JSON, a missing "g", a wrong entry count
// or non-finite entries.
MatrixDocument parse_matrix_document(std::string_view text);

Json to_json(const FourVector& v);
Json to_json(const ParamSet& p);
Json to_json(const RealMatrix4& g);
Json scalars_json(const FamilyParams& fp);
Json to_json(const FamilyDescriptor& d);
Json catalog_json();
Json to_json(const ClassificationReport& rep);
Json to_json(const VariantReport& rep);
Json to_json(const SuiteReport& rep);
Json to_json(const ClosureReport& rep);
Json to_json(const RankCheckReport& rep);

// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

}  // namespace mueller
