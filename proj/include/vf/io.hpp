#pragma once

#include "vf/closure.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace vf {

// Insertion-ordered so that emitted documents are byte-stable.
using Json = nlohmann::ordered_json;

/// Malformed JSON document (wrong shape, missing field, bad string).
struct SchemaError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Json to_json(const VerbalSystem& W);
VerbalSystem verbal_system_from_json(const Json& j, const FieldSpec& field = {});

/// {"name", "identities", "builtin"?}
Json to_json(const VarietyPresentation& v);
/// A builtin name as a string, or {"name", "identities", "builtin"}.
VarietyPresentation variety_from_json(const Json& j);

Json to_json(const Op2Report& r);
Op2Report op2_report_from_json(const Json& j);

Json to_json(const InnerResult& r);
InnerResult inner_result_from_json(const Json& j);

Json to_json(const ConstraintSystem& cs);
ConstraintSystem constraint_system_from_json(const Json& j);

Json to_json(const Branch& b);
Branch branch_from_json(const Json& j);

Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

std::string to_string(const std::vector<unsigned>& v);

/// Output of `basis`.
struct BasisReport {
  std::string variety;
  std::size_t generators = 0;
  unsigned max_deg = 0;
  std::vector<std::size_t> dims;
  /// Basis monomials grouped by degree.
  std::vector<std::vector<std::string>> basis;
};
Json to_json(const BasisReport& r);
BasisReport basis_report_from_json(const Json& j);

/// Output of `expand`: the coordinates of alpha(sigma(t)) for the generic
/// linear alpha, degree by degree up to the bound.
struct ExpandReport {
  std::string variety;
  VerbalSystem system;
  std::string source;
  std::string sigma_image;
  std::vector<std::string> alpha;
  std::vector<std::string> labels;
  std::vector<ParamPoly> coordinates;
};
Json to_json(const ExpandReport& r);
ExpandReport expand_report_from_json(const Json& j);

/// Output of `op2` and `inner`.
struct Op2Document {
  std::string variety;
  VerbalSystem system;
  std::size_t generators = 0;
  unsigned max_deg = 0;
  Op2Report report;
};
Json to_json(const Op2Document& d);
Op2Document op2_document_from_json(const Json& j);

struct InnerDocument {
  std::string variety;
  VerbalSystem system;
  unsigned max_deg = 0;
  InnerResult result;
};
Json to_json(const InnerDocument& d);
InnerDocument inner_document_from_json(const Json& j);

}  // namespace vf
