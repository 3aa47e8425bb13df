#include "vf/io.hpp"

#include <algorithm>

namespace vf {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw SchemaError(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'");
  return *it;
}

std::string str(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw SchemaError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

template <class T>
T num(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw SchemaError(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<T>();
}

bool flag(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_boolean()) throw SchemaError(std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

std::vector<std::string> strings(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) throw SchemaError(std::string("field '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw SchemaError(std::string("field '") + key + "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

template <class T>
std::vector<T> numbers(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) throw SchemaError(std::string("field '") + key + "' must be an array");
  std::vector<T> out;
  for (const auto& e : v) {
    if (!e.is_number_integer() || e.get<long long>() < 0)
      throw SchemaError(std::string("field '") + key + "' must hold nonnegative integers");
    out.push_back(e.get<T>());
  }
  return out;
}

Json poly_array(const std::vector<ParamPoly>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(p.to_string());
  return a;
}

std::vector<ParamPoly> polys(const Json& j, const char* key) {
  std::vector<ParamPoly> out;
  for (const auto& s : strings(j, key)) out.push_back(ParamPoly::parse(s));
  return out;
}

Json scalar_array(const std::vector<Scalar>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(x.to_string());
  return a;
}

std::vector<Scalar> scalars(const Json& j, const char* key) {
  std::vector<Scalar> out;
  for (const auto& s : strings(j, key)) out.push_back(Scalar::parse(s));
  return out;
}

void expect_kind(const Json& j, const char* kind) {
  if (str(j, "kind") != kind) throw SchemaError(std::string("expected a '") + kind + "' document");
}

Branch::Status status_from_string(const std::string& s) {
  if (s == "open") return Branch::Status::open;
  if (s == "closed") return Branch::Status::closed;
  if (s == "stuck") return Branch::Status::stuck;
  throw SchemaError("unknown branch status '" + s + "'");
}

Verdict verdict_from_string(const std::string& s) {
  for (auto v : {Verdict::not_geometrically_equivalent, Verdict::inconclusive, Verdict::no_falsification})
    if (to_string(v) == s) return v;
  throw SchemaError("unknown verdict '" + s + "'");
}

}  // namespace

std::string to_string(const std::vector<unsigned>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

Json to_json(const VerbalSystem& W) {
  return Json{{"phi", W.phi.to_string()}, {"a", W.a.to_string()}, {"b", W.b.to_string()}};
}

VerbalSystem verbal_system_from_json(const Json& j, const FieldSpec& f) {
  return VerbalSystem(FieldAutomorphism::parse(str(j, "phi")), Scalar::parse(str(j, "a"), f),
                      Scalar::parse(str(j, "b"), f));
}

Json to_json(const VarietyPresentation& v) {
  Json j{{"name", v.name}};
  const auto names = builtin_variety_names();
  std::size_t skip = 0;
  bool builtin = false;
  if (std::find(names.begin(), names.end(), v.name) != names.end()) {
    const VarietyPresentation base = builtin_variety(v.name);
    builtin = base.identities.size() <= v.identities.size();
    for (std::size_t i = 0; builtin && i < base.identities.size(); ++i)
      builtin = base.identities[i].element == v.identities[i].element;
    if (builtin) skip = base.identities.size();
  }
  Json ids = Json::array();
  for (std::size_t i = skip; i < v.identities.size(); ++i) ids.push_back(v.identities[i].to_string());
  j["identities"] = ids;
  if (builtin) j["builtin"] = v.name;
  return j;
}

VarietyPresentation variety_from_json(const Json& j) {
  if (j.is_string()) return builtin_variety(j.get<std::string>());
  std::vector<std::string> ids = j.contains("identities") ? strings(j, "identities") : std::vector<std::string>{};
  if (j.contains("builtin")) {
    VarietyPresentation v = builtin_variety(str(j, "builtin"), ids);
    if (j.contains("name") && str(j, "name") != v.name)
      throw SchemaError("a builtin variety keeps its name ('" + v.name + "')");
    return v;
  }
  return custom_variety(str(j, "name"), ids);
}

Json to_json(const Op2Report& r) {
  Json sigma = Json::array();
  for (const auto& s : r.sigma)
    sigma.push_back(Json{{"multidegree", s.multidegree},
                         {"dimension", s.dimension},
                         {"rank", s.rank},
                         {"invertible", s.invertible()}});
  return Json{{"passed", r.passed},
              {"failed_identity", r.failed_identity ? Json(r.failed_identity->to_string()) : Json(nullptr)},
              {"witness", r.witness},
              {"witness_value", r.witness_value},
              {"sigma", sigma}};
}

Op2Report op2_report_from_json(const Json& j) {
  Op2Report r;
  r.passed = flag(j, "passed");
  const Json& f = field(j, "failed_identity");
  if (!f.is_null()) r.failed_identity = IdentityScheme::parse(f.get<std::string>());
  r.witness = strings(j, "witness");
  r.witness_value = str(j, "witness_value");
  for (const auto& s : field(j, "sigma")) {
    SigmaRank sr;
    sr.multidegree = numbers<unsigned>(s, "multidegree");
    sr.dimension = num<std::size_t>(s, "dimension");
    sr.rank = num<std::size_t>(s, "rank");
    if (flag(s, "invertible") != sr.invertible()) throw SchemaError("sigma entry: 'invertible' disagrees with rank");
    r.sigma.push_back(std::move(sr));
  }
  return r;
}

Json to_json(const InnerResult& r) {
  return Json{{"status", to_string(r.status)},
              {"mu", r.status == InnerResult::Status::witness ? Json(r.mu.to_string()) : Json(nullptr)},
              {"detail", r.detail}};
}

InnerResult inner_result_from_json(const Json& j) {
  InnerResult r;
  const std::string s = str(j, "status");
  if (s == "witness") r.status = InnerResult::Status::witness;
  else if (s == "refuted") r.status = InnerResult::Status::refuted;
  else if (s == "unknown") r.status = InnerResult::Status::unknown;
  else throw SchemaError("unknown inner status '" + s + "'");
  const Json& mu = field(j, "mu");
  if (!mu.is_null()) r.mu = Scalar::parse(mu.get<std::string>());
  r.detail = str(j, "detail");
  return r;
}

Json to_json(const ConstraintSystem& cs) {
  return Json{{"kind", "constraints"},
              {"basis", cs.basis},
              {"labels", cs.labels},
              {"image", poly_array(cs.image)},
              {"target", scalar_array(cs.target)},
              {"equations", poly_array(cs.equations)},
              {"indeterminates", std::vector<std::string>(cs.indeterminates.begin(), cs.indeterminates.end())},
              {"nonzero", scalar_array(cs.nonzero)}};
}

ConstraintSystem constraint_system_from_json(const Json& j) {
  expect_kind(j, "constraints");
  ConstraintSystem cs;
  cs.basis = strings(j, "basis");
  cs.labels = strings(j, "labels");
  cs.image = polys(j, "image");
  cs.target = scalars(j, "target");
  cs.equations = polys(j, "equations");
  for (const auto& s : strings(j, "indeterminates")) cs.indeterminates.insert(s);
  cs.nonzero = scalars(j, "nonzero");
  return cs;
}

Json to_json(const Branch& b) {
  Json subst = Json::object();
  for (const auto& [k, p] : b.substitutions) subst[k] = p.to_string();
  Json split = nullptr;
  if (!b.split_kind.empty())
    split = Json{{"kind", b.split_kind},
                 {"polynomial", b.split_poly.to_string()},
                 {"unit", b.split_unit.to_string()},
                 {"factors", poly_array(b.split_factors)}};
  Json children = Json::array();
  for (const auto& c : b.children) children.push_back(to_json(c));
  return Json{{"label", b.label},
              {"status", to_string(b.status)},
              {"infeasible", b.infeasible},
              {"note", b.note},
              {"substitutions", subst},
              {"vanishing", poly_array(b.vanishing)},
              {"nonvanishing", poly_array(b.nonvanishing)},
              {"units", scalar_array(b.units)},
              {"residual", poly_array(b.residual)},
              {"split", split},
              {"kernel_contains", b.kernel_contains ? Json(*b.kernel_contains) : Json(nullptr)},
              {"children", children}};
}

Branch branch_from_json(const Json& j) {
  Branch b;
  b.label = str(j, "label");
  b.status = status_from_string(str(j, "status"));
  b.infeasible = flag(j, "infeasible");
  b.note = str(j, "note");
  const Json& subst = field(j, "substitutions");
  if (!subst.is_object()) throw SchemaError("field 'substitutions' must be an object");
  for (const auto& [k, v] : subst.items()) {
    if (!v.is_string()) throw SchemaError("substitution values must be strings");
    b.substitutions[k] = ParamPoly::parse(v.get<std::string>());
  }
  b.vanishing = polys(j, "vanishing");
  b.nonvanishing = polys(j, "nonvanishing");
  b.units = scalars(j, "units");
  b.residual = polys(j, "residual");
  const Json& split = field(j, "split");
  if (!split.is_null()) {
    b.split_kind = str(split, "kind");
    b.split_poly = ParamPoly::parse(str(split, "polynomial"));
    b.split_unit = Scalar::parse(str(split, "unit"));
    b.split_factors = polys(split, "factors");
  }
  const Json& k = field(j, "kernel_contains");
  if (!k.is_null()) b.kernel_contains = flag(j, "kernel_contains");
  for (const auto& c : field(j, "children")) b.children.push_back(branch_from_json(c));
  return b;
}

Json to_json(const Certificate& c) {
  Json constraints = Json::array();
  for (std::size_t i = 0; i < c.constraints.size(); ++i)
    constraints.push_back(Json{{"label", c.constraint_labels.at(i)}, {"equation", c.constraints[i].to_string()}});
  return Json{{"kind", "certificate"},
              {"method", c.method},
              {"variety", c.variety},
              {"generators", c.generators},
              {"bound", c.bound},
              {"system", to_json(c.system)},
              {"ideal", Json{{"generators", c.ideal_generators}, {"tail", c.tail}}},
              {"image", Json{{"generators", c.image_generators}, {"dims", c.image_dims}}},
              {"target", c.target},
              {"hints", c.hints},
              {"constraints", constraints},
              {"tree", to_json(c.tree)},
              {"witness", c.witness},
              {"closure_lower_bound_dims", c.closure_lower_bound_dims},
              {"notes", c.notes},
              {"verdict", to_string(c.verdict)}};
}

Certificate certificate_from_json(const Json& j) {
  expect_kind(j, "certificate");
  Certificate c;
  c.method = str(j, "method");
  c.variety = str(j, "variety");
  c.generators = num<std::size_t>(j, "generators");
  c.bound = num<unsigned>(j, "bound");
  c.system = verbal_system_from_json(field(j, "system"));
  const Json& ideal = field(j, "ideal");
  c.ideal_generators = strings(ideal, "generators");
  c.tail = num<unsigned>(ideal, "tail");
  const Json& image = field(j, "image");
  c.image_generators = strings(image, "generators");
  c.image_dims = numbers<std::size_t>(image, "dims");
  c.target = strings(j, "target");
  c.hints = strings(j, "hints");
  for (const auto& e : field(j, "constraints")) {
    c.constraint_labels.push_back(str(e, "label"));
    c.constraints.push_back(ParamPoly::parse(str(e, "equation")));
  }
  c.tree = branch_from_json(field(j, "tree"));
  c.witness = str(j, "witness");
  c.closure_lower_bound_dims = numbers<std::size_t>(j, "closure_lower_bound_dims");
  c.notes = strings(j, "notes");
  c.verdict = verdict_from_string(str(j, "verdict"));
  return c;
}

Json to_json(const BasisReport& r) {
  std::size_t total = 0;
  for (auto d : r.dims) total += d;
  return Json{{"kind", "basis"},   {"variety", r.variety}, {"generators", r.generators},
              {"max_deg", r.max_deg}, {"dims", r.dims},       {"total", total},
              {"basis", r.basis}};
}

BasisReport basis_report_from_json(const Json& j) {
  expect_kind(j, "basis");
  BasisReport r;
  r.variety = str(j, "variety");
  r.generators = num<std::size_t>(j, "generators");
  r.max_deg = num<unsigned>(j, "max_deg");
  r.dims = numbers<std::size_t>(j, "dims");
  std::size_t total = 0;
  for (auto d : r.dims) total += d;
  if (num<std::size_t>(j, "total") != total) throw SchemaError("basis: 'total' is not the sum of 'dims'");
  const Json& b = field(j, "basis");
  if (!b.is_array() || b.size() != r.dims.size()) throw SchemaError("basis: one list per degree expected");
  for (std::size_t d = 0; d < b.size(); ++d) {
    std::vector<std::string> row;
    for (const auto& m : b[d]) row.push_back(m.get<std::string>());
    if (row.size() != r.dims[d]) throw SchemaError("basis: list size disagrees with 'dims'");
    r.basis.push_back(std::move(row));
  }
  return r;
}

Json to_json(const ExpandReport& r) {
  Json coords = Json::array();
  for (std::size_t i = 0; i < r.coordinates.size(); ++i)
    coords.push_back(Json{{"label", r.labels.at(i)}, {"value", r.coordinates[i].to_string()}});
  return Json{{"kind", "expand"},
              {"variety", r.variety},
              {"system", to_json(r.system)},
              {"source", r.source},
              {"sigma_image", r.sigma_image},
              {"alpha", r.alpha},
              {"coordinates", coords}};
}

ExpandReport expand_report_from_json(const Json& j) {
  expect_kind(j, "expand");
  ExpandReport r;
  r.variety = str(j, "variety");
  r.system = verbal_system_from_json(field(j, "system"));
  r.source = str(j, "source");
  r.sigma_image = str(j, "sigma_image");
  r.alpha = strings(j, "alpha");
  for (const auto& e : field(j, "coordinates")) {
    r.labels.push_back(str(e, "label"));
    r.coordinates.push_back(ParamPoly::parse(str(e, "value")));
  }
  return r;
}

Json to_json(const Op2Document& d) {
  return Json{{"kind", "op2"},          {"variety", d.variety}, {"system", to_json(d.system)},
              {"generators", d.generators}, {"max_deg", d.max_deg}, {"report", to_json(d.report)}};
}

Op2Document op2_document_from_json(const Json& j) {
  expect_kind(j, "op2");
  Op2Document d;
  d.variety = str(j, "variety");
  d.system = verbal_system_from_json(field(j, "system"));
  d.generators = num<std::size_t>(j, "generators");
  d.max_deg = num<unsigned>(j, "max_deg");
  d.report = op2_report_from_json(field(j, "report"));
  return d;
}

Json to_json(const InnerDocument& d) {
  return Json{{"kind", "inner"},
              {"variety", d.variety},
              {"system", to_json(d.system)},
              {"max_deg", d.max_deg},
              {"result", to_json(d.result)}};
}

InnerDocument inner_document_from_json(const Json& j) {
  expect_kind(j, "inner");
  InnerDocument d;
  d.variety = str(j, "variety");
  d.system = verbal_system_from_json(field(j, "system"));
  d.max_deg = num<unsigned>(j, "max_deg");
  d.result = inner_result_from_json(field(j, "result"));
  return d;
}

}  // namespace vf
