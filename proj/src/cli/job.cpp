#include "vf/job.hpp"

#include <algorithm>

namespace vf {

namespace {

const std::vector<std::string> kCommands = {"basis", "expand", "op2", "inner", "falsify"};

std::vector<std::string> string_list(const Json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  const Json& v = j.at(key);
  if (!v.is_array()) throw SchemaError(std::string("field '") + key + "' must be an array of strings");
  for (const auto& e : v) {
    if (!e.is_string()) throw SchemaError(std::string("field '") + key + "' must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

unsigned small_number(const Json& j, const char* key, unsigned fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 64)
    throw SchemaError(std::string("field '") + key + "' must be an integer in [0, 64]");
  return v.get<unsigned>();
}

std::vector<Element> parse_all(const std::vector<std::string>& texts, const GeneratorContext& ctx,
                               const FieldSpec& field) {
  std::vector<Element> out;
  for (const auto& s : texts) out.push_back(parse_element(s, ctx, field));
  return out;
}

std::vector<ParamPoly> parse_hints(const JobSpec& spec) {
  std::vector<ParamPoly> out;
  for (const auto& h : spec.hints) out.push_back(ParamPoly::parse(h, spec.field));
  return out;
}

AlgebraPtr algebra_of(const JobSpec& spec) { return build_truncated(spec.variety, spec.generators, spec.max_deg); }

TruncatedIdeal ideal_of(const JobSpec& spec, const AlgebraPtr& A) {
  if (spec.ideal_generators.empty()) throw SchemaError("job needs 'ideal.generators'");
  return ideal_build(A, parse_all(spec.ideal_generators, A->generators(), spec.field), spec.tail);
}

}  // namespace

JobSpec job_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("job spec must be a JSON object");
  JobSpec s;
  if (j.contains("command")) {
    s.command = j.at("command").get<std::string>();
    if (std::find(kCommands.begin(), kCommands.end(), s.command) == kCommands.end())
      throw SchemaError("unknown command '" + s.command + "'");
  }
  if (j.contains("field")) s.field = FieldSpec(string_list(j, "field"));
  if (j.contains("variety")) s.variety = variety_from_json(j.at("variety"));
  s.generators = small_number(j, "generators", 2);
  s.max_deg = small_number(j, "max_deg", 3);
  if (s.generators < 1 || s.max_deg < 1) throw SchemaError("'generators' and 'max_deg' must be positive");
  if (j.contains("system")) s.system = verbal_system_from_json(j.at("system"), s.field);
  if (j.contains("method")) {
    s.method = j.at("method").get<std::string>();
    if (s.method != "equation_ideal" && s.method != "smallest_closed")
      throw SchemaError("unknown method '" + s.method + "'");
  }
  if (j.contains("ideal")) {
    const Json& ideal = j.at("ideal");
    s.ideal_generators = string_list(ideal, "generators");
    s.tail = small_number(ideal, "tail", s.max_deg + 1);
  }
  if (j.contains("identity_generator")) s.identity_generator = j.at("identity_generator").get<std::string>();
  s.window = small_number(j, "window", 0);
  s.target = string_list(j, "target");
  s.coordinate_basis = string_list(j, "coordinate_basis");
  s.hints = string_list(j, "hints");
  s.depth_bound = small_number(j, "depth_bound", 16);

  // Surface parse errors now.
  const GeneratorContext ctx = GeneratorSet::standard(s.generators);
  parse_all(s.ideal_generators, ctx, s.field);
  parse_all(s.target, ctx, s.field);
  parse_all(s.coordinate_basis, ctx, s.field);
  if (!s.identity_generator.empty()) parse_element(s.identity_generator, ctx, s.field);
  parse_hints(s);
  return s;
}

Json to_json(const JobSpec& s) {
  Json j;
  if (!s.command.empty()) j["command"] = s.command;
  j["field"] = s.field.transcendental_names();
  j["variety"] = to_json(s.variety);
  j["generators"] = s.generators;
  j["max_deg"] = s.max_deg;
  j["system"] = to_json(s.system);
  j["method"] = s.method;
  if (!s.ideal_generators.empty()) j["ideal"] = Json{{"generators", s.ideal_generators}, {"tail", s.tail}};
  if (!s.identity_generator.empty()) {
    j["identity_generator"] = s.identity_generator;
    j["window"] = s.window;
  }
  if (!s.target.empty()) j["target"] = s.target;
  if (!s.coordinate_basis.empty()) j["coordinate_basis"] = s.coordinate_basis;
  if (!s.hints.empty()) j["hints"] = s.hints;
  j["depth_bound"] = s.depth_bound;
  return j;
}

BasisReport run_basis(const VarietyPresentation& theta, std::size_t generators, unsigned max_deg) {
  const AlgebraPtr A = build_truncated(theta, generators, max_deg);
  BasisReport r;
  r.variety = theta.name;
  r.generators = generators;
  r.max_deg = max_deg;
  r.dims = A->component_dims();
  for (unsigned d = 1; d <= max_deg; ++d) {
    std::vector<std::string> row;
    const auto [lo, hi] = A->degree_range(d);
    for (std::size_t i = lo; i < hi; ++i) row.push_back(A->basis()[i].to_string(*A->generators()));
    r.basis.push_back(std::move(row));
  }
  return r;
}

ExpandReport run_expand(const JobSpec& spec) {
  const AlgebraPtr A = algebra_of(spec);
  const TruncatedIdeal T = ideal_of(spec, A);
  std::vector<Element> basis = parse_all(spec.coordinate_basis, A->generators(), spec.field);
  const ConstraintSystem cs = gen_constraints(T, spec.system, basis.empty() ? nullptr : &basis);
  ExpandReport r;
  r.variety = spec.variety.name;
  r.system = spec.system;
  r.source = T.generators.at(0).to_string();
  r.sigma_image = A->normal_form(sigma_apply(spec.system, *A, T.generators.at(0))).to_string();
  const SymbolicEndomorphism alpha = SymbolicEndomorphism::generic_linear(A->generators());
  for (const auto& img : alpha.images()) r.alpha.push_back(img.to_string());
  r.labels = cs.labels;
  r.coordinates = cs.image;
  return r;
}

Op2Document run_op2(const JobSpec& spec) {
  Op2Document d;
  d.variety = spec.variety.name;
  d.system = spec.system;
  d.generators = std::max<std::size_t>({2, spec.generators, spec.variety.max_arity()});
  d.max_deg = spec.max_deg;
  d.report = check_op2(spec.variety, spec.system, d.max_deg, d.generators);
  return d;
}

InnerDocument run_inner(const JobSpec& spec) {
  InnerDocument d;
  d.variety = spec.variety.name;
  d.system = spec.system;
  d.max_deg = std::max(3u, spec.max_deg);
  d.result = inner_witness(spec.variety, spec.system, d.max_deg);
  return d;
}

Certificate run_falsify(const JobSpec& spec) {
  const AlgebraPtr A = algebra_of(spec);
  if (spec.method == "smallest_closed") {
    if (spec.identity_generator.empty()) throw SchemaError("smallest_closed needs 'identity_generator'");
    return falsify_smallest_closed(A, spec.system, parse_element(spec.identity_generator, A->generators(), spec.field),
                                   spec.window);
  }
  const TruncatedIdeal T = ideal_of(spec, A);
  const std::vector<Element> V = parse_all(spec.target, A->generators(), spec.field);
  const std::vector<Element> basis = parse_all(spec.coordinate_basis, A->generators(), spec.field);
  return falsify_equation_ideal(spec.system, T, V, parse_hints(spec), basis.empty() ? nullptr : &basis,
                                spec.depth_bound);
}

}  // namespace vf
