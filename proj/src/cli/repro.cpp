#include "vf/repro.hpp"

#include <algorithm>
#include <set>

namespace vf {

namespace {

// e1..e14: the two-generator Lie brackets up to degree 5.
const std::vector<std::string> kLieE = {
    "x1",
    "x2",
    "(x1 x2)",
    "(x1 (x1 x2))",
    "((x1 x2) x2)",
    "(x1 (x1 (x1 x2)))",
    "(x1 ((x1 x2) x2))",
    "(((x1 x2) x2) x2)",
    "(x1 (x1 (x1 (x1 x2))))",
    "(x1 (x1 ((x1 x2) x2)))",
    "(x1 (((x1 x2) x2) x2))",
    "((x1 (x1 x2)) (x1 x2))",
    "((x1 x2) ((x1 x2) x2))",
    "((((x1 x2) x2) x2) x2)",
};

const char* kDet = "a11*a22 - a12*a21";

struct Expected {
  std::vector<std::size_t> basis_dims;
  std::vector<std::pair<std::string, std::string>> image;      // label, polynomial
  std::vector<std::pair<std::string, std::string>> equations;  // label, polynomial
  std::vector<std::size_t> image_dims;
  std::vector<std::size_t> closure_dims;
  std::string top_split;
};

std::string dims_string(const std::vector<std::size_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "]";
}

std::string canonical(const std::string& poly) { return ParamPoly::parse(poly).to_string(); }

std::string with_det(const std::string& s) { return s + "*(" + kDet + ")"; }

Expected expected_for(const std::string& id) {
  Expected e;
  if (id == "aut_1_3_4") {
    e.basis_dims = {2, 4};
    e.equations = {{"(x1 x1)", "(t2 + 1)*a11*a12"},
                   {"(x1 x2)", "t2*a11*a22 + a12*a21 - t1*rho"},
                   {"(x2 x1)", "t2*a12*a21 + a11*a22 - rho"},
                   {"(x2 x2)", "(t2 + 1)*a21*a22"}};
    e.image_dims = {0, 1};
    e.closure_dims = {0, 2};
  } else if (id == "aut_2_5") {
    e.basis_dims = {2, 3, 6};
    e.image = {{"(x1 (x1 x1))", "(t2 + 1)*a11^2*a12"},
               {"(x1 (x1 x2))", "t2*a11^2*a22 + (t2 + 2)*a11*a12*a21"},
               {"(x1 (x2 x2))", "t2*a11*a21*a22 + a12*a21^2"},
               {"(x2 (x1 x1))", "t2*a11*a12*a21 + a11^2*a22"},
               {"(x2 (x1 x2))", "t2*a12*a21^2 + (t2 + 2)*a11*a21*a22"},
               {"(x2 (x2 x2))", "(t2 + 1)*a21^2*a22"}};
    e.image_dims = {0, 0, 1};
    e.closure_dims = {0, 0, 4};
  } else if (id == "aut_6") {
    e.basis_dims = {2, 1, 2, 3, 6};
    const std::vector<std::string> alpha = {
        with_det("-t2*a11^2*a12"),
        with_det("t2*a11*(a11*a22 + 2*a12*a21)"),
        with_det("-t2*a21*(2*a11*a22 + a12*a21)"),
        with_det("-a11*(t2*a12*a21 - a11*a22 + a12*a21)"),
        with_det("a21*(-t2*(a12*a21 + a11*a22) + a11*a22 - a12*a21)"),
        with_det("t2*a21^2*a22"),
    };
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      const std::string label = kLieE[8 + i];
      e.image.emplace_back(label, alpha[i]);
      std::string eq = alpha[i];
      if (i == 1) eq += " - t1*rho";
      if (i == 3) eq += " - rho";
      e.equations.emplace_back(label, eq);
    }
    e.image_dims = {0, 0, 0, 0, 1};
    e.closure_dims = {0, 0, 0, 0, 6};
    e.top_split = std::string("hint ") + kDet;
  } else if (id == "s_1_3") {
    e.basis_dims = {2, 4, 16};
    e.image_dims = {6};
  } else if (id == "s_4") {
    e.basis_dims = {2, 4, 8};
    e.image_dims = {6};
  }
  return e;
}

std::vector<std::string> lie_e(std::size_t from, std::size_t to) {
  return std::vector<std::string>(kLieE.begin() + static_cast<std::ptrdiff_t>(from),
                                  kLieE.begin() + static_cast<std::ptrdiff_t>(to));
}

class Checker {
 public:
  explicit Checker(ExampleReport& r) : r_(r) {}
  void operator()(std::string name, std::string expected, std::string actual) {
    const bool ok = expected == actual;
    r_.checks.push_back({std::move(name), std::move(expected), std::move(actual), ok});
  }

 private:
  ExampleReport& r_;
};

// ---- falsifier examples -----------------------------------------------------

void check_certificate(const std::string& id, const JobSpec& job, const ReproOptions& options, ExampleReport& rep) {
  Checker check(rep);
  const Expected ex = expected_for(id);
  const AlgebraPtr A = build_truncated(job.variety, job.generators, job.max_deg);
  check("basis dims", dims_string(ex.basis_dims), dims_string(A->component_dims()));

  if (id == "aut_6") {
    // Each bracketing is +-1 times a basis monomial, all distinct.
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < kLieE.size(); ++i) {
      const Element nf = A->normal_form(parse_element(kLieE[i], A->generators()));
      std::string got = "normal form " + nf.to_string();
      if (nf.terms().size() == 1) {
        const auto& [m, c] = *nf.terms().begin();
        if (c == Scalar(1) || c == Scalar(-1)) {
          got = "+-1 times a basis monomial";
          seen.insert(A->basis_index(m));
        }
      }
      check("e" + std::to_string(i + 1), "+-1 times a basis monomial", got);
    }
    check("distinct basis monomials among e1..e14", "14", std::to_string(seen.size()));
  }

  const Certificate cert = run_falsify(job);
  if (job.method == "equation_ideal") {
    const TruncatedIdeal T = ideal_build(A, [&] {
      std::vector<Element> g;
      for (const auto& s : job.ideal_generators) g.push_back(parse_element(s, A->generators(), job.field));
      return g;
    }(), job.tail);
    std::vector<Element> basis;
    for (const auto& s : job.coordinate_basis) basis.push_back(parse_element(s, A->generators(), job.field));
    ConstraintSystem cs = gen_constraints(T, job.system, basis.empty() ? nullptr : &basis);
    if (options.tamper) options.tamper(cs);

    auto find = [&](const std::vector<ParamPoly>& polys, const std::string& label) -> std::string {
      for (std::size_t i = 0; i < cs.labels.size(); ++i)
        if (cs.labels[i] == label) return polys.at(i).to_string();
      return "(missing)";
    };
    for (const auto& [label, poly] : ex.image) check("coefficient " + label, canonical(poly), find(cs.image, label));
    for (const auto& [label, poly] : ex.equations)
      check("constraint " + label, canonical(poly), find(cs.equations, label));
    if (!ex.equations.empty())
      check("constraint count", std::to_string(ex.equations.size()), std::to_string(cs.equations.size()));

    check("image dims", dims_string(ex.image_dims), dims_string(cert.image_dims));
    check("closure lower bound dims", dims_string(ex.closure_dims), dims_string(cert.closure_lower_bound_dims));
    if (!ex.top_split.empty())
      check("top split", ex.top_split,
            cert.tree.split_kind + " " + (cert.tree.split_factors.empty() ? "" : cert.tree.split_factors[0].to_string()));

    std::size_t leaves = 0, closed = 0, contained = 0;
    for_each_leaf(cert.tree, [&](const Branch& b) {
      ++leaves;
      closed += b.status == Branch::Status::closed;
      contained += b.kernel_contains.value_or(false);
    });
    check("closed leaves", std::to_string(leaves), std::to_string(closed));
    check("leaves whose kernel contains the target", std::to_string(leaves), std::to_string(contained));
    const TruncatedIdeal S = sf_image(job.system, T);
    const bool outside = !cert.witness.empty() && !ideal_contains(S, parse_element(cert.witness, A->generators()));
    check("witness outside the image ideal", "true", outside ? "true" : "false");
  } else {
    check("dim V", dims_string(ex.image_dims), dims_string(cert.image_dims));
    if (id == "s_4")
      check("witness", A->normal_form(parse_element("((x2 x2) x1)", A->generators())).to_string(), cert.witness);
  }
  check("verdict", to_string(Verdict::not_geometrically_equivalent), to_string(cert.verdict));
  rep.payload = to_json(cert);
}

// ---- tables ------------------------------------------------------------------

// Folding: a commutative product turns a x1x2 + b x2x1 into (a + b) x1x2, an
// anticommutative one into (a - b) x1x2.
bool admissible(const std::string& variety, const Scalar& a, const Scalar& b) {
  const bool sum = !(a + b).is_zero(), diff = !(a - b).is_zero();
  if (variety == "all" || variety == "power_associative") return sum && diff;
  if (variety == "commutative" || variety == "jordan") return sum;
  if (variety == "anticommutative" || variety == "lie") return diff;
  if (variety == "alternative") return a.is_zero() != b.is_zero();
  return false;
}

const std::vector<std::pair<std::string, std::string>> kGrid = {
    {"1", "0"}, {"0", "1"}, {"1", "1"}, {"1", "-1"}, {"2", "1"}, {"1", "2"},
    {"3", "0"}, {"0", "-2"}, {"2", "-2"}, {"t1", "0"}, {"t1", "1"},
};

void op2_table(ExampleReport& rep) {
  Checker check(rep);
  Json rows = Json::array();
  for (const auto& r : automorphism_table())
    rows.push_back(Json{{"variety", r.variety}, {"description", r.description}, {"quotient", r.quotient}});
  Json grid = Json::array();
  for (const auto& v : builtin_variety_names()) {
    const VarietyPresentation theta = builtin_variety(v);
    const std::size_t gens = std::max<std::size_t>(2, theta.max_arity());
    const unsigned N = std::max(3u, theta.max_degree());
    for (const auto& [as, bs] : kGrid) {
      const VerbalSystem W(FieldAutomorphism(), Scalar::parse(as), Scalar::parse(bs));
      const bool passed = check_op2(theta, W, N, gens).passed;
      check(v + " a=" + as + " b=" + bs, admissible(v, W.a, W.b) ? "accept" : "reject", passed ? "accept" : "reject");
      grid.push_back(Json{{"variety", v}, {"system", to_json(W)}, {"passed", passed}});
    }
  }
  rep.payload = Json{{"kind", "op2_table"}, {"rows", rows}, {"grid", grid}};
}

struct InnerCase {
  std::string variety;
  std::string phi, a, b;
  std::string expected;  // "witness mu=..." or "refuted"
};

const std::vector<InnerCase> kInnerCases = {
    {"all", "id", "1", "0", "witness mu=1"},
    {"all", "id", "2", "0", "witness mu=1/2"},
    {"all", "id", "t1", "0", "witness mu=1/t1"},
    {"power_associative", "id", "3", "0", "witness mu=1/3"},
    {"lie", "id", "1", "0", "witness mu=1"},
    {"jordan", "id", "2", "0", "witness mu=1/2"},
    {"alternative", "id", "2", "0", "witness mu=1/2"},
    {"all", "swap:1,2", "1", "0", "refuted"},
    {"lie", "swap:1,2", "1", "0", "refuted"},
    {"all", "id", "2", "1", "refuted"},
    {"power_associative", "id", "1", "2", "refuted"},
    {"alternative", "id", "0", "1", "refuted"},
    // Folded: (1, 1) acts as (2, 0) on a commutative algebra.
    {"commutative", "id", "1", "1", "witness mu=1/2"},
};

void inner_table(ExampleReport& rep) {
  Checker check(rep);
  Json rows = Json::array();
  for (const auto& c : kInnerCases) {
    const VerbalSystem W(FieldAutomorphism::parse(c.phi), Scalar::parse(c.a), Scalar::parse(c.b));
    const InnerResult r = inner_witness(builtin_variety(c.variety), W, 4);
    std::string got = to_string(r.status);
    if (r.status == InnerResult::Status::witness) got += " mu=" + r.mu.to_string();
    check(c.variety + " " + W.to_string(), c.expected, got);
    rows.push_back(Json{{"variety", c.variety}, {"system", to_json(W)}, {"result", to_json(r)}});
  }
  rep.payload = Json{{"kind", "inner_table"}, {"rows", rows}};
}

Json reparse_payload(const Json& p) {
  const std::string kind = p.at("kind").get<std::string>();
  if (kind == "certificate") return to_json(certificate_from_json(p));
  if (kind == "op2_table") {
    Json rows = Json::array();
    for (const auto& r : p.at("rows"))
      rows.push_back(Json{{"variety", r.at("variety").get<std::string>()},
                          {"description", r.at("description").get<std::string>()},
                          {"quotient", r.at("quotient").get<std::string>()}});
    Json grid = Json::array();
    for (const auto& g : p.at("grid"))
      grid.push_back(Json{{"variety", g.at("variety").get<std::string>()},
                          {"system", to_json(verbal_system_from_json(g.at("system")))},
                          {"passed", g.at("passed").get<bool>()}});
    return Json{{"kind", kind}, {"rows", rows}, {"grid", grid}};
  }
  if (kind == "inner_table") {
    Json rows = Json::array();
    for (const auto& r : p.at("rows"))
      rows.push_back(Json{{"variety", r.at("variety").get<std::string>()},
                          {"system", to_json(verbal_system_from_json(r.at("system")))},
                          {"result", to_json(inner_result_from_json(r.at("result")))}});
    return Json{{"kind", kind}, {"rows", rows}};
  }
  throw SchemaError("unknown payload kind '" + kind + "'");
}

}  // namespace

const std::vector<std::string>& example_ids() {
  static const std::vector<std::string> ids = {"aut_1_3_4", "aut_2_5", "aut_6", "s_1_3", "s_4", "op2_table",
                                               "inner_table"};
  return ids;
}

bool is_example_id(const std::string& id) {
  const auto& ids = example_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

JobSpec example_job(const std::string& id) {
  JobSpec j;
  j.command = "falsify";
  j.field = FieldSpec::standard(2);
  j.generators = 2;
  const VerbalSystem swap(FieldAutomorphism::swap(1, 2), 1, 0);
  if (id == "aut_1_3_4") {
    j.variety = builtin_variety("all");
    j.max_deg = 2;
    j.system = swap;
    j.ideal_generators = {"t1 * (x1 x2) + (x2 x1)"};
    j.tail = 3;
    j.target = {"(x1 x2)", "(x2 x1)"};
  } else if (id == "aut_2_5") {
    j.variety = builtin_variety("commutative");
    j.max_deg = 3;
    j.system = swap;
    j.ideal_generators = {"t1 * (x1 (x1 x2)) + (x2 (x1 x1))"};
    j.tail = 4;
    j.target = {"(x1 (x1 x2))", "(x1 (x2 x2))", "(x2 (x1 x1))", "(x2 (x1 x2))"};
    j.coordinate_basis = {"(x1 (x1 x1))", "(x1 (x1 x2))", "(x1 (x2 x2))",
                          "(x2 (x1 x1))", "(x2 (x1 x2))", "(x2 (x2 x2))"};
  } else if (id == "aut_6") {
    j.variety = builtin_variety("lie");
    j.max_deg = 5;
    j.system = swap;
    j.ideal_generators = {"t1 * " + kLieE[9] + " + " + kLieE[11]};
    j.tail = 6;
    j.target = lie_e(8, 14);
    j.coordinate_basis = lie_e(8, 14);
    j.hints = {kDet};
  } else if (id == "s_1_3") {
    j.variety = builtin_variety("all");
    j.max_deg = 3;
    j.system = VerbalSystem(FieldAutomorphism(), 2, 1);
    j.method = "smallest_closed";
    j.identity_generator = "((x1 x1) x2)";
    j.window = 3;
  } else if (id == "s_4") {
    j.variety = builtin_variety("alternative");
    j.max_deg = 3;
    j.system = VerbalSystem(FieldAutomorphism(), 0, 1);
    j.method = "smallest_closed";
    j.identity_generator = "(x1 (x2 x2))";
    j.window = 3;
  } else {
    throw std::invalid_argument("no job for example '" + id + "'");
  }
  return j;
}

const std::vector<VarietyTableRow>& automorphism_table() {
  static const std::vector<VarietyTableRow> rows = {
      {"all", "all linear algebras", "k* ⋉ Aut k"},
      {"commutative", "commutative algebras", "Aut k"},
      {"power_associative", "power associative algebras", "k* ⋉ Aut k"},
      {"alternative", "alternative algebras", "S₂ × Aut k"},
      {"jordan", "Jordan algebras", "Aut k"},
      {"anticommutative", "anticommutative varieties, Lie included", "Aut k"},
  };
  return rows;
}

ExampleReport repro_example(const std::string& id, const ReproOptions& options) {
  if (!is_example_id(id)) throw std::invalid_argument("unknown example '" + id + "'");
  ExampleReport rep;
  rep.id = id;
  if (id == "op2_table") op2_table(rep);
  else if (id == "inner_table") inner_table(rep);
  else check_certificate(id, example_job(id), options, rep);
  rep.passed = std::all_of(rep.checks.begin(), rep.checks.end(), [](const Check& c) { return c.ok; });
  return rep;
}

ReproReport repro(const std::vector<std::string>& ids, const ReproOptions& options) {
  ReproReport out;
  out.passed = true;
  for (const auto& id : ids) {
    ExampleReport r = repro_example(id, options);
    for (const auto& c : r.checks)
      if (!c.ok) out.mismatches.push_back(id + ": " + c.name + ": expected " + c.expected + ", got " + c.actual);
    out.passed = out.passed && r.passed;
    out.examples.push_back(std::move(r));
  }
  return out;
}

Json to_json(const Check& c) {
  return Json{{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"ok", c.ok}};
}

Json to_json(const ExampleReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return Json{{"id", r.id}, {"passed", r.passed}, {"checks", checks}, {"payload", r.payload}};
}

Json to_json(const ReproReport& r) {
  Json examples = Json::array();
  for (const auto& e : r.examples) examples.push_back(to_json(e));
  return Json{{"kind", "repro"}, {"passed", r.passed}, {"mismatches", r.mismatches}, {"examples", examples}};
}

ReproReport repro_report_from_json(const Json& j) {
  if (j.at("kind") != "repro") throw SchemaError("expected a 'repro' document");
  ReproReport r;
  r.passed = j.at("passed").get<bool>();
  r.mismatches = j.at("mismatches").get<std::vector<std::string>>();
  for (const auto& e : j.at("examples")) {
    ExampleReport x;
    x.id = e.at("id").get<std::string>();
    if (!is_example_id(x.id)) throw SchemaError("unknown example '" + x.id + "'");
    x.passed = e.at("passed").get<bool>();
    for (const auto& c : e.at("checks"))
      x.checks.push_back({c.at("name").get<std::string>(), c.at("expected").get<std::string>(),
                          c.at("actual").get<std::string>(), c.at("ok").get<bool>()});
    x.payload = reparse_payload(e.at("payload"));
    r.examples.push_back(std::move(x));
  }
  return r;
}

Json reparse(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw SchemaError("document has no 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "basis") return to_json(basis_report_from_json(j));
  if (kind == "expand") return to_json(expand_report_from_json(j));
  if (kind == "op2") return to_json(op2_document_from_json(j));
  if (kind == "inner") return to_json(inner_document_from_json(j));
  if (kind == "certificate") return to_json(certificate_from_json(j));
  if (kind == "constraints") return to_json(constraint_system_from_json(j));
  if (kind == "repro") return to_json(repro_report_from_json(j));
  throw SchemaError("unknown document kind '" + kind + "'");
}

}  // namespace vf
