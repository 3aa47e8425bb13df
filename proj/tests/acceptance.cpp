// Acceptance gate: one line per criterion, exit status 1 if any line fails.

#include "support.hpp"
#include "vf/command.hpp"
#include "vf/repro.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace vf;
using namespace vf::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail.clear();
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& s) {
    if (ok) detail = s;
  }
};

std::string canon(const std::string& poly) { return ParamPoly::parse(poly).to_string(); }

const Scalar t1 = Scalar::transcendental(0);
const VerbalSystem kSwap(FieldAutomorphism::swap(1, 2), 1, 0);
const char* kDet = "a11*a22 - a12*a21";

Element el(const AlgebraPtr& A, const std::string& text) { return parse_element(text, A->generators()); }

// ---- 1 ------------------------------------------------------------------

Outcome lie_basis() {
  Outcome o;
  std::ostringstream out, err;
  const int code = run_command({"basis", "--variety", "lie", "--gens", "2", "--max-deg", "5", "--json"}, out, err);
  if (code != 0) {
    o.fail("basis exited " + std::to_string(code) + ": " + err.str());
    return o;
  }
  const Json j = Json::parse(out.str());
  if (j.at("dims") != Json({2, 1, 2, 3, 6})) o.fail("dims " + j.at("dims").dump());
  if (j.at("total") != 14) o.fail("total " + j.at("total").dump());

  const auto L = build_truncated(builtin_variety("lie"), 2, 5);
  std::set<Monomial> seen;
  for (std::size_t i = 0; i < kLieBracketings.size(); ++i) {
    const Element nf = L->normal_form(el(L, kLieBracketings[i]));
    const std::string name = "e" + std::to_string(i + 1);
    if (nf.size() != 1) {
      o.fail(name + " -> " + nf.to_string());
      continue;
    }
    const auto& [m, c] = *nf.terms().begin();
    if (c != Scalar(1) && c != Scalar(-1)) o.fail(name + " coefficient " + c.to_string());
    if (!std::count(L->basis().begin(), L->basis().end(), m)) o.fail(name + " not a basis monomial");
    if (!seen.insert(m).second) o.fail(name + " repeats a basis element");
  }
  o.note("dims [2,1,2,3,6], e1..e14 are +-1 times 14 distinct basis elements");
  return o;
}

// ---- 2 ------------------------------------------------------------------

Outcome alpha_image() {
  Outcome o;
  const std::vector<std::string> expected = {
      "-t2*a11^2*a12",
      "t2*a11*(a11*a22 + 2*a12*a21)",
      "-t2*a21*(2*a11*a22 + a12*a21)",
      "-a11*(t2*a12*a21 - a11*a22 + a12*a21)",
      "a21*(-t2*(a12*a21 + a11*a22) + a11*a22 - a12*a21)",
      "t2*a21^2*a22",
  };
  const auto L = build_truncated(builtin_variety("lie"), 2, 5);
  const std::string e10 = kLieBracketings[9], e12 = kLieBracketings[11];
  const TruncatedIdeal T = ideal_build(L, {el(L, "t1 * " + e10 + " + " + e12)}, 6);
  std::vector<Element> coords;
  for (std::size_t i = 8; i < 14; ++i) coords.push_back(el(L, kLieBracketings[i]));
  const ConstraintSystem cs = gen_constraints(T, kSwap, &coords);
  if (cs.image.size() != 6) {
    o.fail("image has " + std::to_string(cs.image.size()) + " coordinates");
    return o;
  }
  for (std::size_t i = 0; i < 6; ++i) {
    const std::string want = canon("(" + expected[i] + ")*(" + kDet + ")");
    if (cs.image[i].to_string() != want)
      o.fail("alpha" + std::to_string(9 + i) + ": expected " + want + ", got " + cs.image[i].to_string());
  }
  o.note("alpha9..alpha14 equal the displayed polynomials");
  return o;
}

// ---- 3 ------------------------------------------------------------------

Outcome displays() {
  Outcome o;
  {
    const auto A = build_truncated(builtin_variety("all"), 2, 2);
    const TruncatedIdeal T = ideal_build(A, {el(A, "t1 * (x1 x2) + (x2 x1)")}, 3);
    const ConstraintSystem cs = gen_constraints(T, kSwap);
    const std::vector<std::pair<std::string, std::string>> want = {
        {"(x1 x1)", "(t2 + 1)*a11*a12"},
        {"(x1 x2)", "t2*a11*a22 + a12*a21 - t1*rho"},
        {"(x2 x1)", "t2*a12*a21 + a11*a22 - rho"},
        {"(x2 x2)", "(t2 + 1)*a21*a22"}};
    if (cs.equations.size() != want.size()) o.fail("free case: " + std::to_string(cs.equations.size()) + " equations");
    for (std::size_t i = 0; i < std::min(want.size(), cs.equations.size()); ++i) {
      if (cs.labels[i] != want[i].first) o.fail("free case label " + cs.labels[i]);
      if (cs.equations[i].to_string() != canon(want[i].second))
        o.fail("free case " + want[i].first + ": got " + cs.equations[i].to_string());
    }
  }
  {
    const auto A = build_truncated(builtin_variety("commutative"), 2, 3);
    const TruncatedIdeal T = ideal_build(A, {el(A, "t1 * (x1 (x1 x2)) + (x2 (x1 x1))")}, 4);
    const std::vector<std::pair<std::string, std::string>> want = {
        {"(x1 (x1 x1))", "(t2 + 1)*a11^2*a12"},
        {"(x1 (x1 x2))", "t2*a11^2*a22 + (t2 + 2)*a11*a12*a21"},
        {"(x1 (x2 x2))", "t2*a11*a21*a22 + a12*a21^2"},
        {"(x2 (x1 x1))", "t2*a11*a12*a21 + a11^2*a22"},
        {"(x2 (x1 x2))", "t2*a12*a21^2 + (t2 + 2)*a11*a21*a22"},
        {"(x2 (x2 x2))", "(t2 + 1)*a21^2*a22"}};
    std::vector<Element> coords;
    for (const auto& [m, p] : want) coords.push_back(el(A, m));
    const ConstraintSystem cs = gen_constraints(T, kSwap, &coords);
    if (cs.image.size() != want.size()) o.fail("commutative case: " + std::to_string(cs.image.size()) + " coefficients");
    for (std::size_t i = 0; i < std::min(want.size(), cs.image.size()); ++i)
      if (cs.image[i].to_string() != canon(want[i].second))
        o.fail("commutative case " + want[i].first + ": got " + cs.image[i].to_string());
  }
  o.note("four-equation system and six-coefficient display match");
  return o;
}

// ---- 4 ------------------------------------------------------------------

Outcome falsifiers() {
  Outcome o;
  for (const std::string id : {"aut_1_3_4", "aut_2_5", "aut_6", "s_4", "s_1_3"}) {
    const JobSpec job = example_job(id);
    if (job.field.transcendental_names() != std::vector<std::string>{"t1", "t2"}) o.fail(id + ": field");
    if (job.method == "equation_ideal" && job.system.phi != FieldAutomorphism::swap(1, 2)) o.fail(id + ": phi");
    if (id == "s_1_3" && job.system.b.is_zero()) o.fail(id + ": b = 0");

    const ExampleReport rep = repro_example(id);
    if (!rep.passed) o.fail(id + ": repro reported mismatches");
    const Certificate c = run_falsify(job);
    if (c.verdict != Verdict::not_geometrically_equivalent) o.fail(id + ": verdict " + to_string(c.verdict));
    if (rep.payload.value("verdict", "") != "not_geometrically_equivalent") o.fail(id + ": repro payload verdict");
    if (c.method == "equation_ideal") {
      std::size_t leaves = 0;
      for_each_leaf(c.tree, [&](const Branch& b) {
        ++leaves;
        if (b.status != Branch::Status::closed) o.fail(id + ": leaf " + b.label + " is " + to_string(b.status));
      });
      if (leaves == 0) o.fail(id + ": empty tree");
    }
  }
  o.note("all five not_geometrically_equivalent, every branch closed (s_1_3 runs W=(id,2,1))");
  return o;
}

// ---- 5 ------------------------------------------------------------------

Outcome op2_grid() {
  Outcome o;
  const std::vector<std::pair<std::string, std::string>> grid = {
      {"1", "0"}, {"2", "0"}, {"-1", "0"}, {"t1", "0"}, {"0", "1"},  {"0", "-2"},
      {"1", "1"}, {"1", "-1"}, {"2", "1"}, {"1", "2"},  {"2", "-2"}, {"t1", "1"},
  };
  std::size_t checked = 0, wrong = 0;
  auto expect = [&](const std::string& v, const VerbalSystem& W, const std::string& label, bool want) {
    const VarietyPresentation theta = builtin_variety(v);
    const std::size_t gens = std::max<std::size_t>(2, theta.max_arity());
    const unsigned N = std::max(3u, theta.max_degree());
    const bool got = check_op2(theta, W, N, gens).passed;
    ++checked;
    if (got != want) {
      ++wrong;
      o.fail(v + " " + label + ": expected " + (want ? "accept" : "reject") + ", got " + (got ? "accept" : "reject"));
    }
  };
  for (const auto& [as, bs] : grid) {
    const Scalar a = Scalar::parse(as), b = Scalar::parse(bs);
    const VerbalSystem W(FieldAutomorphism(), a, b);
    const std::string label = "a=" + as + " b=" + bs;
    const bool eq = (a - b).is_zero(), opp = (a + b).is_zero();
    if (eq || opp) expect("power_associative", W, label, false);
    if (eq || opp) expect("all", W, label, false);
    expect("alternative", W, label, a.is_zero() != b.is_zero());
    for (const std::string v : {"commutative", "jordan", "lie"}) expect(v, W, label, b.is_zero());
  }
  expect("power_associative", VerbalSystem(FieldAutomorphism(), 2, 1), "a=2 b=1", true);
  if (o.ok) o.detail = std::to_string(checked) + " verdicts match";
  else o.detail = std::to_string(wrong) + "/" + std::to_string(checked) + " verdicts differ: " + o.detail;
  return o;
}

// ---- 6 ------------------------------------------------------------------

Outcome scaling() {
  Outcome o;
  const ParamPoly a = ParamPoly::variable("a"), b = ParamPoly::variable("b");
  std::size_t n = 0;
  auto run = [&](const std::string& v, std::size_t gens, const ParamPoly& bb, const ParamPoly& factor) {
    const auto A = build_truncated(builtin_variety(v), gens, 5);
    for (unsigned d = 1; d <= 5; ++d)
      for (const Monomial& m : enumerate_monomials(gens, d)) {
        ++n;
        const ParamElement u = lift(A->normal_form(Element(A->generators(), m)));
        if (word_transform(a, bb, m, *A) != u.scaled(factor.pow(d - 1)))
          o.fail(v + " " + m.to_string(*A->generators()));
      }
  };
  run("power_associative", 1, b, a + b);
  run("lie", 2, ParamPoly(), a);
  o.note(std::to_string(n) + " monomials scale by (a+b)^(n-1) resp. a^(n-1)");
  return o;
}

// ---- 7 ------------------------------------------------------------------

Outcome identity_closure() {
  Outcome o;
  std::mt19937 rng(7);
  const std::vector<std::string> varieties = builtin_variety_names();
  std::uniform_int_distribution<std::size_t> pv(0, varieties.size() - 1);
  std::uniform_int_distribution<int> pg(1, 3), ptail(2, 4), pc(-3, 3);
  for (int trial = 0; trial < 25; ++trial) {
    const std::string v = varieties[pv(rng)];
    const auto gens = static_cast<std::size_t>(pg(rng));
    const auto tail = static_cast<unsigned>(ptail(rng));
    const auto A = build_truncated(builtin_variety(v), gens, tail - 1);
    std::vector<Element> gs;
    for (int k = 0; k < 2; ++k) {
      const unsigned d = 1 + static_cast<unsigned>(rng() % (tail - 1));
      gs.push_back(A->normal_form(random_element(rng, A->generators(), 3, 3).component(d)));
    }
    const TruncatedIdeal T = ideal_build(A, gs, tail);
    std::vector<Endomorphism> endos = {Endomorphism::identity(A->generators())};
    const Scalar c(pc(rng));
    std::vector<Element> imgs;
    for (std::size_t i = 0; i < gens; ++i) imgs.push_back(A->generator(i).scaled(c));
    endos.emplace_back(A->generators(), imgs);
    if (!same_ideal(closure_sampled(T, endos), T))
      o.fail("trial " + std::to_string(trial) + " (" + v + ", " + std::to_string(gens) + " generators, tail " +
             std::to_string(tail) + ")");
  }
  o.note("25 random ideals reproduced exactly");
  return o;
}

// ---- 8 ------------------------------------------------------------------

struct Example {
  std::string name;
  AlgebraPtr A;
  TruncatedIdeal T;
  std::vector<Element> coords;
  std::vector<ParamPoly> hints;
};

std::vector<Example> examples() {
  std::vector<Example> out;
  {
    auto A = build_truncated(builtin_variety("all"), 2, 2);
    out.push_back({"free", A, ideal_build(A, {el(A, "t1 * (x1 x2) + (x2 x1)")}, 3), {}, {}});
  }
  {
    auto A = build_truncated(builtin_variety("commutative"), 2, 3);
    out.push_back({"commutative", A, ideal_build(A, {el(A, "t1 * (x1 (x1 x2)) + (x2 (x1 x1))")}, 4), {}, {}});
  }
  {
    auto A = build_truncated(builtin_variety("lie"), 2, 5);
    std::vector<Element> coords;
    for (std::size_t i = 8; i < 14; ++i) coords.push_back(el(A, kLieBracketings[i]));
    out.push_back({"lie", A, ideal_build(A, {el(A, "t1 * " + kLieBracketings[9] + " + " + kLieBracketings[11])}, 6),
                   coords, {ParamPoly::parse(kDet)}});
  }
  return out;
}

const std::vector<Indeterminate> kLinear = {"a11", "a12", "a21", "a22"};

Endomorphism linear_endo(const AlgebraPtr& A, const std::map<Indeterminate, Scalar>& v) {
  const Element x1 = A->generator(0), x2 = A->generator(1);
  return Endomorphism(A->generators(), {x1.scaled(v.at("a11")) + x2.scaled(v.at("a21")),
                                        x1.scaled(v.at("a12")) + x2.scaled(v.at("a22"))});
}

// Equations are linear in rho once alpha is fixed.
bool satisfiable(const ConstraintSystem& cs, const std::map<Indeterminate, Scalar>& v) {
  std::map<Indeterminate, ParamPoly> subst;
  for (const auto& [k, x] : v)
    if (k != kRho) subst[k] = ParamPoly(x);
  std::optional<Scalar> rho;
  std::vector<std::pair<Scalar, Scalar>> lines;
  for (const auto& e : cs.equations) {
    Scalar c0, c1;
    const ParamPoly p = e.substitute(subst);
    for (const auto& [m, c] : p.terms()) {
      if (m.degree() == 0) c0 += c;
      else if (m.degree() == 1 && m.exponent_of(kRho) == 1) c1 += c;
      else throw std::logic_error("equation not linear in rho: " + p.to_string());
    }
    lines.emplace_back(c0, c1);
    if (!c1.is_zero() && !rho) rho = -c0 / c1;
  }
  for (const auto& [c0, c1] : lines)
    if (!(c0 + c1 * rho.value_or(Scalar())).is_zero()) return false;
  return true;
}

Outcome oracles() {
  Outcome o;
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> val(-5, 5), small(-1, 1);
  for (const auto& ex : examples()) {
    const auto& A = ex.A;
    const TruncatedIdeal S = sf_image(kSwap, ex.T);
    const Element st = S.generators.at(0);

    // (i)
    const SymbolicEndomorphism alpha = SymbolicEndomorphism::generic_linear(A->generators());
    const ParamElement sym = symbolic_substitute(alpha, st, A->bound());
    for (int k = 0; k < 100; ++k) {
      std::map<Indeterminate, Scalar> values;
      for (const auto& name : alpha.indeterminates()) values[name] = Scalar(val(rng));
      const Element lhs = sym.map_coefficients([&](const ParamPoly& p) { return p.evaluate(values); });
      if (lhs != substitute(alpha.specialize(values), st, A->bound())) {
        o.fail(ex.name + ": symbolic and concrete substitution differ");
        break;
      }
    }

    // (iii), half the samples drawn from the solved branches so both outcomes occur.
    const ConstraintSystem cs = gen_constraints(ex.T, kSwap, ex.coords.empty() ? nullptr : &ex.coords);
    const Branch tree = solve_cases(cs, ex.hints, 16);
    std::vector<const Branch*> leaves;
    for_each_leaf(tree, [&](const Branch& b) {
      if (b.status == Branch::Status::closed && !b.infeasible) leaves.push_back(&b);
    });
    int members = 0, disagreements = 0;
    for (int k = 0; k < 100; ++k) {
      std::map<Indeterminate, Scalar> v;
      if (k % 2 && !leaves.empty()) {
        auto s = sample_branch(*leaves[static_cast<std::size_t>(k / 2) % leaves.size()], cs.indeterminates, rng);
        if (!s) {
          o.fail(ex.name + ": branch sampling failed");
          continue;
        }
        v = *s;
      } else {
        for (const auto& a : kLinear) v[a] = Scalar(small(rng));
      }
      const bool member = ideal_contains(ex.T, substitute(linear_endo(A, v), st, A->bound()));
      members += member;
      disagreements += member != satisfiable(cs, v);
    }
    if (disagreements) o.fail(ex.name + ": " + std::to_string(disagreements) + "/100 membership disagreements");
    if (members == 0 || members == 100) o.fail(ex.name + ": degenerate sample, " + std::to_string(members) + " members");
  }

  // (ii)
  auto witt = [](long q, unsigned d) {
    long sum = 0;
    for (unsigned e = 1; e <= d; ++e) {
      if (d % e) continue;
      int mu = 1;
      unsigned r = e;
      for (unsigned p = 2; p <= r; ++p)
        if (r % p == 0) {
          r /= p;
          if (r % p == 0) mu = 0;
          mu = -mu;
        }
      long pw = 1;
      for (unsigned i = 0; i < d / e; ++i) pw *= q;
      sum += mu * pw;
    }
    return sum / static_cast<long>(d);
  };
  for (std::size_t q : {2, 3}) {
    const unsigned N = q == 2 ? 6 : 5;
    const auto dims = build_truncated(builtin_variety("lie"), q, N)->component_dims();
    for (unsigned d = 1; d <= N; ++d)
      if (dims[d - 1] != static_cast<std::size_t>(witt(static_cast<long>(q), d)))
        o.fail("lie " + std::to_string(q) + " generators degree " + std::to_string(d) + ": " +
               std::to_string(dims[d - 1]));
  }
  o.note("substitution, Witt dimensions and membership agree on every sample");
  return o;
}

// ---- 9 ------------------------------------------------------------------

Outcome inner() {
  Outcome o;
  auto sys = [](const char* phi, const Scalar& a, const Scalar& b) {
    return VerbalSystem(FieldAutomorphism::parse(phi), a, b);
  };
  for (const std::string v : {"all", "lie", "power_associative"})
    for (const Scalar& a : {Scalar(1), Scalar(2), t1}) {
      const InnerResult r = inner_witness(builtin_variety(v), sys("id", a, 0), 4);
      if (r.status != InnerResult::Status::witness || r.mu != a.inverse())
        o.fail(v + " a=" + a.to_string() + ": " + to_string(r.status));
    }
  const std::vector<std::tuple<std::string, std::string, Scalar, Scalar>> refuted = {
      {"all", "swap:1,2", 1, 0},  {"lie", "swap:1,2", 1, 0},          {"all", "swap:1,2", 2, 0},
      {"all", "id", 1, 1},        {"all", "id", 2, 1},                {"all", "id", 0, 1},
      {"power_associative", "id", 1, 2}, {"alternative", "id", 0, 1},
  };
  for (const auto& [v, phi, a, b] : refuted) {
    const InnerResult r = inner_witness(builtin_variety(v), sys(phi.c_str(), a, b), 4);
    if (r.status != InnerResult::Status::refuted)
      o.fail(v + " (" + phi + "," + a.to_string() + "," + b.to_string() + "): " + to_string(r.status));
  }
  o.note("mu = 1/a for a in {1,2,t1}; swap and b!=0 probes refuted");
  return o;
}

// ---- 10 -----------------------------------------------------------------

Outcome ibn() {
  Outcome o;
  std::size_t built = 0;
  for (const auto& v : builtin_variety_names())
    for (std::size_t g = 1; g <= 3; ++g)
      for (unsigned N = 1; N <= 5; ++N) {
        ++built;
        const auto dims = build_truncated(builtin_variety(v), g, N)->component_dims();
        if (dims.empty() || dims[0] != g)
          o.fail(v + " |X|=" + std::to_string(g) + " N=" + std::to_string(N));
      }
  o.note(std::to_string(built) + " algebras, dim of degree 1 = |X| in each");
  return o;
}

struct Criterion {
  const char* title;
  double limit_seconds;  // 0: no runtime bound
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"Lie basis", 10, lie_basis},
      {"alpha9..alpha14", 30, alpha_image},
      {"constraint displays", 0, displays},
      {"falsifier verdicts", 120, falsifiers},
      {"Op2 grid", 0, op2_grid},
      {"scaling lemma", 0, scaling},
      {"identity closure", 0, identity_closure},
      {"oracles", 0, oracles},
      {"inner witness", 0, inner},
      {"IBN", 0, ibn},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "took %.1f s, limit %.0f s", secs, c.limit_seconds);
      o.fail(buf);
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << "criterion " << i + 1 << ": " << (o.ok ? "PASS" : "FAIL") << "  " << c.title << ": " << o.detail
              << " [" << timing << "]" << std::endl;
    failures += !o.ok;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
            << " criteria pass" << std::endl;
  return failures ? 1 : 0;
}
