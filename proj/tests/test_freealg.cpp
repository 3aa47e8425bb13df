#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vf/freealg.hpp"

#include <random>
#include <set>

using namespace vf;

namespace {

// Independent tree enumeration over strings, used as a count oracle.
std::vector<std::string> brute_trees(std::size_t gens, unsigned d) {
  std::vector<std::string> out;
  if (d == 1) {
    for (std::size_t i = 0; i < gens; ++i) out.push_back("x" + std::to_string(i + 1));
    return out;
  }
  for (unsigned l = 1; l < d; ++l)
    for (const auto& a : brute_trees(gens, l))
      for (const auto& b : brute_trees(gens, d - l)) out.push_back("(" + a + " " + b + ")");
  return out;
}

unsigned long catalan(unsigned n) {
  unsigned long c = 1;
  for (unsigned i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

Element random_element(std::mt19937& rng, const GeneratorContext& ctx, unsigned max_deg, int terms) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<unsigned> deg(1, max_deg);
  Element e(ctx);
  for (int i = 0; i < terms; ++i) {
    auto ms = enumerate_monomials(ctx->size(), deg(rng));
    std::uniform_int_distribution<std::size_t> pick(0, ms.size() - 1);
    Scalar c = Scalar(coef(rng)) + Scalar(coef(rng)) * Scalar::transcendental(0);
    e.add_term(ms[pick(rng)], c);
  }
  return e;
}

}  // namespace

TEST_CASE("monomial enumeration matches the brute-force tree oracle") {
  for (std::size_t g = 1; g <= 3; ++g)
    for (unsigned d = 1; d <= 6; ++d) {
      if (g == 3 && d == 6) continue;
      auto ms = enumerate_monomials(g, d);
      auto gens = GeneratorSet::standard(g);
      std::set<std::string> ours, theirs;
      for (const auto& m : ms) ours.insert(m.to_string(*gens));
      for (const auto& s : brute_trees(g, d)) theirs.insert(s);
      CHECK(ms.size() == catalan(d - 1) * static_cast<unsigned long>(std::pow(g, d)));
      CHECK(ours == theirs);
      CHECK(std::is_sorted(ms.begin(), ms.end()));
    }
  CHECK(enumerate_monomials(2, 1).size() == 2);
  CHECK(enumerate_monomials(2, 2).size() == 4);
  CHECK(enumerate_monomials(2, 3).size() == 16);
  CHECK(enumerate_monomials(std::vector<unsigned>{2, 1}).size() == 6);
}

TEST_CASE("monomial structure") {
  auto gens = GeneratorSet::standard(2);
  Monomial m = parse_monomial("((x1 x2) (x1 (x2 x2)))", *gens);
  CHECK(m.degree() == 5);
  CHECK(m.left().to_string(*gens) == "(x1 x2)");
  CHECK(m.right().to_string(*gens) == "(x1 (x2 x2))");
  CHECK(m.left() * m.right() == m);
  CHECK(m.multidegree(2) == std::vector<unsigned>{2, 3});
  CHECK_THROWS_AS(parse_monomial("(x1 x3)", *gens), ParseError);
  // lopsided shapes precede balanced ones; right-heavy before left-heavy
  Monomial a = parse_monomial("(x1 (x1 (x1 x1)))", *gens);
  Monomial b = parse_monomial("(((x1 x1) x1) x1)", *gens);
  Monomial c = parse_monomial("((x1 x1) (x1 x1))", *gens);
  CHECK(a < b);
  CHECK(b < c);
  CHECK(parse_monomial("(x2 x2)", *gens) < parse_monomial("(x1 (x1 x1))", *gens));
}

TEST_CASE("element arithmetic") {
  auto ctx = GeneratorSet::standard(2);
  Element x1 = Element::generator(ctx, 0), x2 = Element::generator(ctx, 1);
  Scalar l = Scalar::transcendental(0);
  CHECK((x1 * x2).to_string() == "(x1 x2)");
  CHECK(multiply(x1 + x2, x1, 1).empty());
  CHECK(x1.scaled(l) * x2 == (x1 * x2).scaled(l));
  CHECK(((x1 * x2).scaled(l) + x2 * x1).to_string() == "t1 * (x1 x2) + (x2 x1)");
  CHECK((x1.scaled(Scalar(-2)) - x2.scaled(l + Scalar(1))).to_string() == "-2 * x1 + (-t1 - 1) * x2");
  auto other = GeneratorSet::standard(3);
  CHECK_THROWS_AS(x1 + Element::generator(other, 2), ContextMismatch);
  CHECK((x1 + x1 * x2).truncated(1) == x1);
}

TEST_CASE("element parse and print round trip") {
  auto ctx = GeneratorSet::standard(2);
  std::mt19937 rng(5);
  for (int i = 0; i < 50; ++i) {
    Element e = random_element(rng, ctx, 4, 4);
    CHECK(parse_element(e.to_string(), ctx) == e);
  }
  Element t = parse_element("t1 * (x1 x2) + (x2 x1)", ctx);
  CHECK(t.size() == 2);
  CHECK(parse_element("(t1 + 1)/2 * (x1 x1) - x2", ctx).to_string() == "-x2 + ((t1 + 1)/2) * (x1 x1)");
  CHECK(parse_element("0", ctx).empty());
  CHECK_THROWS_AS(parse_element("t1 *", ctx), ParseError);
  CHECK_THROWS_AS(parse_element("x1 * x2", ctx), ParseError);
  CHECK_THROWS_AS(parse_element("(x1 x5)", ctx), ParseError);
}

TEST_CASE("substitution") {
  auto ctx = GeneratorSet::standard(2);
  Element x1 = Element::generator(ctx, 0), x2 = Element::generator(ctx, 1);
  Element e = parse_element("t1 * ((x1 x2) x1) + x2", ctx);
  CHECK(substitute(Endomorphism::identity(ctx), e, 5) == e);
  Endomorphism swap(ctx, {x2, x1});
  CHECK(substitute(swap, x1 * x2, 5) == x2 * x1);
  Endomorphism a(ctx, {x1 + x1 * x1, x2});
  CHECK(substitute(a, x1 * x2, 2) == x1 * x2);
  CHECK(substitute(a, x1 * x2, 3) == x1 * x2 + (x1 * x1) * x2);
}

TEST_CASE("substitution is a homomorphism up to truncation") {
  auto ctx = GeneratorSet::standard(2);
  std::mt19937 rng(9);
  for (int i = 0; i < 20; ++i) {
    Endomorphism a(ctx, {random_element(rng, ctx, 2, 2), random_element(rng, ctx, 2, 2)});
    Element u = random_element(rng, ctx, 2, 2), v = random_element(rng, ctx, 2, 2);
    const unsigned N = 5;
    CHECK(substitute(a, u * v, N) == multiply(substitute(a, u, N), substitute(a, v, N), N));
  }
}

TEST_CASE("grading of products") {
  auto ctx = GeneratorSet::standard(3);
  std::mt19937 rng(13);
  for (int i = 0; i < 20; ++i) {
    Element u = random_element(rng, ctx, 3, 3).component(2), v = random_element(rng, ctx, 3, 3).component(3);
    Element p = u * v;
    if (!p.empty()) CHECK((p.min_degree() == 5 && p.max_degree() == 5));
  }
}

TEST_CASE("symbolic substitution") {
  auto ctx = GeneratorSet::standard(2);
  auto alpha = SymbolicEndomorphism::generic_linear(ctx);
  CHECK(alpha.images()[0].to_string() == "a11 * x1 + a21 * x2");
  Element st = parse_element("t2 * (x1 x2) + (x2 x1)", ctx);
  ParamElement img = symbolic_substitute(alpha, st, 2);
  CHECK(img.coefficient(parse_monomial("(x1 x2)", *ctx)) == ParamPoly::parse("t2*a11*a22 + a12*a21"));

  // identity specialization keeps coefficients
  SymbolicEndomorphism id(ctx, {lift(Element::generator(ctx, 0)), lift(Element::generator(ctx, 1))});
  CHECK(symbolic_substitute(id, st, 3) == lift(st));

  // agrees with concrete substitution at random specializations
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> val(-5, 5);
  Element e = parse_element("t1 * ((x1 x2) x1) + (x2 (x2 x1)) - 3 * (x1 x2)", ctx);
  ParamElement sym = symbolic_substitute(alpha, e, 3);
  for (int i = 0; i < 25; ++i) {
    std::map<Indeterminate, Scalar> values;
    for (const auto& name : alpha.indeterminates()) values[name] = Scalar(val(rng));
    Element lhs = sym.map_coefficients([&](const ParamPoly& p) { return p.evaluate(values); });
    CHECK(lhs == substitute(alpha.specialize(values), e, 3));
  }
}
