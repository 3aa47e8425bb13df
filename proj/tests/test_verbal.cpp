#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "vf/verbal.hpp"

using namespace vf;
using namespace vf::testing;

namespace {

const Scalar t1 = Scalar::transcendental(0);

VerbalSystem sys(Scalar a, Scalar b, const char* phi = "id") {
  return VerbalSystem(FieldAutomorphism::parse(phi), std::move(a), std::move(b));
}

Element el(const AlgebraPtr& A, const char* text) { return parse_element(text, A->generators()); }

// Which (a, b) give an admissible system, per variety family. Commutative
// and anticommutative multiplications fold a x1x2 + b x2x1 into a single
// coefficient a + b resp. a - b.
bool admissible(const std::string& variety, const Scalar& a, const Scalar& b) {
  const bool sum = !(a + b).is_zero(), diff = !(a - b).is_zero();
  if (variety == "all" || variety == "power_associative") return sum && diff;
  if (variety == "commutative" || variety == "jordan") return sum;
  if (variety == "anticommutative" || variety == "lie") return diff;
  if (variety == "alternative") return a.is_zero() != b.is_zero();
  throw std::logic_error("no table row for " + variety);
}

const std::vector<std::pair<Scalar, Scalar>> kGrid = {
    {1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}, {3, 0}, {0, -2}, {2, -2}, {t1, 0}, {t1, 1},
};

}  // namespace

TEST_CASE("verbal system construction") {
  CHECK_THROWS_AS(sys(0, 0), std::invalid_argument);
  CHECK(VerbalSystem::identity().a == Scalar(1));
  CHECK(VerbalSystem::identity().b.is_zero());
  CHECK(sys(2, 1, "swap:1,2").to_string() == "(phi=swap:1,2, a=2, b=1)");
}

TEST_CASE("derived multiplication") {
  auto A = build_truncated(builtin_variety("all"), 2, 3);
  const Element x1 = A->generator(0), x2 = A->generator(1);
  CHECK(derived_mul(VerbalSystem::identity(), x1, x2, *A) == el(A, "(x1 x2)"));
  CHECK(derived_mul(sys(0, 1), x1, x2, *A) == el(A, "(x2 x1)"));
  CHECK(derived_mul(sys(3, -2), x1, x2, *A) == el(A, "3 * (x1 x2) - 2 * (x2 x1)"));
  CHECK(derived_mul(sys(t1, 1), x1, x1, *A) == el(A, "(t1 + 1) * (x1 x1)"));
  // Truncation applies to derived products too.
  CHECK(derived_mul(sys(1, 1), el(A, "(x1 x2)"), el(A, "(x1 x2)"), *A).empty());

  auto L = build_truncated(builtin_variety("lie"), 2, 3);
  CHECK(derived_mul(sys(2, 1), L->generator(0), L->generator(1), *L) ==
        L->normal_form(el(L, "(x1 x2)")));
}

TEST_CASE("word transform") {
  auto P = build_truncated(builtin_variety("power_associative"), 1, 5);
  const Monomial cube = parse_monomial("(x1 (x1 x1))", *P->generators());
  CHECK(word_transform(sys(2, 3), cube, *P) == P->normal_form(Element(P->generators(), cube)).scaled(Scalar(25)));

  auto L = build_truncated(builtin_variety("lie"), 2, 5);
  const Monomial e10 = parse_monomial(kLieBracketings[9], *L->generators());
  CHECK(word_transform(sys(3, 0), e10, *L) == L->normal_form(Element(L->generators(), e10)).scaled(Scalar(81)));

  auto F = build_truncated(builtin_variety("all"), 2, 4);
  for (const auto& m : F->basis()) CHECK(word_transform(VerbalSystem::identity(), m, *F) == Element(F->generators(), m));
  // Pure reversal in the absolutely free algebra mirrors the tree.
  CHECK(word_transform(sys(0, 1), parse_monomial("((x1 x2) x1)", *F->generators()), *F) == el(F, "(x1 (x2 x1))"));
}

TEST_CASE("sigma is semilinear and graded") {
  auto F = build_truncated(builtin_variety("all"), 2, 3);
  const Element t = el(F, "t1 * (x1 x2) + (x2 x1)");
  CHECK(sigma_apply(sys(1, 0, "swap:1,2"), *F, t) == el(F, "t2 * (x1 x2) + (x2 x1)"));
  CHECK(sigma_apply(sys(0, 1), *F, el(F, "(x1 (x2 x2))")) == el(F, "((x2 x2) x1)"));

  std::mt19937 rng(7);
  for (const char* v : {"all", "lie", "jordan", "alternative"}) {
    auto A = build_truncated(builtin_variety(v), 3, 4);
    for (int i = 0; i < 10; ++i) {
      const Element e = A->normal_form(random_element(rng, A->generators(), 4, 5));
      CHECK(sigma_apply(VerbalSystem::identity(), *A, e) == e);
      for (unsigned d = 1; d <= 4; ++d) {
        const Element img = sigma_apply(sys(2, 0, "swap:1,2"), *A, e.component(d));
        CHECK((img.empty() || (img.min_degree() == d && img.max_degree() == d)));
      }
    }
  }
}

TEST_CASE("Op2 examples") {
  CHECK(check_op2(builtin_variety("alternative"), sys(0, 1), 3, 2).passed);
  CHECK(check_op2(builtin_variety("commutative"), sys(5, 0), 4, 2).passed);
  CHECK(check_op2(builtin_variety("commutative"), sys(t1, 0), 4, 2).passed);

  const Op2Report pa = check_op2(builtin_variety("power_associative"), sys(1, 1), 4, 2);
  CHECK_FALSE(pa.passed);
  // The derived product is commutative: sigma collapses x1x2 and x2x1.
  bool singular = false;
  for (const auto& s : pa.sigma) singular = singular || !s.invertible();
  CHECK(singular);

  const Op2Report alt = check_op2(builtin_variety("alternative"), sys(1, 1), 3, 2);
  CHECK_FALSE(alt.passed);
  REQUIRE(alt.failed_identity.has_value());
  CHECK(alt.witness.size() == alt.failed_identity->arity);
  CHECK(alt.witness_value != "0");

  CHECK_THROWS_AS(check_op2(builtin_variety("lie"), sys(1, 0), 3, 2), std::invalid_argument);
}

TEST_CASE("Op2 admissibility grid") {
  for (const auto& v : builtin_variety_names()) {
    const VarietyPresentation theta = builtin_variety(v);
    const std::size_t gens = std::max<std::size_t>(2, theta.max_arity());
    const unsigned N = std::max(3u, theta.max_degree());
    for (const auto& [a, b] : kGrid) {
      if (a.is_zero() && b.is_zero()) continue;
      CAPTURE(v);
      CAPTURE(a.to_string());
      CAPTURE(b.to_string());
      CHECK(check_op2(theta, sys(a, b), N, gens).passed == admissible(v, a, b));
    }
  }
}

TEST_CASE("derived product is bilinear in passing builds") {
  std::mt19937 rng(11);
  for (const char* v : {"all", "lie", "alternative"}) {
    const VarietyPresentation theta = builtin_variety(v);
    const VerbalSystem W = std::string(v) == "alternative" ? sys(0, 3) : sys(2, 1);
    REQUIRE(check_op2(theta, W, 3, 3).passed);
    auto A = build_truncated(theta, 3, 4);
    for (int i = 0; i < 10; ++i) {
      const Element p = A->normal_form(random_element(rng, A->generators(), 2, 3));
      const Element q = A->normal_form(random_element(rng, A->generators(), 2, 3));
      const Element r = A->normal_form(random_element(rng, A->generators(), 2, 3));
      CHECK(derived_mul(W, p + q, r, *A) == derived_mul(W, p, r, *A) + derived_mul(W, q, r, *A));
      CHECK(derived_mul(W, r, p + q, *A) == derived_mul(W, r, p, *A) + derived_mul(W, r, q, *A));
    }
  }
}

TEST_CASE("scaling lemma") {
  const VarietyPresentation pa = builtin_variety("power_associative");
  const VarietyPresentation lie = builtin_variety("lie");
  auto P = build_truncated(pa, 1, 5);
  auto L = build_truncated(lie, 2, 5);

  CHECK(scaling_check(pa, sys(2, 5), parse_monomial("(((x1 x1) x1) x1)", *P->generators()), *P));
  CHECK(scaling_check(lie, sys(4, 0), parse_monomial(kLieBracketings[6], *L->generators()), *L));
  CHECK(scaling_check(lie, sys(3, 1), parse_monomial(kLieBracketings[11], *L->generators()), *L));
  CHECK(scaling_check(pa, sys(2, 5), Monomial::generator(0), *P));
  CHECK(scaling_factor(lie, sys(4, 0), Monomial::generator(0)) == Scalar(4));

  auto P2 = build_truncated(pa, 2, 3);
  CHECK_THROWS_AS(scaling_check(pa, sys(1, 0), parse_monomial("(x1 x2)", *P2->generators()), *P2),
                  std::invalid_argument);
  auto J = build_truncated(builtin_variety("jordan"), 2, 3);
  CHECK_THROWS_AS(scaling_check(builtin_variety("jordan"), sys(1, 0), Monomial::generator(0), *J),
                  std::invalid_argument);

  const ParamPoly a = ParamPoly::variable("a"), b = ParamPoly::variable("b");
  for (const auto& m : P->basis()) CHECK(scaling_check(pa, a, b, m, *P));
  for (const auto& m : L->basis()) CHECK(scaling_check(lie, a, ParamPoly(), m, *L));
}

TEST_CASE("inner witness") {
  const VarietyPresentation all = builtin_variety("all");
  const InnerResult half = inner_witness(all, sys(2, 0), 3);
  CHECK(half.status == InnerResult::Status::witness);
  CHECK(half.mu == Scalar(1) / Scalar(2));

  const InnerResult one = inner_witness(builtin_variety("lie"), VerbalSystem::identity(), 4);
  CHECK(one.status == InnerResult::Status::witness);
  CHECK(one.mu == Scalar(1));

  const InnerResult th = inner_witness(all, sys(t1, 0), 3);
  CHECK(th.status == InnerResult::Status::witness);
  CHECK(th.mu == t1.inverse());

  CHECK(inner_witness(all, sys(1, 0, "swap:1,2"), 3).status == InnerResult::Status::refuted);
  CHECK(inner_witness(all, sys(1, 1), 3).status == InnerResult::Status::refuted);
  CHECK(inner_witness(builtin_variety("alternative"), sys(0, 1), 3).status == InnerResult::Status::refuted);
  CHECK_THROWS_AS(inner_witness(all, sys(1, 0), 2), std::invalid_argument);
  CHECK(to_string(InnerResult::Status::refuted) == "refuted");
}
