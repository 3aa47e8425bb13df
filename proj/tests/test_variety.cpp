#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "vf/variety.hpp"

#include <chrono>
#include <random>
#include <set>

using namespace vf;
using namespace vf::testing;

namespace {

// Trees up to swapping children, canonicalized by sorting subtrees.
std::set<std::string> commutative_classes(std::size_t gens, unsigned d) {
  std::set<std::string> out;
  if (d == 1) {
    for (std::size_t i = 0; i < gens; ++i) out.insert("x" + std::to_string(i + 1));
    return out;
  }
  for (unsigned l = 1; l < d; ++l)
    for (const auto& a : commutative_classes(gens, l))
      for (const auto& b : commutative_classes(gens, d - l))
        out.insert(a < b ? "(" + a + " " + b + ")" : "(" + b + " " + a + ")");
  return out;
}

int mobius(unsigned n) {
  int m = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    m = -m;
  }
  return n > 1 ? -m : m;
}

long witt(unsigned q, unsigned d) {
  long s = 0;
  for (unsigned e = 1; e <= d; ++e)
    if (d % e == 0) {
      long p = 1;
      for (unsigned i = 0; i < d / e; ++i) p *= q;
      s += mobius(e) * p;
    }
  return s / d;
}


}  // namespace

TEST_CASE("free Lie algebra on two generators up to degree 5") {
  auto start = std::chrono::steady_clock::now();
  auto A = build_truncated(builtin_variety("lie"), 2, 5);
  CHECK(A->component_dims() == std::vector<std::size_t>{2, 1, 2, 3, 6});
  CHECK(A->dimension() == 14);
  std::set<std::size_t> hit;
  Rref<Scalar> span;
  for (const auto& text : kLieBracketings) {
    Element nf = A->normal_form(parse_element(text, A->generators()));
    REQUIRE(nf.size() == 1);
    const auto& [m, c] = *nf.terms().begin();
    CHECK((c == Scalar(1) || c == Scalar(-1)));
    hit.insert(A->basis_index(m));
    CHECK(span.insert(A->coordinates(nf)));
  }
  CHECK(hit.size() == 14);
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(10));
}

TEST_CASE("Lie dimensions follow the Witt formula") {
  auto A = build_truncated(builtin_variety("lie"), 2, 6);
  auto dims = A->component_dims();
  for (unsigned d = 1; d <= 6; ++d) CHECK(dims[d - 1] == static_cast<std::size_t>(witt(2, d)));
  auto B = build_truncated(builtin_variety("lie"), 3, 4);
  auto dims3 = B->component_dims();
  for (unsigned d = 1; d <= 4; ++d) CHECK(dims3[d - 1] == static_cast<std::size_t>(witt(3, d)));
}

TEST_CASE("free and commutative dimensions against enumeration oracles") {
  auto A = build_truncated(builtin_variety("all"), 2, 3);
  CHECK(A->component_dims()[2] == 16);
  for (std::size_t g = 1; g <= 3; ++g) {
    auto C = build_truncated(builtin_variety("commutative"), g, 4);
    auto dims = C->component_dims();
    for (unsigned d = 1; d <= 4; ++d) CHECK(dims[d - 1] == commutative_classes(g, d).size());
  }
  CHECK(build_truncated(builtin_variety("commutative"), 2, 3)->component_dims()[2] == 6);
  CHECK(build_truncated(builtin_variety("commutative"), 1, 3)->component_dims() == std::vector<std::size_t>{1, 1, 1});
}

TEST_CASE("normal forms") {
  auto L = build_truncated(builtin_variety("lie"), 2, 5);
  auto ctx = L->generators();
  const Element e4 = L->normal_form(parse_element("(x1 (x1 x2))", ctx));
  CHECK(e4.size() == 1);
  CHECK(L->normal_form(parse_element("((x1 x2) x1)", ctx)) == -e4);

  auto P = build_truncated(builtin_variety("power_associative"), 1, 4);
  CHECK(P->normal_form(parse_element("(x1 (x1 x1)) - ((x1 x1) x1)", P->generators())).empty());

  auto F = build_truncated(builtin_variety("all"), 2, 3);
  std::mt19937 rng(1);
  for (int i = 0; i < 10; ++i) {
    Element e = random_element(rng, F->generators(), 4, 5);
    CHECK(F->normal_form(e) == e.truncated(3));
  }
}

TEST_CASE("normal form is an idempotent multiplicative projection") {
  for (const char* name : {"lie", "jordan", "alternative", "commutative"}) {
    auto A = build_truncated(builtin_variety(name), 2, 5);
    std::mt19937 rng(21);
    for (int i = 0; i < 10; ++i) {
      Element u = random_element(rng, A->generators(), 3, 3), v = random_element(rng, A->generators(), 3, 3);
      Element nu = A->normal_form(u);
      CHECK(A->normal_form(nu) == nu);
      CHECK(A->normal_form(u * v) == A->normal_form(A->normal_form(u) * A->normal_form(v)));
    }
  }
}

TEST_CASE("check_identity") {
  auto L = build_truncated(builtin_variety("lie"), 3, 3);
  CHECK(check_identity(*L, IdentityScheme::parse("((y1 y2) y3) + ((y2 y3) y1) + ((y3 y1) y2)")));
  auto F = build_truncated(builtin_variety("all"), 2, 3);
  CHECK_FALSE(check_identity(*F, IdentityScheme::parse("(y1 y2) - (y2 y1)")));
  auto P = build_truncated(builtin_variety("power_associative"), 1, 4);
  CHECK(check_identity(*P, IdentityScheme::parse("((y1 y1) (y1 y1)) - (((y1 y1) y1) y1)")));
  CHECK_THROWS_AS(check_identity(*P, IdentityScheme::parse("(y1 y2)")), std::invalid_argument);
  auto J = build_truncated(builtin_variety("jordan"), 2, 4);
  CHECK(check_identity(*J, IdentityScheme::parse("(((y1 y1) y2) y1) - ((y1 y1) (y2 y1))")));
  auto Alt = build_truncated(builtin_variety("alternative"), 2, 3);
  CHECK(check_identity(*Alt, IdentityScheme::parse("((y2 y1) y1) - (y2 (y1 y1))")));
  CHECK_FALSE(check_identity(*Alt, IdentityScheme::parse("((y1 y2) y1) - (y1 (y2 y2))")));
}

TEST_CASE("degree-one component has one basis element per generator") {
  for (const auto& name : builtin_variety_names())
    for (std::size_t g = 1; g <= 3; ++g)
      for (unsigned N = 1; N <= (g == 3 ? 4u : 5u); ++N) {
        auto A = build_truncated(builtin_variety(name), g, N);
        CHECK(A->component_dims()[0] == g);
      }
}

TEST_CASE("generator order does not change dimensions") {
  for (const char* name : {"lie", "jordan", "alternative"}) {
    auto a = build_truncated(builtin_variety(name), std::make_shared<const GeneratorSet>(std::vector<std::string>{"x1", "x2"}), 4);
    auto b = build_truncated(builtin_variety(name), std::make_shared<const GeneratorSet>(std::vector<std::string>{"x2", "x1"}), 4);
    CHECK(a->component_dims() == b->component_dims());
  }
}

TEST_CASE("unknown varieties and bad identities") {
  CHECK_THROWS_AS(builtin_variety("nosuch"), ParseError);
  CHECK_THROWS_AS(IdentityScheme::parse("t1 * (y1 y2)"), ParseError);
  CHECK(builtin_variety("anticommutative", {"((y1 y2) y3) + ((y2 y3) y1) + ((y3 y1) y2)"}).identities.size() == 2);
  CHECK(multidegrees_of_degree(2, 2) == std::vector<std::vector<unsigned>>{{2, 0}, {1, 1}, {0, 2}});
}

TEST_CASE("two-generator alternative and Jordan dimensions") {
  // Two-generated alternative algebras are associative, and two-generated
  // Jordan algebras are special: their free objects are the free associative
  // algebra and its reversal-symmetric part.
  auto Alt = build_truncated(builtin_variety("alternative"), 2, 6);
  auto J = build_truncated(builtin_variety("jordan"), 2, 6);
  for (unsigned d = 1; d <= 6; ++d) {
    const std::size_t words = std::size_t{1} << d, palindromes = std::size_t{1} << ((d + 1) / 2);
    CHECK(Alt->component_dims()[d - 1] == words);
    CHECK(J->component_dims()[d - 1] == (d == 1 ? 2 : (words + palindromes) / 2));
  }
}
