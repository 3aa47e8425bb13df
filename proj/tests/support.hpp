#pragma once

#include "vf/freealg.hpp"

#include <random>
#include <string>
#include <vector>

namespace vf::testing {

// e1..e14, the two-generator Lie brackets up to degree 5.
inline const std::vector<std::string> kLieBracketings = {
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

inline Element random_element(std::mt19937& rng, const GeneratorContext& ctx, unsigned max_deg, int terms) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<unsigned> deg(1, max_deg);
  Element e(ctx);
  for (int i = 0; i < terms; ++i) {
    auto ms = enumerate_monomials(ctx->size(), deg(rng));
    std::uniform_int_distribution<std::size_t> pick(0, ms.size() - 1);
    e.add_term(ms[pick(rng)], Scalar(coef(rng)) + Scalar(coef(rng)) * Scalar::transcendental(0));
  }
  return e;
}

}  // namespace vf::testing
