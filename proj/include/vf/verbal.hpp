#pragma once

#include "vf/variety.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vf {

/// Word system {w_0 = 0, w_l(x) = phi(l) x, w_+(x1, x2) = x1 + x2,
/// w_.(x1, x2) = a x1x2 + b x2x1}.
struct VerbalSystem {
  FieldAutomorphism phi;
  Scalar a = Scalar(1);
  Scalar b = Scalar(0);

  VerbalSystem() = default;
  /// Throws std::invalid_argument when a = b = 0.
  VerbalSystem(FieldAutomorphism phi, Scalar a, Scalar b);
  static VerbalSystem identity() { return {}; }
  std::string to_string() const;
};

/// a uv + b vu in normal form.
Element derived_mul(const VerbalSystem& W, const Element& u, const Element& v, const TruncatedAlgebra& A);

/// The monomial with every product node replaced by the derived product.
Element word_transform(const VerbalSystem& W, const Monomial& m, const TruncatedAlgebra& A);

/// word_transform with symbolic a, b (any ParamPolys).
ParamElement word_transform(const ParamPoly& a, const ParamPoly& b, const Monomial& m, const TruncatedAlgebra& A);

/// The phi-semilinear map F -> F*_W fixing the generators.
Element sigma_apply(const VerbalSystem& W, const TruncatedAlgebra& A, const Element& e);

struct SigmaRank {
  std::vector<unsigned> multidegree;
  std::size_t dimension = 0;
  std::size_t rank = 0;
  bool invertible() const { return rank == dimension; }
};

struct Op2Report {
  bool passed = false;
  /// Set when an identity fails under the derived operations: the identity,
  /// the generators substituted for its letters and the (nonzero) value.
  std::optional<IdentityScheme> failed_identity;
  std::vector<std::string> witness;
  std::string witness_value;
  std::vector<SigmaRank> sigma;
};

/// Op2 at truncation N over |X| generators: every identity of theta holds for
/// the derived operations, and sigma is invertible on every multidegree.
Op2Report check_op2(const VarietyPresentation& theta, const VerbalSystem& W, unsigned N, std::size_t generators);

/// Scaling factor of word_transform: a + b for power associative (univariate
/// m only), a - b for anticommutative varieties. Throws std::invalid_argument
/// for any other family.
Scalar scaling_factor(const VarietyPresentation& theta, const VerbalSystem& W, const Monomial& m);
ParamPoly scaling_factor(const VarietyPresentation& theta, const ParamPoly& a, const ParamPoly& b, const Monomial& m);

/// word_transform(m) == c^{deg m - 1} normal_form(m).
bool scaling_check(const VarietyPresentation& theta, const VerbalSystem& W, const Monomial& m, const TruncatedAlgebra& A);
bool scaling_check(const VarietyPresentation& theta, const ParamPoly& a, const ParamPoly& b, const Monomial& m,
                   const TruncatedAlgebra& A);

struct InnerResult {
  enum class Status { witness, refuted, unknown };
  Status status = Status::unknown;
  /// Dilation factor when status == witness.
  Scalar mu;
  std::string detail;
};

std::string to_string(InnerResult::Status s);

/// Looks for c(u) = mu u, mu != 0, with c(uv) = c(u) x c(v) and
/// c(l u) = phi(l) c(u) on the images of the probe morphisms x -> xx,
/// x -> t1 x, x -> x1x2 and the generator swap, evaluated over two generators
/// at truncation N >= 3.
InnerResult inner_witness(const VarietyPresentation& theta, const VerbalSystem& W, unsigned N);

}  // namespace vf
