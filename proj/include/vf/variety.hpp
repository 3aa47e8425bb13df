#pragma once

#include "vf/freealg.hpp"
#include "vf/linalg.hpp"

#include <memory>
#include <string>
#include <vector>

namespace vf {

/// Identity over the letters y1..yr, read as "element = 0".
struct IdentityScheme {
  Element element;
  std::size_t arity = 0;

  /// Parses an element over y1..yr; coefficients must be rational.
  static IdentityScheme parse(std::string_view text);
  bool homogeneous() const;
  unsigned degree() const { return element.max_degree(); }
  std::string to_string() const { return element.to_string(); }
};

/// Letters y1..y9 used by identity schemes.
const GeneratorContext& identity_letters();

struct VarietyPresentation {
  std::string name;
  std::vector<IdentityScheme> identities;
  bool commutative = false;
  bool anticommutative = false;

  std::size_t max_arity() const;
  unsigned max_degree() const;
  /// Stable text used as a cache key.
  std::string fingerprint() const;
};

/// all, commutative, anticommutative, lie, jordan, alternative,
/// power_associative. `extra` identities are appended (the anticommutative
/// family is defined by them). Unknown names throw ParseError.
VarietyPresentation builtin_variety(std::string_view name, const std::vector<std::string>& extra = {});
std::vector<std::string> builtin_variety_names();
/// Variety given by its identities alone; the commutative and anticommutative
/// flags are read off the degree-2 component.
VarietyPresentation custom_variety(std::string name, const std::vector<std::string>& identities);

/// Multidegrees of total degree d over n generators, x1-heavy first.
std::vector<std::vector<unsigned>> multidegrees_of_degree(std::size_t n, unsigned d);

/// One multihomogeneous piece of F(X)/F^{N+1}: all monomials of that
/// multidegree, the consequences of the identities among them, the basis.
struct Component {
  std::vector<unsigned> multidegree;
  unsigned degree = 0;
  std::vector<Monomial> monomials;
  std::map<Monomial, std::size_t> column;
  Rref<mpq_class> relations;
  std::vector<std::size_t> basis_columns;
  /// Global index of the first basis element of this component.
  std::size_t basis_offset = 0;
  /// Position of each free column among basis_columns.
  std::map<std::size_t, std::size_t> basis_position;
};

/// F_Theta(X)/F^{N+1} with a monomial basis chosen per multidegree.
class TruncatedAlgebra {
 public:
  const GeneratorContext& generators() const { return gens_; }
  const VarietyPresentation& presentation() const { return theta_; }
  unsigned bound() const { return bound_; }

  const std::vector<Component>& components() const { return components_; }
  const Component* component(const std::vector<unsigned>& multidegree) const;
  /// Dimensions of the homogeneous components of degree 1..N.
  std::vector<std::size_t> component_dims() const;
  std::size_t dimension() const { return basis_.size(); }
  /// Global basis: degree ascending, multidegree x1-heavy first, then the
  /// component's basis order.
  const std::vector<Monomial>& basis() const { return basis_; }
  std::size_t basis_index(const Monomial& m) const;
  /// Range [first, last) of global basis indices of degree d.
  std::pair<std::size_t, std::size_t> degree_range(unsigned d) const;

  /// Normal form: every monomial rewritten in the basis, degree > N dropped.
  Element normal_form(const Element& e) const { return normal_form_impl(e); }
  ParamElement normal_form(const ParamElement& e) const { return normal_form_impl(e); }

  /// Coordinates of normal_form(e) in the global basis.
  SparseVec<Scalar> coordinates(const Element& e) const;
  std::map<std::size_t, ParamPoly> coordinates(const ParamElement& e) const;
  Element from_coordinates(const SparseVec<Scalar>& v) const;

  /// Product followed by normal form, truncated at N.
  Element multiply(const Element& a, const Element& b) const;
  ParamElement multiply(const ParamElement& a, const ParamElement& b) const;

  Element generator(std::size_t i) const { return Element::generator(gens_, i); }
  Element basis_element(std::size_t i) const { return Element(gens_, basis_.at(i)); }

 private:
  friend std::shared_ptr<const TruncatedAlgebra> build_truncated(const VarietyPresentation&, const GeneratorContext&,
                                                                 unsigned);
  template <class C>
  Combination<C> normal_form_impl(const Combination<C>& e) const;

  GeneratorContext gens_;
  VarietyPresentation theta_;
  unsigned bound_ = 0;
  std::vector<Component> components_;
  std::map<std::vector<unsigned>, std::size_t> by_multidegree_;
  std::vector<Monomial> basis_;
  std::vector<std::size_t> degree_start_;
};

using AlgebraPtr = std::shared_ptr<const TruncatedAlgebra>;

/// Builds (or fetches from a process-wide cache) the truncated relatively
/// free algebra. Requires N >= 1.
AlgebraPtr build_truncated(const VarietyPresentation& theta, const GeneratorContext& gens, unsigned bound);
AlgebraPtr build_truncated(const VarietyPresentation& theta, std::size_t generators, unsigned bound);

/// Substitutes y_i -> x_i and tests whether the result vanishes in A.
bool check_identity(const TruncatedAlgebra& A, const IdentityScheme& s);

/// Evaluates an identity under y_i -> images[i] using `mul` for products;
/// the identity's scalar coefficients multiply the results.
template <class Mul>
Element evaluate_identity(const IdentityScheme& s, const std::vector<Element>& images, Mul&& mul,
                          const GeneratorContext& ctx) {
  std::map<Monomial, Element> memo;
  Element out(ctx);
  for (const auto& [m, c] : s.element.terms()) out += evaluate_monomial(m, images, mul, memo).scaled(c);
  return out;
}

}  // namespace vf
