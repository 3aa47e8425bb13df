#pragma once

#include "vf/verbal.hpp"

#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace vf {

/// <gens, F^m> inside F/F^{N+1}, m <= N+1. The subspace lives on the global
/// basis indices of degree < m; everything of degree >= m is in the ideal.
struct TruncatedIdeal {
  AlgebraPtr algebra;
  std::vector<Element> generators;
  unsigned tail = 1;
  Rref<Scalar> space;

  /// Number of basis indices of degree < tail.
  std::size_t ambient() const;
  /// dim of the degree-d part (meaningful for graded ideals: pivots in degree d).
  std::size_t component_dim(unsigned d) const;
  std::vector<std::size_t> component_dims() const;
  /// Coordinates of normal_form(e) with degrees >= tail dropped.
  SparseVec<Scalar> head(const Element& e) const;
};

TruncatedIdeal ideal_build(const AlgebraPtr& A, const std::vector<Element>& gens, unsigned tail);
bool ideal_contains(const TruncatedIdeal& I, const Element& e);
/// Same algebra, tail and subspace.
bool same_ideal(const TruncatedIdeal& I, const TruncatedIdeal& J);
/// I is contained in J.
bool ideal_subset(const TruncatedIdeal& I, const TruncatedIdeal& J);

/// The ideal generated by sigma of each generator, same tail. Throws
/// std::invalid_argument when W fails Op2 for the ideal's variety.
TruncatedIdeal sf_image(const VerbalSystem& W, const TruncatedIdeal& I);

/// Intersection of ker(tau alpha) over the sample, tau: F -> F/T. Every
/// alpha must map the generators of `source` (default: T) into T; violators
/// are rejected with std::invalid_argument. An empty sample gives all of F.
TruncatedIdeal closure_sampled(const TruncatedIdeal& T, const std::vector<Endomorphism>& endos,
                               const TruncatedIdeal* source = nullptr);

struct ConstraintSystem {
  /// Each asserted = 0.
  std::vector<ParamPoly> equations;
  /// Coordinate each equation was read from.
  std::vector<std::string> labels;
  /// Coordinates of alpha(sigma(t)) and of t in the chosen basis.
  std::vector<ParamPoly> image;
  std::vector<Scalar> target;
  std::vector<std::string> basis;
  std::set<Indeterminate> indeterminates;
  /// Nonzero field elements the equations rely on (coefficients of t).
  std::vector<Scalar> nonzero;
};

/// Name of the proportionality unknown.
inline const Indeterminate kRho = "rho";

/// alpha(sigma(t)) = rho t modulo F^m for the generic linear alpha, where
/// T = <t, F^m> with t homogeneous of degree m - 1. Coordinates are taken in
/// `coordinate_basis` (a basis of the degree m - 1 part) when given, else in
/// the algebra's basis.
ConstraintSystem gen_constraints(const TruncatedIdeal& T, const VerbalSystem& W,
                                 const std::vector<Element>* coordinate_basis = nullptr);

struct Branch {
  enum class Status { open, closed, stuck };
  std::string label;
  /// Hypotheses accumulated from the root (substitutions are not resolved).
  std::map<Indeterminate, ParamPoly> substitutions;
  std::vector<ParamPoly> vanishing;
  std::vector<ParamPoly> nonvanishing;
  /// Concrete nonzero scalars cancelled from equations on this node.
  std::vector<Scalar> units;
  std::vector<ParamPoly> residual;
  Status status = Status::open;
  /// Closed because the hypotheses are contradictory (no endomorphism).
  bool infeasible = false;
  std::string note;

  /// Split: "factor" (f1 = 0 | f1 != 0, f2 = 0 | ...) or "hint" (h = 0 | h != 0).
  std::string split_kind;
  ParamPoly split_poly;
  Scalar split_unit;
  std::vector<ParamPoly> split_factors;
  std::vector<Branch> children;

  std::optional<bool> kernel_contains;

  bool is_leaf() const { return children.empty(); }
  /// Substitutions applied transitively.
  std::map<Indeterminate, ParamPoly> resolved_substitutions() const;
};

std::string to_string(Branch::Status s);

/// Case-splitting solver. Linear unknowns with constant coefficients are
/// eliminated, factors known to be nonzero are cancelled, hints divide
/// first; nodes deeper than depth_bound become stuck.
Branch solve_cases(const ConstraintSystem& cs, const std::vector<ParamPoly>& hints, unsigned depth_bound);

/// Calls f on every leaf.
void for_each_leaf(const Branch& b, const std::function<void(const Branch&)>& f);
void for_each_leaf(Branch& b, const std::function<void(Branch&)>& f);

/// Every v in V maps into T under the generic linear alpha restricted to the
/// branch. Throws std::invalid_argument for branches that are not closed.
bool kernel_contains(const TruncatedIdeal& T, const Branch& branch, const std::vector<Element>& V);

/// Random point of a closed feasible branch: values for `variables` meeting
/// its substitutions, vanishing and nonvanishing hypotheses. nullopt when the
/// sampler gives up.
std::optional<std::map<Indeterminate, Scalar>> sample_branch(const Branch& branch,
                                                             const std::set<Indeterminate>& variables,
                                                             std::mt19937& rng, int attempts = 50);

enum class Verdict { not_geometrically_equivalent, inconclusive, no_falsification };
std::string to_string(Verdict v);

struct Certificate {
  std::string method;  // "equation_ideal" or "smallest_closed"
  std::string variety;
  std::size_t generators = 0;
  unsigned bound = 0;
  VerbalSystem system;
  std::vector<std::string> ideal_generators;
  unsigned tail = 0;
  std::vector<std::string> image_generators;
  std::vector<std::string> target;
  std::vector<std::string> hints;

  std::vector<std::string> constraint_labels;
  std::vector<ParamPoly> constraints;
  Branch tree;

  /// Element of span(V) outside s_F(T) (equation method) or the sigma image
  /// outside V (smallest closed method).
  std::string witness;
  std::vector<std::size_t> image_dims;
  std::vector<std::size_t> closure_lower_bound_dims;
  std::vector<std::string> notes;
  Verdict verdict = Verdict::no_falsification;
};

/// Shows that s_F(T) is not closed for H = F/T: every alpha with
/// alpha(sigma(t)) in T kills V, yet some v in V lies outside s_F(T).
Certificate falsify_equation_ideal(const VerbalSystem& W, const TruncatedIdeal& T, const std::vector<Element>& V,
                                   const std::vector<ParamPoly>& hints,
                                   const std::vector<Element>* coordinate_basis = nullptr,
                                   unsigned depth_bound = 16);

/// For I the verbal ideal of the identity g (homogeneous of degree `window`):
/// V = the degree-window part of I, spanned by the coefficient vectors of
/// alpha(g) for the generic linear alpha. If sigma(g) leaves V then I != s_F I.
Certificate falsify_smallest_closed(const AlgebraPtr& A, const VerbalSystem& W, const Element& identity_gen,
                                    unsigned window);

}  // namespace vf
