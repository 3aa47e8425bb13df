#pragma once

#include "vf/scalars.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vf {

/// Solver indeterminate names, e.g. `a11`, `a21`, `rho`.
using Indeterminate = std::string;

/// Power product of solver indeterminates, factors sorted by name.
class ParamMonomial {
 public:
  ParamMonomial() = default;
  static ParamMonomial variable(const Indeterminate& name, unsigned power = 1);

  const std::vector<std::pair<Indeterminate, unsigned>>& factors() const { return factors_; }
  unsigned degree() const;
  unsigned exponent_of(std::string_view name) const;
  bool is_one() const { return factors_.empty(); }
  bool divides(const ParamMonomial& other) const;
  /// this / d; requires d.divides(*this).
  ParamMonomial quotient(const ParamMonomial& d) const;
  /// Copy with `name` removed.
  ParamMonomial without(std::string_view name) const;
  std::string to_string() const;

  friend ParamMonomial operator*(const ParamMonomial& a, const ParamMonomial& b);
  friend bool operator==(const ParamMonomial&, const ParamMonomial&) = default;

 private:
  std::vector<std::pair<Indeterminate, unsigned>> factors_;
};

/// Graded lexicographic with indeterminates prioritized by name (a11 > a12 > ... > rho).
int compare_grlex(const ParamMonomial& a, const ParamMonomial& b);

struct ParamMonomialGreater {
  bool operator()(const ParamMonomial& a, const ParamMonomial& b) const {
    return compare_grlex(a, b) > 0;
  }
};

/// Polynomial in solver indeterminates with coefficients in k.
class ParamPoly {
 public:
  using TermMap = std::map<ParamMonomial, Scalar, ParamMonomialGreater>;

  ParamPoly() = default;
  ParamPoly(const Scalar& c);  // NOLINT(google-explicit-constructor)
  ParamPoly(long c) : ParamPoly(Scalar(c)) {}  // NOLINT(google-explicit-constructor)
  static ParamPoly variable(const Indeterminate& name);
  static ParamPoly term(const ParamMonomial& m, const Scalar& c);
  /// Parses expressions such as `-t2*a11^2*a12*(a11*a22 - a12*a21)`.
  static ParamPoly parse(std::string_view text, const FieldSpec& field = {});

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial (zero for the zero polynomial).
  Scalar constant_value() const;
  const std::pair<const ParamMonomial, Scalar>& leading() const { return *terms_.begin(); }
  unsigned degree() const;
  std::set<Indeterminate> indeterminates() const;

  ParamPoly operator-() const;
  ParamPoly& operator+=(const ParamPoly& o);
  ParamPoly& operator-=(const ParamPoly& o);
  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
  ParamPoly& operator*=(const Scalar& c);
  friend ParamPoly operator*(ParamPoly a, const Scalar& c) { return a *= c; }
  friend ParamPoly operator*(const Scalar& c, ParamPoly a) { return a *= c; }
  ParamPoly pow(unsigned e) const;
  void add_term(const ParamMonomial& m, const Scalar& c);

  friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.terms_ == b.terms_; }

  /// Leading coefficient made 1; zero stays zero.
  ParamPoly monic() const;
  /// Replaces each listed indeterminate by its image (single pass).
  ParamPoly substitute(const std::map<Indeterminate, ParamPoly>& subst) const;
  Scalar evaluate(const std::map<Indeterminate, Scalar>& values) const;
  ParamPoly map_coefficients(const FieldAutomorphism& phi) const;

  std::string to_string() const;

 private:
  TermMap terms_;
};

inline bool is_zero(const ParamPoly& p) { return p.is_zero(); }

/// Single-divisor division: f = q*g + r with no term of r divisible by lt(g).
std::pair<ParamPoly, ParamPoly> divide(const ParamPoly& f, const ParamPoly& g);

/// Applies substitutions (resolved transitively; cyclic substitutions throw
/// std::invalid_argument), then divides repeatedly by the vanishing polynomials
/// until none of their leading terms divides any remaining term.
ParamPoly parampoly_reduce(const ParamPoly& p, const std::map<Indeterminate, ParamPoly>& substitutions,
                           const std::vector<ParamPoly>& vanishing);

struct Factorization {
  Scalar unit;
  std::vector<ParamPoly> factors;
};

/// Best-effort factorization: unit, monomial content (one factor per
/// indeterminate power), exact division by the (normalized) hints, remainder.
/// Factors are monic; the unit is never among them.
Factorization factor_with_unit(const ParamPoly& p, const std::vector<ParamPoly>& hints);
std::vector<ParamPoly> factor_for_branching(const ParamPoly& p, const std::vector<ParamPoly>& hints);

/// Expression parser shared by Scalar::parse and ParamPoly::parse. Identifiers
/// naming transcendentals become scalars; others become indeterminates unless
/// `allow_indeterminates` is false.
ParamPoly parse_expression(std::string_view text, const FieldSpec& field, bool allow_indeterminates);

}  // namespace vf
