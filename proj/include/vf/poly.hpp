#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vf {

/// Exponent vector over t1..tm; trailing zeros are always trimmed so that
/// equal monomials compare equal regardless of how many variables exist.
using Exponents = std::vector<std::uint16_t>;

/// Graded lexicographic comparison: total degree first, then the exponent of
/// t1, t2, ... (a larger exponent on an earlier variable ranks higher).
int compare_grlex(const Exponents& a, const Exponents& b);

/// Sparse multivariate polynomial over Q in the transcendentals t1..tm.
/// Terms are kept sorted in descending grlex order with no zero coefficients.
class Poly {
 public:
  struct Term {
    Exponents exp;
    mpq_class coeff;
  };

  Poly() = default;
  explicit Poly(const mpq_class& c);
  explicit Poly(long c) : Poly(mpq_class(c)) {}

  static Poly variable(std::size_t index, unsigned power = 1);
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  /// Constant term value; requires is_constant().
  mpq_class constant_value() const;
  const Term& leading() const { return terms_.front(); }
  unsigned total_degree() const;
  /// One past the largest variable index that occurs.
  std::size_t variable_bound() const;
  unsigned degree_in(std::size_t var) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const mpq_class& c) const;
  Poly pow(unsigned e) const;

  friend bool operator==(const Poly& a, const Poly& b);

  /// Ring homomorphism t_i -> t_{perm[i]} (0-based). Indices beyond the
  /// permutation's length are fixed.
  Poly permuted(std::span<const std::size_t> perm) const;

  /// Divides by the leading coefficient. Zero stays zero.
  Poly monic() const;

  /// Human-readable form with rational coefficients, e.g. `t1^2 - 1/2*t2`.
  std::string to_string() const;

 private:
  void normalize();
  std::vector<Term> terms_;
};

/// Quotient a/b when b divides a exactly, otherwise nullopt. b must be nonzero.
std::optional<Poly> exact_quotient(const Poly& a, const Poly& b);

/// Monic greatest common divisor (recursive primitive PRS). gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

/// Least common multiple of the denominators of all coefficients.
mpz_class coefficient_denominator_lcm(const Poly& p);
/// Gcd of the numerators of all coefficients (p assumed to have integer coeffs).
mpz_class integer_content(const Poly& p);

}  // namespace vf
