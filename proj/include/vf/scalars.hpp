#pragma once

#include "vf/poly.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vf {

struct ZeroInversion : std::domain_error {
  ZeroInversion() : std::domain_error("inversion of zero scalar") {}
};

/// Raised for malformed textual input (scalars, elements, JSON specs).
struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The purely transcendental field Q(t1, ..., tm).
class FieldSpec {
 public:
  FieldSpec() = default;
  explicit FieldSpec(std::vector<std::string> names);
  /// Field with names t1..tm.
  static FieldSpec standard(std::size_t m);

  std::size_t transcendental_count() const { return names_.size(); }
  const std::vector<std::string>& transcendental_names() const { return names_; }
  /// 0-based index for either a declared name or the canonical `t<i>` form.
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  std::vector<std::string> names_;
};

/// Element of Q(t1..tm) kept in canonical form: numerator and denominator
/// coprime, denominator monic in grlex order (so constants live entirely in
/// the numerator and zero is 0/1). Equal values have identical representation.
class Scalar {
 public:
  Scalar() : num_(), den_(1) {}
  Scalar(long v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(Poly p) : num_(std::move(p)), den_(1) {}
  Scalar(Poly num, Poly den);

  /// t_{index+1}
  static Scalar transcendental(std::size_t index);
  /// Parses the canonical string encoding (names t1.. or those of `field`).
  static Scalar parse(std::string_view text, const FieldSpec& field = {});

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_rational() const { return num_.is_constant() && den_.is_one(); }
  mpq_class rational_value() const { return num_.constant_value(); }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar inverse() const;
  Scalar pow(int e) const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Integer-coefficient encoding, e.g. `(t1*t2 - 1)/(t1 + 1)` or `-3/2`.
  std::string to_string() const;

 private:
  void canonicalize();
  Poly num_;
  Poly den_;
};

inline bool is_zero(const Scalar& s) { return s.is_zero(); }

/// Field automorphism permuting the transcendentals; fixes Q pointwise.
class FieldAutomorphism {
 public:
  FieldAutomorphism() = default;
  /// images[i] = index of the image of t_{i+1} (0-based). Must be a bijection.
  explicit FieldAutomorphism(std::vector<std::size_t> images);

  static FieldAutomorphism identity() { return {}; }
  /// Exchanges t_i and t_j (1-based, as written in `swap:i,j`).
  static FieldAutomorphism swap(std::size_t i, std::size_t j);
  /// Accepts `id`, `swap:i,j` and `perm:p1,...,pm` (1-based images).
  static FieldAutomorphism parse(std::string_view text);

  bool is_identity() const;
  const std::vector<std::size_t>& images() const { return images_; }
  std::string to_string() const;

  friend bool operator==(const FieldAutomorphism& a, const FieldAutomorphism& b) {
    return a.is_identity() == b.is_identity() && (a.is_identity() || a.images_ == b.images_);
  }

 private:
  std::vector<std::size_t> images_;
};

Scalar apply_automorphism(const FieldAutomorphism& phi, const Scalar& s);

}  // namespace vf
