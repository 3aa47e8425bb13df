#include "vf/scalars.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace vf {

namespace {

// Renders a polynomial with integer coefficients.
std::string integer_poly_string(const Poly& p) { return p.to_string(); }

bool needs_parens(const Poly& p, bool as_denominator) {
  if (p.terms().size() > 1) return true;
  if (!as_denominator) return false;
  const auto& t = p.leading();
  // `a/2*t1` would read as (a/2)*t1, so any product in a denominator is wrapped
  return !t.exp.empty() && (t.coeff != 1 || [&] {
           int vars = 0;
           for (auto e : t.exp) vars += e ? 1 : 0;
           return vars > 1 || std::any_of(t.exp.begin(), t.exp.end(), [](auto e) { return e > 1; });
         }());
}

}  // namespace

FieldSpec::FieldSpec(std::vector<std::string> names) : names_(std::move(names)) {
  auto sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("FieldSpec: transcendental names must be distinct");
}

FieldSpec FieldSpec::standard(std::size_t m) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= m; ++i) names.push_back("t" + std::to_string(i));
  return FieldSpec(std::move(names));
}

std::optional<std::size_t> FieldSpec::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  if (name.size() > 1 && name[0] == 't') {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), v);
    if (ec == std::errc() && ptr == name.data() + name.size() && v >= 1) return v - 1;
  }
  return std::nullopt;
}

Scalar::Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ZeroInversion();
  canonicalize();
}

void Scalar::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (den_.is_constant()) {
    num_ = num_.scaled(1 / den_.constant_value());
    den_ = Poly(1);
    return;
  }
  Poly g = gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = *exact_quotient(num_, g);
    den_ = *exact_quotient(den_, g);
  }
  const mpq_class lc = den_.leading().coeff;
  if (lc != 1) {
    num_ = num_.scaled(1 / lc);
    den_ = den_.scaled(1 / lc);
  }
  if (den_.is_constant()) {
    num_ = num_.scaled(1 / den_.constant_value());
    den_ = Poly(1);
  }
}

Scalar Scalar::transcendental(std::size_t index) { return Scalar(Poly::variable(index)); }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  canonicalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw ZeroInversion();
  return Scalar(den_, num_);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar r(1), base = *this;
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

std::string Scalar::to_string() const {
  // Clear rational coefficients so both parts carry coprime integers.
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), coefficient_denominator_lcm(num_).get_mpz_t(), coefficient_denominator_lcm(den_).get_mpz_t());
  Poly n = num_.scaled(mpq_class(l)), d = den_.scaled(mpq_class(l));
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), integer_content(n).get_mpz_t(), integer_content(d).get_mpz_t());
  if (g != 1 && g != 0) {
    n = n.scaled(mpq_class(1, 1) / mpq_class(g));
    d = d.scaled(mpq_class(1, 1) / mpq_class(g));
  }
  if (d.is_one()) return integer_poly_string(n);
  std::string ns = integer_poly_string(n), ds = integer_poly_string(d);
  if (needs_parens(n, false)) ns = "(" + ns + ")";
  if (needs_parens(d, true)) ds = "(" + ds + ")";
  return ns + "/" + ds;
}

FieldAutomorphism::FieldAutomorphism(std::vector<std::size_t> images) : images_(std::move(images)) {
  auto sorted = images_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw std::invalid_argument("FieldAutomorphism: images must form a permutation");
}

FieldAutomorphism FieldAutomorphism::swap(std::size_t i, std::size_t j) {
  if (i == 0 || j == 0) throw std::invalid_argument("swap indices are 1-based");
  std::vector<std::size_t> images(std::max(i, j));
  for (std::size_t k = 0; k < images.size(); ++k) images[k] = k;
  std::swap(images[i - 1], images[j - 1]);
  return FieldAutomorphism(std::move(images));
}

FieldAutomorphism FieldAutomorphism::parse(std::string_view text) {
  auto numbers = [&](std::string_view list) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
      std::size_t comma = list.find(',', pos);
      if (comma == std::string_view::npos) comma = list.size();
      std::string_view item = list.substr(pos, comma - pos);
      while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
      while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
      std::size_t v = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc() || ptr != item.data() + item.size() || v == 0)
        throw ParseError("bad automorphism index list: " + std::string(list));
      out.push_back(v);
      pos = comma + 1;
    }
    return out;
  };
  if (text == "id") return identity();
  if (text.starts_with("swap:")) {
    auto v = numbers(text.substr(5));
    if (v.size() != 2) throw ParseError("swap needs two indices: " + std::string(text));
    return swap(v[0], v[1]);
  }
  if (text.starts_with("perm:")) {
    auto v = numbers(text.substr(5));
    for (auto& x : v) --x;
    try {
      return FieldAutomorphism(std::move(v));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("unknown automorphism: " + std::string(text));
}

bool FieldAutomorphism::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::string FieldAutomorphism::to_string() const {
  if (is_identity()) return "id";
  std::vector<std::size_t> moved;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) moved.push_back(i);
  if (moved.size() == 2 && images_[moved[0]] == moved[1])
    return "swap:" + std::to_string(moved[0] + 1) + "," + std::to_string(moved[1] + 1);
  std::string s = "perm:";
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(images_[i] + 1);
  }
  return s;
}

Scalar apply_automorphism(const FieldAutomorphism& phi, const Scalar& s) {
  if (phi.is_identity()) return s;
  return Scalar(s.numerator().permuted(phi.images()), s.denominator().permuted(phi.images()));
}

}  // namespace vf
