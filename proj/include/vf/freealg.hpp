#pragma once

#include "vf/parampoly.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vf {

class GeneratorSet {
 public:
  GeneratorSet() = default;
  explicit GeneratorSet(std::vector<std::string> names);
  /// x1..xn
  static std::shared_ptr<const GeneratorSet> standard(std::size_t n, std::string_view prefix = "x");

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;

 private:
  std::vector<std::string> names_;
};

using GeneratorContext = std::shared_ptr<const GeneratorSet>;

/// Operands built over different generator sets were combined.
struct ContextMismatch : std::logic_error {
  ContextMismatch() : std::logic_error("elements belong to different generator contexts") {}
};

/// Full binary tree with generator-labelled leaves.
///
/// Packed as bytes: [shape keys (d-1)][leaf word (d)][left sizes (d-1)], the
/// internal-node entries in prefix order. Ordering is (degree, bytes), which
/// puts shape keys before the leaf word. A node of degree n splitting as l+r
/// has key 2(n - |l - r|) + (l > r): lopsided splits come first, right-heavy
/// before left-heavy, balanced last.
class Monomial {
 public:
  static Monomial generator(std::size_t index);
  static Monomial product(const Monomial& a, const Monomial& b);

  unsigned degree() const { return static_cast<unsigned>((data_.size() + 2) / 3); }
  bool is_generator() const { return data_.size() == 1; }
  std::size_t generator_index() const { return static_cast<unsigned char>(data_[0]); }
  Monomial left() const;
  Monomial right() const;
  /// Leaf counts per generator, sized `generators`.
  std::vector<unsigned> multidegree(std::size_t generators) const;
  /// Generator indices of the leaves, left to right.
  std::vector<std::size_t> leaves() const;
  /// Largest generator index + 1.
  std::size_t generator_bound() const;
  /// Same tree with the leaf word replaced (word.size() == degree()).
  Monomial with_leaves(const std::vector<std::size_t>& word) const;

  std::string to_string(const GeneratorSet& gens) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.data_ == b.data_; }
  friend bool operator<(const Monomial& a, const Monomial& b) {
    return a.data_.size() != b.data_.size() ? a.data_.size() < b.data_.size() : a.data_ < b.data_;
  }
  const std::string& bytes() const { return data_; }

 private:
  explicit Monomial(std::string d) : data_(std::move(d)) {}
  std::string data_;
};

Monomial operator*(const Monomial& a, const Monomial& b);

/// Parses `x1`, `(x1 x2)`, `((x1 x2) x1)`.
Monomial parse_monomial(std::string_view text, const GeneratorSet& gens);

/// All monomials of the given degree on `generators` letters, ascending.
std::vector<Monomial> enumerate_monomials(std::size_t generators, unsigned degree);
/// Monomials of the given multidegree, ascending.
std::vector<Monomial> enumerate_monomials(const std::vector<unsigned>& multidegree);

/// Finite linear combination of monomials with coefficients in C, tied to a
/// generator context. The zero combination may carry a null context.
template <class C>
class Combination {
 public:
  using TermMap = std::map<Monomial, C>;

  Combination() = default;
  explicit Combination(GeneratorContext ctx) : ctx_(std::move(ctx)) {}
  Combination(GeneratorContext ctx, const Monomial& m, C c = C(1)) : ctx_(std::move(ctx)) {
    if (!is_zero(c)) terms_.emplace(m, std::move(c));
  }
  static Combination generator(GeneratorContext ctx, std::size_t i) {
    return Combination(std::move(ctx), Monomial::generator(i));
  }

  const GeneratorContext& context() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  C coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C() : it->second;
  }
  unsigned min_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }
  unsigned max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }
  bool is_homogeneous() const { return min_degree() == max_degree(); }

  void add_term(const Monomial& m, const C& c) {
    if (is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  Combination& operator+=(const Combination& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Combination& operator-=(const Combination& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Combination operator-() const {
    Combination r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend Combination operator+(Combination a, const Combination& b) { return a += b; }
  friend Combination operator-(Combination a, const Combination& b) { return a -= b; }

  template <class S>
  Combination scaled(const S& s) const {
    Combination r(ctx_);
    if (is_zero(s)) return r;
    for (const auto& [m, c] : terms_) r.add_term(m, c * s);
    return r;
  }

  /// Product dropping every monomial of degree above `bound` (0 = no bound).
  static Combination product(const Combination& a, const Combination& b, unsigned bound = 0) {
    Combination r(a.ctx_ ? a.ctx_ : b.ctx_);
    if (a.ctx_ && b.ctx_ && a.ctx_ != b.ctx_ && !(*a.ctx_ == *b.ctx_)) throw ContextMismatch();
    for (const auto& [ma, ca] : a.terms_) {
      if (bound && ma.degree() + 1 > bound) break;
      for (const auto& [mb, cb] : b.terms_) {
        if (bound && ma.degree() + mb.degree() > bound) break;
        r.add_term(ma * mb, ca * cb);
      }
    }
    return r;
  }
  friend Combination operator*(const Combination& a, const Combination& b) { return product(a, b); }

  Combination truncated(unsigned bound) const {
    Combination r(ctx_);
    for (const auto& [m, c] : terms_) {
      if (m.degree() > bound) break;
      r.terms_.emplace_hint(r.terms_.end(), m, c);
    }
    return r;
  }
  /// Homogeneous component of degree d.
  Combination component(unsigned d) const {
    Combination r(ctx_);
    for (const auto& [m, c] : terms_)
      if (m.degree() == d) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }
  /// Component of one multidegree.
  Combination component(const std::vector<unsigned>& multidegree) const {
    Combination r(ctx_);
    for (const auto& [m, c] : terms_)
      if (m.multidegree(multidegree.size()) == multidegree) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }
  /// Distinct multidegrees present, in ascending monomial order of first occurrence.
  std::vector<std::vector<unsigned>> multidegrees() const {
    std::vector<std::vector<unsigned>> out;
    const std::size_t n = ctx_ ? ctx_->size() : 0;
    for (const auto& [m, c] : terms_) {
      auto md = m.multidegree(n);
      if (std::find(out.begin(), out.end(), md) == out.end()) out.push_back(std::move(md));
    }
    return out;
  }

  template <class F>
  auto map_coefficients(F&& f) const -> Combination<std::decay_t<decltype(f(std::declval<const C&>()))>> {
    Combination<std::decay_t<decltype(f(std::declval<const C&>()))>> r(ctx_);
    for (const auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
  }

  friend bool operator==(const Combination& a, const Combination& b) { return a.terms_ == b.terms_; }

  /// `c * m` terms in ascending order; unit coefficients are omitted and
  /// compound coefficients parenthesized.
  std::string to_string() const;

 private:
  void adopt(const Combination& o) {
    if (!ctx_) {
      ctx_ = o.ctx_;
    } else if (o.ctx_ && ctx_ != o.ctx_ && !(*ctx_ == *o.ctx_)) {
      throw ContextMismatch();
    }
  }
  GeneratorContext ctx_;
  TermMap terms_;
};

template <class C>
Combination<C> multiply(const Combination<C>& a, const Combination<C>& b, unsigned bound = 0) {
  return Combination<C>::product(a, b, bound);
}

using Element = Combination<Scalar>;
using ParamElement = Combination<ParamPoly>;

template <class C>
inline bool is_zero(const Combination<C>& e) {
  return e.empty();
}

/// Parses `t1 * (x1 x2) + (x2 x1)`, `-(x1 (x1 x2))`, `(t2 + 1)/2 * x1` and
/// similar sums; scalar factors may use the names of `field`.
Element parse_element(std::string_view text, const GeneratorContext& ctx, const FieldSpec& field = {});

/// Lifts scalar coefficients into constant ParamPolys.
ParamElement lift(const Element& e);

/// Images of the generators; the identity by default.
class Endomorphism {
 public:
  explicit Endomorphism(GeneratorContext ctx);
  Endomorphism(GeneratorContext ctx, std::vector<Element> images);
  static Endomorphism identity(GeneratorContext ctx) { return Endomorphism(std::move(ctx)); }

  const GeneratorContext& context() const { return ctx_; }
  const std::vector<Element>& images() const { return images_; }
  const Element& image(std::size_t i) const { return images_.at(i); }
  std::string to_string() const;

 private:
  GeneratorContext ctx_;
  std::vector<Element> images_;
};

/// Endomorphism whose images carry ParamPoly coefficients.
class SymbolicEndomorphism {
 public:
  SymbolicEndomorphism(GeneratorContext ctx, std::vector<ParamElement> images);
  /// x_i -> sum_j a{j}{i} x_j, e.g. x1 -> a11 x1 + a21 x2.
  static SymbolicEndomorphism generic_linear(GeneratorContext ctx);

  const GeneratorContext& context() const { return ctx_; }
  const std::vector<ParamElement>& images() const { return images_; }
  const std::set<Indeterminate>& indeterminates() const { return indeterminates_; }
  /// Concrete endomorphism obtained by evaluating every indeterminate.
  Endomorphism specialize(const std::map<Indeterminate, Scalar>& values) const;

 private:
  GeneratorContext ctx_;
  std::vector<ParamElement> images_;
  std::set<Indeterminate> indeterminates_;
};

/// Name of the generic linear coefficient of x_j in the image of x_i.
std::string generic_coefficient_name(std::size_t j, std::size_t i);

/// Homomorphic extension of `alpha`, truncating above degree `bound`.
Element substitute(const Endomorphism& alpha, const Element& e, unsigned bound);
ParamElement symbolic_substitute(const SymbolicEndomorphism& alpha, const Element& e, unsigned bound);
ParamElement symbolic_substitute(const SymbolicEndomorphism& alpha, const ParamElement& e, unsigned bound);

/// Evaluates a monomial under a generator assignment with a caller-supplied
/// product; the leaf images and products are memoized per call.
template <class T, class Mul>
T evaluate_monomial(const Monomial& m, const std::vector<T>& leaf_images, Mul&& mul,
                    std::map<Monomial, T>& memo) {
  if (m.is_generator()) return leaf_images.at(m.generator_index());
  if (auto it = memo.find(m); it != memo.end()) return it->second;
  T v = mul(evaluate_monomial(m.left(), leaf_images, mul, memo), evaluate_monomial(m.right(), leaf_images, mul, memo));
  memo.emplace(m, v);
  return v;
}

std::string coefficient_string(const Scalar& c, bool& negative);
std::string coefficient_string(const ParamPoly& c, bool& negative);

template <class C>
std::string Combination<C>::to_string() const {
  if (terms_.empty()) return "0";
  static const GeneratorSet fallback;
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool negative = false;
    std::string coeff = coefficient_string(c, negative);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (coeff != "1") out += coeff + " * ";
    out += m.to_string(ctx_ ? *ctx_ : fallback);
  }
  return out;
}

}  // namespace vf
