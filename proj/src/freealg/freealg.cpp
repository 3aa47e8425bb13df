#include "vf/freealg.hpp"

#include <cctype>
#include <mutex>

namespace vf {

GeneratorSet::GeneratorSet(std::vector<std::string> names) : names_(std::move(names)) {
  auto sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("GeneratorSet: generator names must be distinct");
  if (names_.size() > 200) throw std::invalid_argument("GeneratorSet: too many generators");
}

std::shared_ptr<const GeneratorSet> GeneratorSet::standard(std::size_t n, std::string_view prefix) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return std::make_shared<const GeneratorSet>(std::move(names));
}

std::optional<std::size_t> GeneratorSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

// ---- Monomial ------------------------------------------------------------

Monomial Monomial::generator(std::size_t index) {
  if (index > 200) throw std::out_of_range("generator index too large");
  return Monomial(std::string(1, static_cast<char>(index)));
}

Monomial Monomial::product(const Monomial& a, const Monomial& b) {
  const unsigned da = a.degree(), db = b.degree(), d = da + db;
  if (d > 120) throw std::length_error("monomial degree too large");
  const unsigned imbalance = da > db ? da - db : db - da;
  const char key = static_cast<char>(2 * (d - imbalance) + (da > db ? 1 : 0));
  const std::string& x = a.data_;
  const std::string& y = b.data_;
  std::string out;
  out.reserve(3 * d - 2);
  out += key;
  out.append(x, 0, da - 1);
  out.append(y, 0, db - 1);
  out.append(x, da - 1, da);
  out.append(y, db - 1, db);
  out += static_cast<char>(da);
  out.append(x, 2 * da - 1, da - 1);
  out.append(y, 2 * db - 1, db - 1);
  return Monomial(std::move(out));
}

Monomial operator*(const Monomial& a, const Monomial& b) { return Monomial::product(a, b); }

Monomial Monomial::left() const {
  const unsigned d = degree();
  if (d == 1) throw std::logic_error("generator has no subtrees");
  const unsigned l = static_cast<unsigned char>(data_[2 * d - 1]);
  std::string out;
  out.append(data_, 1, l - 1);
  out.append(data_, d - 1, l);
  out.append(data_, 2 * d, l - 1);
  return Monomial(std::move(out));
}

Monomial Monomial::right() const {
  const unsigned d = degree();
  if (d == 1) throw std::logic_error("generator has no subtrees");
  const unsigned l = static_cast<unsigned char>(data_[2 * d - 1]);
  const unsigned r = d - l;
  std::string out;
  out.append(data_, l, r - 1);
  out.append(data_, d - 1 + l, r);
  out.append(data_, 2 * d - 1 + l, r - 1);
  return Monomial(std::move(out));
}

std::vector<unsigned> Monomial::multidegree(std::size_t generators) const {
  std::vector<unsigned> md(generators, 0);
  const unsigned d = degree();
  for (unsigned i = 0; i < d; ++i) {
    const std::size_t g = static_cast<unsigned char>(data_[d - 1 + i]);
    if (g >= md.size()) md.resize(g + 1, 0);
    ++md[g];
  }
  return md;
}

std::vector<std::size_t> Monomial::leaves() const {
  const unsigned d = degree();
  std::vector<std::size_t> out(d);
  for (unsigned i = 0; i < d; ++i) out[i] = static_cast<unsigned char>(data_[d - 1 + i]);
  return out;
}

std::size_t Monomial::generator_bound() const {
  std::size_t b = 0;
  for (auto g : leaves()) b = std::max(b, g + 1);
  return b;
}

std::string Monomial::to_string(const GeneratorSet& gens) const {
  if (is_generator()) {
    const std::size_t i = generator_index();
    return i < gens.size() ? gens.name(i) : "x" + std::to_string(i + 1);
  }
  return "(" + left().to_string(gens) + " " + right().to_string(gens) + ")";
}

namespace {

class MonomialParser {
 public:
  MonomialParser(std::string_view s, const GeneratorSet& gens, std::size_t pos = 0)
      : s_(s), gens_(gens), pos_(pos) {}

  std::optional<Monomial> parse() {
    skip();
    if (pos_ >= s_.size()) return std::nullopt;
    if (s_[pos_] == '(') {
      ++pos_;
      auto a = parse();
      if (!a) return std::nullopt;
      auto b = parse();
      if (!b) return std::nullopt;
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') return std::nullopt;
      ++pos_;
      return *a * *b;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) return std::nullopt;
    auto idx = gens_.index_of(s_.substr(start, pos_ - start));
    if (!idx) return std::nullopt;
    return Monomial::generator(*idx);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view s_;
  const GeneratorSet& gens_;
  std::size_t pos_;
};

}  // namespace

Monomial parse_monomial(std::string_view text, const GeneratorSet& gens) {
  MonomialParser p(text, gens);
  auto m = p.parse();
  p.skip();
  if (!m || p.pos() != text.size()) throw ParseError("cannot parse monomial '" + std::string(text) + "'");
  return *m;
}

Monomial Monomial::with_leaves(const std::vector<std::size_t>& word) const {
  const unsigned d = degree();
  if (word.size() != d) throw std::invalid_argument("with_leaves: word length differs from degree");
  std::string data = data_;
  for (unsigned i = 0; i < d; ++i) data[d - 1 + i] = static_cast<char>(word[i]);
  return Monomial(std::move(data));
}

namespace {

// Tree shapes of a degree as monomials in the single letter 0, ascending.
std::vector<Monomial> shapes(unsigned degree) {
  static std::mutex mu;
  static std::map<unsigned, std::vector<Monomial>> cache;
  std::lock_guard lock(mu);
  if (cache.empty()) cache.emplace(1u, std::vector<Monomial>{Monomial::generator(0)});
  for (unsigned d = 2; d <= degree; ++d) {
    if (cache.count(d)) continue;
    std::vector<Monomial> out;
    for (unsigned l = 1; l < d; ++l)
      for (const auto& a : cache.at(l))
        for (const auto& b : cache.at(d - l)) out.push_back(a * b);
    std::sort(out.begin(), out.end());
    cache.emplace(d, std::move(out));
  }
  return cache.at(degree);
}

}  // namespace

std::vector<Monomial> enumerate_monomials(std::size_t generators, unsigned degree) {
  if (degree == 0) throw std::invalid_argument("enumerate_monomials: degree must be positive");
  std::vector<Monomial> out;
  if (generators == 0) return out;
  const auto sh = shapes(degree);
  std::vector<std::size_t> word(degree, 0);
  for (;;) {
    for (const auto& s : sh) out.push_back(s.with_leaves(word));
    std::size_t i = degree;
    while (i > 0 && word[i - 1] + 1 == generators) word[--i] = 0;
    if (i == 0) break;
    ++word[i - 1];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Monomial> enumerate_monomials(const std::vector<unsigned>& multidegree) {
  std::vector<std::size_t> word;
  for (std::size_t g = 0; g < multidegree.size(); ++g) word.insert(word.end(), multidegree[g], g);
  if (word.empty()) throw std::invalid_argument("enumerate_monomials: empty multidegree");
  const auto sh = shapes(static_cast<unsigned>(word.size()));
  std::vector<Monomial> out;
  do {
    for (const auto& s : sh) out.push_back(s.with_leaves(word));
  } while (std::next_permutation(word.begin(), word.end()));
  std::sort(out.begin(), out.end());
  return out;
}

// ---- coefficients in strings ----------------------------------------------

namespace {

bool single_integer_term(const Poly& p) {
  return p.terms().size() == 1 && p.leading().coeff.get_den() == 1;
}

}  // namespace

std::string coefficient_string(const Scalar& c, bool& negative) {
  negative = false;
  if (c.is_rational()) {
    mpq_class v = c.rational_value();
    negative = sgn(v) < 0;
    return mpq_class(abs(v)).get_str();
  }
  if (c.denominator().is_one() && single_integer_term(c.numerator())) {
    negative = sgn(c.numerator().leading().coeff) < 0;
    return (negative ? -c : c).to_string();
  }
  return "(" + c.to_string() + ")";
}

std::string coefficient_string(const ParamPoly& c, bool& negative) {
  negative = false;
  if (c.terms().size() == 1) {
    const auto& [m, s] = c.leading();
    bool neg = false;
    std::string inner = coefficient_string(s, neg);
    if (inner.front() != '(') {
      negative = neg;
      if (m.is_one()) return inner;
      return inner == "1" ? m.to_string() : inner + "*" + m.to_string();
    }
  }
  return "(" + c.to_string() + ")";
}

// ---- element parsing -------------------------------------------------------

namespace {

class ElementParser {
 public:
  ElementParser(std::string_view s, const GeneratorContext& ctx, const FieldSpec& field)
      : s_(s), ctx_(ctx), field_(field) {}

  Element run() {
    Element total(ctx_);
    skip();
    bool negative = false;
    if (peek('-')) {
      ++pos_;
      negative = true;
    } else if (peek('+')) {
      ++pos_;
    }
    for (;;) {
      Element t = term();
      total += negative ? -t : t;
      skip();
      if (pos_ >= s_.size()) break;
      if (peek('+')) negative = false;
      else if (peek('-')) negative = true;
      else fail("expected '+' or '-'");
      ++pos_;
    }
    return total;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("cannot parse element '" + std::string(s_) + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Element term() {
    Scalar coeff(1);
    std::optional<Monomial> mono;
    bool divide = false;
    for (;;) {
      skip();
      if (peek('-')) {  // unary minus inside a product, e.g. `2 * -x1`
        ++pos_;
        coeff = -coeff;
        continue;
      }
      std::optional<Monomial> m;
      Scalar s = factor(m);
      if (m) {
        if (divide) fail("cannot divide by a monomial");
        if (mono) fail("use parentheses to multiply monomials");
        mono = m;
      } else if (divide) {
        coeff /= s;
      } else {
        coeff *= s;
      }
      if (peek('*')) {
        ++pos_;
        divide = false;
      } else if (peek('/')) {
        ++pos_;
        divide = true;
      } else {
        break;
      }
    }
    if (!mono) fail("term without a monomial");
    return Element(ctx_, *mono, coeff);
  }

  Scalar factor(std::optional<Monomial>& mono) {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      MonomialParser mp(s_, *ctx_, pos_);
      if (auto m = mp.parse()) {
        pos_ = mp.pos();
        mono = m;
        return Scalar(1);
      }
      std::size_t depth = 0, end = pos_;
      for (; end < s_.size(); ++end) {
        if (s_[end] == '(') ++depth;
        else if (s_[end] == ')' && --depth == 0) break;
      }
      if (end >= s_.size()) fail("unbalanced parentheses");
      Scalar v = Scalar::parse(s_.substr(pos_ + 1, end - pos_ - 1), field_);
      pos_ = end + 1;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Scalar(mpq_class(mpz_class(std::string(s_.substr(start, pos_ - start)))));
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("unexpected '" + std::string(1, c) + "'");
    std::string_view name = s_.substr(start, pos_ - start);
    if (auto g = ctx_->index_of(name)) {
      mono = Monomial::generator(*g);
      return Scalar(1);
    }
    if (auto t = field_.index_of(name)) {
      Scalar v = Scalar::transcendental(*t);
      if (peek('^')) {
        ++pos_;
        skip();
        std::size_t e0 = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (e0 == pos_) fail("expected exponent");
        v = v.pow(std::stoi(std::string(s_.substr(e0, pos_ - e0))));
      }
      return v;
    }
    fail("unknown symbol '" + std::string(name) + "'");
  }

  std::string_view s_;
  const GeneratorContext& ctx_;
  const FieldSpec& field_;
  std::size_t pos_ = 0;
};

}  // namespace

Element parse_element(std::string_view text, const GeneratorContext& ctx, const FieldSpec& field) {
  if (!ctx) throw std::invalid_argument("parse_element: missing generator context");
  std::string_view trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
  if (trimmed == "0") return Element(ctx);
  return ElementParser(trimmed, ctx, field).run();
}

ParamElement lift(const Element& e) {
  return e.map_coefficients([](const Scalar& c) { return ParamPoly(c); });
}

// ---- endomorphisms ---------------------------------------------------------

Endomorphism::Endomorphism(GeneratorContext ctx) : ctx_(std::move(ctx)) {
  for (std::size_t i = 0; i < ctx_->size(); ++i) images_.push_back(Element::generator(ctx_, i));
}

Endomorphism::Endomorphism(GeneratorContext ctx, std::vector<Element> images)
    : ctx_(std::move(ctx)), images_(std::move(images)) {
  if (images_.size() != ctx_->size()) throw std::invalid_argument("Endomorphism: one image per generator required");
  for (const auto& e : images_)
    if (e.context() && !(*e.context() == *ctx_)) throw ContextMismatch();
}

std::string Endomorphism::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) s += ", ";
    s += ctx_->name(i) + " -> " + images_[i].to_string();
  }
  return s + "}";
}

std::string generic_coefficient_name(std::size_t j, std::size_t i) {
  return "a" + std::to_string(j + 1) + std::to_string(i + 1);
}

SymbolicEndomorphism::SymbolicEndomorphism(GeneratorContext ctx, std::vector<ParamElement> images)
    : ctx_(std::move(ctx)), images_(std::move(images)) {
  if (images_.size() != ctx_->size())
    throw std::invalid_argument("SymbolicEndomorphism: one image per generator required");
  for (const auto& e : images_)
    for (const auto& [m, c] : e.terms()) {
      auto ind = c.indeterminates();
      indeterminates_.insert(ind.begin(), ind.end());
    }
}

SymbolicEndomorphism SymbolicEndomorphism::generic_linear(GeneratorContext ctx) {
  if (ctx->size() > 9) throw std::invalid_argument("generic_linear: at most 9 generators");
  std::vector<ParamElement> images;
  for (std::size_t i = 0; i < ctx->size(); ++i) {
    ParamElement img(ctx);
    for (std::size_t j = 0; j < ctx->size(); ++j)
      img.add_term(Monomial::generator(j), ParamPoly::variable(generic_coefficient_name(j, i)));
    images.push_back(std::move(img));
  }
  return SymbolicEndomorphism(ctx, std::move(images));
}

Endomorphism SymbolicEndomorphism::specialize(const std::map<Indeterminate, Scalar>& values) const {
  std::vector<Element> images;
  for (const auto& e : images_)
    images.push_back(e.map_coefficients([&](const ParamPoly& p) { return p.evaluate(values); }));
  return Endomorphism(ctx_, std::move(images));
}

namespace {

template <class C, class Coef>
Combination<C> substitute_impl(const GeneratorContext& ctx, const std::vector<Combination<C>>& images,
                               const Combination<Coef>& e, unsigned bound) {
  std::vector<Combination<C>> leaves;
  for (const auto& img : images) leaves.push_back(img.truncated(bound));
  std::map<Monomial, Combination<C>> memo;
  auto mul = [bound](const Combination<C>& a, const Combination<C>& b) { return multiply(a, b, bound); };
  Combination<C> out(ctx);
  for (const auto& [m, c] : e.terms()) {
    if (m.degree() > bound) break;
    if (m.generator_bound() > leaves.size()) throw ContextMismatch();
    out += evaluate_monomial(m, leaves, mul, memo).scaled(c);
  }
  return out;
}

void check_context(const GeneratorContext& a, const GeneratorContext& b) {
  if (b && !(a == b || *a == *b)) throw ContextMismatch();
}

}  // namespace

Element substitute(const Endomorphism& alpha, const Element& e, unsigned bound) {
  check_context(alpha.context(), e.context());
  return substitute_impl(alpha.context(), alpha.images(), e, bound);
}

ParamElement symbolic_substitute(const SymbolicEndomorphism& alpha, const Element& e, unsigned bound) {
  check_context(alpha.context(), e.context());
  return substitute_impl(alpha.context(), alpha.images(), e, bound);
}

ParamElement symbolic_substitute(const SymbolicEndomorphism& alpha, const ParamElement& e, unsigned bound) {
  check_context(alpha.context(), e.context());
  return substitute_impl(alpha.context(), alpha.images(), e, bound);
}

}  // namespace vf
