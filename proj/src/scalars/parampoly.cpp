#include "vf/parampoly.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace vf {

// ---- ParamMonomial -------------------------------------------------------

ParamMonomial ParamMonomial::variable(const Indeterminate& name, unsigned power) {
  ParamMonomial m;
  if (power) m.factors_.emplace_back(name, power);
  return m;
}

unsigned ParamMonomial::degree() const {
  unsigned d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

unsigned ParamMonomial::exponent_of(std::string_view name) const {
  for (const auto& f : factors_)
    if (f.first == name) return f.second;
  return 0;
}

bool ParamMonomial::divides(const ParamMonomial& other) const {
  for (const auto& f : factors_)
    if (other.exponent_of(f.first) < f.second) return false;
  return true;
}

ParamMonomial ParamMonomial::quotient(const ParamMonomial& d) const {
  ParamMonomial r;
  for (const auto& f : factors_) {
    const unsigned e = f.second - d.exponent_of(f.first);
    if (e) r.factors_.emplace_back(f.first, e);
  }
  return r;
}

ParamMonomial ParamMonomial::without(std::string_view name) const {
  ParamMonomial r;
  for (const auto& f : factors_)
    if (f.first != name) r.factors_.push_back(f);
  return r;
}

ParamMonomial operator*(const ParamMonomial& a, const ParamMonomial& b) {
  ParamMonomial r;
  auto i = a.factors_.begin(), j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
      r.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->first < i->first) {
      r.factors_.push_back(*j++);
    } else {
      r.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return r;
}

std::string ParamMonomial::to_string() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [n, e] : factors_) {
    if (!s.empty()) s += "*";
    s += n;
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

int compare_grlex(const ParamMonomial& a, const ParamMonomial& b) {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  auto i = a.factors().begin(), j = b.factors().begin();
  while (i != a.factors().end() || j != b.factors().end()) {
    if (j == b.factors().end()) return 1;
    if (i == a.factors().end()) return -1;
    if (i->first != j->first) return i->first < j->first ? 1 : -1;
    if (i->second != j->second) return i->second < j->second ? -1 : 1;
    ++i;
    ++j;
  }
  return 0;
}

// ---- ParamPoly -----------------------------------------------------------

ParamPoly::ParamPoly(const Scalar& c) {
  if (!c.is_zero()) terms_.emplace(ParamMonomial(), c);
}

ParamPoly ParamPoly::variable(const Indeterminate& name) {
  return term(ParamMonomial::variable(name), Scalar(1));
}

ParamPoly ParamPoly::term(const ParamMonomial& m, const Scalar& c) {
  ParamPoly p;
  if (!c.is_zero()) p.terms_.emplace(m, c);
  return p;
}

ParamPoly ParamPoly::parse(std::string_view text, const FieldSpec& field) {
  return parse_expression(text, field, true);
}

bool ParamPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Scalar ParamPoly::constant_value() const {
  auto it = terms_.find(ParamMonomial());
  return it == terms_.end() ? Scalar() : it->second;
}

unsigned ParamPoly::degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

std::set<Indeterminate> ParamPoly::indeterminates() const {
  std::set<Indeterminate> out;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) out.insert(f.first);
  return out;
}

void ParamPoly::add_term(const ParamMonomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ParamPoly ParamPoly::operator-() const {
  ParamPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
  ParamPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

ParamPoly& ParamPoly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (c.is_one()) return *this;
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

ParamPoly ParamPoly::pow(unsigned e) const {
  ParamPoly r(1), base = *this;
  while (e) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return r;
}

ParamPoly ParamPoly::monic() const {
  if (is_zero()) return *this;
  return *this * leading().second.inverse();
}

ParamPoly ParamPoly::substitute(const std::map<Indeterminate, ParamPoly>& subst) const {
  if (subst.empty()) return *this;
  ParamPoly out;
  for (const auto& [m, c] : terms_) {
    ParamMonomial kept;
    ParamPoly factor(c);
    for (const auto& [name, e] : m.factors()) {
      auto it = subst.find(name);
      if (it == subst.end()) {
        kept = kept * ParamMonomial::variable(name, e);
      } else {
        factor = factor * it->second.pow(e);
        if (factor.is_zero()) break;
      }
    }
    if (factor.is_zero()) continue;
    out += factor * term(kept, Scalar(1));
  }
  return out;
}

Scalar ParamPoly::evaluate(const std::map<Indeterminate, Scalar>& values) const {
  Scalar total;
  for (const auto& [m, c] : terms_) {
    Scalar v = c;
    for (const auto& [name, e] : m.factors()) {
      auto it = values.find(name);
      if (it == values.end()) throw std::invalid_argument("evaluate: no value for " + name);
      v *= it->second.pow(static_cast<int>(e));
    }
    total += v;
  }
  return total;
}

ParamPoly ParamPoly::map_coefficients(const FieldAutomorphism& phi) const {
  if (phi.is_identity()) return *this;
  ParamPoly r;
  for (const auto& [m, c] : terms_) r.add_term(m, apply_automorphism(phi, c));
  return r;
}

namespace {

// A coefficient prints inline (with its sign pulled out) when it is a single
// term over 1; anything else is parenthesized.
bool simple_coefficient(const Scalar& c) {
  return c.denominator().is_one() && c.numerator().terms().size() == 1 &&
         c.numerator().leading().coeff.get_den() == 1;
}

}  // namespace

std::string ParamPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string coeff;
    bool negative = false;
    if (simple_coefficient(c)) {
      negative = sgn(c.numerator().leading().coeff) < 0;
      coeff = (negative ? -c : c).to_string();
    } else {
      coeff = "(" + c.to_string() + ")";
    }
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      os << coeff;
    } else {
      if (coeff != "1") os << coeff << "*";
      os << m.to_string();
    }
  }
  return os.str();
}

std::pair<ParamPoly, ParamPoly> divide(const ParamPoly& f, const ParamPoly& g) {
  if (g.is_zero()) throw std::domain_error("divide: zero divisor");
  const auto& [lm, lc] = g.leading();
  const Scalar lc_inv = lc.inverse();
  ParamPoly q, r, rest = f;
  while (!rest.is_zero()) {
    const auto [m, c] = rest.leading();
    if (lm.divides(m)) {
      ParamPoly t = ParamPoly::term(m.quotient(lm), c * lc_inv);
      q += t;
      rest -= t * g;
    } else {
      r.add_term(m, c);
      rest.add_term(m, -c);
    }
  }
  return {q, r};
}

namespace {

std::map<Indeterminate, ParamPoly> resolve_substitutions(const std::map<Indeterminate, ParamPoly>& subst) {
  // Depth-first resolution; a back edge means a cycle.
  std::map<Indeterminate, ParamPoly> resolved;
  std::set<Indeterminate> active;
  std::function<const ParamPoly&(const Indeterminate&)> visit = [&](const Indeterminate& name) -> const ParamPoly& {
    if (auto it = resolved.find(name); it != resolved.end()) return it->second;
    if (active.count(name)) throw std::invalid_argument("cyclic substitution through " + name);
    active.insert(name);
    const ParamPoly& raw = subst.at(name);
    std::map<Indeterminate, ParamPoly> inner;
    for (const auto& v : raw.indeterminates())
      if (subst.count(v)) inner.emplace(v, visit(v));
    active.erase(name);
    return resolved.emplace(name, raw.substitute(inner)).first->second;
  };
  for (const auto& [name, value] : subst) visit(name);
  return resolved;
}

}  // namespace

ParamPoly parampoly_reduce(const ParamPoly& p, const std::map<Indeterminate, ParamPoly>& substitutions,
                           const std::vector<ParamPoly>& vanishing) {
  ParamPoly cur = p.substitute(resolve_substitutions(substitutions));
  std::vector<ParamPoly> divisors;
  for (const auto& v : vanishing)
    if (!v.is_zero()) divisors.push_back(v);
  bool changed = true;
  while (changed && !cur.is_zero()) {
    changed = false;
    for (const auto& d : divisors) {
      auto [q, r] = divide(cur, d);
      if (!q.is_zero()) {
        cur = std::move(r);
        changed = true;
      }
    }
  }
  return cur;
}

Factorization factor_with_unit(const ParamPoly& p, const std::vector<ParamPoly>& hints) {
  if (p.is_zero()) throw std::invalid_argument("factor_for_branching: zero polynomial");
  Factorization out;
  out.unit = p.leading().second;
  ParamPoly rest = p.monic();

  // Monomial content: minimum exponent of each indeterminate across terms.
  std::map<Indeterminate, unsigned> content;
  bool first = true;
  for (const auto& [m, c] : rest.terms()) {
    if (first) {
      for (const auto& [n, e] : m.factors()) content[n] = e;
      first = false;
    } else {
      for (auto& [n, e] : content) e = std::min(e, m.exponent_of(n));
    }
  }
  ParamMonomial content_mono;
  for (const auto& [n, e] : content) {
    for (unsigned i = 0; i < e; ++i) out.factors.push_back(ParamPoly::variable(n));
    content_mono = content_mono * ParamMonomial::variable(n, e);
  }
  if (!content_mono.is_one()) {
    ParamPoly q;
    for (const auto& [m, c] : rest.terms()) q.add_term(m.quotient(content_mono), c);
    rest = std::move(q);
  }

  for (const auto& h : hints) {
    if (h.is_zero() || h.is_constant()) continue;
    const ParamPoly hn = h.monic();
    while (!rest.is_constant()) {
      auto [q, r] = divide(rest, hn);
      if (!r.is_zero()) break;
      out.factors.push_back(hn);
      rest = std::move(q);
    }
  }
  if (!rest.is_constant()) {
    // rest is monic already up to the hint quotients, which are monic too
    out.unit *= rest.leading().second;
    out.factors.push_back(rest.monic());
  } else {
    out.unit *= rest.constant_value();
  }
  return out;
}

std::vector<ParamPoly> factor_for_branching(const ParamPoly& p, const std::vector<ParamPoly>& hints) {
  return factor_with_unit(p, hints).factors;
}

// ---- expression parser ---------------------------------------------------

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const FieldSpec& field, bool allow_indet)
      : s_(text), field_(field), allow_indet_(allow_indet) {}

  ParamPoly run() {
    ParamPoly v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("cannot parse '" + std::string(s_) + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ParamPoly expr() {
    ParamPoly v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }

  ParamPoly term() {
    ParamPoly v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        ParamPoly d = unary();
        if (!d.is_constant()) fail("division by a non-scalar");
        if (d.is_zero()) throw ZeroInversion();
        v *= d.constant_value().inverse();
      } else {
        return v;
      }
    }
  }

  ParamPoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    ParamPoly base = primary();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }

  ParamPoly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ParamPoly v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return ParamPoly(Scalar(mpq_class(mpz_class(std::string(s_.substr(start, pos_ - start))))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      if (auto idx = field_.index_of(name)) return ParamPoly(Scalar::transcendental(*idx));
      if (!allow_indet_) fail("unknown symbol '" + std::string(name) + "'");
      return ParamPoly::variable(std::string(name));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const FieldSpec& field_;
  bool allow_indet_;
  std::size_t pos_ = 0;
};

}  // namespace

ParamPoly parse_expression(std::string_view text, const FieldSpec& field, bool allow_indeterminates) {
  return ExprParser(text, field, allow_indeterminates).run();
}

Scalar Scalar::parse(std::string_view text, const FieldSpec& field) {
  return parse_expression(text, field, false).constant_value();
}

}  // namespace vf
