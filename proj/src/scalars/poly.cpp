#include "vf/poly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace vf {

namespace {

unsigned exp_total(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

void trim(Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

Exponents exp_add(const Exponents& a, const Exponents& b) {
  Exponents r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

bool exp_divides(const Exponents& d, const Exponents& m) {
  if (d.size() > m.size()) return false;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > m[i]) return false;
  return true;
}

Exponents exp_sub(const Exponents& m, const Exponents& d) {
  Exponents r = m;
  for (std::size_t i = 0; i < d.size(); ++i) r[i] -= d[i];
  trim(r);
  return r;
}

struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    return compare_grlex(a, b) > 0;
  }
};

// Coefficient of var^k viewed as a polynomial in the remaining variables.
std::map<unsigned, Poly> split_in(const Poly& p, std::size_t var) {
  std::map<unsigned, std::vector<Poly::Term>> parts;
  for (const auto& t : p.terms()) {
    unsigned k = var < t.exp.size() ? t.exp[var] : 0;
    Exponents e = t.exp;
    if (var < e.size()) e[var] = 0;
    trim(e);
    parts[k].push_back({std::move(e), t.coeff});
  }
  std::map<unsigned, Poly> out;
  for (auto& [k, terms] : parts) out.emplace(k, Poly::from_terms(std::move(terms)));
  return out;
}

Poly content_in(const Poly& p, std::size_t var) {
  Poly g;
  for (const auto& [k, c] : split_in(p, var)) {
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

// Scales to coprime integer coefficients; keeps coefficient growth in check.
Poly numeric_primitive(const Poly& p) {
  if (p.is_zero()) return p;
  Poly q = p.scaled(mpq_class(coefficient_denominator_lcm(p)));
  return q.scaled(mpq_class(1) / mpq_class(integer_content(q)));
}

Poly primitive_in(const Poly& p, std::size_t var) {
  Poly c = content_in(p, var);
  auto q = exact_quotient(p, c);
  return numeric_primitive(*q);
}

Poly pseudo_remainder(Poly a, const Poly& b, std::size_t var) {
  const unsigned db = b.degree_in(var);
  const Poly lcb = split_in(b, var).rbegin()->second;
  while (!a.is_zero()) {
    const unsigned da = a.degree_in(var);
    if (da < db) break;
    const Poly lca = split_in(a, var).rbegin()->second;
    a = numeric_primitive(lcb * a - lca * Poly::variable(var, da - db) * b);
  }
  return a;
}

}  // namespace

int compare_grlex(const Exponents& a, const Exponents& b) {
  const unsigned da = exp_total(a), db = exp_total(b);
  if (da != db) return da < db ? -1 : 1;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned x = i < a.size() ? a[i] : 0;
    const unsigned y = i < b.size() ? b[i] : 0;
    if (x != y) return x < y ? -1 : 1;
  }
  return 0;
}

Poly::Poly(const mpq_class& c) {
  if (sgn(c) != 0) terms_.push_back({{}, c});
}

Poly Poly::variable(std::size_t index, unsigned power) {
  Poly p;
  Exponents e(index + 1, 0);
  e[index] = static_cast<std::uint16_t>(power);
  trim(e);
  p.terms_.push_back({std::move(e), mpq_class(1)});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  Poly p;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Poly::normalize() {
  std::map<Exponents, mpq_class, GrlexGreater> acc;
  for (auto& t : terms_) {
    trim(t.exp);
    acc[t.exp] += t.coeff;
  }
  terms_.clear();
  for (auto& [e, c] : acc)
    if (sgn(c) != 0) terms_.push_back({e, c});
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exp.empty());
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].exp.empty() && terms_[0].coeff == 1;
}

mpq_class Poly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!terms_.back().exp.empty()) return 0;
  return terms_.back().coeff;
}

unsigned Poly::total_degree() const {
  return terms_.empty() ? 0 : exp_total(terms_.front().exp);
}

std::size_t Poly::variable_bound() const {
  std::size_t n = 0;
  for (const auto& t : terms_) n = std::max(n, t.exp.size());
  return n;
}

unsigned Poly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_)
    if (var < t.exp.size()) d = std::max<unsigned>(d, t.exp[var]);
  return d;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c;
    if (i == terms_.size()) c = -1;
    else if (j == o.terms_.size()) c = 1;
    else c = compare_grlex(terms_[i].exp, o.terms_[j].exp);
    if (c > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      mpq_class s = terms_[i].coeff + o.terms_[j].coeff;
      if (sgn(s) != 0) out.push_back({std::move(terms_[i].exp), s});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::map<Exponents, mpq_class, GrlexGreater> acc;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) acc[exp_add(x.exp, y.exp)] += x.coeff * y.coeff;
  Poly r;
  for (auto& [e, c] : acc)
    if (sgn(c) != 0) r.terms_.push_back({e, c});
  return r;
}

Poly Poly::scaled(const mpq_class& c) const {
  if (sgn(c) == 0) return Poly();
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly r(1), base = *this;
  while (e) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

Poly Poly::permuted(std::span<const std::size_t> perm) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e;
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (t.exp[i] == 0) continue;
      const std::size_t j = i < perm.size() ? perm[i] : i;
      if (e.size() <= j) e.resize(j + 1, 0);
      e[j] += t.exp[i];
    }
    out.push_back({std::move(e), t.coeff});
  }
  return from_terms(std::move(out));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(1 / terms_.front().coeff);
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    mpq_class c = t.coeff;
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    c = abs(c);
    first = false;
    bool wrote = false;
    if (t.exp.empty() || c != 1) {
      os << c.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (t.exp[i] == 0) continue;
      if (wrote) os << "*";
      os << "t" << (i + 1);
      if (t.exp[i] > 1) os << "^" << t.exp[i];
      wrote = true;
    }
  }
  return os.str();
}

std::optional<Poly> exact_quotient(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("exact_quotient: division by zero polynomial");
  if (b.is_constant()) return a.scaled(1 / b.constant_value());
  Poly rem = a;
  std::vector<Poly::Term> q;
  const auto& lb = b.leading();
  while (!rem.is_zero()) {
    const auto& lr = rem.leading();
    if (!exp_divides(lb.exp, lr.exp)) return std::nullopt;
    Poly::Term t{exp_sub(lr.exp, lb.exp), lr.coeff / lb.coeff};
    rem -= Poly::from_terms({t}) * b;
    q.push_back(std::move(t));
  }
  return Poly::from_terms(std::move(q));
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  const std::size_t var = std::max(a.variable_bound(), b.variable_bound()) - 1;
  const unsigned da = a.degree_in(var), db = b.degree_in(var);
  if (da == 0) return gcd(a, content_in(b, var));
  if (db == 0) return gcd(content_in(a, var), b);

  const Poly ca = content_in(a, var), cb = content_in(b, var);
  Poly pa = numeric_primitive(*exact_quotient(a, ca)), pb = numeric_primitive(*exact_quotient(b, cb));
  const Poly c = gcd(ca, cb);
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  for (;;) {
    Poly r = pseudo_remainder(pa, pb, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) {
      pb = Poly(1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_in(r, var);
  }
  if (!pb.is_constant()) pb = primitive_in(pb, var);
  else pb = Poly(1);
  return (c * pb).monic();
}

mpz_class coefficient_denominator_lcm(const Poly& p) {
  mpz_class l = 1;
  for (const auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  return l;
}

mpz_class integer_content(const Poly& p) {
  mpz_class g = 0;
  for (const auto& t : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
  return g;
}

}  // namespace vf
