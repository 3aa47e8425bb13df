#include "vf/variety.hpp"

#include <future>
#include <mutex>
#include <numeric>
#include <sstream>

namespace vf {

const GeneratorContext& identity_letters() {
  static const GeneratorContext letters = GeneratorSet::standard(9, "y");
  return letters;
}

IdentityScheme IdentityScheme::parse(std::string_view text) {
  IdentityScheme s;
  s.element = parse_element(text, identity_letters());
  if (s.element.empty()) throw ParseError("identity '" + std::string(text) + "' is zero");
  for (const auto& [m, c] : s.element.terms()) {
    if (!c.is_rational()) throw ParseError("identity coefficients must be rational: " + std::string(text));
    s.arity = std::max(s.arity, m.generator_bound());
  }
  return s;
}

bool IdentityScheme::homogeneous() const { return element.multidegrees().size() == 1; }

std::size_t VarietyPresentation::max_arity() const {
  std::size_t a = 0;
  for (const auto& s : identities) a = std::max(a, s.arity);
  return a;
}

unsigned VarietyPresentation::max_degree() const {
  unsigned d = 0;
  for (const auto& s : identities) d = std::max(d, s.degree());
  return d;
}

std::string VarietyPresentation::fingerprint() const {
  std::string out = name;
  for (const auto& s : identities) out += ";" + s.to_string();
  return out;
}

std::vector<std::string> builtin_variety_names() {
  return {"all", "commutative", "anticommutative", "lie", "jordan", "alternative", "power_associative"};
}

VarietyPresentation builtin_variety(std::string_view name, const std::vector<std::string>& extra) {
  VarietyPresentation v;
  v.name = std::string(name);
  std::vector<std::string> ids;
  const std::string comm = "(y1 y2) - (y2 y1)";
  const std::string anti = "(y1 y2) + (y2 y1)";
  if (name == "all") {
  } else if (name == "commutative") {
    ids = {comm};
    v.commutative = true;
  } else if (name == "anticommutative") {
    ids = {anti};
    v.anticommutative = true;
  } else if (name == "lie") {
    ids = {anti, "((y1 y2) y3) + ((y2 y3) y1) + ((y3 y1) y2)"};
    v.anticommutative = true;
  } else if (name == "jordan") {
    ids = {comm, "(((y1 y1) y2) y1) - ((y1 y1) (y2 y1))"};
    v.commutative = true;
  } else if (name == "alternative") {
    ids = {"((y1 y1) y2) - (y1 (y1 y2))", "(y2 (y1 y1)) - ((y2 y1) y1)"};
  } else if (name == "power_associative") {
    ids = {"(y1 (y1 y1)) - ((y1 y1) y1)", "((y1 y1) (y1 y1)) - ((y1 (y1 y1)) y1)"};
  } else {
    throw ParseError("unknown variety '" + std::string(name) + "'");
  }
  ids.insert(ids.end(), extra.begin(), extra.end());
  for (const auto& s : ids) v.identities.push_back(IdentityScheme::parse(s));
  return v;
}

VarietyPresentation custom_variety(std::string name, const std::vector<std::string>& identities) {
  VarietyPresentation v;
  v.name = std::move(name);
  for (const auto& s : identities) v.identities.push_back(IdentityScheme::parse(s));
  const AlgebraPtr A = build_truncated(v, 2, 2);
  const Element x1x2 = A->multiply(A->generator(0), A->generator(1));
  const Element x2x1 = A->multiply(A->generator(1), A->generator(0));
  v.commutative = A->normal_form(x1x2 - x2x1).empty();
  v.anticommutative = A->normal_form(x1x2 + x2x1).empty();
  return v;
}

std::vector<std::vector<unsigned>> multidegrees_of_degree(std::size_t n, unsigned d) {
  std::vector<std::vector<unsigned>> out;
  if (n == 0) return out;
  std::vector<unsigned> cur(n, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == n) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      cur[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

namespace {

using Row = SparseVec<mpq_class>;

// Multilinear pieces of an identity: each multihomogeneous component with
// every letter of degree e replaced by e fresh letters, keeping the part
// linear in each fresh letter. In characteristic 0 these span the same
// T-ideal as the original identity.
struct Multilinear {
  std::size_t letters = 0;
  std::vector<std::pair<Monomial, mpq_class>> terms;
};

std::vector<Multilinear> linearize(const IdentityScheme& s) {
  std::vector<Multilinear> out;
  const std::size_t r = s.arity;
  for (const auto& md : s.element.multidegrees()) {
    Element comp = s.element.component(md);
    std::vector<unsigned> e(md.begin(), md.end());
    e.resize(r, 0);
    const std::size_t n = std::accumulate(e.begin(), e.end(), std::size_t{0});
    auto zctx = GeneratorSet::standard(n, "z");
    std::vector<Element> images;
    std::size_t next = 0;
    for (std::size_t i = 0; i < r; ++i) {
      Element img(zctx);
      for (unsigned j = 0; j < e[i]; ++j) img += Element::generator(zctx, next++);
      images.push_back(img);
    }
    std::map<Monomial, Element> memo;
    auto mul = [](const Element& a, const Element& b) { return a * b; };
    Element lin(zctx);
    for (const auto& [m, c] : comp.terms()) lin += evaluate_monomial(m, images, mul, memo).scaled(c);
    Multilinear ml;
    ml.letters = n;
    const std::vector<unsigned> ones(n, 1);
    for (const auto& [m, c] : lin.terms())
      if (m.multidegree(n) == ones) ml.terms.emplace_back(m, c.rational_value());
    if (!ml.terms.empty()) out.push_back(std::move(ml));
  }
  return out;
}

Monomial evaluate_on_monomials(const Monomial& m, const std::vector<Monomial>& leaves) {
  if (m.is_generator()) return leaves[m.generator_index()];
  return evaluate_on_monomials(m.left(), leaves) * evaluate_on_monomials(m.right(), leaves);
}

// Monomials on n generators grouped by multidegree, for degrees below `upto`.
using MonomialTable = std::map<std::vector<unsigned>, std::vector<Monomial>>;

MonomialTable monomial_table(std::size_t n, unsigned upto) {
  MonomialTable t;
  for (unsigned d = 1; d <= upto; ++d)
    for (const auto& md : multidegrees_of_degree(n, d)) t.emplace(md, enumerate_monomials(md));
  return t;
}

bool leq(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::vector<unsigned> minus(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
  std::vector<unsigned> r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

unsigned total(const std::vector<unsigned>& a) { return std::accumulate(a.begin(), a.end(), 0u); }

class ComponentBuilder {
 public:
  ComponentBuilder(Component& comp, const std::vector<Multilinear>& ids, const MonomialTable& table,
                   const std::vector<Component>& lower)
      : comp_(comp), ids_(ids), table_(table), lower_(lower) {}

  void run() {
    for (const auto& id : ids_) {
      if (id.letters > comp_.degree) continue;
      std::vector<Monomial> chosen;
      assign(id, chosen, comp_.multidegree);
    }
    for (const auto& low : lower_) {
      if (low.relations.rank() == 0 || !leq(low.multidegree, comp_.multidegree)) continue;
      const auto rest = minus(comp_.multidegree, low.multidegree);
      auto it = table_.find(rest);
      if (it == table_.end()) continue;
      for (const auto& [pivot, row] : low.relations.rows())
        for (const auto& u : it->second) {
          Row left, right;
          for (const auto& [k, c] : row) {
            left.emplace(col(low.monomials[k] * u), c);
            right.emplace(col(u * low.monomials[k]), c);
          }
          comp_.relations.insert(left);
          comp_.relations.insert(right);
        }
    }
    for (std::size_t k = 0; k < comp_.monomials.size(); ++k)
      if (!comp_.relations.is_pivot(k)) {
        comp_.basis_position.emplace(k, comp_.basis_columns.size());
        comp_.basis_columns.push_back(k);
      }
  }

 private:
  std::size_t col(const Monomial& m) const { return comp_.column.at(m); }

  void assign(const Multilinear& id, std::vector<Monomial>& chosen, const std::vector<unsigned>& remaining) {
    const std::size_t k = chosen.size();
    const std::size_t vars_left = id.letters - k;
    if (vars_left == 1) {
      auto it = table_.find(remaining);
      if (it == table_.end()) return;
      for (const auto& u : it->second) {
        chosen.push_back(u);
        emit(id, chosen);
        chosen.pop_back();
      }
      return;
    }
    const unsigned rem = total(remaining);
    for (const auto& [md, monos] : table_) {
      const unsigned d = total(md);
      if (d + (vars_left - 1) > rem || !leq(md, remaining)) continue;
      const auto next = minus(remaining, md);
      for (const auto& u : monos) {
        chosen.push_back(u);
        assign(id, chosen, next);
        chosen.pop_back();
      }
    }
  }

  void emit(const Multilinear& id, const std::vector<Monomial>& leaves) {
    Row row;
    for (const auto& [m, c] : id.terms) Rref<mpq_class>::axpy(row, col(evaluate_on_monomials(m, leaves)), c);
    comp_.relations.insert(row);
  }

  Component& comp_;
  const std::vector<Multilinear>& ids_;
  const MonomialTable& table_;
  const std::vector<Component>& lower_;
};

template <class C>
C scale_by(const C& c, const mpq_class& q) {
  return c * Scalar(q);
}

}  // namespace

const Component* TruncatedAlgebra::component(const std::vector<unsigned>& multidegree) const {
  auto it = by_multidegree_.find(multidegree);
  return it == by_multidegree_.end() ? nullptr : &components_[it->second];
}

std::vector<std::size_t> TruncatedAlgebra::component_dims() const {
  std::vector<std::size_t> dims(bound_, 0);
  for (const auto& c : components_) dims[c.degree - 1] += c.basis_columns.size();
  return dims;
}

std::size_t TruncatedAlgebra::basis_index(const Monomial& m) const {
  const Component* c = component(m.multidegree(gens_->size()));
  if (!c) throw std::out_of_range("monomial outside the truncated algebra");
  auto it = c->basis_position.find(c->column.at(m));
  if (it == c->basis_position.end()) throw std::out_of_range("monomial is not a basis element");
  return c->basis_offset + it->second;
}

std::pair<std::size_t, std::size_t> TruncatedAlgebra::degree_range(unsigned d) const {
  if (d == 0 || d > bound_) return {0, 0};
  return {degree_start_[d - 1], degree_start_[d]};
}

template <class C>
Combination<C> TruncatedAlgebra::normal_form_impl(const Combination<C>& e) const {
  if (e.context() && !(e.context() == gens_ || *e.context() == *gens_)) throw ContextMismatch();
  Combination<C> out(gens_);
  const std::size_t n = gens_->size();
  for (const auto& [m, c] : e.terms()) {
    if (m.degree() > bound_) break;
    if (m.generator_bound() > n) throw ContextMismatch();
    const Component& comp = components_[by_multidegree_.at(m.multidegree(n))];
    const std::size_t k = comp.column.at(m);
    const auto& rows = comp.relations.rows();
    auto it = rows.find(k);
    if (it == rows.end()) {
      out.add_term(m, c);
      continue;
    }
    for (const auto& [j, q] : it->second)
      if (j != k) out.add_term(comp.monomials[j], scale_by(c, -q));
  }
  return out;
}

template Element TruncatedAlgebra::normal_form_impl(const Element&) const;
template ParamElement TruncatedAlgebra::normal_form_impl(const ParamElement&) const;

SparseVec<Scalar> TruncatedAlgebra::coordinates(const Element& e) const {
  SparseVec<Scalar> v;
  const auto nf = normal_form(e);
  for (const auto& [m, c] : nf.terms()) v.emplace(basis_index(m), c);
  return v;
}

std::map<std::size_t, ParamPoly> TruncatedAlgebra::coordinates(const ParamElement& e) const {
  std::map<std::size_t, ParamPoly> v;
  const auto nf = normal_form(e);
  for (const auto& [m, c] : nf.terms()) v.emplace(basis_index(m), c);
  return v;
}

Element TruncatedAlgebra::from_coordinates(const SparseVec<Scalar>& v) const {
  Element e(gens_);
  for (const auto& [i, c] : v) e.add_term(basis_.at(i), c);
  return e;
}

Element TruncatedAlgebra::multiply(const Element& a, const Element& b) const {
  return normal_form(vf::multiply(a, b, bound_));
}

ParamElement TruncatedAlgebra::multiply(const ParamElement& a, const ParamElement& b) const {
  return normal_form(vf::multiply(a, b, bound_));
}

AlgebraPtr build_truncated(const VarietyPresentation& theta, const GeneratorContext& gens, unsigned bound) {
  if (bound < 1) throw std::invalid_argument("build_truncated: degree bound must be at least 1");
  if (!gens || gens->size() == 0) throw std::invalid_argument("build_truncated: at least one generator required");

  static std::mutex cache_mu;
  static std::map<std::string, AlgebraPtr> cache;
  std::ostringstream key;
  key << theta.fingerprint() << "|";
  for (const auto& n : gens->names()) key << n << ",";
  key << "|" << bound;
  {
    std::lock_guard lock(cache_mu);
    auto it = cache.find(key.str());
    if (it != cache.end()) return it->second;
  }

  auto A = std::make_shared<TruncatedAlgebra>();
  A->gens_ = gens;
  A->theta_ = theta;
  A->bound_ = bound;
  const std::size_t n = gens->size();

  std::vector<Multilinear> ids;
  for (const auto& s : theta.identities) {
    auto pieces = linearize(s);
    ids.insert(ids.end(), pieces.begin(), pieces.end());
  }
  const MonomialTable table = monomial_table(n, bound > 1 ? bound - 1 : 1);

  for (unsigned d = 1; d <= bound; ++d) {
    const auto mds = multidegrees_of_degree(n, d);
    std::vector<Component> fresh(mds.size());
    std::vector<std::future<void>> jobs;
    for (std::size_t i = 0; i < mds.size(); ++i) {
      Component& c = fresh[i];
      c.multidegree = mds[i];
      c.degree = d;
      jobs.push_back(std::async(std::launch::async, [&c, &ids, &table, &A] {
        c.monomials = enumerate_monomials(c.multidegree);
        for (std::size_t k = 0; k < c.monomials.size(); ++k) c.column.emplace(c.monomials[k], k);
        ComponentBuilder(c, ids, table, A->components_).run();
      }));
    }
    for (auto& j : jobs) j.get();
    for (auto& c : fresh) A->components_.push_back(std::move(c));
  }

  A->degree_start_.assign(1, 0);
  unsigned current = 1;
  for (std::size_t i = 0; i < A->components_.size(); ++i) {
    Component& c = A->components_[i];
    while (current < c.degree) {
      A->degree_start_.push_back(A->basis_.size());
      ++current;
    }
    A->by_multidegree_.emplace(c.multidegree, i);
    c.basis_offset = A->basis_.size();
    for (auto k : c.basis_columns) A->basis_.push_back(c.monomials[k]);
  }
  while (A->degree_start_.size() <= bound) A->degree_start_.push_back(A->basis_.size());

  std::lock_guard lock(cache_mu);
  return cache.emplace(key.str(), A).first->second;
}

AlgebraPtr build_truncated(const VarietyPresentation& theta, std::size_t generators, unsigned bound) {
  return build_truncated(theta, GeneratorSet::standard(generators), bound);
}

bool check_identity(const TruncatedAlgebra& A, const IdentityScheme& s) {
  if (s.arity > A.generators()->size())
    throw std::invalid_argument("check_identity: identity has more letters than the algebra has generators");
  std::vector<Element> images;
  for (std::size_t i = 0; i < s.arity; ++i) images.push_back(A.generator(i));
  auto mul = [&](const Element& a, const Element& b) { return A.multiply(a, b); };
  return A.normal_form(evaluate_identity(s, images, mul, A.generators())).empty();
}

}  // namespace vf
