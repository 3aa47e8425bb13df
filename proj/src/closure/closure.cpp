#include "vf/closure.hpp"

#include <algorithm>
#include <stdexcept>

namespace vf {

// ---- truncated ideals ------------------------------------------------------

std::size_t TruncatedIdeal::ambient() const { return algebra->degree_range(tail - 1).second; }

std::size_t TruncatedIdeal::component_dim(unsigned d) const {
  const auto [lo, hi] = algebra->degree_range(d);
  if (d >= tail) return hi - lo;
  std::size_t n = 0;
  for (const auto& [p, row] : space.rows()) n += p >= lo && p < hi;
  return n;
}

std::vector<std::size_t> TruncatedIdeal::component_dims() const {
  std::vector<std::size_t> out;
  for (unsigned d = 1; d <= algebra->bound(); ++d) out.push_back(component_dim(d));
  return out;
}

SparseVec<Scalar> TruncatedIdeal::head(const Element& e) const {
  SparseVec<Scalar> v = algebra->coordinates(e);
  v.erase(v.lower_bound(ambient()), v.end());
  return v;
}

TruncatedIdeal ideal_build(const AlgebraPtr& A, const std::vector<Element>& gens, unsigned tail) {
  if (tail < 1 || tail > A->bound() + 1) throw std::invalid_argument("ideal_build: tail exponent must lie in 1..N+1");
  TruncatedIdeal I;
  I.algebra = A;
  I.generators = gens;
  I.tail = tail;

  // Worklist of vectors that enlarged the span; their products with basis
  // monomials on both sides span the ideal below the tail.
  std::vector<SparseVec<Scalar>> work;
  for (const auto& g : gens) {
    auto v = I.head(g);
    if (I.space.insert(v)) work.push_back(std::move(v));
  }
  while (!work.empty()) {
    const SparseVec<Scalar> v = std::move(work.back());
    work.pop_back();
    const Element e = A->from_coordinates(v);
    const unsigned room = tail - 1 - e.min_degree();
    for (std::size_t j = 0; j < A->degree_range(room).second; ++j) {
      const Element b = A->basis_element(j);
      for (const Element& p : {A->multiply(e, b), A->multiply(b, e)}) {
        auto w = I.head(p);
        if (I.space.insert(w)) work.push_back(std::move(w));
      }
    }
  }
  return I;
}

bool ideal_contains(const TruncatedIdeal& I, const Element& e) { return I.space.contains(I.head(e)); }

bool ideal_subset(const TruncatedIdeal& I, const TruncatedIdeal& J) {
  if (I.algebra != J.algebra) throw ContextMismatch();
  if (I.tail < J.tail) return false;
  for (const auto& [p, row] : I.space.rows()) {
    SparseVec<Scalar> r = row;
    r.erase(r.lower_bound(J.ambient()), r.end());
    if (!J.space.contains(r)) return false;
  }
  return true;
}

bool same_ideal(const TruncatedIdeal& I, const TruncatedIdeal& J) {
  return I.algebra == J.algebra && I.tail == J.tail && I.space.rows() == J.space.rows();
}

namespace {

void require_op2(const VerbalSystem& W, const TruncatedAlgebra& A, unsigned N) {
  const auto& theta = A.presentation();
  const std::size_t gens = std::max<std::size_t>({2, A.generators()->size(), theta.max_arity()});
  const Op2Report rep = check_op2(theta, W, N, gens);
  if (!rep.passed)
    throw std::invalid_argument("verbal system " + W.to_string() + " fails Op2 in variety '" + theta.name + "'");
}

}  // namespace

TruncatedIdeal sf_image(const VerbalSystem& W, const TruncatedIdeal& I) {
  const auto& A = *I.algebra;
  require_op2(W, A, A.bound());
  std::vector<Element> gens;
  for (const auto& g : I.generators) gens.push_back(sigma_apply(W, A, A.normal_form(g)));
  return ideal_build(I.algebra, gens, I.tail);
}

TruncatedIdeal closure_sampled(const TruncatedIdeal& T, const std::vector<Endomorphism>& endos,
                               const TruncatedIdeal* source) {
  const TruncatedIdeal& src = source ? *source : T;
  const auto& A = *T.algebra;
  if (src.algebra != T.algebra) throw ContextMismatch();
  const unsigned top = T.tail - 1;
  const std::size_t n = T.ambient();

  // Rows of the stacked maps e -> (alpha_k(e) mod T)_k; the kernel is the
  // intersection of the kernels.
  Rref<Scalar> rows;
  for (std::size_t k = 0; k < endos.size(); ++k) {
    const Endomorphism& alpha = endos[k];
    for (const auto& g : src.generators)
      if (!ideal_contains(T, substitute(alpha, g, top)))
        throw std::invalid_argument("closure_sampled: endomorphism #" + std::to_string(k) + " " + alpha.to_string() +
                                    " does not map " + g.to_string() + " into T");
    std::map<std::size_t, SparseVec<Scalar>> by_output;
    for (std::size_t j = 0; j < n; ++j) {
      const SparseVec<Scalar> r = T.space.reduce(T.head(substitute(alpha, A.basis_element(j), top)));
      for (const auto& [o, c] : r) by_output[o].emplace(j, c);
    }
    for (const auto& [o, row] : by_output) rows.insert(row);
  }

  TruncatedIdeal out;
  out.algebra = T.algebra;
  out.tail = T.tail;
  for (const auto& v : rows.nullspace(n)) {
    out.space.insert(v);
    out.generators.push_back(A.from_coordinates(v));
  }
  return out;
}

// ---- constraints -----------------------------------------------------------

namespace {

// Inverse of a square matrix over k by Gauss-Jordan elimination.
std::vector<std::vector<Scalar>> inverse(std::vector<std::vector<Scalar>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Scalar>> inv(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Scalar(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) throw std::invalid_argument("coordinate basis is linearly dependent");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    const Scalar s = m[c][c].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      const Scalar f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace

ConstraintSystem gen_constraints(const TruncatedIdeal& T, const VerbalSystem& W,
                                 const std::vector<Element>* coordinate_basis) {
  const auto& A = *T.algebra;
  if (T.generators.size() != 1) throw std::invalid_argument("gen_constraints: T must have a single generator");
  const unsigned top = T.tail - 1;
  const Element t = A.normal_form(T.generators.front());
  if (t.empty() || !t.is_homogeneous() || t.min_degree() != top)
    throw std::invalid_argument("gen_constraints: the generator must be homogeneous of degree m - 1");

  const auto [lo, hi] = A.degree_range(top);
  const std::size_t D = hi - lo;
  // Change of basis: rows of `to_basis` give the chosen coordinates from the
  // algebra coordinates in degree `top`.
  std::vector<std::vector<Scalar>> to_basis(D, std::vector<Scalar>(D));
  std::vector<std::string> names;
  if (coordinate_basis) {
    if (coordinate_basis->size() != D)
      throw std::invalid_argument("gen_constraints: coordinate basis must have " + std::to_string(D) + " elements");
    std::vector<std::vector<Scalar>> m(D, std::vector<Scalar>(D));
    for (std::size_t i = 0; i < D; ++i) {
      const Element b = A.normal_form((*coordinate_basis)[i]);
      if (!b.empty() && (!b.is_homogeneous() || b.min_degree() != top))
        throw std::invalid_argument("gen_constraints: coordinate basis element outside degree m - 1");
      for (const auto& [j, c] : A.coordinates(b)) m[j - lo][i] = c;
      names.push_back((*coordinate_basis)[i].to_string());
    }
    to_basis = inverse(m);
  } else {
    for (std::size_t i = 0; i < D; ++i) {
      to_basis[i][i] = Scalar(1);
      names.push_back(A.basis_element(lo + i).to_string());
    }
  }

  const Element s = sigma_apply(W, A, t);
  const SymbolicEndomorphism alpha = SymbolicEndomorphism::generic_linear(A.generators());
  const auto image = A.coordinates(A.normal_form(symbolic_substitute(alpha, s, top)));
  const auto tc = A.coordinates(t);

  ConstraintSystem cs;
  cs.basis = names;
  cs.indeterminates = alpha.indeterminates();
  cs.indeterminates.insert(kRho);
  const ParamPoly rho = ParamPoly::variable(kRho);
  for (std::size_t i = 0; i < D; ++i) {
    ParamPoly img;
    Scalar tgt;
    for (std::size_t j = 0; j < D; ++j) {
      if (to_basis[i][j].is_zero()) continue;
      if (auto it = image.find(lo + j); it != image.end()) img += it->second * to_basis[i][j];
      if (auto it = tc.find(lo + j); it != tc.end()) tgt += it->second * to_basis[i][j];
    }
    cs.image.push_back(img);
    cs.target.push_back(tgt);
    if (!tgt.is_zero()) cs.nonzero.push_back(tgt);
    ParamPoly eq = img - rho * tgt;
    if (eq.is_zero()) continue;
    cs.equations.push_back(std::move(eq));
    cs.labels.push_back(names[i]);
  }
  return cs;
}

// ---- case splitting --------------------------------------------------------

std::map<Indeterminate, ParamPoly> Branch::resolved_substitutions() const {
  std::map<Indeterminate, ParamPoly> out;
  for (const auto& [v, p] : substitutions) out.emplace(v, parampoly_reduce(ParamPoly::variable(v), substitutions, {}));
  return out;
}

std::string to_string(Branch::Status s) {
  switch (s) {
    case Branch::Status::open: return "open";
    case Branch::Status::closed: return "closed";
    case Branch::Status::stuck: return "stuck";
  }
  return "open";
}

void for_each_leaf(const Branch& b, const std::function<void(const Branch&)>& f) {
  if (b.is_leaf()) return f(b);
  for (const auto& c : b.children) for_each_leaf(c, f);
}

void for_each_leaf(Branch& b, const std::function<void(Branch&)>& f) {
  if (b.is_leaf()) return f(b);
  for (auto& c : b.children) for_each_leaf(c, f);
}

namespace {

bool contains_poly(const std::vector<ParamPoly>& v, const ParamPoly& p) {
  return std::find(v.begin(), v.end(), p) != v.end();
}

void push_unique(std::vector<ParamPoly>& v, const ParamPoly& p) {
  if (!contains_poly(v, p)) v.push_back(p);
}

// p = c v + r with c a nonzero constant and v absent from r: returns -r/c.
std::optional<ParamPoly> solve_linear(const ParamPoly& p, const Indeterminate& v) {
  Scalar c;
  ParamPoly rest;
  for (const auto& [m, coef] : p.terms()) {
    const unsigned e = m.exponent_of(v);
    if (e > 1) return std::nullopt;
    if (e == 1) {
      if (!m.without(v).is_one()) return std::nullopt;
      c = coef;
    } else {
      rest.add_term(m, coef);
    }
  }
  if (c.is_zero()) return std::nullopt;
  return -rest * c.inverse();
}

struct Elimination {
  Indeterminate var;
  ParamPoly value;
};

std::optional<Elimination> find_elimination(const ParamPoly& p) {
  std::optional<Elimination> best;
  for (const auto& v : p.indeterminates()) {
    auto s = solve_linear(p, v);
    if (!s) continue;
    if (v == kRho) return Elimination{v, *s};
    if (!best) best = Elimination{v, *s};
  }
  return best;
}

class Solver {
 public:
  Solver(const std::vector<ParamPoly>& hints, unsigned depth_bound) : depth_bound_(depth_bound) {
    for (const auto& h : hints)
      if (!h.is_zero() && !h.is_constant()) hints_.push_back(h.monic());
  }

  void run(Branch& node, std::vector<ParamPoly> eqs, unsigned depth) {
    if (!simplify(node, eqs)) return;
    node.residual = eqs;
    if (eqs.empty()) {
      node.status = Branch::Status::closed;
      return;
    }
    if (depth >= depth_bound_) {
      node.status = Branch::Status::stuck;
      node.note = "depth bound reached";
      return;
    }
    if (split_on_hint(node, eqs, depth)) return;
    if (split_on_factors(node, eqs, depth)) return;
    node.status = Branch::Status::stuck;
    node.note = "no equation splits";
  }

 private:
  ParamPoly reduce(const Branch& node, const ParamPoly& p) const {
    return parampoly_reduce(p, node.substitutions, node.vanishing);
  }

  void mark_infeasible(Branch& node, const std::string& why) {
    node.status = Branch::Status::closed;
    node.infeasible = true;
    node.residual.clear();
    node.note = why;
  }

  void add_unit(Branch& node, const Scalar& u) {
    if (u.is_rational()) return;
    if (std::find(node.units.begin(), node.units.end(), u) == node.units.end()) node.units.push_back(u);
  }

  // Reduces, cancels nonzero factors and eliminates linear unknowns until
  // nothing changes. Returns false when the node turned out infeasible.
  bool simplify(Branch& node, std::vector<ParamPoly>& eqs) {
    for (;;) {
      std::vector<ParamPoly> nonvanishing;
      for (const auto& p : node.nonvanishing) {
        const ParamPoly r = reduce(node, p);
        if (r.is_zero()) {
          mark_infeasible(node, "assumed nonzero " + p.to_string() + " vanishes");
          return false;
        }
        if (r.is_constant()) continue;
        for (const auto& f : factor_for_branching(r, hints_)) push_unique(nonvanishing, f);
      }
      node.nonvanishing = std::move(nonvanishing);

      std::vector<ParamPoly> next;
      for (const auto& e : eqs) {
        const ParamPoly r = reduce(node, e);
        if (r.is_zero()) continue;
        const Factorization fz = factor_with_unit(r, hints_);
        add_unit(node, fz.unit);
        std::vector<ParamPoly> kept;
        for (const auto& f : fz.factors)
          if (!contains_poly(node.nonvanishing, f)) push_unique(kept, f);
        if (kept.empty()) {
          mark_infeasible(node, "equation " + r.to_string() + " = 0 has no solution under the hypotheses");
          return false;
        }
        ParamPoly prod(1);
        for (const auto& f : kept) prod = prod * f;
        push_unique(next, prod);
      }

      std::optional<std::size_t> pick;
      std::optional<Elimination> elim;
      for (std::size_t i = 0; i < next.size(); ++i) {
        auto el = find_elimination(next[i]);
        if (!el) continue;
        const bool rho_first = el->var == kRho && elim && elim->var != kRho;
        const bool shorter = elim && (el->var == kRho) == (elim->var == kRho) &&
                             next[i].terms().size() < next[*pick].terms().size();
        if (!elim || rho_first || shorter) {
          elim = el;
          pick = i;
        }
      }
      if (!elim) {
        eqs = std::move(next);
        return true;
      }
      node.substitutions[elim->var] = elim->value;
      next.erase(next.begin() + static_cast<std::ptrdiff_t>(*pick));
      eqs = std::move(next);
    }
  }

  Branch child_of(const Branch& node, std::size_t index) const {
    Branch c;
    c.label = node.label + "." + std::to_string(index + 1);
    c.substitutions = node.substitutions;
    c.vanishing = node.vanishing;
    c.nonvanishing = node.nonvanishing;
    return c;
  }

  static void assume_zero(Branch& c, const ParamPoly& f) {
    if (auto el = find_elimination(f)) c.substitutions[el->var] = el->value;
    else c.vanishing.push_back(f);
  }

  bool split_on_hint(Branch& node, const std::vector<ParamPoly>& eqs, unsigned depth) {
    for (const auto& h : hints_) {
      const ParamPoly hr = reduce(node, h);
      if (hr.is_constant()) continue;
      const ParamPoly hm = hr.monic();
      if (contains_poly(node.nonvanishing, hm)) continue;
      for (const auto& e : eqs) {
        if (!divide(e, hm).second.is_zero()) continue;
        node.split_kind = "hint";
        node.split_poly = e;
        node.split_unit = Scalar(1);
        node.split_factors = {hm};
        Branch zero = child_of(node, 0), nonzero = child_of(node, 1);
        assume_zero(zero, hm);
        nonzero.nonvanishing.push_back(hm);
        run(zero, eqs, depth + 1);
        run(nonzero, eqs, depth + 1);
        node.children = {std::move(zero), std::move(nonzero)};
        return true;
      }
    }
    return false;
  }

  bool split_on_factors(Branch& node, const std::vector<ParamPoly>& eqs, unsigned depth) {
    const ParamPoly* best = nullptr;
    std::vector<ParamPoly> best_factors;
    Factorization best_fz;
    for (const auto& e : eqs) {
      Factorization fz = factor_with_unit(e, hints_);
      std::vector<ParamPoly> distinct;
      for (const auto& f : fz.factors) push_unique(distinct, f);
      if (distinct.size() < 2) continue;
      if (!best || distinct.size() > best_factors.size() ||
          (distinct.size() == best_factors.size() && e.degree() < best->degree())) {
        best = &e;
        best_factors = std::move(distinct);
        best_fz = std::move(fz);
      }
    }
    if (!best) return false;
    node.split_kind = "factor";
    node.split_poly = *best;
    node.split_unit = best_fz.unit;
    node.split_factors = best_fz.factors;
    for (std::size_t i = 0; i < best_factors.size(); ++i) {
      Branch c = child_of(node, i);
      for (std::size_t j = 0; j < i; ++j) c.nonvanishing.push_back(best_factors[j]);
      assume_zero(c, best_factors[i]);
      run(c, eqs, depth + 1);
      node.children.push_back(std::move(c));
    }
    return true;
  }

  std::vector<ParamPoly> hints_;
  unsigned depth_bound_;
};

}  // namespace

Branch solve_cases(const ConstraintSystem& cs, const std::vector<ParamPoly>& hints, unsigned depth_bound) {
  if (depth_bound < 1) throw std::invalid_argument("solve_cases: depth bound must be at least 1");
  Branch root;
  root.label = "R";
  Solver(hints, depth_bound).run(root, cs.equations, 0);
  return root;
}

bool kernel_contains(const TruncatedIdeal& T, const Branch& branch, const std::vector<Element>& V) {
  if (branch.status != Branch::Status::closed)
    throw std::invalid_argument("kernel_contains: branch " + branch.label + " is " + to_string(branch.status));
  if (branch.infeasible) return true;
  const auto& A = *T.algebra;
  const SymbolicEndomorphism alpha = SymbolicEndomorphism::generic_linear(A.generators());
  const std::size_t n = T.ambient();
  auto reduce = [&](const ParamPoly& p) { return parampoly_reduce(p, branch.substitutions, branch.vanishing); };
  for (const auto& v : V) {
    std::map<std::size_t, ParamPoly> img;
    for (const auto& [j, p] : A.coordinates(A.normal_form(symbolic_substitute(alpha, v, T.tail - 1)))) {
      if (j >= n) continue;
      ParamPoly r = reduce(p);
      if (!r.is_zero()) img.emplace(j, std::move(r));
    }
    // Subtract the T-part pivot by pivot.
    for (const auto& [p, row] : T.space.rows()) {
      auto it = img.find(p);
      if (it == img.end()) continue;
      const ParamPoly c = it->second;
      for (const auto& [j, x] : row) {
        ParamPoly& slot = img[j];
        slot -= c * x;
        if (slot.is_zero()) img.erase(j);
      }
    }
    for (const auto& [j, p] : img)
      if (!reduce(p).is_zero()) return false;
  }
  return true;
}

std::optional<std::map<Indeterminate, Scalar>> sample_branch(const Branch& branch,
                                                             const std::set<Indeterminate>& variables,
                                                             std::mt19937& rng, int attempts) {
  if (branch.status != Branch::Status::closed || branch.infeasible) return std::nullopt;
  const auto subs = branch.resolved_substitutions();
  std::vector<ParamPoly> vanishing;
  for (const auto& h : branch.vanishing) vanishing.push_back(h.substitute(subs));

  // One unknown per vanishing hypothesis, solved last.
  std::vector<std::pair<ParamPoly, Indeterminate>> solve;
  std::set<Indeterminate> reserved;
  for (const auto& h : vanishing) {
    std::optional<Indeterminate> pick;
    for (const auto& v : h.indeterminates()) {
      if (subs.count(v) || reserved.count(v)) continue;
      bool linear = true;
      for (const auto& [m, c] : h.terms()) linear = linear && m.exponent_of(v) <= 1;
      if (linear) {
        pick = v;
        break;
      }
    }
    if (!pick) return std::nullopt;
    reserved.insert(*pick);
    solve.emplace_back(h, *pick);
  }

  std::uniform_int_distribution<int> dist(-5, 5);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::map<Indeterminate, ParamPoly> known;
    for (const auto& v : variables)
      if (!subs.count(v) && !reserved.count(v)) known[v] = ParamPoly(Scalar(dist(rng)));
    bool ok = true;
    for (const auto& [h, v] : solve) {
      const ParamPoly p = h.substitute(known);
      auto s = solve_linear(p, v);
      if (!s || !s->is_constant()) {
        // Coefficient of v may vanish at this point or depend on a later unknown.
        ParamPoly coef, rest;
        for (const auto& [m, c] : p.terms()) (m.exponent_of(v) ? coef : rest).add_term(m.without(v), c);
        if (!coef.is_constant() || coef.is_zero() || !rest.is_constant()) {
          ok = false;
          break;
        }
        s = ParamPoly(-rest.constant_value() / coef.constant_value());
      }
      known[v] = *s;
    }
    if (!ok) continue;
    std::map<Indeterminate, Scalar> values;
    for (const auto& [v, p] : known) values[v] = p.constant_value();
    for (const auto& [v, p] : subs) {
      const ParamPoly q = p.substitute(known);
      if (!q.is_constant()) {
        ok = false;
        break;
      }
      values[v] = q.constant_value();
    }
    if (!ok) continue;
    for (const auto& h : branch.vanishing) ok = ok && h.evaluate(values).is_zero();
    for (const auto& h : branch.nonvanishing) ok = ok && !h.evaluate(values).is_zero();
    if (ok) return values;
  }
  return std::nullopt;
}

// ---- falsifiers ------------------------------------------------------------

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::not_geometrically_equivalent: return "not_geometrically_equivalent";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::no_falsification: return "no_falsification";
  }
  return "no_falsification";
}

namespace {

std::vector<std::string> strings_of(const std::vector<Element>& v) {
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(e.to_string());
  return out;
}

}  // namespace

Certificate falsify_equation_ideal(const VerbalSystem& W, const TruncatedIdeal& T, const std::vector<Element>& V,
                                   const std::vector<ParamPoly>& hints, const std::vector<Element>* coordinate_basis,
                                   unsigned depth_bound) {
  const auto& A = *T.algebra;
  Certificate cert;
  cert.method = "equation_ideal";
  cert.variety = A.presentation().name;
  cert.generators = A.generators()->size();
  cert.bound = A.bound();
  cert.system = W;
  cert.ideal_generators = strings_of(T.generators);
  cert.tail = T.tail;
  cert.target = strings_of(V);
  for (const auto& h : hints) cert.hints.push_back(h.to_string());

  const TruncatedIdeal S = sf_image(W, T);
  cert.image_generators = strings_of(S.generators);
  cert.image_dims = S.component_dims();

  const ConstraintSystem cs = gen_constraints(T, W, coordinate_basis);
  cert.constraints = cs.equations;
  cert.constraint_labels = cs.labels;
  cert.tree = solve_cases(cs, hints, depth_bound);

  bool stuck = false, all_contained = true;
  for_each_leaf(cert.tree, [&](Branch& leaf) {
    if (leaf.status != Branch::Status::closed) {
      stuck = true;
      return;
    }
    leaf.kernel_contains = kernel_contains(T, leaf, V);
    all_contained = all_contained && *leaf.kernel_contains;
  });

  std::optional<Element> witness;
  for (const auto& v : V)
    if (!ideal_contains(S, v)) {
      witness = v;
      break;
    }
  if (witness) cert.witness = witness->to_string();

  std::vector<Element> enlarged = S.generators;
  enlarged.insert(enlarged.end(), V.begin(), V.end());
  cert.closure_lower_bound_dims = ideal_build(T.algebra, enlarged, T.tail).component_dims();

  if (stuck) {
    cert.verdict = Verdict::inconclusive;
    cert.notes.push_back("some branches are stuck");
  } else if (all_contained && witness) {
    cert.verdict = Verdict::not_geometrically_equivalent;
  } else {
    cert.verdict = Verdict::no_falsification;
    if (!all_contained) cert.notes.push_back("some closed branch does not kill the target");
    if (!witness) cert.notes.push_back("the target lies inside s_F(T)");
  }
  return cert;
}

Certificate falsify_smallest_closed(const AlgebraPtr& Ap, const VerbalSystem& W, const Element& identity_gen,
                                    unsigned window) {
  const auto& A = *Ap;
  const Element g = A.normal_form(identity_gen);
  if (g.empty() || !g.is_homogeneous())
    throw std::invalid_argument("falsify_smallest_closed: identity generator must be homogeneous and nonzero");
  if (window > A.bound()) throw std::invalid_argument("falsify_smallest_closed: window exceeds the degree bound");
  if (g.min_degree() != window)
    throw std::invalid_argument("falsify_smallest_closed: window must equal the degree of the generator");
  require_op2(W, A, window);

  Certificate cert;
  cert.method = "smallest_closed";
  cert.variety = A.presentation().name;
  cert.generators = A.generators()->size();
  cert.bound = A.bound();
  cert.system = W;
  cert.ideal_generators = {g.to_string()};
  cert.tail = window + 1;

  // V: span of the coefficient vectors of alpha(g), one per monomial in the a_ji.
  const SymbolicEndomorphism alpha = SymbolicEndomorphism::generic_linear(A.generators());
  std::map<ParamMonomial, SparseVec<Scalar>, ParamMonomialGreater> pattern;
  for (const auto& [j, p] : A.coordinates(A.normal_form(symbolic_substitute(alpha, g, window))))
    for (const auto& [m, c] : p.terms()) pattern[m].emplace(j, c);
  Rref<Scalar> span;
  for (const auto& [m, v] : pattern) span.insert(v);
  for (const auto& [p, row] : span.rows()) cert.target.push_back(A.from_coordinates(row).to_string());
  cert.image_dims = {span.rank()};

  const Element s = sigma_apply(W, A, g).component(window);
  cert.image_generators = {s.to_string()};
  cert.tree.label = "R";
  cert.tree.status = Branch::Status::closed;
  cert.tree.note = "no case analysis: the degree-window part of I is spanned directly";

  if (!span.contains(A.coordinates(s))) {
    cert.witness = s.to_string();
    cert.verdict = Verdict::not_geometrically_equivalent;
  } else {
    cert.verdict = Verdict::no_falsification;
    cert.notes.push_back("sigma(g) lies in the degree-window part of I");
  }
  return cert;
}

}  // namespace vf
