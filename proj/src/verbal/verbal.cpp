#include "vf/verbal.hpp"

#include <stdexcept>

namespace vf {

VerbalSystem::VerbalSystem(FieldAutomorphism phi_, Scalar a_, Scalar b_)
    : phi(std::move(phi_)), a(std::move(a_)), b(std::move(b_)) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("verbal system needs (a, b) != (0, 0)");
}

std::string VerbalSystem::to_string() const {
  return "(phi=" + phi.to_string() + ", a=" + a.to_string() + ", b=" + b.to_string() + ")";
}

namespace {

template <class C>
Combination<C> derived_product(const C& a, const C& b, const Combination<C>& u, const Combination<C>& v,
                               const TruncatedAlgebra& A) {
  const unsigned N = A.bound();
  Combination<C> r = Combination<C>::product(u, v, N).scaled(a);
  r += Combination<C>::product(v, u, N).scaled(b);
  return A.normal_form(r);
}

template <class C>
Combination<C> transform(const C& a, const C& b, const Monomial& m, const TruncatedAlgebra& A,
                         std::map<Monomial, Combination<C>>& memo) {
  const std::size_t n = A.generators()->size();
  if (m.generator_bound() > n) throw ContextMismatch();
  if (m.degree() > A.bound()) return Combination<C>(A.generators());
  std::vector<Combination<C>> leaves;
  for (std::size_t i = 0; i < n; ++i) leaves.push_back(Combination<C>::generator(A.generators(), i));
  auto mul = [&](const Combination<C>& u, const Combination<C>& v) { return derived_product(a, b, u, v, A); };
  return evaluate_monomial(m, leaves, mul, memo);
}

}  // namespace

Element derived_mul(const VerbalSystem& W, const Element& u, const Element& v, const TruncatedAlgebra& A) {
  return derived_product(W.a, W.b, u, v, A);
}

Element word_transform(const VerbalSystem& W, const Monomial& m, const TruncatedAlgebra& A) {
  std::map<Monomial, Element> memo;
  return transform(W.a, W.b, m, A, memo);
}

ParamElement word_transform(const ParamPoly& a, const ParamPoly& b, const Monomial& m, const TruncatedAlgebra& A) {
  std::map<Monomial, ParamElement> memo;
  return transform(a, b, m, A, memo);
}

Element sigma_apply(const VerbalSystem& W, const TruncatedAlgebra& A, const Element& e) {
  std::map<Monomial, Element> memo;
  Element out(A.generators());
  for (const auto& [m, c] : e.terms()) {
    if (m.degree() > A.bound()) break;
    out += transform(W.a, W.b, m, A, memo).scaled(apply_automorphism(W.phi, c));
  }
  return out;
}

Op2Report check_op2(const VarietyPresentation& theta, const VerbalSystem& W, unsigned N, std::size_t generators) {
  if (generators < 2 || generators < theta.max_arity())
    throw std::invalid_argument("check_op2: need at least two generators and at least the identity arity");
  if (N < 1) throw std::invalid_argument("check_op2: degree bound must be at least 1");
  Op2Report rep;
  bool identities_hold = true;

  // Endomorphisms of F are homomorphisms of F*_W as well, so an identity that
  // vanishes on distinct free generators vanishes on all elements.
  for (const auto& f : theta.identities) {
    const AlgebraPtr aux = build_truncated(theta, f.arity, f.degree());
    std::vector<Element> images;
    for (std::size_t i = 0; i < f.arity; ++i) images.push_back(aux->generator(i));
    auto mul = [&](const Element& u, const Element& v) { return derived_mul(W, u, v, *aux); };
    const Element value = aux->normal_form(evaluate_identity(f, images, mul, aux->generators()));
    if (value.empty()) continue;
    identities_hold = false;
    rep.failed_identity = f;
    for (const auto& x : images) rep.witness.push_back(x.to_string());
    rep.witness_value = value.to_string();
    break;
  }

  const AlgebraPtr A = build_truncated(theta, generators, N);
  bool sigma_ok = true;
  std::map<Monomial, Element> memo;
  for (const auto& comp : A->components()) {
    SigmaRank sr;
    sr.multidegree = comp.multidegree;
    sr.dimension = comp.basis_columns.size();
    Rref<Scalar> rows;
    for (auto k : comp.basis_columns) {
      const Element img = transform(W.a, W.b, comp.monomials[k], *A, memo);
      rows.insert(A->coordinates(img));
    }
    sr.rank = rows.rank();
    sigma_ok = sigma_ok && sr.invertible();
    rep.sigma.push_back(std::move(sr));
  }
  rep.passed = identities_hold && sigma_ok;
  return rep;
}

namespace {

template <class C>
C family_factor(const VarietyPresentation& theta, const C& a, const C& b, const Monomial& m) {
  if (theta.name == "power_associative") {
    const auto md = m.multidegree(m.generator_bound());
    std::size_t used = 0;
    for (auto e : md) used += e != 0;
    if (used != 1) throw std::invalid_argument("scaling_check: power associative case needs a univariate monomial");
    return a + b;
  }
  if (theta.anticommutative) return a - b;
  throw std::invalid_argument("scaling_check: variety '" + theta.name +
                              "' is neither power associative nor anticommutative");
}

}  // namespace

Scalar scaling_factor(const VarietyPresentation& theta, const VerbalSystem& W, const Monomial& m) {
  return family_factor(theta, W.a, W.b, m);
}

ParamPoly scaling_factor(const VarietyPresentation& theta, const ParamPoly& a, const ParamPoly& b,
                         const Monomial& m) {
  return family_factor(theta, a, b, m);
}

bool scaling_check(const VarietyPresentation& theta, const VerbalSystem& W, const Monomial& m,
                   const TruncatedAlgebra& A) {
  const Scalar c = scaling_factor(theta, W, m);
  const Element expected = A.normal_form(Element(A.generators(), m)).scaled(c.pow(static_cast<int>(m.degree()) - 1));
  return word_transform(W, m, A) == expected;
}

bool scaling_check(const VarietyPresentation& theta, const ParamPoly& a, const ParamPoly& b, const Monomial& m,
                   const TruncatedAlgebra& A) {
  const ParamPoly c = scaling_factor(theta, a, b, m);
  const ParamElement expected = lift(A.normal_form(Element(A.generators(), m))).scaled(c.pow(m.degree() - 1));
  return word_transform(a, b, m, A) == expected;
}

std::string to_string(InnerResult::Status s) {
  switch (s) {
    case InnerResult::Status::witness: return "witness";
    case InnerResult::Status::refuted: return "refuted";
    case InnerResult::Status::unknown: return "unknown";
  }
  return "unknown";
}

namespace {

// Dense univariate polynomials over k, index = exponent.
using UPoly = std::vector<Scalar>;

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly remainder(UPoly f, const UPoly& g) {
  const Scalar lead_inv = g.back().inverse();
  while (f.size() >= g.size()) {
    const Scalar q = f.back() * lead_inv;
    const std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] -= q * g[i];
    f.pop_back();
    trim(f);
  }
  return f;
}

UPoly gcd(UPoly f, UPoly g) {
  while (!g.empty()) {
    UPoly r = remainder(f, g);
    f = std::move(g);
    g = std::move(r);
  }
  if (!f.empty()) {
    const Scalar inv = f.back().inverse();
    for (auto& c : f) c *= inv;
  }
  return f;
}

Scalar evaluate(const UPoly& p, const Scalar& x) {
  Scalar acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

InnerResult inner_witness(const VarietyPresentation& theta, const VerbalSystem& W, unsigned N) {
  if (N < 3) throw std::invalid_argument("inner_witness: degree bound must be at least 3");
  const AlgebraPtr A = build_truncated(theta, 2, N);
  const auto& ctx = A->generators();
  const Element x1 = A->generator(0), x2 = A->generator(1);
  const Scalar lambda = Scalar::transcendental(0);

  const std::vector<Endomorphism> probes = {
      Endomorphism(ctx, {A->multiply(x1, x1), x2}),
      Endomorphism(ctx, {x1.scaled(lambda), x2}),
      Endomorphism(ctx, {A->multiply(x1, x2), x2}),
      Endomorphism(ctx, {x2, x1}),
  };

  const ParamPoly mu = ParamPoly::variable("mu");
  std::map<Monomial, Element> memo;
  std::vector<UPoly> equations;
  for (const auto& psi : probes) {
    for (const auto& m : A->basis()) {
      const Element p = A->normal_form(substitute(psi, Element(ctx, m), N));
      if (p.empty()) continue;
      // mu p (c linear) against the homomorphic extension of x -> mu x.
      ParamElement diff = lift(p).scaled(mu);
      for (const auto& [q, c] : p.terms()) {
        const Element wt = transform(W.a, W.b, q, *A, memo);
        diff -= lift(wt).scaled(mu.pow(q.degree()) * ParamPoly(apply_automorphism(W.phi, c)));
      }
      for (const auto& [idx, poly] : A->coordinates(diff)) {
        UPoly u;
        for (const auto& [pm, c] : poly.terms()) {
          const unsigned e = pm.exponent_of("mu");
          if (u.size() <= e) u.resize(e + 1);
          u[e] += c;
        }
        // mu != 0: drop the powers of mu dividing the equation.
        std::size_t low = 0;
        while (low < u.size() && u[low].is_zero()) ++low;
        u.erase(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(low));
        trim(u);
        if (!u.empty()) equations.push_back(std::move(u));
      }
    }
  }

  InnerResult res;
  if (equations.empty()) {
    res.status = InnerResult::Status::witness;
    res.mu = Scalar(1);
    res.detail = "every probe equation vanishes identically";
    return res;
  }
  UPoly g = equations.front();
  for (std::size_t i = 1; i < equations.size(); ++i) g = gcd(g, equations[i]);
  if (g.size() <= 1) {
    res.status = InnerResult::Status::refuted;
    res.detail = "probe equations have no common nonzero root";
    return res;
  }
  if (g.size() > 2) {
    res.status = InnerResult::Status::unknown;
    res.detail = "common factor of degree " + std::to_string(g.size() - 1) + " in mu";
    return res;
  }
  res.mu = -g[0] / g[1];
  for (const auto& e : equations)
    if (!evaluate(e, res.mu).is_zero()) throw std::logic_error("inner_witness: gcd root fails an equation");
  res.status = InnerResult::Status::witness;
  res.detail = "mu = " + res.mu.to_string() + " satisfies " + std::to_string(equations.size()) + " probe equations";
  return res;
}

}  // namespace vf
