#pragma once

#include "vf/parampoly.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <vector>

namespace vf {

inline bool field_is_zero(const mpq_class& x) { return sgn(x) == 0; }
inline bool field_is_zero(const Scalar& x) { return x.is_zero(); }
inline mpq_class field_inverse(const mpq_class& x) { return 1 / x; }
inline Scalar field_inverse(const Scalar& x) { return x.inverse(); }

template <class F>
using SparseVec = std::map<std::size_t, F>;

/// Row-reduced echelon form of a growing set of sparse vectors. The pivot of
/// each row is its smallest column; rows are kept fully reduced, so every
/// pivot column is zero in all other rows.
template <class F>
class Rref {
 public:
  std::size_t rank() const { return rows_.size(); }
  const std::map<std::size_t, SparseVec<F>>& rows() const { return rows_; }
  bool is_pivot(std::size_t col) const { return rows_.count(col) != 0; }

  /// Remainder of v after eliminating all pivot columns.
  SparseVec<F> reduce(const SparseVec<F>& v) const {
    SparseVec<F> out = v;
    for (const auto& [col, c] : v) {
      auto it = rows_.find(col);
      if (it == rows_.end()) continue;
      const F factor = c;
      for (const auto& [k, x] : it->second) axpy(out, k, -(factor * x));
    }
    return out;
  }

  bool contains(const SparseVec<F>& v) const { return reduce(v).empty(); }

  /// Adds v to the span; returns true when the rank grew.
  bool insert(const SparseVec<F>& v) {
    SparseVec<F> r = reduce(v);
    if (r.empty()) return false;
    const std::size_t pivot = r.begin()->first;
    const F inv = field_inverse(r.begin()->second);
    for (auto& [k, x] : r) x *= inv;
    for (auto& [p, row] : rows_) {
      auto it = row.find(pivot);
      if (it == row.end()) continue;
      const F factor = it->second;
      for (const auto& [k, x] : r) axpy(row, k, -(factor * x));
    }
    rows_.emplace(pivot, std::move(r));
    return true;
  }

  /// Basis of {x : row . x = 0 for all rows} in `columns` dimensions, one
  /// vector per free column in ascending order.
  std::vector<SparseVec<F>> nullspace(std::size_t columns) const {
    std::vector<SparseVec<F>> out;
    for (std::size_t f = 0; f < columns; ++f) {
      if (rows_.count(f)) continue;
      SparseVec<F> v;
      v.emplace(f, F(1));
      for (const auto& [p, row] : rows_) {
        auto it = row.find(f);
        if (it != row.end()) v.emplace(p, -it->second);
      }
      out.push_back(std::move(v));
    }
    return out;
  }

  static void axpy(SparseVec<F>& v, std::size_t k, const F& delta) {
    if (field_is_zero(delta)) return;
    auto [it, inserted] = v.try_emplace(k, delta);
    if (!inserted) {
      it->second += delta;
      if (field_is_zero(it->second)) v.erase(it);
    }
  }

 private:
  std::map<std::size_t, SparseVec<F>> rows_;
};

}  // namespace vf
