// Exact sparse linear algebra: incremental echelon basis with solution tracking.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "eqlef/error.hpp"

namespace eqlef {

template <class T>
using SparseVector = std::map<std::size_t, T>;

/// Assigns dense consecutive indices to arbitrary ordered keys.
template <class Key>
class Indexer {
 public:
  std::size_t operator()(const Key& k) {
    auto [it, inserted] = index_.try_emplace(k, keys_.size());
    if (inserted) keys_.push_back(k);
    return it->second;
  }
  std::optional<std::size_t> find(const Key& k) const {
    auto it = index_.find(k);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  const Key& key(std::size_t i) const { return keys_[i]; }
  std::size_t size() const { return keys_.size(); }

 private:
  std::map<Key, std::size_t> index_;
  std::vector<Key> keys_;
};

/// Maintains an echelon basis of the span of the columns added so far.
///
/// Every stored pivot vector has leading (smallest) row equal to its pivot row
/// and leading coefficient 1, and remembers its expression as a combination of
/// the original columns. reduce() eliminates every pivot row from a vector, so
/// the residual is zero iff the vector lies in the span.
template <class T>
class SparseEliminator {
 public:
  struct Reduction {
    SparseVector<T> residual;
    SparseVector<T> combination;  // v = residual + sum combination[j] * column_j
  };

  /// Adds a column; returns true if it enlarged the span.
  bool add_column(const SparseVector<T>& v) {
    const std::size_t id = num_columns_++;
    Reduction r = reduce(v);
    if (r.residual.empty()) return false;
    // The new pivot combination expresses residual = v - sum comb * cols.
    SparseVector<T> comb;
    for (auto& [j, c] : r.combination) comb[j] = -c;
    comb[id] = T(1);
    const std::size_t row = r.residual.begin()->first;
    const T inv = T(1) / r.residual.begin()->second;
    for (auto& [i, c] : r.residual) c *= inv;
    for (auto& [j, c] : comb) c *= inv;
    pivots_.emplace(row, Pivot{std::move(r.residual), std::move(comb)});
    return true;
  }

  Reduction reduce(const SparseVector<T>& v) const {
    Reduction out{v, {}};
    auto& res = out.residual;
    auto it = res.begin();
    while (it != res.end()) {
      auto p = pivots_.find(it->first);
      if (p == pivots_.end()) {
        ++it;
        continue;
      }
      const T f = it->second;
      const std::size_t row = it->first;
      for (const auto& [i, c] : p->second.vec) {
        auto [jt, inserted] = res.try_emplace(i, T(0));
        jt->second -= f * c;
        if (jt->second == T(0)) res.erase(jt);
      }
      for (const auto& [j, c] : p->second.combination) {
        auto [jt, inserted] = out.combination.try_emplace(j, T(0));
        jt->second += f * c;
        if (jt->second == T(0)) out.combination.erase(jt);
      }
      it = res.upper_bound(row);
    }
    return out;
  }

  std::size_t rank() const { return pivots_.size(); }
  std::size_t num_columns() const { return num_columns_; }

 private:
  struct Pivot {
    SparseVector<T> vec;
    SparseVector<T> combination;
  };
  std::map<std::size_t, Pivot> pivots_;
  std::size_t num_columns_ = 0;
};

/// Solves sum_j x_j * columns[j] = rhs exactly; nullopt when inconsistent.
template <class T>
std::optional<SparseVector<T>> solve_sparse(const std::vector<SparseVector<T>>& columns, const SparseVector<T>& rhs) {
  SparseEliminator<T> elim;
  for (const auto& c : columns) elim.add_column(c);
  auto r = elim.reduce(rhs);
  if (!r.residual.empty()) return std::nullopt;
  return r.combination;
}

}  // namespace eqlef
