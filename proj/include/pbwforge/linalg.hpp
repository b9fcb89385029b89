#pragma once

#include <cstdint>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pbw {

// Sparse vector keyed by column; zero entries are never stored. T needs
// + - * / unary -, is_zero() and inverse().
template <class T>
using SparseVec = std::map<std::uint64_t, T>;

template <class T>
void axpy(SparseVec<T>& v, const T& f, const SparseVec<T>& row) {
  // v -= f * row
  for (const auto& [k, r] : row) {
    auto it = v.find(k);
    if (it == v.end()) {
      v.emplace(k, -(f * r));
    } else {
      it->second -= f * r;
      if (it->second.is_zero()) v.erase(it);
    }
  }
}

template <class T>
void scale(SparseVec<T>& v, const T& f) {
  for (auto& [k, x] : v) x *= f;
}

template <class T>
bool sparse_is_zero(const SparseVec<T>& v) {
  return v.empty();
}

// Semi-echelon basis: each row has a distinct pivot column with entry 1,
// the pivot being the row's largest (High) or smallest key. Normal forms are
// unique: they vanish on every pivot column.
template <class T, bool High = true>
class Echelon {
 public:
  std::size_t rank() const { return rows_.size(); }
  const std::map<std::uint64_t, SparseVec<T>>& rows() const { return rows_; }
  bool is_pivot(std::uint64_t k) const { return rows_.count(k) != 0; }

  SparseVec<T> reduce(SparseVec<T> v) const {
    if (v.empty() || rows_.empty()) return v;
    if constexpr (High) {
      auto it = v.end();
      while (it != v.begin()) {
        --it;
        const std::uint64_t k = it->first;
        auto r = rows_.find(k);
        if (r != rows_.end()) {
          T f = it->second;
          axpy(v, f, r->second);  // only touches keys <= k
          it = v.lower_bound(k);
        }
      }
    } else {
      auto it = v.begin();
      while (it != v.end()) {
        const std::uint64_t k = it->first;
        auto r = rows_.find(k);
        if (r != rows_.end()) {
          T f = it->second;
          axpy(v, f, r->second);  // only touches keys >= k
          it = v.upper_bound(k);
        } else {
          ++it;
        }
      }
    }
    return v;
  }

  // Returns the pivot of the new row, or nullopt if v was dependent.
  std::optional<std::uint64_t> insert(SparseVec<T> v) {
    v = reduce(std::move(v));
    if (v.empty()) return std::nullopt;
    std::uint64_t p = High ? std::prev(v.end())->first : v.begin()->first;
    T inv = v.at(p).inverse();
    scale(v, inv);
    rows_.emplace(p, std::move(v));
    reduced_ = false;
    return p;
  }

  bool contains(const SparseVec<T>& v) const { return reduce(v).empty(); }

  // Back-substitutes so that pivot columns are zero in all other rows.
  void make_reduced() {
    if (reduced_) return;
    // Process pivots from the far end towards the pivot side.
    if constexpr (High) {
      for (auto it = rows_.begin(); it != rows_.end(); ++it) fully_reduce_row(it);
    } else {
      for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
        auto fwd = rows_.find(it->first);
        fully_reduce_row(fwd);
      }
    }
    reduced_ = true;
  }

 private:
  void fully_reduce_row(typename std::map<std::uint64_t, SparseVec<T>>::iterator it) {
    const std::uint64_t p = it->first;
    SparseVec<T>& row = it->second;
    SparseVec<T> rest;
    for (auto& [k, x] : row)
      if (k != p) rest.emplace(k, x);
    T one = row.at(p);
    // Rows with other pivots are already fully reduced at this point.
    SparseVec<T> red = reduce_excluding(std::move(rest), p);
    red.emplace(p, one);
    row = std::move(red);
  }

  SparseVec<T> reduce_excluding(SparseVec<T> v, std::uint64_t skip) const {
    for (auto it = v.begin(); it != v.end();) {
      const std::uint64_t k = it->first;
      auto r = rows_.find(k);
      if (k != skip && r != rows_.end()) {
        T f = it->second;
        axpy(v, f, r->second);
        it = v.begin();
      } else {
        ++it;
      }
    }
    return v;
  }

  std::map<std::uint64_t, SparseVec<T>> rows_;
  bool reduced_ = true;
};

// Result of row-reducing [M | c] with pivots chosen leftmost.
template <class T>
struct SolveResult {
  std::vector<std::size_t> pivots;                    // pivot column per solved row
  std::vector<std::vector<T>> reduced;                // reduced rows, length ncols
  std::vector<T> reduced_rhs;                         // matching right-hand sides
  std::vector<T> inconsistent;                        // nonzero rhs of zero rows
  std::vector<std::size_t> free_columns;
};

// Dense Gauss-Jordan on a small system; `zero` supplies the additive identity.
template <class T>
SolveResult<T> solve_dense(std::vector<std::vector<T>> m, std::vector<T> c, std::size_t ncols, const T& zero) {
  SolveResult<T> out;
  const std::size_t nrows = m.size();
  std::size_t r = 0;
  std::vector<bool> is_pivot(ncols, false);
  for (std::size_t col = 0; col < ncols && r < nrows; ++col) {
    std::size_t piv = r;
    while (piv < nrows && m[piv][col].is_zero()) ++piv;
    if (piv == nrows) continue;
    std::swap(m[piv], m[r]);
    std::swap(c[piv], c[r]);
    T inv = m[r][col].inverse();
    for (std::size_t j = col; j < ncols; ++j)
      if (!m[r][j].is_zero()) m[r][j] *= inv;
    c[r] *= inv;
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == r || m[i][col].is_zero()) continue;
      T f = m[i][col];
      for (std::size_t j = col; j < ncols; ++j)
        if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
      c[i] -= f * c[r];
    }
    is_pivot[col] = true;
    out.pivots.push_back(col);
    ++r;
  }
  for (std::size_t i = 0; i < r; ++i) {
    out.reduced.push_back(m[i]);
    out.reduced_rhs.push_back(c[i]);
  }
  for (std::size_t i = r; i < nrows; ++i)
    if (!c[i].is_zero()) out.inconsistent.push_back(c[i]);
  for (std::size_t j = 0; j < ncols; ++j)
    if (!is_pivot[j]) out.free_columns.push_back(j);
  (void)zero;
  return out;
}

// Basis of {u : M u = 0} for sparse rows over columns 0..ncols-1. Rows are
// split into connected components by shared columns so that block-diagonal
// systems are eliminated block by block.
template <class T>
std::vector<SparseVec<T>> kernel_basis(const std::vector<SparseVec<T>>& rows, std::uint64_t ncols, const T& one) {
  std::vector<std::uint64_t> parent(ncols);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::uint64_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& row : rows) {
    if (row.empty()) continue;
    std::uint64_t first = find(row.begin()->first);
    for (const auto& [k, val] : row) {
      std::uint64_t rk = find(k);
      if (rk != first) parent[rk] = first;
    }
  }
  std::map<std::uint64_t, std::vector<const SparseVec<T>*>> blocks;
  for (const auto& row : rows)
    if (!row.empty()) blocks[find(row.begin()->first)].push_back(&row);

  std::vector<SparseVec<T>> basis;
  std::vector<bool> pivot_col(ncols, false);
  std::map<std::uint64_t, Echelon<T, false>> done;
  for (auto& [root, members] : blocks) {
    Echelon<T, false> ech;
    for (const auto* row : members) ech.insert(*row);
    ech.make_reduced();
    for (const auto& [p, row] : ech.rows()) pivot_col[p] = true;
    done.emplace(root, std::move(ech));
  }
  for (std::uint64_t f = 0; f < ncols; ++f) {
    if (pivot_col[f]) continue;
    SparseVec<T> v;
    v.emplace(f, one);
    auto it = done.find(find(f));
    if (it != done.end())
      for (const auto& [p, row] : it->second.rows()) {
        auto e = row.find(f);
        if (e != row.end()) v.emplace(p, -e->second);
      }
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
std::size_t sparse_rank(const std::vector<SparseVec<T>>& rows) {
  Echelon<T, false> ech;
  for (const auto& r : rows) ech.insert(r);
  return ech.rank();
}

}  // namespace pbw
