#pragma once

// Exact sparse rational matrices; rank and kernels by fraction-free
// (Bareiss) elimination over the integers.

#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "bcr/error.hpp"
#include "bcr/rational.hpp"

namespace bcr {

using RationalVector = std::vector<Rational>;

class SparseRationalMatrix {
 public:
  using Key = std::pair<std::size_t, std::size_t>;

  SparseRationalMatrix() = default;
  SparseRationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }
  const std::map<Key, Rational>& entries() const noexcept { return entries_; }

  Rational get(std::size_t i, std::size_t j) const {
    auto it = entries_.find({i, j});
    return it == entries_.end() ? Rational(0) : it->second;
  }

  void set(std::size_t i, std::size_t j, const Rational& value) {
    check(i, j);
    if (value == 0) {
      entries_.erase({i, j});
    } else {
      entries_[{i, j}] = value;
    }
  }

  void add(std::size_t i, std::size_t j, const Rational& value) { set(i, j, get(i, j) + value); }

  friend bool operator==(const SparseRationalMatrix&, const SparseRationalMatrix&) = default;

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw Error(ErrorCode::DanglingVertexLabel, "matrix index out of range");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::map<Key, Rational> entries_;
};

inline RationalVector multiply(const SparseRationalMatrix& m, const RationalVector& v) {
  RationalVector out(m.rows(), Rational(0));
  for (const auto& [key, value] : m.entries()) out[key.first] += value * v.at(key.second);
  return out;
}

inline SparseRationalMatrix multiply(const SparseRationalMatrix& a, const SparseRationalMatrix& b) {
  std::vector<std::vector<std::pair<std::size_t, Rational>>> b_rows(b.rows());
  for (const auto& [key, value] : b.entries()) b_rows[key.first].emplace_back(key.second, value);
  SparseRationalMatrix out(a.rows(), b.cols());
  for (const auto& [key, value] : a.entries()) {
    for (const auto& [j, w] : b_rows[key.second]) out.add(key.first, j, value * w);
  }
  return out;
}

namespace detail {

struct Echelon {
  std::vector<std::vector<Integer>> rows;  // first `pivots.size()` rows are the echelon rows
  std::vector<std::size_t> pivots;         // pivot column of each echelon row
};

inline std::vector<std::vector<Integer>> integer_rows(const SparseRationalMatrix& m) {
  std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols(), 0));
  std::vector<Integer> lcm(m.rows(), 1);
  for (const auto& [key, value] : m.entries()) mpz_lcm(lcm[key.first].get_mpz_t(), lcm[key.first].get_mpz_t(), value.get_den_mpz_t());
  for (const auto& [key, value] : m.entries()) {
    a[key.first][key.second] = value.get_num() * (lcm[key.first] / value.get_den());
  }
  return a;
}

inline Echelon bareiss(const SparseRationalMatrix& m) {
  Echelon out{integer_rows(m), {}};
  auto& a = out.rows;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Integer previous = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      if (pivot == rows || mpz_sizeinbase(a[i][c].get_mpz_t(), 2) < mpz_sizeinbase(a[pivot][c].get_mpz_t(), 2)) {
        pivot = i;
      }
    }
    if (pivot == rows) continue;
    std::swap(a[r], a[pivot]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), previous.get_mpz_t());
      }
      a[i][c] = 0;
    }
    previous = a[r][c];
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

}  // namespace detail

inline std::size_t rank(const SparseRationalMatrix& m) { return detail::bareiss(m).pivots.size(); }

/// Basis of {v : M v = 0}: one vector per free column, with that coordinate
/// 1 and the other free coordinates 0.
inline std::vector<RationalVector> kernel_basis(const SparseRationalMatrix& m) {
  const detail::Echelon e = detail::bareiss(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector x(cols, Rational(0));
    x[f] = 1;
    for (std::size_t r = e.pivots.size(); r-- > 0;) {
      const auto& row = e.rows[r];
      const std::size_t p = e.pivots[r];
      Rational sum = 0;
      for (std::size_t j = p + 1; j < cols; ++j) {
        if (row[j] != 0 && x[j] != 0) sum += Rational(row[j]) * x[j];
      }
      x[p] = -sum / Rational(row[p]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

namespace detail {

/// Solves the dense system A a = b; free unknowns are set to zero.
inline std::optional<RationalVector> solve_dense(std::vector<RationalVector> a, RationalVector b,
                                                 std::size_t unknowns) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < unknowns && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < unknowns; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (b[i] != 0) return std::nullopt;
  }
  RationalVector x(unknowns, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = b[i] / a[i][pivots[i]];
  return x;
}

}  // namespace detail

/// A kernel vector with the pinned coordinates (index, value), or nullopt.
/// Without pins the zero vector is returned.
inline std::optional<RationalVector> solve_affine(const SparseRationalMatrix& m,
                                                  const std::vector<std::pair<std::size_t, Rational>>& pins) {
  const auto kernel = kernel_basis(m);
  std::vector<RationalVector> a;
  RationalVector b;
  for (const auto& [index, value] : pins) {
    if (index >= m.cols()) throw Error(ErrorCode::DanglingVertexLabel, "pinned coordinate out of range");
    RationalVector row;
    for (const auto& v : kernel) row.push_back(v[index]);
    a.push_back(std::move(row));
    b.push_back(value);
  }
  const auto coefficients = detail::solve_dense(std::move(a), std::move(b), kernel.size());
  if (!coefficients) return std::nullopt;
  RationalVector x(m.cols(), Rational(0));
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    if ((*coefficients)[i] == 0) continue;
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += (*coefficients)[i] * kernel[i][j];
  }
  return x;
}

}  // namespace bcr
