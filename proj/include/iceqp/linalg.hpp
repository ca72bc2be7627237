#pragma once

#include <map>
#include <utility>
#include <vector>

#include "iceqp/rational.hpp"

namespace iceqp {

/// Sparse vector: (column, value) pairs, sorted by column, no zeros.
using SparseRow = std::vector<std::pair<int, Rational>>;

inline SparseRow make_row(std::map<int, Rational> entries) {
  SparseRow r;
  for (auto& [c, v] : entries)
    if (v != 0) r.emplace_back(c, std::move(v));
  return r;
}

/// a + s·b
inline SparseRow axpy(const SparseRow& a, const Rational& s, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, s * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second + s * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

/// Row echelon form with pivots at the lowest column of each row, built
/// incrementally. Rows are stored with pivot coefficient 1.
class Echelon {
 public:
  explicit Echelon(int columns = 0) : pivot_of_(columns, -1) {}

  int columns() const { return static_cast<int>(pivot_of_.size()); }
  int rank() const { return static_cast<int>(rows_.size()); }
  bool is_pivot(int col) const { return pivot_of_[col] >= 0; }
  const std::vector<SparseRow>& rows() const { return rows_; }

  /// Inserts v; returns the index of the new stored row, or -1 if v was
  /// already in the span.
  int insert(SparseRow v) {
    while (!v.empty()) {
      int c = v.front().first;
      int r = pivot_of_[c];
      if (r < 0) {
        Rational inv = 1 / v.front().second;
        for (auto& [col, x] : v) x *= inv;
        pivot_of_[c] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(v));
        return pivot_of_[c];
      }
      v = axpy(v, -v.front().second, rows_[r]);
    }
    return -1;
  }

  /// Fully reduced representative of v modulo the span: supported on
  /// non-pivot columns only.
  SparseRow reduce(const SparseRow& v) const {
    std::map<int, Rational> work(v.begin(), v.end());
    SparseRow out;
    while (!work.empty()) {
      auto it = work.begin();
      int c = it->first;
      Rational x = it->second;
      work.erase(it);
      if (x == 0) continue;
      int r = pivot_of_[c];
      if (r < 0) {
        out.emplace_back(c, x);
        continue;
      }
      for (std::size_t k = 1; k < rows_[r].size(); ++k) {
        auto& [col, y] = rows_[r][k];
        work[col] -= x * y;
      }
    }
    return out;
  }

 private:
  std::vector<int> pivot_of_;
  std::vector<SparseRow> rows_;
};

}  // namespace iceqp
