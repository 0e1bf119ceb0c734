#pragma once

// Exact rational linear algebra on sparse column vectors. The workloads here
// are tall and narrow (many monomial rows, few candidate columns), so rank
// and kernel computations run as incremental column reduction against a set
// of normalized pivot columns.

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "weylhom/monomial.hpp"
#include "weylhom/polynomial.hpp"
#include "weylhom/rational.hpp"

namespace weylhom {

// Entries sorted by descending key order (leading entry first), no zeros.
template <class Key>
struct SparseVec {
  std::vector<std::pair<Key, Rational>> terms;

  bool is_zero() const { return terms.empty(); }
};

// a + c*b, both sorted descending by Less-greater convention.
template <class Key, class Greater>
SparseVec<Key> sparse_axpy(const SparseVec<Key>& a, const Rational& c, const SparseVec<Key>& b,
                           const Greater& gt) {
  SparseVec<Key> r;
  r.terms.reserve(a.terms.size() + b.terms.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() && j < b.terms.size()) {
    if (gt(a.terms[i].first, b.terms[j].first)) {
      r.terms.push_back(a.terms[i++]);
    } else if (gt(b.terms[j].first, a.terms[i].first)) {
      r.terms.emplace_back(b.terms[j].first, c * b.terms[j].second);
      ++j;
    } else {
      Rational v = a.terms[i].second + c * b.terms[j].second;
      if (v != 0) r.terms.emplace_back(a.terms[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  for (; i < a.terms.size(); ++i) r.terms.push_back(a.terms[i]);
  for (; j < b.terms.size(); ++j) r.terms.emplace_back(b.terms[j].first, c * b.terms[j].second);
  return r;
}

// Incremental Gaussian elimination over columns. Feeding a column either
// grows the pivot set (independent) or, with tracking enabled, returns the
// exact combination of previously fed columns it equals, i.e. a kernel vector
// of the column matrix.
template <class Key, class Greater>
class ColumnReducer {
 public:
  explicit ColumnReducer(bool track_combinations = false, Greater gt = Greater())
      : track_(track_combinations), gt_(gt) {}

  // Returns the kernel combination (lambda over all columns fed so far, with
  // lambda[this] = 1) when the column is dependent, nullopt when independent.
  std::optional<std::vector<Rational>> feed(SparseVec<Key> col) {
    const int my_index = fed_++;
    std::vector<Rational> combo;
    if (track_) {
      combo.assign(static_cast<std::size_t>(my_index) + 1, Rational(0));
      combo.back() = 1;
    }
    while (!col.is_zero()) {
      auto it = pivot_by_lead_.find(col.terms.front().first);
      if (it == pivot_by_lead_.end()) {
        // Independent: normalize to leading coefficient 1 and keep as pivot.
        const Rational lead = col.terms.front().second;
        for (auto& [k, v] : col.terms) v /= lead;
        if (track_) {
          for (auto& v : combo) v /= lead;
        }
        pivot_by_lead_.emplace(col.terms.front().first, pivots_.size());
        pivots_.push_back(Pivot{std::move(col), std::move(combo)});
        return std::nullopt;
      }
      const Pivot& piv = pivots_[it->second];
      const Rational c = -col.terms.front().second;  // pivot lead is 1
      col = sparse_axpy(col, c, piv.col, gt_);
      if (track_) {
        if (combo.size() < piv.combo.size()) combo.resize(piv.combo.size(), Rational(0));
        for (std::size_t k = 0; k < piv.combo.size(); ++k) combo[k] += c * piv.combo[k];
      }
    }
    if (track_) combo.resize(static_cast<std::size_t>(fed_), Rational(0));
    return combo;
  }

  int rank() const { return static_cast<int>(pivots_.size()); }
  int fed() const { return fed_; }

 private:
  struct Pivot {
    SparseVec<Key> col;
    std::vector<Rational> combo;
  };

  bool track_;
  Greater gt_;
  std::vector<Pivot> pivots_;
  std::map<Key, std::size_t, Greater> pivot_by_lead_;
  int fed_ = 0;
};

using MonomialVec = SparseVec<Monomial>;
using MonomialReducer = ColumnReducer<Monomial, MonomialGrlexGreater>;

inline MonomialVec to_sparse_vec(const Polynomial& p) {
  MonomialVec v;
  auto terms = p.sorted_terms();
  v.terms.assign(terms.begin(), terms.end());
  return v;
}

// In-place reduced row-echelon form; pivots get coefficient 1 and their
// columns are cleared above and below. Returns the pivot column of each
// surviving nonzero row.
inline std::vector<int> rref_rows(std::vector<std::vector<Rational>>& rows) {
  std::vector<int> pivot_cols;
  if (rows.empty()) return pivot_cols;
  const std::size_t ncols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const Rational lead = rows[r][c];
    for (std::size_t k = c; k < ncols; ++k) rows[r][k] /= lead;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t k = c; k < ncols; ++k) rows[i][k] -= f * rows[r][k];
    }
    pivot_cols.push_back(static_cast<int>(c));
    ++r;
  }
  rows.resize(r);
  return pivot_cols;
}

}  // namespace weylhom
