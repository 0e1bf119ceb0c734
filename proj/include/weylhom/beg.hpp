#pragma once

// The Berest-Etingof-Ginzburg operator
//
//     E(P) = R((z.y - t.x) * P(x+z, y+t)),
//
// its restricted forms E_int (x := 0, t_2..t_n := 0) and E' (additionally
// y_2..y_n := 0), and the exact per-degree solver for E(P) = 0 over the
// invariant hw-0 basis. Solutions of E(P) = 0 in degree j are dual to the
// degree-j slice of the Poisson homology space HP_0 of the invariant ring.

#include <array>
#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "weylhom/errors.hpp"
#include "weylhom/linalg.hpp"
#include "weylhom/parallel.hpp"
#include "weylhom/sl2.hpp"
#include "weylhom/text.hpp"
#include "weylhom/weyl.hpp"

namespace weylhom {

// ---------------------------------------------------------------------------
// Diagonal orbit compression.
//
// For W-invariant P the output E(P) is invariant under the simultaneous
// signed-permutation action on all four blocks (permute x, y, z, t with the
// same group element): the prefactor z.y - t.x and the shifted P both are,
// and averaging over the group preserves that. A monomial orbit under this
// action is a permutation of the per-index exponent columns
// (x_i, y_i, z_i, t_i), so E(P) is stored on the column-sorted representative
// of each orbit only. This cuts memory by up to n! on the rank-4 runs.
// ---------------------------------------------------------------------------

inline Monomial diag_canonical(const Monomial& m) {
  const int n = m.rank();
  std::array<std::array<std::uint8_t, 4>, kMaxRank> cols;
  for (int i = 0; i < n; ++i) {
    cols[static_cast<std::size_t>(i)] = {m.raw(i), m.raw(n + i), m.raw(2 * n + i),
                                         m.raw(3 * n + i)};
  }
  std::sort(cols.begin(), cols.begin() + n, std::greater<>());
  Monomial r(n);
  for (int i = 0; i < n; ++i) {
    const auto& c = cols[static_cast<std::size_t>(i)];
    r.set_raw(i, c[0]);
    r.set_raw(n + i, c[1]);
    r.set_raw(2 * n + i, c[2]);
    r.set_raw(3 * n + i, c[3]);
  }
  return r;
}

inline Integer diag_orbit_size(const Monomial& canon) {
  const int n = canon.rank();
  Integer size = factorial(static_cast<unsigned long>(n));
  int run = 1;
  auto col = [&](int i) {
    return std::array<std::uint8_t, 4>{canon.raw(i), canon.raw(n + i), canon.raw(2 * n + i),
                                       canon.raw(3 * n + i)};
  };
  for (int i = 1; i < n; ++i) {
    if (col(i) == col(i - 1)) {
      ++run;
      size /= run;
    } else {
      run = 1;
    }
  }
  return size;
}

// Applies an index permutation to all four blocks simultaneously.
inline Monomial permute_all(const Monomial& m, const std::array<std::uint8_t, kMaxRank>& sigma) {
  const int n = m.rank();
  Monomial im(n);
  for (int j = 0; j < n; ++j) {
    for (int b = 0; b < 4; ++b) im.set_raw(b * n + j, m.raw(b * n + sigma[static_cast<std::size_t>(j)]));
  }
  return im;
}

// A diagonal-invariant polynomial stored on canonical orbit representatives;
// the stored value is the true coefficient of the representative monomial.
class CompressedPoly {
 public:
  explicit CompressedPoly(int rank) : rank_(rank) {}

  int rank() const { return rank_; }
  bool is_zero() const { return c_.empty(); }
  std::size_t bucket_count() const { return c_.size(); }
  const Polynomial::TermMap& buckets() const { return c_; }

  void add_raw(const Monomial& canon, const Rational& v) {
    auto [it, inserted] = c_.emplace(canon, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) c_.erase(it);
    }
  }

  // Divides every bucket by n! * |orbit| to turn raw accumulated sums into
  // true coefficients.
  void finalize() {
    const Rational nf(factorial(static_cast<unsigned long>(rank_)));
    for (auto& [m, v] : c_) v /= nf * Rational(diag_orbit_size(m));
  }

  void merge_raw(const CompressedPoly& o) {
    for (const auto& [m, v] : o.c_) add_raw(m, v);
  }

  Polynomial expand() const {
    Polynomial out(rank_);
    const auto perms = index_permutations(rank_);
    for (const auto& [m, v] : c_) {
      std::unordered_set<Monomial, MonomialHash> seen;
      for (const auto& sigma : perms) {
        Monomial im = permute_all(m, sigma);
        if (seen.insert(im).second) out.add_term(im, v);
      }
    }
    return out;
  }

  // The x/y coefficient of an exact z/t monomial, without full expansion.
  Polynomial zt_coefficient(const Monomial& zt) const {
    if (!zt.zt_only()) throw std::invalid_argument("zt_coefficient: monomial must be z/t only");
    Polynomial out(rank_);
    const int ztdeg = zt.degree();
    const auto perms = index_permutations(rank_);
    for (const auto& [m, v] : c_) {
      if (m.zt_degree() != ztdeg) continue;
      std::unordered_set<Monomial, MonomialHash> seen;
      for (const auto& sigma : perms) {
        Monomial im = permute_all(m, sigma);
        if (!seen.insert(im).second) continue;
        if (im.zt_part() == zt) out.add_term(im.xy_part(), v);
      }
    }
    return out;
  }

  MonomialVec to_sparse_vec() const {
    std::vector<std::pair<Monomial, Rational>> v(c_.begin(), c_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      return Monomial::compare_grlex(a.first, b.first) > 0;
    });
    MonomialVec out;
    out.terms = std::move(v);
    return out;
  }

 private:
  int rank_;
  Polynomial::TermMap c_;
};

// ---------------------------------------------------------------------------
// The full operator.
// ---------------------------------------------------------------------------

// E(P) in compressed form. The prefactor is distributed before the orbit
// average, each product term is pruned by the sign-change parity test before
// the n! symmetrization, and inserts land on diagonal orbit representatives.
inline CompressedPoly beg_apply_compressed(const WeylGroup& w, const Polynomial& p,
                                           int threads = 1) {
  if (w.rank() != p.rank()) throw std::invalid_argument("beg_apply: rank mismatch");
  if (!p.xy_only()) throw std::invalid_argument("beg_apply: input must involve x/y only");
  if (!is_invariant(w, p)) throw std::invalid_argument("beg_apply: input must be W-invariant");
  const int n = w.rank();
  const auto perms = index_permutations(n);

  std::vector<std::pair<Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
  const int nchunks = std::min<int>(threads, static_cast<int>(terms.size()) + 1);
  std::vector<CompressedPoly> partial(static_cast<std::size_t>(std::max(nchunks, 1)),
                                      CompressedPoly(n));

  parallel_for(std::max(nchunks, 1), threads, [&](int chunk) {
    CompressedPoly& acc = partial[static_cast<std::size_t>(chunk)];
    std::vector<int> slots;
    for (std::size_t ti = static_cast<std::size_t>(chunk); ti < terms.size();
         ti += static_cast<std::size_t>(std::max(nchunks, 1))) {
      const Monomial& m = terms[ti].first;
      const Rational& c = terms[ti].second;
      slots.clear();
      for (int s = 0; s < 2 * n; ++s) {
        if (m.raw(s) > 0) slots.push_back(s);
      }
      Monomial cur = m;
      auto emit = [&](const Monomial& sm, const Rational& base) {
        // Distribute z_i y_i - t_i x_i, prune, symmetrize.
        for (int i = 1; i <= n; ++i) {
          for (int half = 0; half < 2; ++half) {
            Monomial pm = sm;
            if (half == 0) {
              pm.set_exp(VarBlock::Y, i, pm.exp(VarBlock::Y, i) + 1);
              pm.set_exp(VarBlock::Z, i, pm.exp(VarBlock::Z, i) + 1);
            } else {
              pm.set_exp(VarBlock::X, i, pm.exp(VarBlock::X, i) + 1);
              pm.set_exp(VarBlock::T, i, pm.exp(VarBlock::T, i) + 1);
            }
            if (sign_kill_test(pm, w)) continue;
            const Rational v = half == 0 ? base : -base;
            for (const auto& sigma : perms) {
              acc.add_raw(diag_canonical(permute_xy(pm, sigma)), v);
            }
          }
        }
      };
      auto walk = [&](auto&& self, std::size_t k, const Integer& mult) -> void {
        if (k == slots.size()) {
          emit(cur, c * Rational(mult));
          return;
        }
        const int s = slots[k];
        const int e = m.raw(s);
        for (int moved = 0; moved <= e; ++moved) {
          cur.set_raw(s, static_cast<std::uint8_t>(e - moved));
          cur.set_raw(s + 2 * n, static_cast<std::uint8_t>(moved));
          self(self, k + 1, mult * binomial(e, moved));
        }
        cur.set_raw(s, static_cast<std::uint8_t>(e));
        cur.set_raw(s + 2 * n, 0);
      };
      walk(walk, 0, Integer(1));
    }
  });

  CompressedPoly out = std::move(partial.front());
  for (std::size_t k = 1; k < partial.size(); ++k) out.merge_raw(partial[k]);
  out.finalize();
  return out;
}

inline Polynomial beg_apply(const WeylGroup& w, const Polynomial& p, int threads = 1) {
  return beg_apply_compressed(w, p, threads).expand();
}

// ---------------------------------------------------------------------------
// Restricted forms. Both substitutions commute with the group action on x/y,
// so they can be pushed through the operator: only terms of
// (sum_i z_i y_i) * P(z, y + t_1 e_1) survive, and the symmetrization
// collapses accordingly. The test suite checks these fused forms against
// honest restrictions of the full operator.
// ---------------------------------------------------------------------------

namespace detail {

// Streams the terms of P(z, y + t1 e1): the x block moves to z wholesale and
// y1 splits binomially into y1/t1.
template <class Fn>
inline void for_each_restricted_shift_term(const Polynomial& p, Fn&& fn) {
  const int n = p.rank();
  for (const auto& [m, c] : p.terms()) {
    Monomial base(n);
    for (int i = 1; i <= n; ++i) {
      base.set_exp(VarBlock::Z, i, m.exp(VarBlock::X, i));
      if (i >= 2) base.set_exp(VarBlock::Y, i, m.exp(VarBlock::Y, i));
    }
    const int b1 = m.exp(VarBlock::Y, 1);
    for (int k = 0; k <= b1; ++k) {
      Monomial mm = base;
      mm.set_exp(VarBlock::Y, 1, k);
      mm.set_exp(VarBlock::T, 1, b1 - k);
      fn(mm, c * Rational(binomial(static_cast<unsigned long>(b1), static_cast<unsigned long>(k))));
    }
  }
}

}  // namespace detail

// E_int(P): E(P) after x := 0 and t_2 = ... = t_n := 0 (y, z, t1 kept).
inline Polynomial beg_int(const WeylGroup& w, const Polynomial& p) {
  if (w.rank() != p.rank()) throw std::invalid_argument("beg_int: rank mismatch");
  if (!p.xy_only()) throw std::invalid_argument("beg_int: input must involve x/y only");
  const int n = w.rank();
  const auto perms = index_permutations(n);
  Polynomial out(n);
  detail::for_each_restricted_shift_term(p, [&](const Monomial& mm, const Rational& c) {
    for (int i = 1; i <= n; ++i) {
      Monomial pm = mm;
      pm.set_exp(VarBlock::Y, i, mm.exp(VarBlock::Y, i) + 1);
      pm.set_exp(VarBlock::Z, i, mm.exp(VarBlock::Z, i) + 1);
      if (sign_kill_test(pm, w)) continue;
      for (const auto& sigma : perms) out.add_term(permute_xy(pm, sigma), c);
    }
  });
  out *= Rational(1) / Rational(factorial(static_cast<unsigned long>(n)));
  return out;
}

// E'(P): E(P) restricted to the variables y1, z1..zn, t1. A surviving term
// needs its y support concentrated on one index k, which only the z_k y_k
// prefactor can extend, and exactly (n-1)! permutations then map k to 1.
inline Polynomial beg_prime(const WeylGroup& w, const Polynomial& p) {
  if (w.rank() != p.rank()) throw std::invalid_argument("beg_prime: rank mismatch");
  if (!p.xy_only()) throw std::invalid_argument("beg_prime: input must involve x/y only");
  const int n = w.rank();
  Polynomial out(n);
  detail::for_each_restricted_shift_term(p, [&](const Monomial& mm, const Rational& c) {
    int k = 0;
    bool multi = false;
    for (int i = 1; i <= n; ++i) {
      if (mm.exp(VarBlock::Y, i) == 0) continue;
      if (k != 0) {
        multi = true;
        break;
      }
      k = i;
    }
    if (multi) return;
    const int klo = k == 0 ? 1 : k, khi = k == 0 ? n : k;
    for (int i = klo; i <= khi; ++i) {
      Monomial pm = mm;
      pm.set_exp(VarBlock::Y, i, mm.exp(VarBlock::Y, i) + 1);
      pm.set_exp(VarBlock::Z, i, mm.exp(VarBlock::Z, i) + 1);
      if (sign_kill_test(pm, w)) continue;
      Monomial outm(n);
      for (int q = 1; q <= n; ++q) outm.set_exp(VarBlock::Z, q, pm.exp(VarBlock::Z, q));
      outm.set_exp(VarBlock::T, 1, pm.exp(VarBlock::T, 1));
      outm.set_exp(VarBlock::Y, 1, pm.exp(VarBlock::Y, i));
      out.add_term(outm, c / n);
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// The sl2 slices of E(P) and the solver.
// ---------------------------------------------------------------------------

// The x/y coefficients of z1 t1, t1^2 and z1^2 in E(P). These equal
// -(1/n){H,P}, -(1/n){E,P} and +(1/n){F,P}; the signs are pinned by a brute
// force computation at rank 2 in the test suite.
inline std::array<Polynomial, 3> sl2_coefficients(const WeylGroup& w, const Polynomial& p,
                                                  int threads = 1) {
  const CompressedPoly e = beg_apply_compressed(w, p, threads);
  const int n = w.rank();
  Monomial z1t1(n), t1sq(n), z1sq(n);
  z1t1.set_exp(VarBlock::Z, 1, 1);
  z1t1.set_exp(VarBlock::T, 1, 1);
  t1sq.set_exp(VarBlock::T, 1, 2);
  z1sq.set_exp(VarBlock::Z, 1, 2);
  return {e.zt_coefficient(z1t1), e.zt_coefficient(t1sq), e.zt_coefficient(z1sq)};
}

namespace detail {

// Cross-check of the computed operator value against the sl2 slice
// identities. A failure here is a bug in the operator, never a property of
// the input, so it aborts loudly.
inline void check_sl2_slices(const WeylGroup& w, const Polynomial& p, const CompressedPoly& e) {
  const int n = w.rank();
  const Sl2Triple t = sl2_generators(n);
  Monomial z1t1(n), t1sq(n), z1sq(n);
  z1t1.set_exp(VarBlock::Z, 1, 1);
  z1t1.set_exp(VarBlock::T, 1, 1);
  t1sq.set_exp(VarBlock::T, 1, 2);
  z1sq.set_exp(VarBlock::Z, 1, 2);
  const Rational inv_n = rational(1, n);
  if (e.zt_coefficient(z1t1) != poisson_bracket(t.H, p) * -inv_n ||
      e.zt_coefficient(t1sq) != poisson_bracket(t.E, p) * -inv_n ||
      e.zt_coefficient(z1sq) != poisson_bracket(t.F, p) * inv_n) {
    throw internal_check_error("sl2 slice cross-check failed for " + w.name());
  }
}

}  // namespace detail

struct DegreeSolveResult {
  int degree = 0;
  Hw0Basis basis;  // candidate vectors, one per surviving word orbit
  // Solution combinations in reduced row-echelon form over basis.words
  // (pivot coefficient 1, words in enumeration order).
  std::vector<std::vector<Rational>> solution_rows;
  std::vector<Polynomial> solutions;
  bool full_fallback = false;  // the E' filter alone was not sufficient
};

// Solves E(P) = 0 in one even degree over the invariant hw-0 basis. Pipeline:
// (1) kernel of the cheap necessary condition E'(P) = 0, (2) full operator on
// each kernel vector, (3) if any fails, exact kernel of the full columns
// restricted to the E'-kernel span. Step (2)/(3) is mandatory: E' = 0 is
// necessary but not sufficient.
inline DegreeSolveResult solve_degree(const WeylGroup& w, int d, int threads = 1) {
  if (d < 0 || d % 2 != 0)
    throw std::invalid_argument("solve_degree: degree must be even and non-negative");
  DegreeSolveResult res;
  res.degree = d;
  res.basis = invariant_hw0_basis(w, d);
  const std::size_t m = res.basis.size();
  if (m == 0) return res;

  std::vector<Polynomial> prime_cols(m, Polynomial(w.rank()));
  parallel_for(static_cast<int>(m), threads,
               [&](int j) { prime_cols[static_cast<std::size_t>(j)] = beg_prime(w, res.basis.vectors[static_cast<std::size_t>(j)]); });

  MonomialReducer reducer(true);
  std::vector<std::vector<Rational>> kernel;
  for (std::size_t j = 0; j < m; ++j) {
    if (auto combo = reducer.feed(to_sparse_vec(prime_cols[j]))) {
      combo->resize(m, Rational(0));
      kernel.push_back(std::move(*combo));
    }
  }
  if (kernel.empty()) return res;

  auto combine = [&](const std::vector<Rational>& row) {
    Polynomial v(w.rank());
    for (std::size_t j = 0; j < m; ++j) {
      if (row[j] != 0) v += res.basis.vectors[j] * row[j];
    }
    return v;
  };

  std::vector<Polynomial> cand(kernel.size(), Polynomial(w.rank()));
  std::vector<CompressedPoly> full(kernel.size(), CompressedPoly(w.rank()));
  parallel_for(static_cast<int>(kernel.size()), threads, [&](int k) {
    cand[static_cast<std::size_t>(k)] = combine(kernel[static_cast<std::size_t>(k)]);
    full[static_cast<std::size_t>(k)] =
        beg_apply_compressed(w, cand[static_cast<std::size_t>(k)], 1);
  });
  for (std::size_t k = 0; k < kernel.size(); ++k) {
    detail::check_sl2_slices(w, cand[k], full[k]);
  }

  std::vector<std::vector<Rational>> rows;
  bool all_zero = true;
  for (const auto& f : full) all_zero = all_zero && f.is_zero();
  if (all_zero) {
    rows = kernel;
  } else {
    res.full_fallback = true;
    MonomialReducer full_reducer(true);
    for (std::size_t k = 0; k < kernel.size(); ++k) {
      if (auto mu = full_reducer.feed(full[k].to_sparse_vec())) {
        mu->resize(kernel.size(), Rational(0));
        std::vector<Rational> row(m, Rational(0));
        for (std::size_t k2 = 0; k2 < kernel.size(); ++k2) {
          if ((*mu)[k2] == 0) continue;
          for (std::size_t j = 0; j < m; ++j) row[j] += (*mu)[k2] * kernel[k2][j];
        }
        rows.push_back(std::move(row));
      }
    }
  }
  if (rows.empty()) return res;

  rref_rows(rows);
  res.solution_rows = rows;
  const Sl2Triple triple = sl2_generators(w.rank());
  for (const auto& row : res.solution_rows) {
    Polynomial v = combine(row);
    if (!is_hw0(v, triple))
      throw internal_check_error("solve_degree: solution is not annihilated by sl2");
    res.solutions.push_back(std::move(v));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Reports.
// ---------------------------------------------------------------------------

struct DegreeReport {
  int degree = 0;
  long long candidates = 0;
  long long solutions = 0;
  std::vector<std::string> basis;  // solution combinations in word coordinates
};

struct SolutionReport {
  std::string group;
  int max_degree = 0;
  std::vector<DegreeReport> degrees;
  long long hp0 = 0;
  long long hh0 = 0;
  std::vector<int> degrees_searched;
  long long elapsed_ms = 0;

  bool same_content(const SolutionReport& o) const {
    auto key = [](const SolutionReport& r) {
      return std::tuple(r.group, r.max_degree, r.hp0, r.hh0, r.degrees_searched);
    };
    if (key(*this) != key(o) || degrees.size() != o.degrees.size()) return false;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      const auto& a = degrees[i];
      const auto& b = o.degrees[i];
      if (std::tuple(a.degree, a.candidates, a.solutions, a.basis) !=
          std::tuple(b.degree, b.candidates, b.solutions, b.basis))
        return false;
    }
    return true;
  }
};

// No universal degree cap is known; the default searches one rung past the
// top degree 4(n-1) seen in every computed catalog.
inline int default_max_degree(int rank) { return 4 * (rank - 1) + 4; }

inline std::string combination_string(const std::vector<Rational>& row,
                                      const std::vector<PfaffianWord>& words) {
  std::string out;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] == 0) continue;
    const bool neg = row[j] < 0;
    Rational a = neg ? Rational(-row[j]) : row[j];
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const std::string ws = words[j].str();
    if (ws == "1") {
      out += to_string(a);
    } else if (a == 1) {
      out += ws;
    } else {
      out += to_string(a) + "*" + ws;
    }
  }
  return out.empty() ? "0" : out;
}

inline SolutionReport hp0_report(const WeylGroup& w, int max_degree, int threads = 1) {
  if (max_degree < 0 || max_degree % 2 != 0)
    throw std::invalid_argument("hp0_report: max_degree must be even and non-negative");
  const auto start = std::chrono::steady_clock::now();
  SolutionReport rep;
  rep.group = w.name();
  rep.max_degree = max_degree;
  rep.hh0 = hh0_dimension(w);
  for (int d = 0; d <= max_degree; d += 2) {
    rep.degrees_searched.push_back(d);
    DegreeSolveResult r = solve_degree(w, d, threads);
    DegreeReport dr;
    dr.degree = d;
    dr.candidates = static_cast<long long>(r.basis.size());
    dr.solutions = static_cast<long long>(r.solutions.size());
    for (const auto& row : r.solution_rows) dr.basis.push_back(combination_string(row, r.basis.words));
    rep.hp0 += dr.solutions;
    rep.degrees.push_back(std::move(dr));
  }
  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

}  // namespace weylhom
