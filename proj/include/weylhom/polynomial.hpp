#pragma once

// Exact sparse multivariate polynomials over Q in the blocks x, y, z, t.
// Values are immutable in spirit: every operation returns a fresh canonical
// polynomial (no zero coefficients, merged terms), so concurrent readers
// never race.

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "weylhom/monomial.hpp"
#include "weylhom/rational.hpp"

namespace weylhom {

class Polynomial {
 public:
  using TermMap = std::unordered_map<Monomial, Rational, MonomialHash>;

  explicit Polynomial(int rank) : rank_(Monomial::check_rank(rank)) {}

  static Polynomial constant(int rank, const Rational& c) {
    Polynomial p(rank);
    p.add_term(Monomial(rank), c);
    return p;
  }

  static Polynomial one(int rank) { return constant(rank, 1); }

  static Polynomial variable(int rank, VarBlock b, int i, int e = 1) {
    Polynomial p(rank);
    Monomial m(rank);
    m.set_exp(b, i, e);
    p.add_term(m, 1);
    return p;
  }

  static Polynomial from_term(const Monomial& m, const Rational& c) {
    Polynomial p(m.rank());
    p.add_term(m, c);
    return p;
  }

  int rank() const { return rank_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (m.rank() != rank_) throw std::invalid_argument("Polynomial: rank mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void reserve(std::size_t n) { terms_.reserve(n); }

  Polynomial& operator+=(const Polynomial& o) {
    require_same_rank(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    require_same_rank(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  Polynomial& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& [m, v] : terms_) v *= c;
    }
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  friend Polynomial operator-(const Polynomial& a) {
    Polynomial r(a.rank_);
    for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.require_same_rank(b);
    Polynomial r(a.rank_);
    r.reserve(a.terms_.size() * std::min<std::size_t>(b.terms_.size(), 16));
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        r.add_term(ma * mb, ca * cb);
      }
    }
    return r;
  }

  bool operator==(const Polynomial& o) const { return rank_ == o.rank_ && terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  // Terms in descending graded-lex order; this is the canonical ordering used
  // by the printer and by matrix assembly.
  std::vector<std::pair<Monomial, Rational>> sorted_terms() const {
    std::vector<std::pair<Monomial, Rational>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      return Monomial::compare_grlex(a.first, b.first) > 0;
    });
    return v;
  }

  // Max total degree over terms, -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  bool is_homogeneous(int* deg = nullptr) const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      const int md = m.degree();
      if (d == -1) {
        d = md;
      } else if (d != md) {
        return false;
      }
    }
    if (deg) *deg = d;
    return true;
  }

  bool uses_block(VarBlock b) const {
    for (const auto& [m, c] : terms_) {
      if (m.block_degree(b) > 0) return true;
    }
    return false;
  }

  bool xy_only() const { return !uses_block(VarBlock::Z) && !uses_block(VarBlock::T); }

  // Indices 1..n that occur with a nonzero x or y exponent.
  std::set<int> support_indices() const {
    std::set<int> s;
    for (const auto& [m, c] : terms_) {
      for (int i = 1; i <= rank_; ++i) {
        if (m.pair_degree(i) > 0) s.insert(i);
      }
    }
    return s;
  }

  Polynomial derivative(VarBlock b, int i) const {
    Polynomial r(rank_);
    for (const auto& [m, c] : terms_) {
      const int e = m.exp(b, i);
      if (e == 0) continue;
      Monomial d = m;
      d.set_exp(b, i, e - 1);
      r.add_term(d, c * e);
    }
    return r;
  }

 private:
  void require_same_rank(const Polynomial& o) const {
    if (rank_ != o.rank_) throw std::invalid_argument("Polynomial: rank mismatch");
  }

  int rank_;
  TermMap terms_;
};

// Standard symplectic bracket {p, q} = sum_i dp/dx_i dq/dy_i - dp/dy_i dq/dx_i.
// The z and t blocks are constants for the bracket.
inline Polynomial poisson_bracket(const Polynomial& p, const Polynomial& q) {
  if (p.rank() != q.rank()) throw std::invalid_argument("poisson_bracket: rank mismatch");
  const int n = p.rank();
  Polynomial r(n);
  for (int i = 1; i <= n; ++i) {
    r += p.derivative(VarBlock::X, i) * q.derivative(VarBlock::Y, i);
    r -= p.derivative(VarBlock::Y, i) * q.derivative(VarBlock::X, i);
  }
  return r;
}

// Substitutes x_i -> x_i + z_i and y_i -> y_i + t_i and expands to canonical
// form. The expansion walks a per-variable binomial odometer instead of
// multiplying out shifted factors one at a time; distinct splits of distinct
// source terms can never collide, which keeps this linear in the output size.
inline Polynomial shift_substitute(const Polynomial& p) {
  if (!p.xy_only())
    throw std::invalid_argument("shift_substitute: input already involves z/t variables");
  const int n = p.rank();
  Polynomial out(n);
  std::vector<int> slots;  // xy slots with nonzero exponent, per term
  for (const auto& [m, c] : p.terms()) {
    slots.clear();
    for (int s = 0; s < 2 * n; ++s) {
      if (m.raw(s) > 0) slots.push_back(s);
    }
    Monomial cur = m;
    // Depth-first over how much of each exponent migrates to the z/t twin.
    auto walk = [&](auto&& self, std::size_t k, const Integer& mult) -> void {
      if (k == slots.size()) {
        out.add_term(cur, c * Rational(mult));
        return;
      }
      const int s = slots[k];
      const int e = m.raw(s);
      for (int moved = 0; moved <= e; ++moved) {
        cur.set_raw(s, static_cast<std::uint8_t>(e - moved));
        cur.set_raw(s + 2 * n, static_cast<std::uint8_t>(moved));  // x->z, y->t twin
        self(self, k + 1, mult * binomial(e, moved));
      }
      cur.set_raw(s, static_cast<std::uint8_t>(e));
      cur.set_raw(s + 2 * n, 0);
    };
    walk(walk, 0, Integer(1));
  }
  return out;
}

// The x/y-polynomial coefficient of an exact z/t-monomial, reading p as an
// element of C[x,y][z,t].
inline Polynomial coefficient_of(const Polynomial& p, const Monomial& zt) {
  if (!zt.zt_only())
    throw std::invalid_argument("coefficient_of: monomial must involve only z/t variables");
  if (zt.rank() != p.rank()) throw std::invalid_argument("coefficient_of: rank mismatch");
  Polynomial r(p.rank());
  for (const auto& [m, c] : p.terms()) {
    if (m.zt_part() == zt) r.add_term(m.xy_part(), c);
  }
  return r;
}

// Sets the listed variables to zero, i.e. drops every term they occur in.
inline Polynomial set_vars_zero(const Polynomial& p, const std::vector<VarId>& vars) {
  Polynomial r(p.rank());
  for (const auto& [m, c] : p.terms()) {
    bool keep = true;
    for (const VarId& v : vars) {
      if (m.exp(v.block, v.index) > 0) {
        keep = false;
        break;
      }
    }
    if (keep) r.add_term(m, c);
  }
  return r;
}

}  // namespace weylhom
