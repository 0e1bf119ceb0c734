#pragma once

// The invariant sl2 triple E = x.x/2, F = -y.y/2, H = -x.y, the weight
// grading it induces on monomials, and the highest-weight-zero subspace. The
// hw-0 space in each even degree is spanned by products of the quadratics
// X[i,j] = x_i y_j - y_i x_j ("pfaffian words"); bases are carved out of that
// redundant spanning set by exact rank selection.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "weylhom/errors.hpp"
#include "weylhom/linalg.hpp"
#include "weylhom/polynomial.hpp"
#include "weylhom/weyl.hpp"

namespace weylhom {

struct Sl2Triple {
  Polynomial E, F, H;
  int rank;
};

inline Sl2Triple sl2_generators(int n) {
  if (n < 2) throw std::invalid_argument("sl2_generators: rank must be >= 2");
  Polynomial E(n), F(n), H(n);
  for (int i = 1; i <= n; ++i) {
    Monomial x2(n), y2(n), xy(n);
    x2.set_exp(VarBlock::X, i, 2);
    y2.set_exp(VarBlock::Y, i, 2);
    xy.set_exp(VarBlock::X, i, 1);
    xy.set_exp(VarBlock::Y, i, 1);
    E.add_term(x2, rational(1, 2));
    F.add_term(y2, rational(-1, 2));
    H.add_term(xy, -1);
  }
  return Sl2Triple{std::move(E), std::move(F), std::move(H), n};
}

// deg_x - deg_y when shared by all terms, nullopt for mixed weights. The
// bracket {H, M} multiplies a monomial by exactly this number.
inline std::optional<int> weight_of(const Polynomial& p) {
  std::optional<int> w;
  for (const auto& [m, c] : p.terms()) {
    const int mw = m.block_degree(VarBlock::X) - m.block_degree(VarBlock::Y);
    if (!w) {
      w = mw;
    } else if (*w != mw) {
      return std::nullopt;
    }
  }
  return w ? w : std::optional<int>(0);
}

inline bool is_hw0(const Polynomial& p, const Sl2Triple& t) {
  if (p.rank() != t.rank) throw std::invalid_argument("is_hw0: rank mismatch");
  return poisson_bracket(t.H, p).is_zero() && poisson_bracket(t.E, p).is_zero() &&
         poisson_bracket(t.F, p).is_zero();
}

inline bool is_hw0(const Polynomial& p) { return is_hw0(p, sl2_generators(p.rank())); }

// dim of the degree-d slice of the hw-0 space: zero in odd degrees, and for
// d = 2l the binomial expression C(l+n-1, n-1)^2 - C(l+n, n-1) C(l+n-2, n-1).
inline Integer hw0_dim_formula(int n, int d) {
  if (d < 0) throw std::invalid_argument("hw0_dim_formula: negative degree");
  if (d % 2 != 0) return Integer(0);
  const unsigned long l = static_cast<unsigned long>(d / 2);
  const unsigned long k = static_cast<unsigned long>(n - 1);
  return binomial(l + k, k) * binomial(l + k, k) -
         binomial(l + k + 1, k) * binomial(l + k - 1, k);
}

// A product prod X[i,j]^b over ordered pairs i < j with positive exponents.
class PfaffianWord {
 public:
  explicit PfaffianWord(int rank) : rank_(Monomial::check_rank(rank)) {}

  int rank() const { return rank_; }
  const std::map<std::pair<int, int>, int>& exponents() const { return exp_; }
  bool empty() const { return exp_.empty(); }

  void set_exponent(int i, int j, int b) {
    if (i < 1 || j < 1 || i == j || i > rank_ || j > rank_)
      throw std::invalid_argument("PfaffianWord: bad pair (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
    if (b < 0) throw std::invalid_argument("PfaffianWord: negative exponent");
    const auto key = std::minmax(i, j);
    if (b == 0) {
      exp_.erase(key);
    } else {
      exp_[key] = b;
    }
  }

  int exponent(int i, int j) const {
    auto it = exp_.find(std::minmax(i, j));
    return it == exp_.end() ? 0 : it->second;
  }

  int half_degree() const {
    int s = 0;
    for (const auto& [pr, b] : exp_) s += b;
    return s;
  }

  // The expansion is homogeneous of x/y-degree twice the exponent sum.
  int degree() const { return 2 * half_degree(); }

  int edge_count() const { return static_cast<int>(exp_.size()); }

  std::set<int> vertices() const {
    std::set<int> v;
    for (const auto& [pr, b] : exp_) {
      v.insert(pr.first);
      v.insert(pr.second);
    }
    return v;
  }

  Polynomial expand() const {
    Polynomial out = Polynomial::one(rank_);
    for (const auto& [pr, b] : exp_) {
      Polynomial x(rank_);
      Monomial a(rank_), c(rank_);
      a.set_exp(VarBlock::X, pr.first, 1);
      a.set_exp(VarBlock::Y, pr.second, 1);
      c.set_exp(VarBlock::Y, pr.first, 1);
      c.set_exp(VarBlock::X, pr.second, 1);
      x.add_term(a, 1);
      x.add_term(c, -1);
      for (int k = 0; k < b; ++k) out = out * x;
    }
    return out;
  }

  // Relabels indices by sigma (1-based image vector).
  PfaffianWord permuted(const std::vector<int>& sigma) const {
    PfaffianWord w(rank_);
    for (const auto& [pr, b] : exp_) {
      w.set_exponent(sigma[static_cast<std::size_t>(pr.first - 1)],
                     sigma[static_cast<std::size_t>(pr.second - 1)], b);
    }
    return w;
  }

  // Exponent vector in pair order (1,2) < (1,3) < ... < (n-1,n).
  std::vector<int> exponent_vector() const {
    std::vector<int> v;
    v.reserve(static_cast<std::size_t>(rank_ * (rank_ - 1) / 2));
    for (int i = 1; i < rank_; ++i) {
      for (int j = i + 1; j <= rank_; ++j) v.push_back(exponent(i, j));
    }
    return v;
  }

  // Graded order, then lexicographic on the exponent vector.
  static int compare(const PfaffianWord& a, const PfaffianWord& b) {
    if (a.rank_ != b.rank_) throw std::invalid_argument("PfaffianWord: rank mismatch");
    const int da = a.half_degree(), db = b.half_degree();
    if (da != db) return da < db ? -1 : 1;
    const auto va = a.exponent_vector(), vb = b.exponent_vector();
    for (std::size_t k = 0; k < va.size(); ++k) {
      if (va[k] != vb[k]) return va[k] < vb[k] ? -1 : 1;
    }
    return 0;
  }

  bool operator==(const PfaffianWord& o) const {
    return rank_ == o.rank_ && exp_ == o.exp_;
  }

  // Lexicographically maximal relabeling under S_n: one representative per
  // index orbit. The Reynolds image is constant on such orbits.
  PfaffianWord orbit_canonical() const {
    PfaffianWord best = *this;
    std::vector<int> sigma(static_cast<std::size_t>(rank_));
    std::iota(sigma.begin(), sigma.end(), 1);
    while (std::next_permutation(sigma.begin(), sigma.end())) {
      PfaffianWord cand = permuted(sigma);
      if (compare(cand, best) > 0) best = cand;
    }
    return best;
  }

  bool is_orbit_canonical() const { return *this == orbit_canonical(); }

  // Text form `X[1,2]^4 * X[1,3]^2`; the empty word prints as "1".
  std::string str() const {
    if (exp_.empty()) return "1";
    std::string out;
    for (const auto& [pr, b] : exp_) {
      if (!out.empty()) out += "*";
      out += "X[" + std::to_string(pr.first) + "," + std::to_string(pr.second) + "]";
      if (b != 1) out += "^" + std::to_string(b);
    }
    return out;
  }

  static PfaffianWord parse(const std::string& s, int rank);

 private:
  int rank_;
  std::map<std::pair<int, int>, int> exp_;
};

inline PfaffianWord PfaffianWord::parse(const std::string& s, int rank) {
  PfaffianWord w(rank);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip_ws();
    if (pos >= s.size() || s[pos] != c)
      throw std::invalid_argument(std::string("PfaffianWord: expected '") + c + "' in '" + s + "'");
    ++pos;
  };
  auto number = [&]() -> int {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw std::invalid_argument("PfaffianWord: expected a number in '" + s + "'");
    return std::stoi(s.substr(start, pos - start));
  };
  skip_ws();
  if (pos < s.size() && s[pos] == '1' && s.find_first_not_of(" \t1", pos) == std::string::npos) {
    return w;  // the empty word
  }
  bool first = true;
  while (true) {
    skip_ws();
    if (pos >= s.size()) {
      if (first) throw std::invalid_argument("PfaffianWord: empty input");
      break;
    }
    if (!first) expect('*');
    expect('X');
    expect('[');
    const int i = number();
    expect(',');
    const int j = number();
    expect(']');
    int b = 1;
    skip_ws();
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      b = number();
    }
    if (i == j || i < 1 || j < 1 || i > rank || j > rank)
      throw std::invalid_argument("PfaffianWord: bad pair in '" + s + "'");
    w.set_exponent(i, j, w.exponent(i, j) + b);
    first = false;
    skip_ws();
    if (pos >= s.size()) break;
  }
  return w;
}

// All words with the given exponent sum, in descending graded-lex order on
// exponent vectors (weight concentrates on the earliest pairs first).
inline std::vector<PfaffianWord> enumerate_words(int n, int half_degree) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<PfaffianWord> out;
  PfaffianWord cur(n);
  auto rec = [&](auto&& self, std::size_t k, int rest) -> void {
    if (k == pairs.size()) {
      if (rest == 0) out.push_back(cur);
      return;
    }
    for (int b = rest; b >= 0; --b) {
      cur.set_exponent(pairs[k].first, pairs[k].second, b);
      self(self, k + 1, rest - b);
    }
    cur.set_exponent(pairs[k].first, pairs[k].second, 0);
  };
  rec(rec, 0, half_degree);
  return out;
}

struct Hw0Basis {
  int degree = 0;
  std::vector<PfaffianWord> words;
  std::vector<Polynomial> vectors;

  std::size_t size() const { return vectors.size(); }
};

// A basis of the full hw-0 slice in degree d: pfaffian words are fed to an
// exact rank reducer in enumeration order and kept greedily while they
// increase the rank. The count must land exactly on the dimension formula.
inline Hw0Basis hw0_basis(int n, int d) {
  Hw0Basis basis;
  basis.degree = d;
  if (d < 0 || d % 2 != 0) return basis;
  const Integer target = hw0_dim_formula(n, d);
  MonomialReducer reducer(false);
  for (const PfaffianWord& w : enumerate_words(n, d / 2)) {
    Polynomial p = w.expand();
    if (!reducer.feed(to_sparse_vec(p))) {
      basis.words.push_back(w);
      basis.vectors.push_back(std::move(p));
      if (Integer(static_cast<long>(basis.vectors.size())) == target) break;
    }
  }
  if (Integer(static_cast<long>(basis.vectors.size())) != target)
    throw internal_check_error("hw0_basis: selected " + std::to_string(basis.vectors.size()) +
                               " words but the dimension formula gives " + to_string(target));
  return basis;
}

// A basis of the invariant hw-0 slice: Reynolds images of one word per index
// orbit, kept while independent. Odd-exponent words stay in the spanning set;
// for D_n (and in high B_n degrees) they can survive the projection.
inline Hw0Basis invariant_hw0_basis(const WeylGroup& w, int d) {
  Hw0Basis basis;
  basis.degree = d;
  if (d < 0 || d % 2 != 0) return basis;
  MonomialReducer reducer(false);
  for (const PfaffianWord& word : enumerate_words(w.rank(), d / 2)) {
    if (!word.is_orbit_canonical()) continue;
    Polynomial p = reynolds(w, word.expand());
    if (p.is_zero()) continue;
    if (!reducer.feed(to_sparse_vec(p))) {
      basis.words.push_back(word);
      basis.vectors.push_back(std::move(p));
    }
  }
  return basis;
}

}  // namespace weylhom
