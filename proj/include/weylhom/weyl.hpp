#pragma once

// Hyperoctahedral Weyl groups of types B_n and D_n as signed permutations,
// their diagonal action on polynomials, and the Reynolds projection onto the
// invariant ring. The Reynolds operator is C[z,t]-linear: group elements move
// the x/y blocks only.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "weylhom/polynomial.hpp"
#include "weylhom/rational.hpp"

namespace weylhom {

enum class WeylFamily : std::uint8_t { B, D };

// A signed permutation g with matrix entries g[sigma(j)][j] = eps_j. Acting
// on polynomials it substitutes x_k -> eps_{sigma^-1(k)} x_{sigma^-1(k)} and
// the same on y; z and t are fixed. Composition matches h.(g.P) = (gh).P.
class SignedPermutation {
 public:
  static SignedPermutation identity(int n) {
    SignedPermutation g;
    g.n_ = static_cast<std::uint8_t>(Monomial::check_rank(n));
    for (int j = 0; j < n; ++j) g.sig_[j] = static_cast<std::uint8_t>(j);
    g.flips_ = 0;
    return g;
  }

  // images: sigma(1..n) as 1-based values; flips: bit i-1 set means eps_i = -1.
  static SignedPermutation make(int n, const std::vector<int>& images, unsigned flips) {
    SignedPermutation g = identity(n);
    if (static_cast<int>(images.size()) != n)
      throw std::invalid_argument("SignedPermutation: bad image list");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int j = 0; j < n; ++j) {
      const int v = images[static_cast<std::size_t>(j)];
      if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
        throw std::invalid_argument("SignedPermutation: not a permutation");
      seen[static_cast<std::size_t>(v - 1)] = true;
      g.sig_[j] = static_cast<std::uint8_t>(v - 1);
    }
    g.flips_ = static_cast<std::uint16_t>(flips & ((1u << n) - 1u));
    return g;
  }

  int rank() const { return n_; }
  int image(int j) const { return sig_[j - 1] + 1; }       // sigma(j)
  int sign(int j) const { return (flips_ >> (j - 1)) & 1 ? -1 : 1; }  // eps_j
  unsigned flip_mask() const { return flips_; }
  bool even_flips() const { return (std::popcount(static_cast<unsigned>(flips_)) & 1) == 0; }

  friend SignedPermutation operator*(const SignedPermutation& g, const SignedPermutation& h) {
    if (g.n_ != h.n_) throw std::invalid_argument("SignedPermutation: rank mismatch");
    SignedPermutation r = identity(g.n_);
    for (int j = 0; j < g.n_; ++j) {
      r.sig_[j] = g.sig_[h.sig_[j]];
      const int eps = h.sign(j + 1) * g.sign(h.sig_[j] + 1);
      if (eps < 0) r.flips_ |= static_cast<std::uint16_t>(1u << j);
    }
    return r;
  }

  bool operator==(const SignedPermutation& o) const {
    return n_ == o.n_ && flips_ == o.flips_ &&
           std::equal(sig_.begin(), sig_.begin() + n_, o.sig_.begin());
  }

 private:
  std::array<std::uint8_t, kMaxRank> sig_{};
  std::uint16_t flips_ = 0;
  std::uint8_t n_ = 0;
};

class WeylGroup {
 public:
  WeylGroup(WeylFamily family, int rank) : family_(family), rank_(rank) {
    if (rank < 2 || rank > kMaxRank)
      throw std::invalid_argument("WeylGroup: rank must be in [2, " + std::to_string(kMaxRank) +
                                  "]");
  }

  // Parses designators like "B2", "D4".
  static WeylGroup parse(const std::string& s) {
    if (s.size() < 2 || (s[0] != 'B' && s[0] != 'D'))
      throw std::invalid_argument("WeylGroup: bad designator '" + s + "'");
    int n = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw std::invalid_argument("WeylGroup: bad designator '" + s + "'");
      n = n * 10 + (s[i] - '0');
      if (n > 99) break;
    }
    if (n < 2 || n > kMaxRank)
      throw std::invalid_argument("WeylGroup: rank in '" + s + "' must be in [2, " +
                                  std::to_string(kMaxRank) + "]");
    return WeylGroup(s[0] == 'B' ? WeylFamily::B : WeylFamily::D, n);
  }

  WeylFamily family() const { return family_; }
  int rank() const { return rank_; }
  std::string name() const {
    return (family_ == WeylFamily::B ? "B" : "D") + std::to_string(rank_);
  }

  Integer order() const {
    Integer o = factorial(static_cast<unsigned long>(rank_));
    const int bits = family_ == WeylFamily::B ? rank_ : rank_ - 1;
    mpz_mul_2exp(o.get_mpz_t(), o.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
    return o;
  }

  unsigned sign_class_count() const {
    return 1u << (family_ == WeylFamily::B ? rank_ : rank_ - 1);
  }

  // s-th sign mask of the group, s in [0, sign_class_count). For D the masks
  // are exactly those with an even number of set bits.
  unsigned sign_mask(unsigned s) const {
    if (family_ == WeylFamily::B) return s;
    const unsigned parity = static_cast<unsigned>(std::popcount(s)) & 1u;
    return (s << 1) | parity;
  }

  bool operator==(const WeylGroup& o) const { return family_ == o.family_ && rank_ == o.rank_; }

 private:
  WeylFamily family_;
  int rank_;
};

// Lazy element stream: |W| grows as 2^n n!, so elements are produced on the
// fly and never stored.
class ElementRange {
 public:
  explicit ElementRange(const WeylGroup& w) : w_(w) {}

  class iterator {
   public:
    using value_type = SignedPermutation;
    using difference_type = std::ptrdiff_t;

    iterator() : w_(WeylFamily::B, 2), done_(true) {}
    explicit iterator(const WeylGroup& w) : w_(w), done_(false) {
      perm_.resize(static_cast<std::size_t>(w.rank()));
      std::iota(perm_.begin(), perm_.end(), 1);
    }

    SignedPermutation operator*() const {
      return SignedPermutation::make(w_.rank(), perm_, w_.sign_mask(s_));
    }

    iterator& operator++() {
      if (++s_ == w_.sign_class_count()) {
        s_ = 0;
        if (!std::next_permutation(perm_.begin(), perm_.end())) done_ = true;
      }
      return *this;
    }

    bool operator==(const iterator& o) const {
      if (done_ || o.done_) return done_ == o.done_;
      return perm_ == o.perm_ && s_ == o.s_;
    }

   private:
    WeylGroup w_;
    std::vector<int> perm_;
    unsigned s_ = 0;
    bool done_;
  };

  iterator begin() const { return iterator(w_); }
  iterator end() const { return iterator(); }

 private:
  WeylGroup w_;
};

inline ElementRange elements(const WeylGroup& w) { return ElementRange(w); }

template <class F>
inline void for_each_element(const WeylGroup& w, F&& fn) {
  for (auto it = elements(w).begin(); it != elements(w).end(); ++it) fn(*it);
}

// Diagonal action on polynomials; z/t variables are fixed.
inline Polynomial act(const SignedPermutation& g, const Polynomial& p) {
  if (g.rank() != p.rank()) throw std::invalid_argument("act: rank mismatch");
  const int n = p.rank();
  Polynomial out(n);
  out.reserve(p.term_count());
  for (const auto& [m, c] : p.terms()) {
    Monomial im = m;
    int flip_parity = 0;
    for (int j = 1; j <= n; ++j) {
      const int a = m.exp(VarBlock::X, g.image(j));
      const int b = m.exp(VarBlock::Y, g.image(j));
      im.set_exp(VarBlock::X, j, a);
      im.set_exp(VarBlock::Y, j, b);
      if (g.sign(j) < 0) flip_parity ^= (a + b) & 1;
    }
    out.add_term(im, flip_parity ? Rational(-c) : c);
  }
  return out;
}

// Applies the index permutation sigma to the x/y blocks (no signs, z/t kept):
// the symmetrization step of the Reynolds operator.
inline Monomial permute_xy(const Monomial& m, const std::array<std::uint8_t, kMaxRank>& sigma) {
  const int n = m.rank();
  Monomial im = m;
  for (int j = 0; j < n; ++j) {
    im.set_raw(j, m.raw(sigma[j]));
    im.set_raw(n + j, m.raw(n + sigma[j]));
  }
  return im;
}

// All index permutations of 1..n as 0-based image arrays, in lexicographic
// order.
inline std::vector<std::array<std::uint8_t, kMaxRank>> index_permutations(int n) {
  std::vector<std::array<std::uint8_t, kMaxRank>> out;
  std::vector<std::uint8_t> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    std::array<std::uint8_t, kMaxRank> a{};
    std::copy(p.begin(), p.end(), a.begin());
    out.push_back(a);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// True iff some sign change of w sends the monomial to its negative, in which
// case the Reynolds image of the monomial is zero. For B_n that happens as
// soon as one pair-degree deg_x(i)+deg_y(i) is odd. For D_n only even flip
// sets are available: a monomial survives exactly when its pair-degree parity
// vector is all zero or all one (every even flip set then has even overlap),
// and dies otherwise. The D_n rule is validated against brute-force
// enumeration in the test suite.
inline bool sign_kill_test(const Monomial& m, const WeylGroup& w) {
  const int n = w.rank();
  int odd = 0;
  for (int i = 1; i <= n; ++i) odd += m.pair_degree(i) & 1;
  if (w.family() == WeylFamily::B) return odd != 0;
  return odd != 0 && odd != n;
}

// Reynolds operator R(P) = |W|^-1 sum_g g.P, extended C[z,t]-linearly.
// Computed as the sign-change average (a per-monomial keep/kill) followed by
// the S_n symmetrization, which replaces the 2^n sign factor by a parity
// check.
inline Polynomial reynolds(const WeylGroup& w, const Polynomial& p) {
  if (w.rank() != p.rank()) throw std::invalid_argument("reynolds: rank mismatch");
  std::vector<std::pair<Monomial, Rational>> survivors;
  survivors.reserve(p.term_count());
  for (const auto& [m, c] : p.terms()) {
    if (!sign_kill_test(m, w)) survivors.emplace_back(m, c);
  }
  Polynomial out(p.rank());
  if (survivors.empty()) return out;
  const auto perms = index_permutations(w.rank());
  out.reserve(survivors.size() * perms.size() / 2);
  for (const auto& sigma : perms) {
    for (const auto& [m, c] : survivors) out.add_term(permute_xy(m, sigma), c);
  }
  out *= Rational(1) / Rational(factorial(static_cast<unsigned long>(w.rank())));
  return out;
}

inline bool is_invariant(const WeylGroup& w, const Polynomial& p) {
  if (w.rank() != p.rank()) throw std::invalid_argument("is_invariant: rank mismatch");
  const int n = w.rank();
  std::vector<SignedPermutation> gens;
  {
    std::vector<int> tr(static_cast<std::size_t>(n));
    std::iota(tr.begin(), tr.end(), 1);
    std::swap(tr[0], tr[1]);
    gens.push_back(SignedPermutation::make(n, tr, 0));
    std::vector<int> cyc(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) cyc[static_cast<std::size_t>(j)] = (j + 1) % n + 1;
    gens.push_back(SignedPermutation::make(n, cyc, 0));
    std::vector<int> id(static_cast<std::size_t>(n));
    std::iota(id.begin(), id.end(), 1);
    gens.push_back(SignedPermutation::make(n, id, w.family() == WeylFamily::B ? 0b1u : 0b11u));
  }
  for (const auto& g : gens) {
    if (act(g, p) != p) return false;
  }
  return true;
}

// ---- Partition counting (Hochschild degree-0 reference dimensions) ----

// Number of integer partitions of n, by the bounded-part recurrence.
inline long long partition_count(int n) {
  if (n < 0) return 0;
  std::vector<long long> dp(static_cast<std::size_t>(n) + 1, 0);
  dp[0] = 1;
  for (int part = 1; part <= n; ++part) {
    for (int v = part; v <= n; ++v) dp[static_cast<std::size_t>(v)] += dp[static_cast<std::size_t>(v - part)];
  }
  return dp[static_cast<std::size_t>(n)];
}

// Number of partitions of n with an even number of parts; the part-count
// parity rides along in the recurrence.
inline long long partition_count_even_parts(int n) {
  if (n < 0) return 0;
  std::vector<std::array<long long, 2>> dp(static_cast<std::size_t>(n) + 1, {0, 0});
  dp[0][0] = 1;
  for (int part = 1; part <= n; ++part) {
    auto next = dp;
    for (int v = 0; v <= n; ++v) {
      for (int k = 1; part * k <= v; ++k) {
        next[static_cast<std::size_t>(v)][0] += dp[static_cast<std::size_t>(v - part * k)][k & 1];
        next[static_cast<std::size_t>(v)][1] += dp[static_cast<std::size_t>(v - part * k)][1 - (k & 1)];
      }
    }
    dp = std::move(next);
  }
  return dp[static_cast<std::size_t>(n)][0];
}

// dim HH_0 of the invariant Weyl algebra: pi(n) for B_n, pi~(n) for D_n.
inline long long hh0_dimension(const WeylGroup& w) {
  return w.family() == WeylFamily::B ? partition_count(w.rank())
                                     : partition_count_even_parts(w.rank());
}

// All partitions of n as descending part lists, largest-first order.
inline std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rest, int maxpart) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rest, maxpart); p >= 1; --p) {
      cur.push_back(p);
      self(self, rest - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

}  // namespace weylhom
