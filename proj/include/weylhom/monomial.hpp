#pragma once

// Packed exponent vectors over the 4n variables x1..xn, y1..yn, z1..zn,
// t1..tn. Ranks up to 8 are supported, which covers every computation the
// solver can finish in reasonable time anyway.

#include <array>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>

namespace weylhom {

inline constexpr int kMaxRank = 8;

enum class VarBlock : std::uint8_t { X = 0, Y = 1, Z = 2, T = 3 };

inline char block_letter(VarBlock b) {
  switch (b) {
    case VarBlock::X: return 'x';
    case VarBlock::Y: return 'y';
    case VarBlock::Z: return 'z';
    case VarBlock::T: return 't';
  }
  return '?';
}

struct VarId {
  VarBlock block;
  int index;  // 1-based, within [1, rank]
};

class Monomial {
 public:
  explicit Monomial(int rank) : e_{}, n_(static_cast<std::uint8_t>(check_rank(rank))) {}

  static int check_rank(int rank) {
    if (rank < 1 || rank > kMaxRank)
      throw std::invalid_argument("Monomial: rank must be in [1, " + std::to_string(kMaxRank) + "]");
    return rank;
  }

  int rank() const { return n_; }
  int nvars() const { return 4 * n_; }

  int slot(VarBlock b, int i) const {
    if (i < 1 || i > n_) throw std::invalid_argument("Monomial: variable index out of range");
    return static_cast<int>(b) * n_ + (i - 1);
  }

  int exp(VarBlock b, int i) const { return e_[slot(b, i)]; }

  void set_exp(VarBlock b, int i, int v) {
    if (v < 0 || v > 255) throw std::invalid_argument("Monomial: exponent out of range");
    e_[slot(b, i)] = static_cast<std::uint8_t>(v);
  }

  // Unchecked slot access for hot loops; slots are laid out x|y|z|t.
  std::uint8_t raw(int s) const { return e_[s]; }
  void set_raw(int s, std::uint8_t v) { e_[s] = v; }

  int degree() const {
    int d = 0;
    for (int s = 0; s < 4 * n_; ++s) d += e_[s];
    return d;
  }

  int block_degree(VarBlock b) const {
    int d = 0;
    const int off = static_cast<int>(b) * n_;
    for (int i = 0; i < n_; ++i) d += e_[off + i];
    return d;
  }

  int xy_degree() const { return block_degree(VarBlock::X) + block_degree(VarBlock::Y); }
  int zt_degree() const { return block_degree(VarBlock::Z) + block_degree(VarBlock::T); }

  // deg_x(i) + deg_y(i); the quantity whose parity decides sign-change kills.
  int pair_degree(int i) const { return e_[i - 1] + e_[n_ + (i - 1)]; }

  bool xy_only() const { return zt_degree() == 0; }
  bool zt_only() const { return xy_degree() == 0; }
  bool is_one() const { return degree() == 0; }

  Monomial xy_part() const {
    Monomial m(n_);
    for (int s = 0; s < 2 * n_; ++s) m.e_[s] = e_[s];
    return m;
  }

  Monomial zt_part() const {
    Monomial m(n_);
    for (int s = 2 * n_; s < 4 * n_; ++s) m.e_[s] = e_[s];
    return m;
  }

  Monomial operator*(const Monomial& o) const {
    if (n_ != o.n_) throw std::invalid_argument("Monomial: rank mismatch");
    Monomial m(n_);
    for (int s = 0; s < 4 * n_; ++s) {
      const int v = e_[s] + o.e_[s];
      if (v > 255) throw std::overflow_error("Monomial: exponent overflow");
      m.e_[s] = static_cast<std::uint8_t>(v);
    }
    return m;
  }

  bool operator==(const Monomial& o) const { return n_ == o.n_ && e_ == o.e_; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }

  // Graded lexicographic order with variable order x1 < ... < xn < y1 < ...
  // < tn. Returns <0, 0, >0 as a < b, a == b, a > b.
  static int compare_grlex(const Monomial& a, const Monomial& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("Monomial: rank mismatch");
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    for (int s = 0; s < 4 * a.n_; ++s) {
      if (a.e_[s] != b.e_[s]) return a.e_[s] < b.e_[s] ? -1 : 1;
    }
    return 0;
  }

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ n_;
    for (int w = 0; w < 4; ++w) {
      std::uint64_t chunk;
      std::memcpy(&chunk, e_.data() + 8 * w, 8);
      h ^= chunk + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
      h ^= h >> 33;
    }
    return static_cast<std::size_t>(h);
  }

  std::string str() const {
    std::string out;
    for (int b = 0; b < 4; ++b) {
      for (int i = 1; i <= n_; ++i) {
        const int e = e_[b * n_ + (i - 1)];
        if (e == 0) continue;
        if (!out.empty()) out += '*';
        out += block_letter(static_cast<VarBlock>(b));
        out += std::to_string(i);
        if (e != 1) {
          out += '^';
          out += std::to_string(e);
        }
      }
    }
    return out.empty() ? "1" : out;
  }

 private:
  std::array<std::uint8_t, 4 * kMaxRank> e_;
  std::uint8_t n_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct MonomialGrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return Monomial::compare_grlex(a, b) < 0;
  }
};

struct MonomialGrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return Monomial::compare_grlex(a, b) > 0;
  }
};

}  // namespace weylhom
