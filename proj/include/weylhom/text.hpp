#pragma once

// Text form of polynomials: a signed sum of terms `c * v1^e1 * ... * vk^ek`
// with variables x1..xn, y1..yn, z1..zn, t1..tn and integer or p/q rational
// coefficients. print/parse round-trip canonically.

#include <cctype>
#include <string>

#include "weylhom/polynomial.hpp"

namespace weylhom {

inline std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.sorted_terms()) {
    const bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (m.is_one()) {
      out += to_string(a);
    } else {
      if (a != 1) {
        out += to_string(a);
        out += "*";
      }
      out += m.str();
    }
  }
  return out;
}

namespace detail {

class PolyParser {
 public:
  PolyParser(const std::string& s, int rank) : s_(s), rank_(rank) {}

  Polynomial parse() {
    Polynomial out(rank_);
    skip_ws();
    if (at_end()) throw std::invalid_argument("parse_polynomial: empty input");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw std::invalid_argument("parse_polynomial: expected '+' or '-' between terms");
      }
      parse_term(out, sign);
      skip_ws();
      first = false;
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  unsigned long parse_uint() {
    skip_ws();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
      throw std::invalid_argument("parse_polynomial: expected a number at position " +
                                  std::to_string(pos_));
    unsigned long v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<unsigned long>(peek() - '0');
      if (v > 100000000UL) throw std::invalid_argument("parse_polynomial: number too large");
      ++pos_;
    }
    return v;
  }

  void parse_term(Polynomial& out, int sign) {
    Rational coeff(sign);
    Monomial mono(rank_);
    bool any = false;
    while (true) {
      skip_ws();
      if (at_end()) break;
      const char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        Rational num(static_cast<long>(parse_uint()));
        skip_ws();
        if (!at_end() && peek() == '/') {
          ++pos_;
          const unsigned long den = parse_uint();
          if (den == 0) throw std::invalid_argument("parse_polynomial: zero denominator");
          num /= Rational(static_cast<long>(den));
        }
        coeff *= num;
        any = true;
      } else if (ch == 'x' || ch == 'y' || ch == 'z' || ch == 't') {
        ++pos_;
        const unsigned long idx = parse_uint();
        if (idx < 1 || static_cast<int>(idx) > rank_)
          throw std::invalid_argument("parse_polynomial: variable index " + std::to_string(idx) +
                                      " outside rank " + std::to_string(rank_));
        int e = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
          ++pos_;
          e = static_cast<int>(parse_uint());
        }
        VarBlock b = ch == 'x'   ? VarBlock::X
                     : ch == 'y' ? VarBlock::Y
                     : ch == 'z' ? VarBlock::Z
                                 : VarBlock::T;
        const int cur = mono.exp(b, static_cast<int>(idx));
        if (cur + e > 255) throw std::invalid_argument("parse_polynomial: exponent too large");
        mono.set_exp(b, static_cast<int>(idx), cur + e);
        any = true;
      } else {
        throw std::invalid_argument(std::string("parse_polynomial: unexpected character '") + ch +
                                    "' at position " + std::to_string(pos_));
      }
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (!any) throw std::invalid_argument("parse_polynomial: empty term");
    out.add_term(mono, coeff);
  }

  const std::string& s_;
  int rank_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(const std::string& s, int rank) {
  return detail::PolyParser(s, rank).parse();
}

}  // namespace weylhom
