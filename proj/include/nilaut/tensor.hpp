#pragma once

// Truncated free associative algebra Q<X_1..X_n> / (monomials of degree > d).
//
// Every group and Lie element in this library is a TruncPoly. Values are
// immutable once built; all operations are free functions returning new
// values, and every binary operation checks that (n, d) agree.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nilaut/rational.hpp"

namespace nilaut {

// A word in the generators, stored as its length and its base-n value
// (first letter most significant). Ordering by (length, code) is the
// canonical order: shorter words first, then lexicographic.
struct Monomial {
  int length = 0;
  std::uint64_t code = 0;

  auto operator<=>(const Monomial&) const = default;
};

// Letters are 1-based generator indices.
Monomial make_monomial(const std::vector<int>& letters, int n);
std::vector<int> monomial_letters(const Monomial& m, int n);

struct Term {
  Monomial monomial;
  Rational coeff;

  bool operator==(const Term&) const = default;
};

class TruncPoly {
 public:
  // The zero polynomial in n generators truncated above degree d.
  TruncPoly(int n, int d);

  static TruncPoly constant(int n, int d, const Rational& c);
  static TruncPoly one(int n, int d) { return constant(n, d, 1); }
  // X_i, 1-based.
  static TruncPoly generator(int i, int n, int d);
  // Terms may be unsorted and may repeat; zeros and over-degree words are
  // rejected rather than silently dropped.
  static TruncPoly from_terms(int n, int d,
                              const std::vector<std::pair<std::vector<int>, Rational>>& terms);
  // Takes ownership of already canonical terms (sorted, nonzero, length <= d).
  static TruncPoly from_canonical(int n, int d, std::vector<Term> terms);

  int rank() const { return n_; }
  int degree_bound() const { return d_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Monomial& m) const;
  Rational coefficient(const std::vector<int>& letters) const;
  Rational constant_term() const;
  // Smallest length of a stored word; d+1 for the zero polynomial.
  int lowest_degree() const;
  bool is_homogeneous(int k) const;

  bool operator==(const TruncPoly&) const = default;

 private:
  int n_;
  int d_;
  std::vector<Term> terms_;
};

void require_same_shape(const TruncPoly& a, const TruncPoly& b);

TruncPoly tp_add(const TruncPoly& a, const TruncPoly& b);
TruncPoly tp_sub(const TruncPoly& a, const TruncPoly& b);
TruncPoly tp_neg(const TruncPoly& a);
TruncPoly tp_scale(const TruncPoly& a, const Rational& c);
TruncPoly tp_mul(const TruncPoly& a, const TruncPoly& b);

// Throws std::domain_error unless the constant term is 0.
TruncPoly tp_exp(const TruncPoly& p);
// Throws std::domain_error unless the constant term is 1.
TruncPoly tp_log(const TruncPoly& g);

// Words whose letter counts equal degs exactly (degs[i] counts X_{i+1}).
TruncPoly tp_multidegree_component(const TruncPoly& p, const std::vector<int>& degs);
TruncPoly tp_homogeneous_component(const TruncPoly& p, int k);
std::vector<int> tp_multidegree(const Monomial& m, int n);

// Drops every word longer than new_d and relabels the truncation degree.
TruncPoly tp_truncate(const TruncPoly& p, int new_d);
// Reverses every word: the anti-automorphism fixing each X_i.
TruncPoly tp_reverse(const TruncPoly& p);
// Algebra homomorphism X_i -> images[i-1]. Images share one target shape and
// have zero constant term; the result lives in that target shape.
TruncPoly tp_substitute(const TruncPoly& p, const std::vector<TruncPoly>& images);

inline TruncPoly operator+(const TruncPoly& a, const TruncPoly& b) { return tp_add(a, b); }
inline TruncPoly operator-(const TruncPoly& a, const TruncPoly& b) { return tp_sub(a, b); }
inline TruncPoly operator-(const TruncPoly& a) { return tp_neg(a); }
inline TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) { return tp_mul(a, b); }
inline TruncPoly operator*(const Rational& c, const TruncPoly& a) { return tp_scale(a, c); }

// Canonical text: "c*x1.x2 + c*x2", unit word as "1", zero as "0".
std::string to_string(const TruncPoly& p);
std::string monomial_to_string(const Monomial& m, int n);
// Inverse of to_string; accepts any term order and optional spacing.
TruncPoly parse_truncpoly(std::string_view text, int n, int d);

}  // namespace nilaut
