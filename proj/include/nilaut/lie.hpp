#pragma once

// Free nilpotent Lie algebra NL_n^d inside the truncated tensor algebra.
//
// A LieElement carries its tensor value and its Hall coordinates; the
// constructor certifies membership, so every LieElement in circulation is a
// genuine Lie polynomial.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nilaut/hall.hpp"
#include "nilaut/term.hpp"

namespace nilaut {

// [a,b] = ab - ba.
TruncPoly bracket(const TruncPoly& a, const TruncPoly& b);

// Hall coordinates of p, solved degree by degree. Throws NotLieElement
// (with the offending degree) when p is not in the Lie span.
RatVector lie_coordinates(const TruncPoly& p, const HallBasis& basis);
bool is_lie_element(const TruncPoly& p, const HallBasis& basis);

class LieElement {
 public:
  LieElement(std::shared_ptr<const HallBasis> basis, TruncPoly value);

  static LieElement zero(std::shared_ptr<const HallBasis> basis);
  static LieElement generator(std::shared_ptr<const HallBasis> basis, int i);
  static LieElement from_coordinates(std::shared_ptr<const HallBasis> basis, const RatVector& coords);
  static LieElement hall_word(std::shared_ptr<const HallBasis> basis, std::size_t position);

  const TruncPoly& value() const { return value_; }
  const RatVector& coords() const { return coords_; }
  const HallBasis& basis() const { return *basis_; }
  const std::shared_ptr<const HallBasis>& basis_ptr() const { return basis_; }
  bool is_zero() const { return value_.is_zero(); }

  bool operator==(const LieElement& other) const { return value_ == other.value_; }

 private:
  LieElement(std::shared_ptr<const HallBasis> basis, TruncPoly value, RatVector coords)
      : basis_(std::move(basis)), value_(std::move(value)), coords_(std::move(coords)) {}

  std::shared_ptr<const HallBasis> basis_;
  TruncPoly value_;
  RatVector coords_;
};

LieElement lie_add(const LieElement& a, const LieElement& b);
LieElement lie_sub(const LieElement& a, const LieElement& b);
LieElement lie_scale(const LieElement& a, const Rational& c);
LieElement lie_bracket(const LieElement& a, const LieElement& b);

// log(exp(a) exp(b)), the Campbell-Hausdorff product.
LieElement bch_mul(const LieElement& a, const LieElement& b);

// Components keyed by multidegree (one entry per generator); zero
// components are omitted.
std::map<std::vector<int>, LieElement> polyhomogeneous_decompose(const LieElement& q);

// The Lie endomorphism x_i -> images[i-1] applied through q's Hall
// coordinates. Images share one basis, which the result lives in.
LieElement substitute_linear(const LieElement& q, const std::vector<LieElement>& images);

// Products become sums, powers integer multiples, inverses negatives and
// commutators brackets. Variables must lie within the basis rank.
LieElement term_to_lie(const GroupTerm& t, std::shared_ptr<const HallBasis> basis);

// term_to_lie restricted to the shape of a central correction: a product of
// (powers of) nested commutators of variables, each of bracket weight at
// least the basis degree. Throws std::invalid_argument on any other shape.
LieElement group_term_to_lie(const GroupTerm& t, std::shared_ptr<const HallBasis> basis);

// "1*x1 + -1/2*[x2,x1]"; "0" for zero.
std::string coordinates_to_string(const LieElement& a);

}  // namespace nilaut
