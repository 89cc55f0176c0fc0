#pragma once

// Free nilpotent group NF_n^d as group-like elements of the truncated tensor
// algebra: generator i is exp(X_i), the product is the algebra product.
// Equality is coefficient equality, gamma_i membership is a degree read-off
// and the logarithm of every element is a Lie polynomial.
//
// Commutator convention throughout: (a,b) = a^-1 b^-1 a b.

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nilaut/hall.hpp"
#include "nilaut/term.hpp"
#include "nilaut/tensor.hpp"

namespace nilaut {

class GroupElement {
 public:
  // Throws std::domain_error unless the constant term is exactly 1.
  explicit GroupElement(TruncPoly value);

  static GroupElement identity(int n, int d);

  const TruncPoly& value() const { return value_; }
  int rank() const { return value_.rank(); }
  int degree_bound() const { return value_.degree_bound(); }
  bool is_identity() const { return value_.size() == 1; }

  bool operator==(const GroupElement&) const = default;

 private:
  TruncPoly value_;
};

struct Shape {
  int n = 0;
  int d = 0;
};

// exp(X_i), 1-based.
GroupElement group_generator(int i, int n, int d);

GroupElement g_mul(const GroupElement& a, const GroupElement& b);
// Geometric series in (a - 1).
GroupElement g_inv(const GroupElement& a);
GroupElement g_pow(const GroupElement& a, const Integer& k);
GroupElement g_comm(const GroupElement& a, const GroupElement& b);

// Least degree of a nonzero term of log(a) (equivalently of a - 1);
// d+1 for the identity. a lies in gamma_i iff lcs_weight(a) >= i.
int lcs_weight(const GroupElement& a);

// True iff log(a) is a Lie polynomial, i.e. a lies in the Mal'cev completion.
bool in_completion(const GroupElement& a);

// Natural epimorphism NF^d -> NF^(d-1): drops the degree-d terms.
GroupElement kappa_project(const GroupElement& a);

// Word reversal: the anti-automorphism fixing every generator.
GroupElement mirror(const GroupElement& a);

// The homomorphism NF_n^d -> target sending generator i to images[i-1].
// All images share one shape whose class is at most a's class.
GroupElement apply_homomorphism(const GroupElement& a, const std::vector<GroupElement>& images);

// Basic commutators of a Hall basis as group elements and as terms.
class MalcevBasis {
 public:
  explicit MalcevBasis(std::shared_ptr<const HallBasis> hall);

  const HallBasis& hall() const { return *hall_; }
  const std::shared_ptr<const HallBasis>& hall_ptr() const { return hall_; }
  std::size_t size() const { return hall_->size(); }
  const GroupElement& commutator(std::size_t s) const { return commutators_.at(s); }
  const GroupTerm& commutator_term(std::size_t s) const { return terms_.at(s); }

 private:
  std::shared_ptr<const HallBasis> hall_;
  std::vector<GroupElement> commutators_;
  std::vector<GroupTerm> terms_;
};

std::shared_ptr<const MalcevBasis> malcev_basis(int n, int d);

// Exponents e_s with a = prod_s basic(s)^(e_s) in basis order.
using MalcevVector = std::vector<Integer>;

// Layer peeling: at degree i read the Hall coordinates of the degree-i part
// of the residual, divide the corresponding powers off on the left, move on.
// Throws NonIntegralCoordinate for completion elements outside the group.
MalcevVector malcev_coordinates(const GroupElement& a, const MalcevBasis& basis);
MalcevVector malcev_coordinates(const GroupElement& a);
GroupElement malcev_reconstruct(const MalcevVector& v, const MalcevBasis& basis);

// The normal-form word prod basic(s)^(e_s) over variables v_1..v_n.
GroupTerm normal_form_term(const MalcevVector& v, const MalcevBasis& basis);
GroupTerm normal_form_term(const GroupElement& a);
// Grammar text of the normal-form word, e.g. "x1*x2*c(x2,x1)^2"; "1" for the identity.
std::string normal_form_string(const GroupElement& a);
std::string to_string(const MalcevVector& v);

// Unit, inverse and product over elements of any shape.
struct OperationSystem {
  std::function<GroupElement(Shape)> unit;
  std::function<GroupElement(const GroupElement&)> inverse;
  std::function<GroupElement(const GroupElement&, const GroupElement&)> product;

  static OperationSystem standard();
};

// Bottom-up evaluation with v_i -> args[i-1]. The shape comes from the
// arguments, or from `shape` when there are none.
GroupElement evaluate_term(const GroupTerm& t, const std::vector<GroupElement>& args,
                           const OperationSystem& ops, std::optional<Shape> shape = std::nullopt);
// Several terms sharing one memo table.
std::vector<GroupElement> evaluate_terms(const std::vector<GroupTerm>& terms,
                                         const std::vector<GroupElement>& args,
                                         const OperationSystem& ops,
                                         std::optional<Shape> shape = std::nullopt);

// Seeded sampling; draws go through rng() directly so a seed gives the same
// sequence on every platform. A random word has `length` letters v_i^(+-1).
GroupTerm random_word(std::mt19937_64& rng, int arity, int length);
// Value of a random word of length 1..max_length on the generators.
GroupElement random_element(std::mt19937_64& rng, int n, int d, int max_length = 6);

// Parses the group-word grammar:
//   element := term ('*' term)*
//   term    := factor ('^' int)?
//   factor  := 'x'digits | '1' | '(' element ')' | 'c(' element ',' element ')'
GroupTerm parse_group_term(std::string_view text);
GroupElement parse_group_element(std::string_view text, int n, int d);

}  // namespace nilaut
