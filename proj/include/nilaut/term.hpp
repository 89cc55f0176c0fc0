#pragma once

// Formal words over the group signature {1, ^-1, *}.
//
// Power and Commutator are abbreviations: evaluation always expands them
// through the supplied unit/inverse/product, so a term means the same thing
// under the standard and under a verbal operation system. Nodes are shared
// immutably, so a term is a DAG and evaluation memoises by node.

#include <memory>
#include <string>

#include "nilaut/rational.hpp"

namespace nilaut {

class GroupTerm {
 public:
  enum class Kind { Unit, Variable, Inverse, Product, Power, Commutator };

  static GroupTerm unit();
  // v_i, 1-based.
  static GroupTerm variable(int i);
  static GroupTerm inverse(const GroupTerm& t);
  static GroupTerm product(const GroupTerm& a, const GroupTerm& b);
  static GroupTerm power(const GroupTerm& t, const Integer& k);
  // (a,b) = a^-1 b^-1 a b.
  static GroupTerm commutator(const GroupTerm& a, const GroupTerm& b);

  Kind kind() const;
  int variable_index() const;
  const Integer& exponent() const;
  const GroupTerm& child(int which) const;

  // Largest variable index used (0 for closed terms).
  int arity() const;
  // Nesting depth of commutators: a variable has weight 1 and (a,b) has
  // weight(a) + weight(b); other nodes take the minimum over their children.
  int bracket_weight() const;

  const void* id() const { return node_.get(); }

  // Grammar form with x<i> for v_i and c(a,b) for commutators.
  std::string to_string() const;

 private:
  struct Node;
  explicit GroupTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct GroupTerm::Node {
  Kind kind = Kind::Unit;
  int index = 0;
  int arity = 0;
  int weight = 0;
  Integer exponent;
  GroupTerm lhs{nullptr};
  GroupTerm rhs{nullptr};
};

}  // namespace nilaut
