#include "nilaut/term.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace nilaut {

namespace {

constexpr int kUnitWeight = INT_MAX / 4;

int add_weights(int a, int b) { return std::min(a + b, kUnitWeight); }

}  // namespace

GroupTerm::Kind GroupTerm::kind() const { return node_->kind; }
int GroupTerm::variable_index() const { return node_->index; }
const Integer& GroupTerm::exponent() const { return node_->exponent; }
const GroupTerm& GroupTerm::child(int which) const { return which == 0 ? node_->lhs : node_->rhs; }
int GroupTerm::arity() const { return node_->arity; }
int GroupTerm::bracket_weight() const { return node_->weight; }

GroupTerm GroupTerm::unit() {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Unit;
  node->weight = kUnitWeight;
  return GroupTerm(std::move(node));
}

GroupTerm GroupTerm::variable(int i) {
  if (i < 1) throw std::out_of_range("GroupTerm::variable: index must be >= 1");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Variable;
  node->index = i;
  node->arity = i;
  node->weight = 1;
  return GroupTerm(std::move(node));
}

GroupTerm GroupTerm::inverse(const GroupTerm& t) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Inverse;
  node->arity = t.arity();
  node->weight = t.bracket_weight();
  node->lhs = t;
  return GroupTerm(std::move(node));
}

GroupTerm GroupTerm::product(const GroupTerm& a, const GroupTerm& b) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Product;
  node->arity = std::max(a.arity(), b.arity());
  node->weight = std::min(a.bracket_weight(), b.bracket_weight());
  node->lhs = a;
  node->rhs = b;
  return GroupTerm(std::move(node));
}

GroupTerm GroupTerm::power(const GroupTerm& t, const Integer& k) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Power;
  node->arity = t.arity();
  node->weight = k == 0 ? kUnitWeight : t.bracket_weight();
  node->exponent = k;
  node->lhs = t;
  return GroupTerm(std::move(node));
}

GroupTerm GroupTerm::commutator(const GroupTerm& a, const GroupTerm& b) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Commutator;
  node->arity = std::max(a.arity(), b.arity());
  node->weight = add_weights(a.bracket_weight(), b.bracket_weight());
  node->lhs = a;
  node->rhs = b;
  return GroupTerm(std::move(node));
}

std::string GroupTerm::to_string() const {
  switch (kind()) {
    case Kind::Unit:
      return "1";
    case Kind::Variable:
      return "x" + std::to_string(variable_index());
    case Kind::Inverse: {
      const GroupTerm& c = child(0);
      const bool atomic = c.kind() == Kind::Variable || c.kind() == Kind::Unit ||
                          c.kind() == Kind::Commutator;
      return (atomic ? c.to_string() : "(" + c.to_string() + ")") + "^-1";
    }
    case Kind::Product: {
      // The grammar associates to the left; keep right-nested trees intact.
      const GroupTerm& r = child(1);
      return child(0).to_string() + "*" +
             (r.kind() == Kind::Product ? "(" + r.to_string() + ")" : r.to_string());
    }
    case Kind::Power: {
      const GroupTerm& c = child(0);
      const bool atomic = c.kind() == Kind::Variable || c.kind() == Kind::Unit ||
                          c.kind() == Kind::Commutator;
      return (atomic ? c.to_string() : "(" + c.to_string() + ")") + "^" + exponent().get_str();
    }
    case Kind::Commutator:
      return "c(" + child(0).to_string() + "," + child(1).to_string() + ")";
  }
  return {};
}

}  // namespace nilaut
