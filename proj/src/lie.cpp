#include "nilaut/lie.hpp"

#include <stdexcept>

#include "nilaut/errors.hpp"

namespace nilaut {

namespace {

void require_basis_for(const TruncPoly& p, const HallBasis& basis) {
  if (p.rank() != basis.rank() || p.degree_bound() != basis.degree_bound())
    throw DimensionMismatch("tensor shape (n=" + std::to_string(p.rank()) + ", d=" +
                            std::to_string(p.degree_bound()) + ") differs from Hall basis (n=" +
                            std::to_string(basis.rank()) + ", d=" +
                            std::to_string(basis.degree_bound()) + ")");
}

void require_same_basis(const LieElement& a, const LieElement& b) {
  if (a.basis().rank() != b.basis().rank() || a.basis().degree_bound() != b.basis().degree_bound())
    throw DimensionMismatch("Lie elements live over different Hall bases");
}

}  // namespace

TruncPoly bracket(const TruncPoly& a, const TruncPoly& b) {
  return tp_sub(tp_mul(a, b), tp_mul(b, a));
}

RatVector lie_coordinates(const TruncPoly& p, const HallBasis& basis) {
  require_basis_for(p, basis);
  if (p.constant_term() != 0) throw NotLieElement(0, "not a Lie element: nonzero constant term");
  RatVector coords(basis.size());
  for (int k = 1; k <= basis.degree_bound(); ++k) {
    const TruncPoly layer = tp_homogeneous_component(p, k);
    if (layer.is_zero()) continue;
    const RatVector part = basis.layer_coordinates(layer, k);
    const std::size_t begin = basis.degree_begin(k);
    for (std::size_t s = 0; s < part.size(); ++s) coords[begin + s] = part[s];
  }
  return coords;
}

bool is_lie_element(const TruncPoly& p, const HallBasis& basis) {
  try {
    lie_coordinates(p, basis);
    return true;
  } catch (const NotLieElement&) {
    return false;
  }
}

LieElement::LieElement(std::shared_ptr<const HallBasis> basis, TruncPoly value)
    : basis_(std::move(basis)), value_(std::move(value)) {
  coords_ = lie_coordinates(value_, *basis_);
}

LieElement LieElement::zero(std::shared_ptr<const HallBasis> basis) {
  const int n = basis->rank();
  const int d = basis->degree_bound();
  RatVector coords(basis->size());
  return LieElement(std::move(basis), TruncPoly(n, d), std::move(coords));
}

LieElement LieElement::generator(std::shared_ptr<const HallBasis> basis, int i) {
  if (i < 1 || i > basis->rank()) throw std::out_of_range("LieElement::generator: index out of range");
  return hall_word(std::move(basis), static_cast<std::size_t>(i - 1));
}

LieElement LieElement::hall_word(std::shared_ptr<const HallBasis> basis, std::size_t position) {
  RatVector coords(basis->size());
  coords.at(position) = 1;
  TruncPoly value = basis->expansion(position);
  return LieElement(std::move(basis), std::move(value), std::move(coords));
}

LieElement LieElement::from_coordinates(std::shared_ptr<const HallBasis> basis, const RatVector& coords) {
  if (coords.size() != basis->size())
    throw DimensionMismatch("LieElement::from_coordinates: coordinate count differs from basis size");
  TruncPoly value(basis->rank(), basis->degree_bound());
  for (std::size_t s = 0; s < coords.size(); ++s)
    if (coords[s] != 0) value = tp_add(value, tp_scale(basis->expansion(s), coords[s]));
  return LieElement(std::move(basis), std::move(value), coords);
}

LieElement lie_add(const LieElement& a, const LieElement& b) {
  require_same_basis(a, b);
  RatVector coords = a.coords();
  for (std::size_t s = 0; s < coords.size(); ++s) coords[s] += b.coords()[s];
  return LieElement::from_coordinates(a.basis_ptr(), coords);
}

LieElement lie_sub(const LieElement& a, const LieElement& b) { return lie_add(a, lie_scale(b, -1)); }

LieElement lie_scale(const LieElement& a, const Rational& c) {
  RatVector coords = a.coords();
  for (auto& x : coords) x *= c;
  return LieElement::from_coordinates(a.basis_ptr(), coords);
}

LieElement lie_bracket(const LieElement& a, const LieElement& b) {
  require_same_basis(a, b);
  return LieElement(a.basis_ptr(), bracket(a.value(), b.value()));
}

LieElement bch_mul(const LieElement& a, const LieElement& b) {
  require_same_basis(a, b);
  const TruncPoly product = tp_mul(tp_exp(a.value()), tp_exp(b.value()));
  try {
    return LieElement(a.basis_ptr(), tp_log(product));
  } catch (const NotLieElement& e) {
    throw std::logic_error(std::string("bch_mul produced a non-Lie result: ") + e.what());
  }
}

std::map<std::vector<int>, LieElement> polyhomogeneous_decompose(const LieElement& q) {
  const int n = q.basis().rank();
  std::map<std::vector<int>, std::vector<Term>> split;
  for (const auto& t : q.value().terms()) split[tp_multidegree(t.monomial, n)].push_back(t);
  std::map<std::vector<int>, LieElement> out;
  for (auto& [degs, terms] : split) {
    TruncPoly part = TruncPoly::from_canonical(n, q.basis().degree_bound(), std::move(terms));
    out.emplace(degs, LieElement(q.basis_ptr(), std::move(part)));
  }
  return out;
}

LieElement substitute_linear(const LieElement& q, const std::vector<LieElement>& images) {
  const HallBasis& basis = q.basis();
  if (static_cast<int>(images.size()) != basis.rank())
    throw DimensionMismatch("substitute_linear: need one image per generator");
  for (const auto& img : images) require_same_basis(img, images.front());
  const auto& target = images.front().basis_ptr();

  // Image of every Hall word, built bottom-up (parts precede their brackets).
  std::vector<TruncPoly> word_images;
  word_images.reserve(basis.size());
  TruncPoly result(target->rank(), target->degree_bound());
  for (std::size_t s = 0; s < basis.size(); ++s) {
    const HallWord& w = basis.word(s);
    if (w.is_leaf()) {
      word_images.push_back(images[static_cast<std::size_t>(w.letter - 1)].value());
    } else {
      word_images.push_back(bracket(word_images[static_cast<std::size_t>(w.left)],
                                    word_images[static_cast<std::size_t>(w.right)]));
    }
    if (q.coords()[s] != 0) result = tp_add(result, tp_scale(word_images.back(), q.coords()[s]));
  }
  return LieElement(target, std::move(result));
}

namespace {

TruncPoly translate(const GroupTerm& t, const HallBasis& basis) {
  const int n = basis.rank();
  const int d = basis.degree_bound();
  switch (t.kind()) {
    case GroupTerm::Kind::Unit:
      return TruncPoly(n, d);
    case GroupTerm::Kind::Variable:
      if (t.variable_index() > n) throw DimensionMismatch("term variable exceeds the basis rank");
      return TruncPoly::generator(t.variable_index(), n, d);
    case GroupTerm::Kind::Inverse:
      return tp_neg(translate(t.child(0), basis));
    case GroupTerm::Kind::Product:
      return tp_add(translate(t.child(0), basis), translate(t.child(1), basis));
    case GroupTerm::Kind::Power:
      return tp_scale(translate(t.child(0), basis), Rational(t.exponent()));
    case GroupTerm::Kind::Commutator:
      return bracket(translate(t.child(0), basis), translate(t.child(1), basis));
  }
  return TruncPoly(n, d);
}

// Inside a commutator only variables and commutators may appear.
bool is_pure_commutator(const GroupTerm& t) {
  switch (t.kind()) {
    case GroupTerm::Kind::Variable:
      return true;
    case GroupTerm::Kind::Commutator:
      return is_pure_commutator(t.child(0)) && is_pure_commutator(t.child(1));
    default:
      return false;
  }
}

void check_correction_shape(const GroupTerm& t, int degree) {
  switch (t.kind()) {
    case GroupTerm::Kind::Unit:
      return;
    case GroupTerm::Kind::Product:
      check_correction_shape(t.child(0), degree);
      check_correction_shape(t.child(1), degree);
      return;
    case GroupTerm::Kind::Inverse:
    case GroupTerm::Kind::Power:
      check_correction_shape(t.child(0), degree);
      return;
    case GroupTerm::Kind::Commutator:
      if (!is_pure_commutator(t))
        throw std::invalid_argument("group_term_to_lie: commutator arguments must be variables or commutators");
      if (t.bracket_weight() < degree)
        throw std::invalid_argument("group_term_to_lie: commutator " + t.to_string() + " has weight " +
                                    std::to_string(t.bracket_weight()) + " < " + std::to_string(degree));
      return;
    case GroupTerm::Kind::Variable:
      throw std::invalid_argument("group_term_to_lie: bare variable outside a commutator");
  }
}

}  // namespace

LieElement term_to_lie(const GroupTerm& t, std::shared_ptr<const HallBasis> basis) {
  TruncPoly value = translate(t, *basis);
  return LieElement(std::move(basis), std::move(value));
}

LieElement group_term_to_lie(const GroupTerm& t, std::shared_ptr<const HallBasis> basis) {
  check_correction_shape(t, basis->degree_bound());
  return term_to_lie(t, std::move(basis));
}

std::string coordinates_to_string(const LieElement& a) {
  std::string s;
  for (std::size_t i = 0; i < a.coords().size(); ++i) {
    if (a.coords()[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += to_string(a.coords()[i]) + "*" + a.basis().word_string(i);
  }
  return s.empty() ? "0" : s;
}

}  // namespace nilaut
