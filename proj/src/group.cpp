#include "nilaut/group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "nilaut/errors.hpp"
#include "nilaut/lie.hpp"

namespace nilaut {

GroupElement::GroupElement(TruncPoly value) : value_(std::move(value)) {
  if (value_.constant_term() != 1)
    throw std::domain_error("GroupElement: constant term must be 1, got " + to_string(value_));
}

GroupElement GroupElement::identity(int n, int d) { return GroupElement(TruncPoly::one(n, d)); }

GroupElement group_generator(int i, int n, int d) {
  if (i < 1 || i > n) throw std::out_of_range("group_generator: index out of range");
  return GroupElement(tp_exp(TruncPoly::generator(i, n, d)));
}

GroupElement g_mul(const GroupElement& a, const GroupElement& b) {
  return GroupElement(tp_mul(a.value(), b.value()));
}

GroupElement g_inv(const GroupElement& a) {
  const int n = a.rank();
  const int d = a.degree_bound();
  const TruncPoly minus_u = tp_sub(TruncPoly::one(n, d), a.value());
  TruncPoly sum = TruncPoly::one(n, d);
  TruncPoly power = TruncPoly::one(n, d);
  for (int k = 1; k <= d; ++k) {
    power = tp_mul(power, minus_u);
    if (power.is_zero()) break;
    sum = tp_add(sum, power);
  }
  return GroupElement(std::move(sum));
}

namespace {

template <typename Mul>
GroupElement power_by_squaring(GroupElement base, Integer k, GroupElement result, Mul mul) {
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) result = mul(result, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

}  // namespace

GroupElement g_pow(const GroupElement& a, const Integer& k) {
  const GroupElement one = GroupElement::identity(a.rank(), a.degree_bound());
  if (k == 0) return one;
  const GroupElement base = k < 0 ? g_inv(a) : a;
  return power_by_squaring(base, abs(k), one, g_mul);
}

GroupElement g_comm(const GroupElement& a, const GroupElement& b) {
  return g_mul(g_mul(g_inv(a), g_inv(b)), g_mul(a, b));
}

int lcs_weight(const GroupElement& a) {
  const auto& terms = a.value().terms();
  return terms.size() <= 1 ? a.degree_bound() + 1 : terms[1].monomial.length;
}

bool in_completion(const GroupElement& a) {
  return is_lie_element(tp_log(a.value()), *hall_basis(a.rank(), a.degree_bound()));
}

GroupElement kappa_project(const GroupElement& a) {
  if (a.degree_bound() < 2) throw std::invalid_argument("kappa_project: class must be at least 2");
  return GroupElement(tp_truncate(a.value(), a.degree_bound() - 1));
}

GroupElement mirror(const GroupElement& a) { return GroupElement(tp_reverse(a.value())); }

GroupElement apply_homomorphism(const GroupElement& a, const std::vector<GroupElement>& images) {
  if (static_cast<int>(images.size()) != a.rank())
    throw DimensionMismatch("apply_homomorphism: need one image per generator");
  if (images.empty()) return a;
  std::vector<TruncPoly> logs;
  for (const auto& img : images) {
    require_same_shape(img.value(), images.front().value());
    logs.push_back(tp_log(img.value()));
  }
  if (images.front().degree_bound() > a.degree_bound())
    throw DimensionMismatch("apply_homomorphism: target class exceeds source class");
  // X_i -> log(image_i) is an algebra map sending exp(X_i) to image_i.
  return GroupElement(tp_substitute(a.value(), logs));
}

MalcevBasis::MalcevBasis(std::shared_ptr<const HallBasis> hall) : hall_(std::move(hall)) {
  const int n = hall_->rank();
  const int d = hall_->degree_bound();
  for (std::size_t s = 0; s < hall_->size(); ++s) {
    const HallWord& w = hall_->word(s);
    if (w.is_leaf()) {
      commutators_.push_back(group_generator(w.letter, n, d));
      terms_.push_back(GroupTerm::variable(w.letter));
    } else {
      const auto l = static_cast<std::size_t>(w.left);
      const auto r = static_cast<std::size_t>(w.right);
      commutators_.push_back(g_comm(commutators_[l], commutators_[r]));
      terms_.push_back(GroupTerm::commutator(terms_[l], terms_[r]));
    }
  }
}

std::shared_ptr<const MalcevBasis> malcev_basis(int n, int d) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const MalcevBasis>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({n, d});
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const MalcevBasis>(hall_basis(n, d));
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(std::make_pair(n, d), std::move(built)).first->second;
}

MalcevVector malcev_coordinates(const GroupElement& a, const MalcevBasis& basis) {
  const HallBasis& hall = basis.hall();
  if (a.rank() != hall.rank() || a.degree_bound() != hall.degree_bound())
    throw DimensionMismatch("malcev_coordinates: element shape differs from the basis");
  const int d = hall.degree_bound();
  MalcevVector exps(hall.size());
  GroupElement residual = a;
  for (int k = 1; k <= d; ++k) {
    if (residual.is_identity()) break;
    if (lcs_weight(residual) < k) throw std::logic_error("malcev_coordinates: residual left gamma_k");
    const TruncPoly layer = tp_homogeneous_component(residual.value(), k);
    if (layer.is_zero()) continue;
    const RatVector coords = hall.layer_coordinates(layer, k);
    const std::size_t begin = hall.degree_begin(k);
    GroupElement factor = GroupElement::identity(a.rank(), d);
    for (std::size_t s = 0; s < coords.size(); ++s) {
      if (coords[s] == 0) continue;
      if (!is_integral(coords[s]))
        throw NonIntegralCoordinate("malcev_coordinates: exponent " + to_string(coords[s]) + " of " +
                                    hall.word_string(begin + s) + " is not an integer");
      exps[begin + s] = coords[s].get_num();
      factor = g_mul(factor, g_pow(basis.commutator(begin + s), exps[begin + s]));
    }
    residual = g_mul(g_inv(factor), residual);
  }
  if (!residual.is_identity()) throw std::logic_error("malcev_coordinates: nonzero residual");
  return exps;
}

MalcevVector malcev_coordinates(const GroupElement& a) {
  return malcev_coordinates(a, *malcev_basis(a.rank(), a.degree_bound()));
}

GroupElement malcev_reconstruct(const MalcevVector& v, const MalcevBasis& basis) {
  if (v.size() != basis.size()) throw DimensionMismatch("malcev_reconstruct: vector length differs from basis");
  GroupElement result = GroupElement::identity(basis.hall().rank(), basis.hall().degree_bound());
  for (std::size_t s = 0; s < v.size(); ++s)
    if (v[s] != 0) result = g_mul(result, g_pow(basis.commutator(s), v[s]));
  return result;
}

GroupTerm normal_form_term(const MalcevVector& v, const MalcevBasis& basis) {
  if (v.size() != basis.size()) throw DimensionMismatch("normal_form_term: vector length differs from basis");
  std::optional<GroupTerm> word;
  for (std::size_t s = 0; s < v.size(); ++s) {
    if (v[s] == 0) continue;
    GroupTerm factor = v[s] == 1 ? basis.commutator_term(s) : GroupTerm::power(basis.commutator_term(s), v[s]);
    word = word ? GroupTerm::product(*word, factor) : factor;
  }
  return word ? *word : GroupTerm::unit();
}

GroupTerm normal_form_term(const GroupElement& a) {
  const auto basis = malcev_basis(a.rank(), a.degree_bound());
  return normal_form_term(malcev_coordinates(a, *basis), *basis);
}

std::string normal_form_string(const GroupElement& a) { return normal_form_term(a).to_string(); }

std::string to_string(const MalcevVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].get_str();
  }
  return s + ")";
}

OperationSystem OperationSystem::standard() {
  OperationSystem ops;
  ops.unit = [](Shape s) { return GroupElement::identity(s.n, s.d); };
  ops.inverse = [](const GroupElement& a) { return g_inv(a); };
  ops.product = [](const GroupElement& a, const GroupElement& b) { return g_mul(a, b); };
  return ops;
}

namespace {

class Evaluator {
 public:
  Evaluator(const std::vector<GroupElement>& args, const OperationSystem& ops, Shape shape)
      : args_(args), ops_(ops), shape_(shape) {}

  GroupElement eval(const GroupTerm& t) {
    auto it = memo_.find(t.id());
    if (it != memo_.end()) return it->second;
    GroupElement value = compute(t);
    memo_.emplace(t.id(), value);
    return value;
  }

 private:
  GroupElement compute(const GroupTerm& t) {
    using Kind = GroupTerm::Kind;
    switch (t.kind()) {
      case Kind::Unit:
        return ops_.unit(shape_);
      case Kind::Variable:
        return args_.at(static_cast<std::size_t>(t.variable_index() - 1));
      case Kind::Inverse:
        return ops_.inverse(eval(t.child(0)));
      case Kind::Product:
        return ops_.product(eval(t.child(0)), eval(t.child(1)));
      case Kind::Power: {
        const Integer& k = t.exponent();
        if (k == 0) return ops_.unit(shape_);
        GroupElement base = eval(t.child(0));
        if (k < 0) base = ops_.inverse(base);
        // Left fold a*a*...*a for small exponents; they agree when the
        // product is associative.
        const Integer count = abs(k);
        if (count > 64) return power_by_squaring(base, count - 1, base, ops_.product);
        GroupElement result = base;
        for (Integer i = 1; i < count; ++i) result = ops_.product(result, base);
        return result;
      }
      case Kind::Commutator: {
        const GroupElement a = eval(t.child(0));
        const GroupElement b = eval(t.child(1));
        return ops_.product(ops_.product(ops_.product(ops_.inverse(a), ops_.inverse(b)), a), b);
      }
    }
    throw std::logic_error("evaluate_term: unknown node");
  }

  const std::vector<GroupElement>& args_;
  const OperationSystem& ops_;
  Shape shape_;
  std::unordered_map<const void*, GroupElement> memo_;
};

Shape shape_for(const std::vector<GroupElement>& args, std::optional<Shape> shape, int arity) {
  if (static_cast<int>(args.size()) < arity)
    throw DimensionMismatch("evaluate_term: term uses " + std::to_string(arity) + " variables, got " +
                            std::to_string(args.size()) + " arguments");
  for (const auto& a : args) require_same_shape(a.value(), args.front().value());
  if (!args.empty()) {
    Shape s{args.front().rank(), args.front().degree_bound()};
    if (shape && (shape->n != s.n || shape->d != s.d))
      throw DimensionMismatch("evaluate_term: explicit shape differs from the arguments");
    return s;
  }
  if (!shape) throw std::invalid_argument("evaluate_term: no arguments and no shape");
  return *shape;
}

}  // namespace

GroupElement evaluate_term(const GroupTerm& t, const std::vector<GroupElement>& args,
                           const OperationSystem& ops, std::optional<Shape> shape) {
  Evaluator ev(args, ops, shape_for(args, shape, t.arity()));
  return ev.eval(t);
}

std::vector<GroupElement> evaluate_terms(const std::vector<GroupTerm>& terms,
                                         const std::vector<GroupElement>& args,
                                         const OperationSystem& ops, std::optional<Shape> shape) {
  int arity = 0;
  for (const auto& t : terms) arity = std::max(arity, t.arity());
  Evaluator ev(args, ops, shape_for(args, shape, arity));
  std::vector<GroupElement> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(ev.eval(t));
  return out;
}

GroupTerm random_word(std::mt19937_64& rng, int arity, int length) {
  if (arity < 1 || length < 1) return GroupTerm::unit();
  std::optional<GroupTerm> word;
  for (int i = 0; i < length; ++i) {
    const std::uint64_t draw = rng();
    GroupTerm letter = GroupTerm::variable(1 + static_cast<int>((draw >> 1) % static_cast<std::uint64_t>(arity)));
    if (draw & 1) letter = GroupTerm::inverse(letter);
    word = word ? GroupTerm::product(*word, letter) : letter;
  }
  return *word;
}

GroupElement random_element(std::mt19937_64& rng, int n, int d, int max_length) {
  const int length = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(1, max_length)));
  std::vector<GroupElement> gens;
  for (int i = 1; i <= n; ++i) gens.push_back(group_generator(i, n, d));
  return evaluate_term(random_word(rng, n, length), gens, OperationSystem::standard(), Shape{n, d});
}

}  // namespace nilaut
