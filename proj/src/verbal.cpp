#include "nilaut/verbal.hpp"

#include <random>
#include <stdexcept>

#include "nilaut/errors.hpp"

namespace nilaut {

namespace {

const OperationSystem& standard_ops() {
  static const OperationSystem ops = OperationSystem::standard();
  return ops;
}

std::vector<GroupElement> generators(int n, int d) {
  std::vector<GroupElement> gens;
  for (int i = 1; i <= n; ++i) gens.push_back(group_generator(i, n, d));
  return gens;
}

void require_binary_word(const GroupElement& w, const char* who) {
  if (w.rank() != 2) throw DimensionMismatch(std::string(who) + ": word must live in NF_2^d");
}

void append(std::string& details, const std::string& note) {
  if (!details.empty()) details += "; ";
  details += note;
}

GroupElement standard_xy(int d) { return g_mul(group_generator(1, 2, d), group_generator(2, 2, d)); }
GroupElement standard_yx(int d) { return g_mul(group_generator(2, 2, d), group_generator(1, 2, d)); }

// An element of gamma_weight: a left-normed commutator of random elements.
GroupElement random_gamma_element(std::mt19937_64& rng, int n, int d, int weight) {
  GroupElement g = random_element(rng, n, d);
  for (int k = 1; k < weight; ++k) g = g_comm(g, random_element(rng, n, d));
  return g;
}

}  // namespace

WordSystem::WordSystem(GroupElement unit, GroupElement inverse, GroupElement product)
    : unit_(std::move(unit)), inverse_(std::move(inverse)), product_(std::move(product)) {
  if (unit_.rank() != 0 || inverse_.rank() != 1 || product_.rank() != 2)
    throw DimensionMismatch("WordSystem: words must live in NF_0, NF_1 and NF_2");
  const int d = product_.degree_bound();
  if (unit_.degree_bound() != d || inverse_.degree_bound() != d)
    throw DimensionMismatch("WordSystem: words must share one class");
}

WordSystem WordSystem::identity(int d) {
  return WordSystem(GroupElement::identity(0, d), g_inv(group_generator(1, 1, d)), standard_xy(d));
}

WordSystem WordSystem::reverse(int d) {
  return WordSystem(GroupElement::identity(0, d), g_inv(group_generator(1, 1, d)), standard_yx(d));
}

OperationSystem induce_operation(const GroupElement& w) {
  require_binary_word(w, "induce_operation");
  OperationSystem ops = OperationSystem::standard();
  const GroupTerm word = normal_form_term(w);
  ops.product = [word](const GroupElement& a, const GroupElement& b) {
    return evaluate_term(word, {a, b}, standard_ops());
  };
  return ops;
}

OperationSystem induce_operations(const WordSystem& system) {
  OperationSystem ops = induce_operation(system.product());
  const GroupTerm unit = normal_form_term(system.unit());
  const GroupTerm inverse = normal_form_term(system.inverse());
  ops.unit = [unit](Shape s) { return evaluate_term(unit, {}, standard_ops(), s); };
  ops.inverse = [inverse](const GroupElement& a) { return evaluate_term(inverse, {a}, standard_ops()); };
  return ops;
}

AxiomReport check_group_axioms(const GroupElement& w) {
  require_binary_word(w, "check_group_axioms");
  const int d = w.degree_bound();
  const OperationSystem ops = induce_operation(w);
  AxiomReport report;

  const auto g3 = generators(3, d);
  report.associative = ops.product(ops.product(g3[0], g3[1]), g3[2]) == ops.product(g3[0], ops.product(g3[1], g3[2]));

  const GroupElement x = group_generator(1, 1, d);
  const GroupElement one = GroupElement::identity(1, d);
  const GroupElement x_inv = g_inv(x);
  report.unit = ops.product(x, one) == x && ops.product(one, x) == x;
  report.inverse = ops.product(x, x_inv) == one && ops.product(x_inv, x) == one;
  return report;
}

GroupElement star_commutator(const OperationSystem& ops, const GroupElement& a, const GroupElement& b) {
  return ops.product(ops.product(ops.product(ops.inverse(a), ops.inverse(b)), a), b);
}

GroupElement star_power(const OperationSystem& ops, const GroupElement& a, int k) {
  if (k == 0) return ops.unit(Shape{a.rank(), a.degree_bound()});
  const GroupElement base = k < 0 ? ops.inverse(a) : a;
  GroupElement result = base;
  for (int i = 1; i < std::abs(k); ++i) result = ops.product(result, base);
  return result;
}

ForcedFormReport forced_form_check(const GroupElement& w, int samples, std::uint64_t seed) {
  require_binary_word(w, "forced_form_check");
  const int d = w.degree_bound();
  const OperationSystem ops = induce_operation(w);
  ForcedFormReport report;

  report.g2 = g_mul(g_inv(standard_xy(d)), w);
  report.linear_part = lcs_weight(*report.g2) >= 2;

  const GroupElement one = GroupElement::identity(2, d);
  report.unit_idempotent = ops.product(one, one) == one;

  std::mt19937_64 rng(seed);
  std::vector<GroupElement> pool = generators(2, d);
  for (int j = 0; j < samples; ++j) pool.push_back(random_element(rng, 2, d));

  report.powers = true;
  for (const auto& a : pool) {
    for (int k = -5; k <= 5 && report.powers; ++k)
      if (star_power(ops, a, k) != g_pow(a, k)) report.powers = false;
    if (!report.powers) break;
  }

  report.gamma_containment = true;
  for (int i = 2; i <= d && report.gamma_containment; ++i) {
    for (int j = 0; j < std::max(1, samples); ++j) {
      const GroupElement g = random_gamma_element(rng, 2, d, i - 1);
      const GroupElement b = random_element(rng, 2, d);
      if (lcs_weight(star_commutator(ops, g, b)) < i) {
        report.gamma_containment = false;
        break;
      }
    }
  }
  return report;
}

LayerMatrices sigma_layer_matrices(const OperationSystem& ops, int n, int d) {
  const auto basis = malcev_basis(n, d);
  const HallBasis& hall = basis->hall();
  std::vector<GroupTerm> terms;
  for (std::size_t s = 0; s < basis->size(); ++s) terms.push_back(basis->commutator_term(s));
  const std::vector<GroupElement> images = evaluate_terms(terms, generators(n, d), ops, Shape{n, d});

  LayerMatrices out;
  for (int i = 1; i <= d; ++i) {
    const std::size_t begin = hall.degree_begin(i);
    const std::size_t count = hall.degree_count(i);
    IntMatrix layer(count, count);
    for (std::size_t s = 0; s < count; ++s) {
      const GroupElement& image = images[begin + s];
      if (lcs_weight(image) < i) {
        if (out.weights_ok)
          out.failure = "sigma(" + hall.word_string(begin + s) + ") has weight " +
                        std::to_string(lcs_weight(image)) + " < " + std::to_string(i);
        out.weights_ok = false;
        continue;
      }
      const RatVector coords = hall.layer_coordinates(tp_homogeneous_component(image.value(), i), i);
      for (std::size_t r = 0; r < count; ++r) {
        if (!is_integral(coords[r]))
          throw NonIntegralCoordinate("sigma_layer_matrices: coordinate " + to_string(coords[r]) + " of sigma(" +
                                      hall.word_string(begin + s) + ") is not an integer");
        layer(r, s) = coords[r].get_num();
      }
    }
    out.layers.push_back(std::move(layer));
  }
  return out;
}

LayerMatrices sigma_layer_matrices(const GroupElement& w, int n) {
  return sigma_layer_matrices(induce_operation(w), n, w.degree_bound());
}

SigmaReport sigma_report(const OperationSystem& ops, int n, int d) {
  SigmaReport report;
  report.matrices = sigma_layer_matrices(ops, n, d);
  report.isomorphism = report.matrices.weights_ok;
  for (const auto& layer : report.matrices.layers) {
    report.determinants.push_back(int_determinant(layer));
    if (abs(report.determinants.back()) != 1) report.isomorphism = false;
  }
  return report;
}

SigmaReport is_sigma_isomorphism(const GroupElement& w, int n) {
  return sigma_report(induce_operation(w), n, w.degree_bound());
}

Verdict check_op_d(const GroupElement& w) {
  require_binary_word(w, "check_op_d");
  Verdict v;
  v.word = normal_form_string(w);
  v.degree = w.degree_bound();
  v.axioms = check_group_axioms(w);
  if (!v.axioms.associative) append(v.details, "associativity fails");
  if (!v.axioms.unit) append(v.details, "unit law fails");
  if (!v.axioms.inverse) append(v.details, "inverse law fails");
  if (!v.axioms.passed()) return v;

  v.forced_form = forced_form_check(w);
  if (!v.forced_form->linear_part) append(v.details, "linear part is not xy");
  if (!v.forced_form->unit_idempotent) append(v.details, "1*1 != 1");
  if (!v.forced_form->powers) append(v.details, "a^(*k) != a^k");
  if (!v.forced_form->gamma_containment) append(v.details, "star commutator leaves gamma_i");
  if (!v.forced_form->passed()) return v;

  v.sigma = is_sigma_isomorphism(w, 2);
  if (!v.sigma->matrices.weights_ok) append(v.details, v.sigma->matrices.failure);
  for (std::size_t i = 0; i < v.sigma->determinants.size(); ++i)
    if (abs(v.sigma->determinants[i]) != 1)
      append(v.details, "layer " + std::to_string(i + 1) + " determinant " + v.sigma->determinants[i].get_str());
  v.passed = v.sigma->isomorphism;
  return v;
}

Verdict kappa_reduce_check(const GroupElement& w) {
  if (w.degree_bound() < 3) throw std::invalid_argument("kappa_reduce_check: class must be at least 3");
  return check_op_d(kappa_project(w));
}

SystemReport check_word_system(const WordSystem& system, int n_max, std::uint64_t seed) {
  const int d = system.degree_bound();
  const OperationSystem ops = induce_operations(system);
  SystemReport report;
  report.product_word = normal_form_string(system.product());
  report.degree = d;
  report.passed = true;
  std::mt19937_64 rng(seed);

  for (int n = 1; n <= n_max; ++n) {
    RankReport rank;
    rank.rank = n;
    std::vector<GroupElement> pool = generators(n, d);
    for (int j = 0; j < 3; ++j) pool.push_back(random_element(rng, n, d));

    rank.axioms.associative = true;
    for (const auto& a : pool)
      for (const auto& b : pool)
        for (const auto& c : pool)
          if (rank.axioms.associative && ops.product(ops.product(a, b), c) != ops.product(a, ops.product(b, c)))
            rank.axioms.associative = false;

    const GroupElement e = ops.unit(Shape{n, d});
    rank.axioms.unit = true;
    rank.axioms.inverse = true;
    for (const auto& a : pool) {
      if (ops.product(a, e) != a || ops.product(e, a) != a) rank.axioms.unit = false;
      const GroupElement a_inv = ops.inverse(a);
      if (ops.product(a, a_inv) != e || ops.product(a_inv, a) != e) rank.axioms.inverse = false;
    }

    rank.sigma = sigma_report(ops, n, d);
    rank.passed = rank.axioms.passed() && rank.sigma.isomorphism;
    report.passed = report.passed && rank.passed;
    report.ranks.push_back(std::move(rank));
  }
  return report;
}

WitnessReport inner_witness_check(const WordSystem& system, int n_max, int samples, std::uint64_t seed) {
  const int d = system.degree_bound();
  WitnessReport report;
  if (system.product() == standard_xy(d)) {
    report.witness = "identity";
  } else if (system.product() == standard_yx(d)) {
    report.witness = "inverse";
  } else {
    throw std::invalid_argument("inner_witness_check: product word is neither xy nor yx");
  }
  if (system.inverse() != g_inv(group_generator(1, 1, d)))
    throw std::invalid_argument("inner_witness_check: inverse word is not x^-1");

  const bool invert = report.witness == "inverse";
  // Both witnesses are involutions, so c^-1 = c.
  const auto c = [invert](const GroupElement& b) { return invert ? g_inv(b) : b; };
  const OperationSystem ops = induce_operations(system);
  report.degree = d;
  report.rank_max = n_max;
  report.samples = samples;
  std::mt19937_64 rng(seed);

  for (int n = 1; n <= n_max; ++n) {
    const Shape shape{n, d};
    if (c(GroupElement::identity(n, d)) != ops.unit(shape)) {
      report.homomorphism = false;
      append(report.details, "c(1) != 1_* at rank " + std::to_string(n));
    }
    for (int j = 0; j < samples; ++j) {
      const GroupElement a = random_element(rng, n, d);
      const GroupElement b = random_element(rng, n, d);
      if (c(g_mul(a, b)) != ops.product(c(a), c(b)) || c(g_inv(a)) != ops.inverse(c(a))) {
        if (report.homomorphism) append(report.details, "c is not a homomorphism at rank " + std::to_string(n));
        report.homomorphism = false;
      }
      if (c(c(a)) != a) {
        if (report.bijective) append(report.details, "c is not invertible at rank " + std::to_string(n));
        report.bijective = false;
      }
    }
    for (int j = 0; j < samples; ++j) {
      const int m = 1 + j % n_max;
      std::vector<GroupElement> images;
      for (int i = 0; i < m; ++i) images.push_back(random_element(rng, n, d, 4));
      const auto alpha = [&images](const GroupElement& a) { return apply_homomorphism(a, images); };
      const GroupElement a = random_element(rng, m, d);
      const GroupElement a2 = random_element(rng, m, d);
      const bool square = c(alpha(c(a))) == alpha(a);
      const bool star_hom = alpha(ops.product(a, a2)) == ops.product(alpha(a), alpha(a2));
      if (!square || !star_hom) {
        if (report.naturality)
          append(report.details, "naturality square fails for NF_" + std::to_string(m) + " -> NF_" + std::to_string(n));
        report.naturality = false;
      }
      ++report.squares_checked;
    }
  }
  report.passed = report.homomorphism && report.bijective && report.naturality;
  return report;
}

}  // namespace nilaut
