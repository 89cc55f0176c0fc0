#pragma once

// Verbal operations on free nilpotent groups and the predicates deciding
// whether a word system defines an isomorphic group structure.
//
// Identities are checked once on free generators (NF_3^d for associativity,
// NF_1^d for unit and inverse), which decides them on the whole variety.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilaut/group.hpp"
#include "nilaut/linalg.hpp"

namespace nilaut {

// Words (w_1, w_-1, w_.) in NF_0^d, NF_1^d and NF_2^d.
class WordSystem {
 public:
  WordSystem(GroupElement unit, GroupElement inverse, GroupElement product);

  // {1, x^-1, xy} and {1, x^-1, yx}.
  static WordSystem identity(int d);
  static WordSystem reverse(int d);

  const GroupElement& unit() const { return unit_; }
  const GroupElement& inverse() const { return inverse_; }
  const GroupElement& product() const { return product_; }
  int degree_bound() const { return product_.degree_bound(); }

 private:
  GroupElement unit_;
  GroupElement inverse_;
  GroupElement product_;
};

// a * b = w(a, b), evaluated through the Mal'cev normal-form word of w with
// the standard operations. Unit and inverse stay standard. The operations
// accept elements of any shape.
OperationSystem induce_operation(const GroupElement& w);
OperationSystem induce_operations(const WordSystem& system);

struct AxiomReport {
  bool associative = false;
  bool unit = false;
  bool inverse = false;

  bool passed() const { return associative && unit && inverse; }
};

AxiomReport check_group_axioms(const GroupElement& w);

// w = xy g_2 with g_2 in gamma_2, plus the consequences 1*1 = 1,
// a^(*k) = a^k for k in [-5, 5], and (g, a)_* in gamma_i for g in
// gamma_(i-1), each on `samples` seeded random elements of NF_2^d.
// Defined for any w; meaningful once the axioms hold.
struct ForcedFormReport {
  bool linear_part = false;
  bool unit_idempotent = false;
  bool powers = false;
  bool gamma_containment = false;
  std::optional<GroupElement> g2;  // (xy)^-1 w

  bool passed() const { return linear_part && unit_idempotent && powers && gamma_containment; }
};

ForcedFormReport forced_form_check(const GroupElement& w, int samples = 4, std::uint64_t seed = 0);

// inverse(a) * inverse(b) * a * b, folded from the left.
GroupElement star_commutator(const OperationSystem& ops, const GroupElement& a, const GroupElement& b);
// a * a * ... * a (|k| factors, inverse first when k < 0); unit for k = 0.
GroupElement star_power(const OperationSystem& ops, const GroupElement& a, int k);

// Column s of layer i holds the degree-i Hall coordinates of sigma(c_s),
// the *-commutator image of the s-th degree-i basic commutator.
struct LayerMatrices {
  std::vector<IntMatrix> layers;  // index i-1
  bool weights_ok = true;
  std::string failure;
};

LayerMatrices sigma_layer_matrices(const OperationSystem& ops, int n, int d);
LayerMatrices sigma_layer_matrices(const GroupElement& w, int n);

struct SigmaReport {
  LayerMatrices matrices;
  std::vector<Integer> determinants;
  bool isomorphism = false;
};

SigmaReport sigma_report(const OperationSystem& ops, int n, int d);
// sigma is bijective iff every layer map is unimodular.
SigmaReport is_sigma_isomorphism(const GroupElement& w, int n);

struct Verdict {
  std::string word;
  int degree = 0;
  int rank = 2;
  AxiomReport axioms;
  // Computed only when the axioms hold; sigma only when both hold.
  std::optional<ForcedFormReport> forced_form;
  std::optional<SigmaReport> sigma;
  bool passed = false;
  std::string details;
};

Verdict check_op_d(const GroupElement& w);
// check_op_d of kappa(w) at class d-1; requires d >= 3.
Verdict kappa_reduce_check(const GroupElement& w);

struct RankReport {
  int rank = 0;
  AxiomReport axioms;
  SigmaReport sigma;
  bool passed = false;
};

struct SystemReport {
  std::string product_word;
  int degree = 0;
  std::vector<RankReport> ranks;
  bool passed = false;
};

// Builds the operations on NF_n^d for every n <= n_max, re-checks the axioms
// on generators and seeded random elements, and tests sigma at each rank.
SystemReport check_word_system(const WordSystem& system, int n_max, std::uint64_t seed = 0);

struct WitnessReport {
  std::string witness;  // "identity" or "inverse"
  int degree = 0;
  int rank_max = 0;
  int samples = 0;
  bool homomorphism = true;
  bool bijective = true;
  bool naturality = true;
  std::uint64_t squares_checked = 0;
  bool passed = false;
  std::string details;
};

// For the two surviving systems: c_B = id or c_B(b) = b^-1 is an isomorphism
// B -> B*, and c_B alpha c_A^-1 = alpha over `samples` seeded random
// homomorphisms alpha per target rank. Throws std::invalid_argument for any
// other system.
WitnessReport inner_witness_check(const WordSystem& system, int n_max, int samples,
                                  std::uint64_t seed = 0);

}  // namespace nilaut
