#include <gtest/gtest.h>

#include <random>

#include "nilaut/errors.hpp"
#include "nilaut/verbal.hpp"

using namespace nilaut;

namespace {

GroupElement word(const std::string& text, int d) { return parse_group_element(text, 2, d); }

std::string class_two_word(int m) { return "x1*x2*c(x2,x1)^" + std::to_string(m); }

}  // namespace

TEST(InduceOperation, KnownWords) {
  std::mt19937_64 rng(51);
  const OperationSystem xy = induce_operation(word("x1*x2", 3));
  const OperationSystem yx = induce_operation(word("x2*x1", 3));
  const OperationSystem m3 = induce_operation(word(class_two_word(3), 2));
  for (int trial = 0; trial < 10; ++trial) {
    const GroupElement a = random_element(rng, 3, 3);
    const GroupElement b = random_element(rng, 3, 3);
    EXPECT_EQ(xy.product(a, b), g_mul(a, b));
    EXPECT_EQ(yx.product(a, b), g_mul(b, a));
    const GroupElement a2 = random_element(rng, 2, 2);
    const GroupElement b2 = random_element(rng, 2, 2);
    EXPECT_EQ(m3.product(a2, b2), g_mul(g_mul(a2, b2), g_pow(g_comm(b2, a2), 3)));
  }
  EXPECT_THROW(induce_operation(group_generator(1, 1, 2)), DimensionMismatch);
}

TEST(InduceOperation, DependsOnlyOnTheElement) {
  // Two different words for the same element of NF_2^3.
  const GroupElement w1 = word("x2*x1*x2", 3);
  const GroupElement w2 = word("x1*x2^2*c(x2,x1)*c(c(x2,x1),x2)", 3);
  ASSERT_EQ(w1, w2);
  const GroupTerm t1 = parse_group_term("x2*x1*x2");
  std::mt19937_64 rng(52);
  const OperationSystem ops = induce_operation(w2);
  for (int trial = 0; trial < 100; ++trial) {
    const GroupElement a = random_element(rng, 2, 3);
    const GroupElement b = random_element(rng, 2, 3);
    EXPECT_EQ(ops.product(a, b), evaluate_term(t1, {a, b}, OperationSystem::standard()));
  }
}

TEST(Axioms, ClassTwoWordsAllSatisfyThem) {
  for (int m = -10; m <= 10; ++m) {
    const AxiomReport r = check_group_axioms(word(class_two_word(m), 2));
    EXPECT_TRUE(r.passed()) << m;
  }
  EXPECT_TRUE(check_group_axioms(word("x1*x2", 5)).passed());
}

TEST(Axioms, ClassThreeCorrectionBreaksAssociativity) {
  const AxiomReport r = check_group_axioms(word("x1*x2*c(c(x2,x1),x1)", 3));
  EXPECT_FALSE(r.associative);
  EXPECT_TRUE(r.unit);
  EXPECT_TRUE(r.inverse);
}

TEST(Axioms, NonGroupWordsFailUnitOrInverse) {
  const AxiomReport r = check_group_axioms(word("x1^2*x2", 2));
  EXPECT_FALSE(r.unit);
  EXPECT_FALSE(check_group_axioms(word("x1", 2)).unit);
}

TEST(ForcedForm, LinearPartAndCorrection) {
  const ForcedFormReport xy = forced_form_check(word("x1*x2", 3));
  EXPECT_TRUE(xy.passed());
  EXPECT_TRUE(xy.g2->is_identity());

  EXPECT_FALSE(forced_form_check(word("x1^2*x2", 3)).linear_part);

  const ForcedFormReport yx = forced_form_check(word("x2*x1", 3));
  EXPECT_TRUE(yx.passed());
  EXPECT_EQ(*yx.g2, g_comm(group_generator(2, 2, 3), group_generator(1, 2, 3)));
  EXPECT_EQ(lcs_weight(*yx.g2), 2);
}

TEST(ForcedForm, HoldsForEveryClassTwoWord) {
  for (int m = -10; m <= 10; ++m) EXPECT_TRUE(forced_form_check(word(class_two_word(m), 2), 8, 3).passed()) << m;
}

TEST(StarOperations, CommutatorAndPowers) {
  const GroupElement x = group_generator(1, 2, 2);
  const GroupElement y = group_generator(2, 2, 2);
  const OperationSystem xy = induce_operation(word("x1*x2", 2));
  EXPECT_EQ(star_commutator(xy, y, x), g_comm(y, x));
  for (int m = -4; m <= 4; ++m) {
    const OperationSystem ops = induce_operation(word(class_two_word(m), 2));
    EXPECT_EQ(star_commutator(ops, y, x), g_pow(g_comm(y, x), 1 - 2 * m)) << m;
    for (int k = -5; k <= 5; ++k) EXPECT_EQ(star_power(ops, x, k), g_pow(x, k));
  }
}

TEST(StarOperations, CommutatorsStayInGammaTwo) {
  std::mt19937_64 rng(53);
  for (const char* w : {"x1*x2", "x2*x1", "x1*x2*c(x2,x1)^-3"}) {
    const OperationSystem ops = induce_operation(word(w, 3));
    for (int trial = 0; trial < 10; ++trial)
      EXPECT_GE(lcs_weight(star_commutator(ops, random_element(rng, 2, 3), random_element(rng, 2, 3))), 2);
  }
}

TEST(Sigma, IdentityWordGivesIdentityLayers) {
  const LayerMatrices m = sigma_layer_matrices(word("x1*x2", 4), 2);
  ASSERT_EQ(m.layers.size(), 4u);
  for (const auto& layer : m.layers) EXPECT_EQ(layer, IntMatrix::identity(layer.rows()));
  const SigmaReport r = is_sigma_isomorphism(word("x1*x2", 4), 3);
  EXPECT_TRUE(r.isomorphism);
  for (const auto& det : r.determinants) EXPECT_EQ(det, 1);
}

TEST(Sigma, ClassTwoLayerIsOneMinusTwoM) {
  for (int m = -10; m <= 10; ++m) {
    const LayerMatrices layers = sigma_layer_matrices(word(class_two_word(m), 2), 2);
    ASSERT_EQ(layers.layers.size(), 2u);
    EXPECT_EQ(layers.layers[0], IntMatrix::identity(2));
    EXPECT_EQ(layers.layers[1](0, 0), 1 - 2 * m);
    const SigmaReport r = is_sigma_isomorphism(word(class_two_word(m), 2), 2);
    EXPECT_EQ(r.isomorphism, m == 0 || m == 1) << m;
  }
  const SigmaReport two = is_sigma_isomorphism(word(class_two_word(2), 2), 2);
  EXPECT_EQ(two.determinants, (std::vector<Integer>{1, -3}));
}

TEST(Sigma, ReversedWordNegatesEvenLayers) {
  const LayerMatrices m = sigma_layer_matrices(word("x2*x1", 2), 2);
  EXPECT_EQ(m.layers[0], IntMatrix::identity(2));
  EXPECT_EQ(m.layers[1](0, 0), -1);
  // Under the reversed product a degree-i commutator picks up (-1)^(i-1).
  const SigmaReport r = is_sigma_isomorphism(word("x2*x1", 5), 2);
  EXPECT_EQ(r.determinants, (std::vector<Integer>{1, -1, 1, -1, 1}));
}

TEST(Sigma, ReportsWeightViolation) {
  // With a * b = a^2 b the *-commutator of x2 and x1 is -3 x2 - 6 x1 modulo gamma_2.
  const LayerMatrices m = sigma_layer_matrices(word("x1^2*x2", 2), 2);
  EXPECT_FALSE(m.weights_ok);
  EXPECT_EQ(m.failure, "sigma([x2,x1]) has weight 1 < 2");
  EXPECT_EQ(m.layers[0], IntMatrix::identity(2));
}

TEST(CheckOpD, SurvivorsAndFailures) {
  for (int d = 1; d <= 5; ++d) {
    EXPECT_TRUE(check_op_d(word("x1*x2", d)).passed) << d;
    EXPECT_TRUE(check_op_d(word("x2*x1", d)).passed) << d;
  }
  const Verdict two = check_op_d(word(class_two_word(2), 2));
  EXPECT_FALSE(two.passed);
  EXPECT_EQ(two.details, "layer 2 determinant -3");
  const Verdict lift = check_op_d(word("x1*x2*c(c(x2,x1),x1)", 3));
  EXPECT_FALSE(lift.passed);
  EXPECT_FALSE(lift.forced_form);
  EXPECT_FALSE(lift.sigma);
}

TEST(CheckOpD, XyTimesCommutatorIsYxAtEveryClass) {
  // x y (y,x) = y x in every group, so this word survives at class 3 as well.
  EXPECT_EQ(word("x1*x2*c(x2,x1)", 3), word("x2*x1", 3));
  EXPECT_TRUE(check_op_d(word("x1*x2*c(x2,x1)", 3)).passed);
}

TEST(KappaReduce, PreservesSurvivorsAndNeedsClassThree) {
  EXPECT_TRUE(kappa_reduce_check(word("x1*x2", 4)).passed);
  EXPECT_TRUE(kappa_reduce_check(word("x2*x1", 4)).passed);
  EXPECT_EQ(kappa_reduce_check(word("x2*x1", 4)).degree, 3);
  EXPECT_THROW(kappa_reduce_check(word("x1*x2", 2)), std::invalid_argument);
  // A lift of a class-2 failure fails at class 3.
  EXPECT_FALSE(kappa_reduce_check(word(class_two_word(2) + "*c(c(x2,x1),x1)", 3)).passed);
  EXPECT_FALSE(check_op_d(word(class_two_word(2) + "*c(c(x2,x1),x1)", 3)).passed);
}

TEST(WordSystem, ValidatesArities) {
  EXPECT_THROW(WordSystem(GroupElement::identity(1, 2), g_inv(group_generator(1, 1, 2)), word("x1*x2", 2)),
               DimensionMismatch);
  EXPECT_THROW(WordSystem(GroupElement::identity(0, 3), g_inv(group_generator(1, 1, 2)), word("x1*x2", 2)),
               DimensionMismatch);
  EXPECT_EQ(WordSystem::reverse(3).product(), word("x2*x1", 3));
}

TEST(WordSystem, SurvivingSystemsPassAtEveryRank) {
  for (int d = 1; d <= 3; ++d) {
    const SystemReport id = check_word_system(WordSystem::identity(d), 3);
    const SystemReport rev = check_word_system(WordSystem::reverse(d), 3);
    EXPECT_TRUE(id.passed) << d;
    EXPECT_TRUE(rev.passed) << d;
    EXPECT_EQ(rev.ranks.size(), 3u);
  }
}

TEST(WordSystem, ClassTwoFailureIsDetected) {
  const WordSystem w(GroupElement::identity(0, 2), g_inv(group_generator(1, 1, 2)), word(class_two_word(2), 2));
  const SystemReport r = check_word_system(w, 3);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.ranks[0].passed);
  EXPECT_FALSE(r.ranks[1].passed);
  EXPECT_TRUE(r.ranks[1].axioms.passed());
}

TEST(Witness, SurvivingSystems) {
  const WitnessReport id = inner_witness_check(WordSystem::identity(3), 3, 20, 5);
  EXPECT_EQ(id.witness, "identity");
  EXPECT_TRUE(id.passed);
  const WitnessReport rev = inner_witness_check(WordSystem::reverse(3), 3, 20, 5);
  EXPECT_EQ(rev.witness, "inverse");
  EXPECT_TRUE(rev.passed);
  EXPECT_EQ(rev.squares_checked, 60u);
}

TEST(Witness, RejectsOtherSystems) {
  const WordSystem w(GroupElement::identity(0, 2), g_inv(group_generator(1, 1, 2)), word(class_two_word(2), 2));
  EXPECT_THROW(inner_witness_check(w, 2, 5), std::invalid_argument);
}

TEST(Witness, AntiAutomorphismIdentity) {
  std::mt19937_64 rng(54);
  const OperationSystem ops = induce_operations(WordSystem::reverse(4));
  for (int trial = 0; trial < 10; ++trial) {
    const GroupElement a = random_element(rng, 3, 4);
    const GroupElement b = random_element(rng, 3, 4);
    EXPECT_EQ(g_inv(g_mul(a, b)), ops.product(g_inv(a), g_inv(b)));
  }
}
