#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "nilaut/classify.hpp"
#include "oracles.hpp"

using namespace nilaut;

namespace {

const MalcevVector kXy2{1, 1, 0};
const MalcevVector kYx2{1, 1, 1};

GroupElement word(const std::string& text, int d) { return parse_group_element(text, 2, d); }

std::vector<MalcevVector> sorted(std::vector<MalcevVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

MalcevVector padded(const MalcevVector& prefix, std::size_t size) {
  MalcevVector v = prefix;
  v.resize(size, 0);
  return v;
}

std::pair<int, int> bidegree(const oracle::Poly& p) {
  const oracle::Word& w = p.begin()->first;
  const int x = static_cast<int>(std::count(w.begin(), w.end(), 1));
  return {x, static_cast<int>(w.size()) - x};
}

// Random product of degree-d basic commutators c(...)^e over two letters.
GroupTerm random_top_term(std::mt19937_64& rng, int d) {
  const auto basis = malcev_basis(2, d);
  const HallBasis& hall = basis->hall();
  std::string text;
  for (std::size_t s = hall.degree_begin(d); s < hall.degree_end(d); ++s) {
    const long e = static_cast<long>(rng() % 5) - 2;
    if (e == 0) continue;
    if (!text.empty()) text += "*";
    text += basis->commutator_term(s).to_string() + "^" + std::to_string(e);
  }
  if (text.empty()) text = basis->commutator_term(hall.degree_begin(d)).to_string();
  return parse_group_term(text);
}

}  // namespace

TEST(CandidateBox, SizeAndOrder) {
  const CandidateBox box(3, 1);
  EXPECT_EQ(box.size(), 27u);
  EXPECT_EQ(box.positions(), (std::vector<std::size_t>{2, 3, 4}));
  EXPECT_EQ(box.candidate(0), (MalcevVector{1, 1, -1, -1, -1}));
  EXPECT_EQ(box.candidate(1), (MalcevVector{1, 1, -1, -1, 0}));
  EXPECT_EQ(box.candidate(26), (MalcevVector{1, 1, 1, 1, 1}));
  EXPECT_THROW(box.candidate(27), std::out_of_range);
  EXPECT_EQ(CandidateBox(2, 10).size(), 21u);
}

TEST(Search, ClassTwo) {
  const SearchResult r = search_class(2, 10);
  EXPECT_EQ(r.checked, 21u);
  EXPECT_EQ(sorted(r.survivors), (std::vector<MalcevVector>{kXy2, kYx2}));
  // Every class-2 candidate is a group law.
  EXPECT_EQ(r.axiom_passing.size(), 21u);
}

TEST(Search, ClassThreeWithAndWithoutPrefilter) {
  const SearchResult fast = search_class(3, 1);
  const SearchResult full = search_class(3, 1, SearchOptions{1, false});
  const std::vector<MalcevVector> expected{padded(kXy2, 5), padded(kYx2, 5)};
  EXPECT_EQ(sorted(fast.survivors), expected);
  EXPECT_EQ(sorted(full.survivors), expected);
  EXPECT_EQ(full.checked, 27u);
  EXPECT_EQ(full.kappa_eliminated, 0u);
  EXPECT_EQ(fast.checked + fast.kappa_eliminated, 27u);
  EXPECT_GT(fast.kappa_eliminated, 0u);
}

TEST(Search, ThreadsGiveTheSameAnswer) {
  const SearchResult one = search_class(3, 1, SearchOptions{1, false});
  const SearchResult two = search_class(3, 1, SearchOptions{3, false});
  EXPECT_EQ(one.survivors, two.survivors);
  EXPECT_EQ(one.axiom_passing, two.axiom_passing);
}

TEST(Search, KappaEliminatedCandidatesFailDirectly) {
  const CandidateBox box(3, 1);
  const auto basis = malcev_basis(2, 3);
  for (std::uint64_t i = 0; i < box.size(); ++i) {
    const GroupElement w = malcev_reconstruct(box.candidate(i), *basis);
    const bool prefix_ok = kappa_reduce_check(w).passed;
    if (!prefix_ok) EXPECT_FALSE(check_op_d(w).passed) << to_string(box.candidate(i));
  }
}

TEST(Cocycle, GroupForm) {
  EXPECT_TRUE(cocycle_condition_group(parse_group_term("c(x2,x1)^5"), 2));
  EXPECT_FALSE(cocycle_condition_group(parse_group_term("c(c(x2,x1),x1)"), 3));
  EXPECT_FALSE(cocycle_condition_group(parse_group_term("c(c(x2,x1),x2)^-1"), 3));
  EXPECT_THROW(cocycle_condition_group(parse_group_term("x1"), 2), std::invalid_argument);
  EXPECT_THROW(cocycle_condition_group(parse_group_term("c(x2,x1)"), 3), std::invalid_argument);
}

TEST(Cocycle, LieFormAgreesWithGroupFormAndAssociativity) {
  std::mt19937_64 rng(61);
  for (int d = 2; d <= 4; ++d) {
    const auto two = hall_basis(2, d);
    const auto three = hall_basis(3, d);
    const LieElement a = LieElement::generator(three, 1);
    const LieElement b = LieElement::generator(three, 2);
    const LieElement c = LieElement::generator(three, 3);
    for (int trial = 0; trial < 6; ++trial) {
      const GroupTerm r = random_top_term(rng, d);
      const bool group = cocycle_condition_group(r, d);
      EXPECT_EQ(cocycle_condition_lie(group_term_to_lie(r, two), a, b, c), group) << r.to_string();
      const GroupElement w = g_mul(word("x1*x2", d), evaluate_term(r, {group_generator(1, 2, d), group_generator(2, 2, d)},
                                                                  OperationSystem::standard()));
      EXPECT_EQ(check_group_axioms(w).associative, group) << r.to_string();
    }
  }
}

TEST(Cocycle, LieFormRejectsInhomogeneous) {
  const auto basis = hall_basis(2, 3);
  const LieElement q = lie_add(LieElement::hall_word(basis, 2), LieElement::hall_word(basis, 3));
  const LieElement x = LieElement::generator(basis, 1);
  EXPECT_THROW(cocycle_condition_lie(q, x, x, x), std::invalid_argument);
  EXPECT_TRUE(cocycle_condition_lie(LieElement::zero(basis), x, x, x));
}

TEST(Certificate, ClassThreeRowsInClosedForm) {
  const Certificate cert = build_certificate(3, {1, 2});
  ASSERT_EQ(cert.unknown_bidegrees, (std::vector<std::pair<int, int>>{{2, 1}, {1, 2}}));
  ASSERT_EQ(cert.system.rows(), 8u);
  // rho on [[x2,x1],x1], sigma on [[x2,x1],x2]. Under (lx, x, y) the only
  // residual is 2 l rho - l sigma; under (x, y, ly) it is l rho - 2 l sigma.
  for (std::size_t li = 0; li < 2; ++li) {
    const long l = static_cast<long>(li) + 1;
    const std::size_t base = 4 * li;
    EXPECT_EQ(cert.system(base, 0), 2 * l);
    EXPECT_EQ(cert.system(base, 1), -l);
    EXPECT_EQ(cert.system(base + 1, 0), 0);
    EXPECT_EQ(cert.system(base + 1, 1), 0);
    EXPECT_EQ(cert.system(base + 2, 0), 0);
    EXPECT_EQ(cert.system(base + 2, 1), 0);
    EXPECT_EQ(cert.system(base + 3, 0), l);
    EXPECT_EQ(cert.system(base + 3, 1), -2 * l);
  }
  EXPECT_EQ(cert.rank, 2u);
  EXPECT_TRUE(cert.proves_zero());
  ASSERT_EQ(cert.blocks.size(), 2u);
  EXPECT_EQ(cert.blocks[0].bidegree, (std::pair<int, int>{2, 1}));
  EXPECT_EQ(cert.blocks[1].bidegree, (std::pair<int, int>{1, 2}));
  EXPECT_EQ(cert.q1_coefficients[0], (std::pair<Integer, Integer>{1, 2}));
  EXPECT_EQ(cert.q1_coefficients[1], (std::pair<Integer, Integer>{2, 4}));
}

TEST(Certificate, RowsMatchTensorResidual) {
  for (int d = 3; d <= 5; ++d) {
    const std::vector<Integer> lambdas{1, 2, -3};
    const Certificate cert = build_certificate(d, lambdas);
    const auto basis = hall_basis(2, d);
    std::vector<oracle::Poly> top;
    for (std::size_t s : cert.unknown_positions) top.push_back(oracle::from(basis->expansion(s)));
    const std::size_t k = top.size();
    const oracle::Poly x = oracle::letter(1), y = oracle::letter(2);
    std::size_t row = 0;
    for (const auto& l : lambdas) {
      const mpq_class lq(l);
      const oracle::Poly lx = oracle::add({}, x, lq), ly = oracle::add({}, y, lq);
      for (const auto& sub : std::vector<std::vector<oracle::Poly>>{{lx, x, y}, {x, y, ly}}) {
        std::vector<std::vector<mpq_class>> residual_coords;
        for (std::size_t u = 0; u < k; ++u) {
          const auto q = [&](const oracle::Poly& a, const oracle::Poly& b) { return oracle::substitute(top[u], {a, b}, d); };
          oracle::Poly r = q(sub[0], sub[1]);
          r = oracle::add(r, q(oracle::add(sub[0], sub[1]), sub[2]));
          r = oracle::add(r, q(sub[1], sub[2]), -1);
          r = oracle::add(r, q(sub[0], oracle::add(sub[1], sub[2])), -1);
          const auto coords = oracle::coordinates(top, r);
          ASSERT_TRUE(coords);
          residual_coords.push_back(*coords);
        }
        for (std::size_t t = 0; t < k; ++t, ++row)
          for (std::size_t u = 0; u < k; ++u) EXPECT_EQ(cert.system(row, u), residual_coords[u][t]) << d;
      }
    }
    EXPECT_EQ(row, cert.system.rows());
  }
}

TEST(Certificate, NullityMatchesGaussJordan) {
  for (int d = 3; d <= 6; ++d) {
    const Certificate cert = build_certificate(d);
    EXPECT_EQ(cert.rank, oracle::rank(cert.system)) << d;
    EXPECT_EQ(cert.nullity, cert.system.cols() - oracle::rank(cert.system)) << d;
    EXPECT_TRUE(cert.proves_zero()) << d;
    std::size_t unknowns = 0;
    for (const auto& b : cert.blocks) {
      EXPECT_EQ(b.nullity, 0u);
      unknowns += b.unknowns;
    }
    EXPECT_EQ(unknowns, cert.unknown_positions.size());
    EXPECT_EQ(Integer(static_cast<long>(unknowns)), witt_dimension(2, d));
  }
}

TEST(Certificate, QOneCoefficient) {
  const Certificate cert = build_certificate(5, {1, 2, 3});
  EXPECT_EQ(cert.q1_coefficients[0].second, 14);
  EXPECT_EQ(cert.q1_coefficients[1].second, 64);
  EXPECT_EQ(cert.q1_coefficients[2].second, 256 - 81 - 1);
}

TEST(Certificate, Preconditions) {
  EXPECT_THROW(build_certificate(2), std::invalid_argument);
  EXPECT_THROW(build_certificate(3, {1}), std::invalid_argument);
  EXPECT_THROW(build_certificate(3, {1, 1, 0}), std::invalid_argument);
}

TEST(Shear, MatchesTensorSubstitution) {
  for (int d = 3; d <= 5; ++d) {
    const auto basis = hall_basis(2, d);
    std::vector<std::size_t> top;
    for (std::size_t s = basis->degree_begin(d); s < basis->degree_end(d); ++s) top.push_back(s);
    const oracle::Poly x = oracle::letter(1);
    const oracle::Poly xy = oracle::add(oracle::letter(1), oracle::letter(2));
    for (int i = 1; i < d; ++i)
      for (int j = 1; j < d; ++j) {
        std::vector<oracle::Poly> cols_p, rows_p;
        for (std::size_t s : top) {
          const oracle::Poly e = oracle::from(basis->expansion(s));
          if (bidegree(e).first == i) cols_p.push_back(e);
          if (bidegree(e).first == j) rows_p.push_back(e);
        }
        const RatMatrix m = shear_matrix(d, i, j);
        ASSERT_EQ(m.rows(), rows_p.size());
        ASSERT_EQ(m.cols(), cols_p.size());
        for (std::size_t c = 0; c < cols_p.size(); ++c) {
          oracle::Poly image = oracle::substitute(cols_p[c], {x, xy}, d), part;
          for (const auto& [w, v] : image)
            if (std::count(w.begin(), w.end(), 1) == j) part[w] = v;
          if (rows_p.empty()) continue;
          const auto coords = oracle::coordinates(rows_p, part);
          ASSERT_TRUE(coords);
          for (std::size_t r = 0; r < rows_p.size(); ++r) EXPECT_EQ(m(r, c), (*coords)[r]) << d << i << j;
        }
      }
  }
}

TEST(Mirror, ReversedLiftsAreMirroredForwardLifts) {
  std::mt19937_64 rng(62);
  for (int d = 3; d <= 5; ++d) {
    const GroupElement xy = word("x1*x2", d);
    const GroupElement yx = word("x2*x1", d);
    EXPECT_EQ(mirror(xy), yx);
    for (int trial = 0; trial < 4; ++trial) {
      const GroupTerm t = random_top_term(rng, d);
      const GroupElement r = evaluate_term(t, {group_generator(1, 2, d), group_generator(2, 2, d)}, OperationSystem::standard());
      EXPECT_EQ(mirror(g_mul(yx, r)), g_mul(xy, mirror(r)));
      EXPECT_EQ(check_op_d(g_mul(yx, r)).passed, check_op_d(mirror(g_mul(yx, r))).passed);
    }
  }
}

TEST(Theorem, ThroughClassFour) {
  const TheoremReport two = verify_words2(2);
  EXPECT_TRUE(two.passed);
  ASSERT_EQ(two.sections.size(), 1u);
  EXPECT_EQ(two.sections[0].kind, "base");

  const TheoremReport four = verify_words2(4);
  EXPECT_TRUE(four.passed);
  ASSERT_EQ(four.sections.size(), 3u);
  for (std::size_t i = 1; i < 3; ++i) {
    const ClassSection& s = four.sections[i];
    EXPECT_EQ(s.kind, "step");
    EXPECT_EQ(s.degree, static_cast<int>(i) + 2);
    ASSERT_TRUE(s.certificate);
    EXPECT_TRUE(s.certificate->proves_zero());
    EXPECT_EQ(s.survivors.size(), 2u);
  }
  EXPECT_THROW(verify_words2(1), std::invalid_argument);
}
