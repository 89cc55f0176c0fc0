#pragma once

// Classification of binary words w(x, y) satisfying Op^d: exhaustive search
// at small class, the associativity cocycle equation for a top-degree
// correction, and the lambda-substitution certificate that kills it.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilaut/lie.hpp"
#include "nilaut/linalg.hpp"
#include "nilaut/verbal.hpp"

namespace nilaut {

// Candidates w = xy g_2 in NF_2^d: Mal'cev vectors (1, 1, e_3, ..., e_k) with
// every exponent of a degree 2..d basic commutator in [-bound, bound].
// Index order is lexicographic in the exponents.
class CandidateBox {
 public:
  CandidateBox(int d, int bound);

  int degree() const { return d_; }
  int bound() const { return bound_; }
  // Hall positions carrying a free exponent (degrees 2..d).
  const std::vector<std::size_t>& positions() const { return positions_; }
  std::uint64_t size() const { return size_; }
  MalcevVector candidate(std::uint64_t index) const;

 private:
  int d_;
  int bound_;
  std::vector<std::size_t> positions_;
  std::size_t basis_size_;
  std::uint64_t size_;
};

struct SearchOptions {
  unsigned threads = 1;
  // Skip lifts of words already failing at class d-1.
  bool kappa_prefilter = true;
};

struct SearchResult {
  int degree = 0;
  int bound = 0;
  std::uint64_t box_size = 0;
  std::uint64_t checked = 0;
  std::uint64_t kappa_eliminated = 0;
  std::vector<MalcevVector> survivors;
  // Candidates whose operation satisfies the group axioms, checked or not
  // for sigma; kappa-eliminated candidates are not included.
  std::vector<MalcevVector> axiom_passing;
};

SearchResult search_class(int d, int bound, const SearchOptions& options = {});

// r(a,b) r(ab,c) = r(b,c) r(a,bc) in NF_3^d on free generators. Throws
// std::invalid_argument unless r(x, y) lies in gamma_d.
bool cocycle_condition_group(const GroupTerm& r, int d);

// q(a,b) + q(a+b,c) = q(b,c) + q(a,b+c) for q homogeneous of degree d over
// the rank-2 basis; a, b, c share one basis. Throws std::invalid_argument for
// inhomogeneous q.
bool cocycle_condition_lie(const LieElement& q, const LieElement& a, const LieElement& b, const LieElement& c);

// Bidegree-j part of q(x, x+y) for the bidegree-(i, d-i) unknowns of a
// degree-d q: rows index bidegree-(j, d-j) Hall words, columns bidegree-i ones.
RatMatrix shear_matrix(int d, int i, int j);

struct CertificateBlock {
  std::pair<int, int> bidegree;
  std::size_t unknowns = 0;
  std::size_t rows = 0;
  std::size_t rank = 0;
  // Dimension of the projection of the solution space onto this block's
  // unknowns; 0 means every solution has q_i = 0.
  std::size_t nullity = 0;
};

struct Certificate {
  int degree = 0;
  std::vector<Integer> lambdas;
  // Unknown k is the coordinate of q on Hall word unknown_positions[k].
  std::vector<std::size_t> unknown_positions;
  std::vector<std::pair<int, int>> unknown_bidegrees;
  RatMatrix system;
  std::vector<std::pair<int, int>> row_bidegrees;
  std::vector<CertificateBlock> blocks;
  std::size_t rank = 0;
  std::size_t nullity = 0;
  // (lambda, (lambda+1)^(d-1) - lambda^(d-1) - 1).
  std::vector<std::pair<Integer, Integer>> q1_coefficients;

  bool proves_zero() const { return nullity == 0; }
};

// Unknowns: the Hall coordinates of a degree-d correction q on two letters.
// Rows: the cocycle residual under a = lambda x, b = x, c = y and under
// a = x, b = y, c = lambda y for every lambda, read in Hall coordinates.
// q_i is the part of bidegree (i, d-i). Blocks group rows by bidegree in the
// order i = 2, ..., d-1, then i = 1.
Certificate build_certificate(int d, const std::vector<Integer>& lambdas = {1, 2});

struct ClassSection {
  int degree = 0;
  std::string kind;  // "base" or "step"
  std::uint64_t candidates_tested = 0;
  std::vector<MalcevVector> survivors;
  std::optional<Certificate> certificate;
  bool passed = false;
  std::string details;
};

struct TheoremReport {
  int max_degree = 0;
  std::vector<ClassSection> sections;
  bool passed = false;
};

// Base class 2 by exhaustive search with bound 10; each class 3..d_max by
// the certificate (retried with more lambdas if it degenerates), the mirror
// reduction of yx-lifts to xy-lifts, and a brute cross-check over small
// top-layer corrections of both survivors.
TheoremReport verify_words2(int d_max, const std::vector<Integer>& lambdas = {1, 2}, unsigned threads = 1);

}  // namespace nilaut
