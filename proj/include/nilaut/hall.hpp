#pragma once

// Hall basis of the free nilpotent Lie algebra on n generators, class d.
//
// Words are M. Hall's basic commutators. Order: by degree, then within a
// degree by (left, right) position; leaves x1 < x2 < ... . A bracket [u,v]
// is a Hall word iff u > v and, when u = [u1,u2], u2 <= v. For n = 2 the
// first words are x1, x2, [x2,x1], [[x2,x1],x1], [[x2,x1],x2].

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nilaut/linalg.hpp"
#include "nilaut/tensor.hpp"

namespace nilaut {

struct HallWord {
  int letter = 0;  // 1-based generator for a leaf, 0 for a bracket
  int left = -1;   // basis positions of the bracket's parts
  int right = -1;
  int degree = 1;
  std::vector<int> multidegree;

  bool is_leaf() const { return letter != 0; }
};

class HallBasis {
 public:
  // Builds the basis through degree d together with its tensor expansions
  // and verifies that each degree's expansions are linearly independent.
  HallBasis(int n, int d);

  int rank() const { return n_; }
  int degree_bound() const { return d_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<HallWord>& words() const { return words_; }
  const HallWord& word(std::size_t i) const { return words_.at(i); }

  // Positions [degree_begin(k), degree_end(k)) hold the degree-k words.
  std::size_t degree_begin(int k) const;
  std::size_t degree_end(int k) const;
  std::size_t degree_count(int k) const { return degree_end(k) - degree_begin(k); }

  // Leaf X_i, bracket expansion [e(u), e(v)] = e(u)e(v) - e(v)e(u).
  const TruncPoly& expansion(std::size_t i) const { return expansions_.at(i); }

  std::string word_string(std::size_t i) const;
  std::optional<std::size_t> find(const std::string& word) const;
  std::optional<std::size_t> position_of_bracket(std::size_t left, std::size_t right) const;

  // Hall coordinates of a homogeneous degree-k tensor; throws NotLieElement
  // when the tensor is outside the span of the degree-k expansions.
  RatVector layer_coordinates(const TruncPoly& homogeneous, int k) const;

 private:
  struct LayerSolver {
    std::vector<Monomial> pivots;  // monomials whose coefficients determine the coordinates
    RatMatrix inverse;             // (expansions restricted to pivots)^-1
  };

  int n_;
  int d_;
  std::vector<HallWord> words_;
  std::vector<TruncPoly> expansions_;
  std::vector<std::size_t> degree_start_;  // size d+2
  std::vector<LayerSolver> solvers_;       // index k-1
};

// Shared, immutable basis per (n, d); built on first use.
std::shared_ptr<const HallBasis> hall_basis(int n, int d);

// (1/k) sum_{j | k} mu(j) n^(k/j).
Integer witt_dimension(int n, int k);

// One line per degree: "2: [x2,x1]".
std::string to_string(const HallBasis& basis);

}  // namespace nilaut
