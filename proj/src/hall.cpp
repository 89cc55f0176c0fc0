#include "nilaut/hall.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "nilaut/errors.hpp"

namespace nilaut {

namespace {

int moebius(int m) {
  int result = 1;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) return 0;
    result = -result;
  }
  if (m > 1) result = -result;
  return result;
}

TruncPoly lie_bracket_of(const TruncPoly& a, const TruncPoly& b) {
  return tp_sub(tp_mul(a, b), tp_mul(b, a));
}

}  // namespace

Integer witt_dimension(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("witt_dimension: need n >= 1 and k >= 1");
  Integer sum = 0;
  for (int j = 1; j <= k; ++j) {
    if (k % j != 0) continue;
    const int mu = moebius(j);
    if (mu == 0) continue;
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k / j));
    sum += mu * p;
  }
  return sum / k;
}

HallBasis::HallBasis(int n, int d) : n_(n), d_(d) {
  if (n < 0 || d < 1) throw std::invalid_argument("hall_basis: need n >= 0 and d >= 1");
  degree_start_.assign(static_cast<std::size_t>(d) + 2, 0);

  for (int i = 1; i <= n; ++i) {
    HallWord w;
    w.letter = i;
    w.degree = 1;
    w.multidegree.assign(static_cast<std::size_t>(n), 0);
    w.multidegree[static_cast<std::size_t>(i - 1)] = 1;
    words_.push_back(std::move(w));
    expansions_.push_back(TruncPoly::generator(i, n, d));
  }
  degree_start_[1] = 0;
  degree_start_[2] = words_.size();

  for (int k = 2; k <= d; ++k) {
    std::vector<std::pair<std::size_t, std::size_t>> found;
    for (int ku = 1; ku < k; ++ku) {
      const int kv = k - ku;
      for (std::size_t u = degree_begin(ku); u < degree_end(ku); ++u) {
        for (std::size_t v = degree_begin(kv); v < degree_end(kv); ++v) {
          if (u <= v) continue;
          const HallWord& wu = words_[u];
          if (!wu.is_leaf() && static_cast<std::size_t>(wu.right) > v) continue;
          found.emplace_back(u, v);
        }
      }
    }
    std::sort(found.begin(), found.end());
    for (auto [u, v] : found) {
      HallWord w;
      w.left = static_cast<int>(u);
      w.right = static_cast<int>(v);
      w.degree = k;
      w.multidegree = words_[u].multidegree;
      for (int i = 0; i < n; ++i)
        w.multidegree[static_cast<std::size_t>(i)] += words_[v].multidegree[static_cast<std::size_t>(i)];
      words_.push_back(std::move(w));
      expansions_.push_back(lie_bracket_of(expansions_[u], expansions_[v]));
    }
    degree_start_[static_cast<std::size_t>(k) + 1] = words_.size();
  }

  // Per-degree coordinate solvers; building them proves independence.
  for (int k = 1; k <= d; ++k) {
    const std::size_t begin = degree_begin(k);
    const std::size_t count = degree_count(k);
    std::map<Monomial, std::size_t> row_of;
    for (std::size_t s = begin; s < begin + count; ++s)
      for (const auto& t : expansions_[s].terms()) row_of.emplace(t.monomial, 0);
    std::vector<Monomial> monomials;
    for (auto& [m, idx] : row_of) {
      idx = monomials.size();
      monomials.push_back(m);
    }
    RatMatrix e(monomials.size(), count);
    for (std::size_t s = 0; s < count; ++s)
      for (const auto& t : expansions_[begin + s].terms()) e(row_of.at(t.monomial), s) = t.coeff;

    LayerSolver solver;
    const auto rows = independent_rows(e);
    if (rows.size() != count)
      throw std::logic_error("hall_basis: expansions of degree " + std::to_string(k) +
                             " are linearly dependent");
    RatMatrix square(count, count);
    for (std::size_t i = 0; i < count; ++i) {
      solver.pivots.push_back(monomials[rows[i]]);
      for (std::size_t s = 0; s < count; ++s) square(i, s) = e(rows[i], s);
    }
    solver.inverse = RatMatrix(count, count);
    for (std::size_t j = 0; j < count; ++j) {
      RatVector unit(count);
      unit[j] = 1;
      const auto col = solve(square, unit);
      if (!col) throw std::logic_error("hall_basis: singular pivot block");
      for (std::size_t i = 0; i < count; ++i) solver.inverse(i, j) = (*col)[i];
    }
    solvers_.push_back(std::move(solver));
  }
}

std::size_t HallBasis::degree_begin(int k) const {
  if (k < 1 || k > d_) throw std::out_of_range("HallBasis: degree out of range");
  return degree_start_[static_cast<std::size_t>(k)];
}

std::size_t HallBasis::degree_end(int k) const {
  if (k < 1 || k > d_) throw std::out_of_range("HallBasis: degree out of range");
  return degree_start_[static_cast<std::size_t>(k) + 1];
}

std::string HallBasis::word_string(std::size_t i) const {
  const HallWord& w = words_.at(i);
  if (w.is_leaf()) return "x" + std::to_string(w.letter);
  return "[" + word_string(static_cast<std::size_t>(w.left)) + "," +
         word_string(static_cast<std::size_t>(w.right)) + "]";
}

std::optional<std::size_t> HallBasis::find(const std::string& word) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (word_string(i) == word) return i;
  return std::nullopt;
}

std::optional<std::size_t> HallBasis::position_of_bracket(std::size_t left, std::size_t right) const {
  const int k = words_.at(left).degree + words_.at(right).degree;
  if (k > d_) return std::nullopt;
  for (std::size_t i = degree_begin(k); i < degree_end(k); ++i)
    if (static_cast<std::size_t>(words_[i].left) == left &&
        static_cast<std::size_t>(words_[i].right) == right)
      return i;
  return std::nullopt;
}

RatVector HallBasis::layer_coordinates(const TruncPoly& homogeneous, int k) const {
  if (homogeneous.rank() != n_ || homogeneous.degree_bound() != d_)
    throw DimensionMismatch("layer_coordinates: tensor shape differs from the basis");
  if (!homogeneous.is_homogeneous(k))
    throw std::invalid_argument("layer_coordinates: tensor is not homogeneous of degree " +
                                std::to_string(k));
  const LayerSolver& solver = solvers_.at(static_cast<std::size_t>(k - 1));
  const std::size_t count = degree_count(k);
  RatVector rhs(count);
  for (std::size_t i = 0; i < count; ++i) rhs[i] = homogeneous.coefficient(solver.pivots[i]);
  RatVector coords = mat_vec(solver.inverse, rhs);

  TruncPoly rebuilt(n_, d_);
  const std::size_t begin = degree_begin(k);
  for (std::size_t s = 0; s < count; ++s)
    if (coords[s] != 0) rebuilt = tp_add(rebuilt, tp_scale(expansions_[begin + s], coords[s]));
  if (rebuilt != homogeneous)
    throw NotLieElement(k, "not a Lie element: degree-" + std::to_string(k) +
                               " component lies outside the Hall span");
  return coords;
}

std::shared_ptr<const HallBasis> hall_basis(int n, int d) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const HallBasis>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({n, d});
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const HallBasis>(n, d);
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(std::make_pair(n, d), std::move(built)).first->second;
}

std::string to_string(const HallBasis& basis) {
  std::string s;
  for (int k = 1; k <= basis.degree_bound(); ++k) {
    s += std::to_string(k) + ":";
    for (std::size_t i = basis.degree_begin(k); i < basis.degree_end(k); ++i)
      s += " " + basis.word_string(i);
    s += "\n";
  }
  return s;
}

}  // namespace nilaut
