#include "nilaut/classify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "nilaut/errors.hpp"

namespace nilaut {

namespace {

// f(0..count-1) across worker threads; results keep index order.
template <typename F>
auto parallel_map(std::size_t count, unsigned threads, F f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<std::optional<R>> slots(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i] = f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct CandidateOutcome {
  bool axioms = false;
  bool passed = false;
};

std::vector<CandidateOutcome> check_candidates(const std::vector<MalcevVector>& candidates, int d, unsigned threads) {
  const auto basis = malcev_basis(2, d);
  return parallel_map(candidates.size(), threads, [&](std::size_t i) {
    const Verdict v = check_op_d(malcev_reconstruct(candidates[i], *basis));
    return CandidateOutcome{v.axioms.passed(), v.passed};
  });
}

// Every vector in [-bound, bound]^k in lexicographic order.
std::vector<std::vector<Integer>> exponent_box(std::size_t k, int bound) {
  std::vector<std::vector<Integer>> out{{}};
  for (std::size_t p = 0; p < k; ++p) {
    std::vector<std::vector<Integer>> next;
    for (const auto& prefix : out)
      for (int e = -bound; e <= bound; ++e) {
        next.push_back(prefix);
        next.back().push_back(e);
      }
    out = std::move(next);
  }
  return out;
}

MalcevVector xy_vector(int d) {
  MalcevVector v(hall_basis(2, d)->size());
  v[0] = 1;
  v[1] = 1;
  return v;
}

// yx = xy (y,x) exactly, at every class.
MalcevVector yx_vector(int d) {
  MalcevVector v = xy_vector(d);
  if (d >= 2) v[2] = 1;
  return v;
}

std::pair<int, int> bidegree_of(const HallBasis& basis, std::size_t position) {
  const auto& m = basis.word(position).multidegree;
  return {m.at(0), m.at(1)};
}

LieElement cocycle_residual(const LieElement& q, const LieElement& a, const LieElement& b, const LieElement& c) {
  const auto Q = [&q](const LieElement& u, const LieElement& v) { return substitute_linear(q, {u, v}); };
  const LieElement lhs = lie_add(Q(a, b), Q(lie_add(a, b), c));
  const LieElement rhs = lie_add(Q(b, c), Q(a, lie_add(b, c)));
  return lie_sub(lhs, rhs);
}

}  // namespace

CandidateBox::CandidateBox(int d, int bound) : d_(d), bound_(bound) {
  if (d < 2) throw std::invalid_argument("CandidateBox: class must be at least 2");
  if (bound < 0) throw std::invalid_argument("CandidateBox: bound must be non-negative");
  const auto basis = hall_basis(2, d);
  basis_size_ = basis->size();
  for (std::size_t s = basis->degree_begin(2); s < basis_size_; ++s) positions_.push_back(s);
  const auto width = static_cast<std::uint64_t>(2 * bound + 1);
  size_ = 1;
  for (std::size_t k = 0; k < positions_.size(); ++k) {
    if (size_ > (std::uint64_t{1} << 62) / width) throw std::overflow_error("CandidateBox: box too large");
    size_ *= width;
  }
}

MalcevVector CandidateBox::candidate(std::uint64_t index) const {
  if (index >= size_) throw std::out_of_range("CandidateBox::candidate: index out of range");
  MalcevVector v(basis_size_);
  v[0] = 1;
  v[1] = 1;
  const auto width = static_cast<std::uint64_t>(2 * bound_ + 1);
  for (std::size_t k = positions_.size(); k-- > 0;) {
    v[positions_[k]] = static_cast<long>(index % width) - bound_;
    index /= width;
  }
  return v;
}

SearchResult search_class(int d, int bound, const SearchOptions& options) {
  const CandidateBox box(d, bound);
  SearchResult result;
  result.degree = d;
  result.bound = bound;
  result.box_size = box.size();

  std::vector<MalcevVector> candidates;
  if (d >= 3 && options.kappa_prefilter) {
    // The kappa-image of a candidate is its Mal'cev prefix, so only lifts of
    // class d-1 survivors need a direct check.
    const SearchResult lower = search_class(d - 1, bound, options);
    const auto basis = hall_basis(2, d);
    const std::size_t top = basis->degree_count(d);
    const auto tops = exponent_box(top, bound);
    for (const auto& prefix : lower.survivors)
      for (const auto& tail : tops) {
        MalcevVector v = prefix;
        v.insert(v.end(), tail.begin(), tail.end());
        candidates.push_back(std::move(v));
      }
  } else {
    for (std::uint64_t i = 0; i < box.size(); ++i) candidates.push_back(box.candidate(i));
  }

  const auto outcomes = check_candidates(candidates, d, options.threads);
  result.checked = candidates.size();
  result.kappa_eliminated = result.box_size - result.checked;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (outcomes[i].axioms) result.axiom_passing.push_back(candidates[i]);
    if (outcomes[i].passed) result.survivors.push_back(candidates[i]);
  }
  return result;
}

bool cocycle_condition_group(const GroupTerm& r, int d) {
  if (r.arity() > 2) throw DimensionMismatch("cocycle_condition_group: r must be a word in two letters");
  const OperationSystem& ops = OperationSystem::standard();
  std::vector<GroupElement> g2{group_generator(1, 2, d), group_generator(2, 2, d)};
  if (lcs_weight(evaluate_term(r, g2, ops, Shape{2, d})) < d)
    throw std::invalid_argument("cocycle_condition_group: r(x, y) is not in gamma_" + std::to_string(d));
  const GroupElement a = group_generator(1, 3, d);
  const GroupElement b = group_generator(2, 3, d);
  const GroupElement c = group_generator(3, 3, d);
  const auto R = [&](const GroupElement& u, const GroupElement& v) { return evaluate_term(r, {u, v}, ops); };
  return g_mul(R(a, b), R(g_mul(a, b), c)) == g_mul(R(b, c), R(a, g_mul(b, c)));
}

bool cocycle_condition_lie(const LieElement& q, const LieElement& a, const LieElement& b, const LieElement& c) {
  if (!q.is_zero() && !q.value().is_homogeneous(q.value().lowest_degree()))
    throw std::invalid_argument("cocycle_condition_lie: q must be homogeneous");
  return cocycle_residual(q, a, b, c).is_zero();
}

RatMatrix shear_matrix(int d, int i, int j) {
  const auto basis = hall_basis(2, d);
  std::vector<std::size_t> cols, rows;
  for (std::size_t s = basis->degree_begin(d); s < basis->degree_end(d); ++s) {
    if (bidegree_of(*basis, s).first == i) cols.push_back(s);
    if (bidegree_of(*basis, s).first == j) rows.push_back(s);
  }
  const LieElement x = LieElement::generator(basis, 1);
  const LieElement y = LieElement::generator(basis, 2);
  RatMatrix m(rows.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const LieElement image = substitute_linear(LieElement::hall_word(basis, cols[c]), {x, lie_add(x, y)});
    for (std::size_t r = 0; r < rows.size(); ++r) m(r, c) = image.coords()[rows[r]];
  }
  return m;
}

Certificate build_certificate(int d, const std::vector<Integer>& lambdas) {
  if (d < 3) throw std::invalid_argument("build_certificate: class must be at least 3");
  std::vector<Integer> distinct;
  for (const auto& l : lambdas)
    if (l != 0 && std::find(distinct.begin(), distinct.end(), l) == distinct.end()) distinct.push_back(l);
  if (distinct.size() < 2) throw std::invalid_argument("build_certificate: need at least two distinct nonzero lambdas");

  const auto basis = hall_basis(2, d);
  Certificate cert;
  cert.degree = d;
  cert.lambdas = lambdas;
  for (std::size_t s = basis->degree_begin(d); s < basis->degree_end(d); ++s) {
    cert.unknown_positions.push_back(s);
    cert.unknown_bidegrees.push_back(bidegree_of(*basis, s));
  }
  const std::size_t k = cert.unknown_positions.size();
  const LieElement x = LieElement::generator(basis, 1);
  const LieElement y = LieElement::generator(basis, 2);

  std::vector<std::vector<Rational>> rows;
  for (const auto& lambda : lambdas) {
    const LieElement lx = lie_scale(x, Rational(lambda));
    const LieElement ly = lie_scale(y, Rational(lambda));
    const std::vector<std::array<LieElement, 3>> substitutions{{lx, x, y}, {x, y, ly}};
    for (const auto& sub : substitutions) {
      std::vector<LieElement> residuals;
      for (std::size_t u = 0; u < k; ++u)
        residuals.push_back(
            cocycle_residual(LieElement::hall_word(basis, cert.unknown_positions[u]), sub[0], sub[1], sub[2]));
      for (std::size_t t = 0; t < k; ++t) {
        std::vector<Rational> row(k);
        for (std::size_t u = 0; u < k; ++u) row[u] = residuals[u].coords()[cert.unknown_positions[t]];
        rows.push_back(std::move(row));
        cert.row_bidegrees.push_back(cert.unknown_bidegrees[t]);
      }
    }
  }
  cert.system = RatMatrix(rows.size(), k);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t u = 0; u < k; ++u) cert.system(r, u) = rows[r][u];

  cert.rank = matrix_rank(cert.system);
  const std::vector<RatVector> kernel = nullspace(cert.system);
  cert.nullity = kernel.size();

  std::vector<int> order;
  for (int i = 2; i <= d - 1; ++i) order.push_back(i);
  order.push_back(1);
  for (int i : order) {
    CertificateBlock block;
    block.bidegree = {i, d - i};
    std::vector<std::size_t> block_rows, block_cols;
    for (std::size_t r = 0; r < cert.row_bidegrees.size(); ++r)
      if (cert.row_bidegrees[r] == block.bidegree) block_rows.push_back(r);
    for (std::size_t u = 0; u < k; ++u)
      if (cert.unknown_bidegrees[u] == block.bidegree) block_cols.push_back(u);
    block.unknowns = block_cols.size();
    block.rows = block_rows.size();
    RatMatrix sub(block_rows.size(), k);
    for (std::size_t r = 0; r < block_rows.size(); ++r)
      for (std::size_t u = 0; u < k; ++u) sub(r, u) = cert.system(block_rows[r], u);
    block.rank = matrix_rank(sub);
    RatMatrix projected(kernel.size(), block_cols.size());
    for (std::size_t v = 0; v < kernel.size(); ++v)
      for (std::size_t u = 0; u < block_cols.size(); ++u) projected(v, u) = kernel[v][block_cols[u]];
    block.nullity = kernel.empty() ? 0 : matrix_rank(projected);
    cert.blocks.push_back(block);
  }

  for (const auto& lambda : lambdas) {
    Integer a, b;
    mpz_pow_ui(a.get_mpz_t(), Integer(lambda + 1).get_mpz_t(), static_cast<unsigned long>(d - 1));
    mpz_pow_ui(b.get_mpz_t(), lambda.get_mpz_t(), static_cast<unsigned long>(d - 1));
    cert.q1_coefficients.emplace_back(lambda, Integer(a - b - 1));
  }
  return cert;
}

TheoremReport verify_words2(int d_max, const std::vector<Integer>& lambdas, unsigned threads) {
  if (d_max < 2) throw std::invalid_argument("verify_words2: class must be at least 2");
  TheoremReport report;
  report.max_degree = d_max;
  report.passed = true;

  {
    const SearchResult base = search_class(2, 10, SearchOptions{threads, true});
    ClassSection section;
    section.degree = 2;
    section.kind = "base";
    section.candidates_tested = base.checked;
    section.survivors = base.survivors;
    section.passed = base.survivors == std::vector<MalcevVector>{xy_vector(2), yx_vector(2)};
    if (!section.passed) section.details = "class-2 survivors differ from {xy, yx}";
    report.passed = report.passed && section.passed;
    report.sections.push_back(std::move(section));
  }

  for (int d = 3; d <= d_max; ++d) {
    ClassSection section;
    section.degree = d;
    section.kind = "step";

    std::vector<Integer> lams = lambdas;
    Certificate cert = build_certificate(d, lams);
    for (long extra = 3; !cert.proves_zero() && lams.size() < 6; ++extra) {
      if (std::find(lams.begin(), lams.end(), Integer(extra)) != lams.end()) continue;
      lams.push_back(extra);
      cert = build_certificate(d, lams);
    }
    if (!cert.proves_zero()) section.details = "certificate leaves a nonzero solution";

    // Lifts xy*r and yx*r with r a product of degree-d basic commutator powers.
    const auto hall = hall_basis(2, d);
    const auto basis = malcev_basis(2, d);
    const std::size_t begin = hall->degree_begin(d);
    const std::size_t top = hall->degree_count(d);
    std::vector<std::vector<Integer>> tails;
    if (top <= 3) {
      tails = exponent_box(top, 1);
    } else {
      tails.push_back(std::vector<Integer>(top));
      for (std::size_t s = 0; s < top; ++s)
        for (int e : {-1, 1}) {
          std::vector<Integer> t(top);
          t[s] = e;
          tails.push_back(std::move(t));
        }
    }
    std::vector<MalcevVector> lifts;
    for (const MalcevVector& base : {xy_vector(d), yx_vector(d)})
      for (const auto& tail : tails) {
        MalcevVector v = base;
        for (std::size_t s = 0; s < top; ++s) v[begin + s] = tail[s];
        lifts.push_back(std::move(v));
      }

    const GroupElement xy = malcev_reconstruct(xy_vector(d), *basis);
    const GroupElement yx = malcev_reconstruct(yx_vector(d), *basis);
    const auto outcomes = parallel_map(lifts.size(), threads, [&](std::size_t i) {
      const GroupElement w = malcev_reconstruct(lifts[i], *basis);
      const bool passed = check_op_d(w).passed;
      // mirror(yx r) = xy mirror(r) and mirror(xy r) = yx mirror(r), with
      // mirror(r) central of degree d.
      const GroupElement m = mirror(w);
      const GroupElement& other = lifts[i][2] == 0 ? yx : xy;
      const bool mirrored = lcs_weight(g_mul(g_inv(other), m)) >= d && check_op_d(m).passed == passed;
      return std::make_pair(passed, mirrored);
    });
    bool mirror_ok = true;
    for (std::size_t i = 0; i < lifts.size(); ++i) {
      if (outcomes[i].first) section.survivors.push_back(lifts[i]);
      mirror_ok = mirror_ok && outcomes[i].second;
    }
    std::sort(section.survivors.begin(), section.survivors.end());
    section.candidates_tested = lifts.size();
    const bool survivors_ok = section.survivors == std::vector<MalcevVector>{xy_vector(d), yx_vector(d)};
    if (!survivors_ok) section.details += std::string(section.details.empty() ? "" : "; ") + "brute survivors differ from {xy, yx}";
    if (!mirror_ok) section.details += std::string(section.details.empty() ? "" : "; ") + "mirror reduction inconsistent";
    section.passed = cert.proves_zero() && survivors_ok && mirror_ok;
    section.certificate = std::move(cert);
    report.passed = report.passed && section.passed;
    report.sections.push_back(std::move(section));
  }
  return report;
}

}  // namespace nilaut
