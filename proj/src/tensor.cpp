#include "nilaut/tensor.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

#include "nilaut/errors.hpp"

namespace nilaut {

namespace {

constexpr int kMaxDegree = 62;

// Powers of n and the flat-index offsets of each word length.
struct Space {
  int n;
  int d;
  std::array<std::uint64_t, kMaxDegree + 2> pow{};
  std::array<std::uint64_t, kMaxDegree + 2> offset{};
  std::uint64_t total = 0;

  Space(int n_, int d_) : n(n_), d(d_) {
    pow[0] = 1;
    offset[0] = 0;
    for (int k = 1; k <= d + 1; ++k) {
      pow[k] = pow[k - 1] * static_cast<std::uint64_t>(n);
      offset[k] = offset[k - 1] + pow[k - 1];
    }
    total = offset[d + 1];
  }

  std::uint64_t flat(const Monomial& m) const { return offset[m.length] + m.code; }
};

void check_shape(int n, int d) {
  if (n < 0 || d < 0) throw std::invalid_argument("TruncPoly: negative rank or degree");
  if (d > kMaxDegree) throw std::invalid_argument("TruncPoly: truncation degree too large");
  // n^d must fit comfortably in 64 bits.
  long double size = 1;
  for (int k = 0; k < d; ++k) size *= n;
  if (size > static_cast<long double>(1ULL << 62))
    throw std::invalid_argument("TruncPoly: n^d exceeds the monomial code range");
}

// Integer numerators over a common denominator.
struct Scaled {
  Integer denominator = 1;
  std::vector<Integer> numerators;
};

Scaled common_denominator(const TruncPoly& p) {
  Scaled s;
  for (const auto& t : p.terms()) {
    if (t.coeff.get_den() != 1) mpz_lcm(s.denominator.get_mpz_t(), s.denominator.get_mpz_t(),
                                         t.coeff.get_den_mpz_t());
  }
  s.numerators.reserve(p.size());
  for (const auto& t : p.terms()) {
    Integer v = t.coeff.get_num() * (s.denominator / t.coeff.get_den());
    s.numerators.push_back(std::move(v));
  }
  return s;
}

// Shared merge kernel for the linear operations.
TruncPoly combine(const TruncPoly& a, const TruncPoly& b, const Rational& cb) {
  require_same_shape(a, b);
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() || ib != b.terms().end()) {
    if (ib == b.terms().end() || (ia != a.terms().end() && ia->monomial < ib->monomial)) {
      out.push_back(*ia++);
    } else if (ia == a.terms().end() || ib->monomial < ia->monomial) {
      out.push_back({ib->monomial, ib->coeff * cb});
      ++ib;
    } else {
      Rational c = ia->coeff + ib->coeff * cb;
      if (c != 0) out.push_back({ia->monomial, std::move(c)});
      ++ia;
      ++ib;
    }
  }
  return TruncPoly::from_canonical(a.rank(), a.degree_bound(), std::move(out));
}

}  // namespace

Monomial make_monomial(const std::vector<int>& letters, int n) {
  Monomial m;
  m.length = static_cast<int>(letters.size());
  for (int letter : letters) {
    if (letter < 1 || letter > n) throw std::out_of_range("monomial letter out of range");
    m.code = m.code * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(letter - 1);
  }
  return m;
}

std::vector<int> monomial_letters(const Monomial& m, int n) {
  std::vector<int> letters(static_cast<std::size_t>(m.length));
  std::uint64_t code = m.code;
  for (int j = m.length - 1; j >= 0; --j) {
    letters[static_cast<std::size_t>(j)] = static_cast<int>(code % static_cast<std::uint64_t>(n)) + 1;
    code /= static_cast<std::uint64_t>(n);
  }
  return letters;
}

std::vector<int> tp_multidegree(const Monomial& m, int n) {
  std::vector<int> degs(static_cast<std::size_t>(n), 0);
  for (int letter : monomial_letters(m, n)) ++degs[static_cast<std::size_t>(letter - 1)];
  return degs;
}

TruncPoly::TruncPoly(int n, int d) : n_(n), d_(d) { check_shape(n, d); }

TruncPoly TruncPoly::constant(int n, int d, const Rational& c) {
  TruncPoly p(n, d);
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

TruncPoly TruncPoly::generator(int i, int n, int d) {
  if (i < 1 || i > n) throw std::out_of_range("generator index out of range");
  TruncPoly p(n, d);
  if (d >= 1) p.terms_.push_back({make_monomial({i}, n), 1});
  return p;
}

TruncPoly TruncPoly::from_terms(int n, int d,
                                const std::vector<std::pair<std::vector<int>, Rational>>& terms) {
  std::map<Monomial, Rational> acc;
  for (const auto& [letters, c] : terms) {
    if (static_cast<int>(letters.size()) > d)
      throw std::invalid_argument("TruncPoly::from_terms: word longer than truncation degree");
    acc[make_monomial(letters, n)] += c;
  }
  std::vector<Term> out;
  for (auto& [m, c] : acc)
    if (c != 0) out.push_back({m, c});
  return from_canonical(n, d, std::move(out));
}

TruncPoly TruncPoly::from_canonical(int n, int d, std::vector<Term> terms) {
  TruncPoly p(n, d);
  p.terms_ = std::move(terms);
  return p;
}

Rational TruncPoly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.monomial < key; });
  if (it != terms_.end() && it->monomial == m) return it->coeff;
  return 0;
}

Rational TruncPoly::coefficient(const std::vector<int>& letters) const {
  if (static_cast<int>(letters.size()) > d_) return 0;
  return coefficient(make_monomial(letters, n_));
}

Rational TruncPoly::constant_term() const {
  if (!terms_.empty() && terms_.front().monomial.length == 0) return terms_.front().coeff;
  return 0;
}

int TruncPoly::lowest_degree() const {
  return terms_.empty() ? d_ + 1 : terms_.front().monomial.length;
}

bool TruncPoly::is_homogeneous(int k) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [k](const Term& t) { return t.monomial.length == k; });
}

void require_same_shape(const TruncPoly& a, const TruncPoly& b) {
  if (a.rank() != b.rank() || a.degree_bound() != b.degree_bound()) {
    std::ostringstream os;
    os << "shape mismatch: (n=" << a.rank() << ", d=" << a.degree_bound() << ") vs (n="
       << b.rank() << ", d=" << b.degree_bound() << ")";
    throw DimensionMismatch(os.str());
  }
}

TruncPoly tp_add(const TruncPoly& a, const TruncPoly& b) { return combine(a, b, 1); }
TruncPoly tp_sub(const TruncPoly& a, const TruncPoly& b) { return combine(a, b, -1); }

TruncPoly tp_neg(const TruncPoly& a) { return tp_scale(a, -1); }

TruncPoly tp_scale(const TruncPoly& a, const Rational& c) {
  if (c == 0) return TruncPoly(a.rank(), a.degree_bound());
  std::vector<Term> out;
  out.reserve(a.size());
  for (const auto& t : a.terms()) out.push_back({t.monomial, t.coeff * c});
  return TruncPoly::from_canonical(a.rank(), a.degree_bound(), std::move(out));
}

TruncPoly tp_mul(const TruncPoly& a, const TruncPoly& b) {
  require_same_shape(a, b);
  const int n = a.rank();
  const int d = a.degree_bound();
  if (a.is_zero() || b.is_zero()) return TruncPoly(n, d);

  const Space space(n, d);
  const Scaled sa = common_denominator(a);
  const Scaled sb = common_denominator(b);

  // b's terms are sorted by length: ends[k] = first index with length > k.
  std::vector<std::size_t> ends(static_cast<std::size_t>(d) + 1, b.size());
  {
    std::size_t idx = 0;
    for (int k = 0; k <= d; ++k) {
      while (idx < b.size() && b.terms()[idx].monomial.length <= k) ++idx;
      ends[static_cast<std::size_t>(k)] = idx;
    }
  }

  // Dense scratch indexed by flat monomial index; only touched slots are reset.
  thread_local std::vector<Integer> acc;
  thread_local std::vector<char> used;
  thread_local std::vector<std::uint64_t> touched;
  if (acc.size() < space.total) {
    acc.resize(space.total);
    used.resize(space.total, 0);
  }
  touched.clear();

  const auto& ta = a.terms();
  const auto& tb = b.terms();
  for (std::size_t i = 0; i < ta.size(); ++i) {
    const int la = ta[i].monomial.length;
    if (la > d) break;
    const std::size_t end = ends[static_cast<std::size_t>(d - la)];
    for (std::size_t j = 0; j < end; ++j) {
      const Monomial& mb = tb[j].monomial;
      const std::uint64_t code = ta[i].monomial.code * space.pow[mb.length] + mb.code;
      const std::uint64_t flat = space.offset[la + mb.length] + code;
      if (!used[flat]) {
        used[flat] = 1;
        touched.push_back(flat);
        mpz_mul(acc[flat].get_mpz_t(), sa.numerators[i].get_mpz_t(), sb.numerators[j].get_mpz_t());
      } else {
        mpz_addmul(acc[flat].get_mpz_t(), sa.numerators[i].get_mpz_t(),
                   sb.numerators[j].get_mpz_t());
      }
    }
  }

  std::sort(touched.begin(), touched.end());
  const Integer denominator = sa.denominator * sb.denominator;
  std::vector<Term> out;
  out.reserve(touched.size());
  int length = 0;
  for (std::uint64_t flat : touched) {
    used[flat] = 0;
    if (acc[flat] == 0) continue;
    while (space.offset[length + 1] <= flat) ++length;
    Rational c(acc[flat], denominator);
    c.canonicalize();
    out.push_back({Monomial{length, flat - space.offset[length]}, std::move(c)});
  }
  return TruncPoly::from_canonical(n, d, std::move(out));
}

TruncPoly tp_exp(const TruncPoly& p) {
  if (p.constant_term() != 0) throw std::domain_error("tp_exp: constant term must be 0");
  const int n = p.rank();
  const int d = p.degree_bound();
  TruncPoly result = TruncPoly::one(n, d);
  TruncPoly power = TruncPoly::one(n, d);
  for (int k = 1; k <= d; ++k) {
    power = tp_scale(tp_mul(power, p), Rational(1, k));
    if (power.is_zero()) break;
    result = tp_add(result, power);
  }
  return result;
}

TruncPoly tp_log(const TruncPoly& g) {
  if (g.constant_term() != 1) throw std::domain_error("tp_log: constant term must be 1");
  const int n = g.rank();
  const int d = g.degree_bound();
  const TruncPoly u = tp_sub(g, TruncPoly::one(n, d));
  TruncPoly result(n, d);
  TruncPoly power = u;
  for (int k = 1; k <= d && !power.is_zero(); ++k) {
    result = tp_add(result, tp_scale(power, Rational(k % 2 == 1 ? 1 : -1, k)));
    power = tp_mul(power, u);
  }
  return result;
}

TruncPoly tp_multidegree_component(const TruncPoly& p, const std::vector<int>& degs) {
  if (static_cast<int>(degs.size()) != p.rank())
    throw DimensionMismatch("tp_multidegree_component: degree vector length differs from rank");
  std::vector<Term> out;
  for (const auto& t : p.terms())
    if (tp_multidegree(t.monomial, p.rank()) == degs) out.push_back(t);
  return TruncPoly::from_canonical(p.rank(), p.degree_bound(), std::move(out));
}

TruncPoly tp_homogeneous_component(const TruncPoly& p, int k) {
  std::vector<Term> out;
  for (const auto& t : p.terms())
    if (t.monomial.length == k) out.push_back(t);
  return TruncPoly::from_canonical(p.rank(), p.degree_bound(), std::move(out));
}

TruncPoly tp_truncate(const TruncPoly& p, int new_d) {
  std::vector<Term> out;
  for (const auto& t : p.terms())
    if (t.monomial.length <= new_d) out.push_back(t);
  check_shape(p.rank(), new_d);
  return TruncPoly::from_canonical(p.rank(), new_d, std::move(out));
}

TruncPoly tp_reverse(const TruncPoly& p) {
  const int n = p.rank();
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    auto letters = monomial_letters(t.monomial, n);
    std::reverse(letters.begin(), letters.end());
    out.push_back({make_monomial(letters, n), t.coeff});
  }
  std::sort(out.begin(), out.end(),
            [](const Term& x, const Term& y) { return x.monomial < y.monomial; });
  return TruncPoly::from_canonical(n, p.degree_bound(), std::move(out));
}

TruncPoly tp_substitute(const TruncPoly& p, const std::vector<TruncPoly>& images) {
  if (static_cast<int>(images.size()) != p.rank())
    throw DimensionMismatch("tp_substitute: need one image per generator");
  if (images.empty()) {
    throw std::invalid_argument("tp_substitute: rank-0 source needs an explicit target");
  }
  for (const auto& img : images) {
    require_same_shape(img, images.front());
    if (img.constant_term() != 0)
      throw std::domain_error("tp_substitute: images must have zero constant term");
  }
  const int tn = images.front().rank();
  const int td = images.front().degree_bound();
  const int n = p.rank();

  // Prefix products; words are visited in canonical order so a word's
  // prefix (one letter shorter) is always computed first.
  std::map<Monomial, TruncPoly> prefix;
  prefix.emplace(Monomial{}, TruncPoly::one(tn, td));
  TruncPoly result(tn, td);
  for (const auto& t : p.terms()) {
    const Monomial m = t.monomial;
    if (m.length > td) continue;
    auto it = prefix.find(m);
    if (it == prefix.end()) {
      // Build the chain of prefixes that is still missing.
      std::vector<Monomial> chain;
      Monomial cur = m;
      while (prefix.find(cur) == prefix.end()) {
        chain.push_back(cur);
        cur = Monomial{cur.length - 1, cur.code / static_cast<std::uint64_t>(n)};
      }
      for (auto c = chain.rbegin(); c != chain.rend(); ++c) {
        const Monomial parent{c->length - 1, c->code / static_cast<std::uint64_t>(n)};
        const int letter = static_cast<int>(c->code % static_cast<std::uint64_t>(n));
        prefix.emplace(*c, tp_mul(prefix.at(parent), images[static_cast<std::size_t>(letter)]));
      }
      it = prefix.find(m);
    }
    result = tp_add(result, tp_scale(it->second, t.coeff));
  }
  return result;
}

std::string monomial_to_string(const Monomial& m, int n) {
  if (m.length == 0) return "1";
  std::string s;
  bool first = true;
  for (int letter : monomial_letters(m, n)) {
    if (!first) s += '.';
    first = false;
    s += 'x';
    s += std::to_string(letter);
  }
  return s;
}

std::string to_string(const TruncPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : p.terms()) {
    if (!first) s += " + ";
    first = false;
    s += to_string(t.coeff);
    s += '*';
    s += monomial_to_string(t.monomial, p.rank());
  }
  return s;
}

namespace {

class PolyReader {
 public:
  PolyReader(std::string_view text, int n) : text_(text), n_(n) {}

  std::vector<std::pair<std::vector<int>, Rational>> read() {
    std::vector<std::pair<std::vector<int>, Rational>> terms;
    skip();
    if (peek() == '0' && only_zero()) return terms;
    int sign = 1;
    if (peek() == '-' && !starts_number(pos_ + 1)) {
      sign = -1;
      ++pos_;
    }
    while (true) {
      skip();
      auto term = read_term();
      term.second *= sign;
      terms.push_back(std::move(term));
      skip();
      if (pos_ >= text_.size()) break;
      if (text_[pos_] == '+') {
        sign = 1;
      } else if (text_[pos_] == '-') {
        sign = -1;
      } else {
        throw ParseError(pos_, "expected '+' or '-'");
      }
      ++pos_;
    }
    return terms;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool only_zero() const {
    std::size_t p = pos_ + 1;
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    return p == text_.size();
  }
  bool starts_number(std::size_t p) const {
    return p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]));
  }

  std::pair<std::vector<int>, Rational> read_term() {
    Rational coeff = 1;
    if (peek() == '-' || std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = read_rational();
      skip();
      if (peek() != '*') return {{}, coeff};
      ++pos_;
      skip();
    }
    return {read_word(), coeff};
  }

  Rational read_rational() {
    const std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '/') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError(pos_, "bad rational");
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    Rational q;
    if (q.set_str(std::string(text_.substr(start, pos_ - start)), 10) != 0 || q.get_den() == 0)
      throw ParseError(start, "bad rational");
    q.canonicalize();
    return q;
  }

  std::vector<int> read_word() {
    std::vector<int> letters;
    if (peek() == '1') {
      ++pos_;
      return letters;
    }
    while (true) {
      if (peek() != 'x') throw ParseError(pos_, "expected generator 'x<i>'");
      ++pos_;
      const std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (start == pos_) throw ParseError(pos_, "expected generator index");
      const int letter = std::stoi(std::string(text_.substr(start, pos_ - start)));
      if (letter < 1 || letter > n_) throw ParseError(start, "generator index out of range");
      letters.push_back(letter);
      if (peek() != '.') break;
      ++pos_;
    }
    return letters;
  }

  std::string_view text_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

TruncPoly parse_truncpoly(std::string_view text, int n, int d) {
  return TruncPoly::from_terms(n, d, PolyReader(text, n).read());
}

}  // namespace nilaut
