#include <cctype>
#include <string>

#include "nilaut/errors.hpp"
#include "nilaut/group.hpp"

namespace nilaut {

namespace {

class WordParser {
 public:
  explicit WordParser(std::string_view text) : text_(text) {}

  GroupTerm parse() {
    GroupTerm t = element();
    skip();
    if (pos_ != text_.size()) throw ParseError(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) throw ParseError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  GroupTerm element() {
    GroupTerm t = term();
    while (peek() == '*') {
      ++pos_;
      t = GroupTerm::product(t, term());
    }
    return t;
  }

  GroupTerm term() {
    GroupTerm f = factor();
    if (peek() == '^') {
      ++pos_;
      f = GroupTerm::power(f, integer());
    }
    return f;
  }

  Integer integer() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (digits == pos_) throw ParseError(pos_, "expected integer exponent");
    std::string s(text_.substr(start, pos_ - start));
    if (s.front() == '+') s.erase(0, 1);
    return Integer(s);
  }

  GroupTerm factor() {
    const char c = peek();
    if (c == 'x') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError(pos_, "expected generator index after 'x'");
      const Integer idx(std::string(text_.substr(start, pos_ - start)));
      if (idx < 1 || idx > 1000000) throw ParseError(start, "generator index out of range");
      return GroupTerm::variable(static_cast<int>(idx.get_si()));
    }
    if (c == '1') {
      ++pos_;
      return GroupTerm::unit();
    }
    if (c == '(') {
      ++pos_;
      GroupTerm t = element();
      expect(')');
      return t;
    }
    if (c == 'c') {
      ++pos_;
      expect('(');
      GroupTerm a = element();
      expect(',');
      GroupTerm b = element();
      expect(')');
      return GroupTerm::commutator(a, b);
    }
    if (c == '\0') throw ParseError(pos_, "unexpected end of input");
    throw ParseError(pos_, "unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupTerm parse_group_term(std::string_view text) { return WordParser(text).parse(); }

GroupElement parse_group_element(std::string_view text, int n, int d) {
  const GroupTerm t = parse_group_term(text);
  if (t.arity() > n)
    throw DimensionMismatch("word uses x" + std::to_string(t.arity()) + " but rank is " + std::to_string(n));
  std::vector<GroupElement> gens;
  for (int i = 1; i <= n; ++i) gens.push_back(group_generator(i, n, d));
  return evaluate_term(t, gens, OperationSystem::standard(), Shape{n, d});
}

}  // namespace nilaut
