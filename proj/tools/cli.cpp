#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <string>
#include <vector>

#include "nilaut/classify.hpp"
#include "nilaut/errors.hpp"
#include "nilaut/lie.hpp"
#include "nilaut/report.hpp"
#include "nilaut/verbal.hpp"

namespace nilaut::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
  int rank = 2;
  int degree = 2;
  int bound = 1;
  int max_degree = 4;
  int rank_max = 3;
  int samples = 100;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool json = false;
  bool no_kappa = false;
  std::vector<long> lambdas{1, 2};
  std::vector<std::string> words;
  std::string system;
};

void check_shape(const Options& o) {
  if (o.rank < 1) throw std::invalid_argument("--rank must be at least 1");
  if (o.degree < 1) throw std::invalid_argument("--class must be at least 1");
}

ordered_json element_json(const GroupElement& a) {
  const auto basis = malcev_basis(a.rank(), a.degree_bound());
  ordered_json words = ordered_json::array();
  for (std::size_t s = 0; s < basis->size(); ++s) words.push_back(basis->hall().word_string(s));
  return ordered_json{{"malcev", vector_json(malcev_coordinates(a, *basis))},
                      {"basis", words},
                      {"word", normal_form_string(a)},
                      {"tensor", to_string(a.value())}};
}

std::string element_text(const GroupElement& a) {
  const auto basis = malcev_basis(a.rank(), a.degree_bound());
  std::string names;
  for (std::size_t s = 0; s < basis->size(); ++s) names += (s ? ", " : "") + basis->hall().word_string(s);
  return "malcev " + to_string(malcev_coordinates(a, *basis)) + "\nbasis (" + names + ")\nword " +
         normal_form_string(a) + "\ntensor " + to_string(a.value()) + "\n";
}

void print_element(const GroupElement& a, const Options& o, std::ostream& out) {
  if (o.json)
    out << element_json(a).dump(2) << "\n";
  else
    out << element_text(a);
}

void print_lie(const LieElement& q, const Options& o, std::ostream& out) {
  if (o.json)
    out << ordered_json{{"coordinates", coordinates_to_string(q)}, {"tensor", to_string(q.value())}}.dump(2) << "\n";
  else
    out << "lie " << coordinates_to_string(q) << "\ntensor " << to_string(q.value()) << "\n";
}

void require_words(const Options& o, std::size_t count, const char* command) {
  if (o.words.size() != count)
    throw std::invalid_argument(std::string(command) + " takes " + std::to_string(count) + " word(s)");
}

LieElement parse_lie(const std::string& text, const Options& o) {
  const GroupTerm t = parse_group_term(text);
  if (t.arity() > o.rank) throw DimensionMismatch("term uses x" + std::to_string(t.arity()) + " but rank is " +
                                                  std::to_string(o.rank));
  return term_to_lie(t, hall_basis(o.rank, o.degree));
}

template <typename Report>
void print_report(const Report& r, const Options& o, std::ostream& out) {
  if (o.json)
    out << to_json(r).dump(2) << "\n";
  else
    out << to_text(r);
}

int dispatch(const std::string& command, const Options& o, std::ostream& out) {
  if (command == "nf") {
    check_shape(o);
    require_words(o, 1, "nf");
    print_element(parse_group_element(o.words[0], o.rank, o.degree), o, out);
    return 0;
  }
  if (command == "mul") {
    check_shape(o);
    if (o.words.empty()) throw std::invalid_argument("mul takes at least one word");
    GroupElement p = GroupElement::identity(o.rank, o.degree);
    for (const auto& w : o.words) p = g_mul(p, parse_group_element(w, o.rank, o.degree));
    print_element(p, o, out);
    return 0;
  }
  if (command == "comm") {
    check_shape(o);
    require_words(o, 2, "comm");
    print_element(g_comm(parse_group_element(o.words[0], o.rank, o.degree),
                         parse_group_element(o.words[1], o.rank, o.degree)),
                  o, out);
    return 0;
  }
  if (command == "log") {
    check_shape(o);
    require_words(o, 1, "log");
    const GroupElement a = parse_group_element(o.words[0], o.rank, o.degree);
    print_lie(LieElement(hall_basis(o.rank, o.degree), tp_log(a.value())), o, out);
    return 0;
  }
  if (command == "exp") {
    check_shape(o);
    require_words(o, 1, "exp");
    const LieElement q = parse_lie(o.words[0], o);
    const GroupElement a(tp_exp(q.value()));
    // exp of a Lie element lies in the completion; report Mal'cev data only
    // when it is an element of the group itself.
    try {
      print_element(a, o, out);
    } catch (const NonIntegralCoordinate&) {
      if (o.json)
        out << ordered_json{{"malcev", nullptr}, {"tensor", to_string(a.value())}}.dump(2) << "\n";
      else
        out << "malcev (not in the group: non-integral coordinates)\ntensor " << to_string(a.value()) << "\n";
    }
    return 0;
  }
  if (command == "bch") {
    check_shape(o);
    require_words(o, 2, "bch");
    print_lie(bch_mul(parse_lie(o.words[0], o), parse_lie(o.words[1], o)), o, out);
    return 0;
  }
  if (command == "check-word") {
    require_words(o, 1, "check-word");
    if (o.degree < 1) throw std::invalid_argument("--class must be at least 1");
    const Verdict v = check_op_d(parse_group_element(o.words[0], 2, o.degree));
    print_report(v, o, out);
    return v.passed ? 0 : 1;
  }
  if (command == "search") {
    if (o.degree < 2) throw std::invalid_argument("search needs --class >= 2");
    if (o.bound < 0) throw std::invalid_argument("--bound must be non-negative");
    const SearchResult r = search_class(o.degree, o.bound, SearchOptions{o.threads, !o.no_kappa});
    print_report(r, o, out);
    return 0;
  }
  if (command == "certify") {
    if (o.max_degree < 2) throw std::invalid_argument("--max-class must be at least 2");
    std::vector<Integer> lambdas;
    for (long l : o.lambdas) lambdas.emplace_back(l);
    const TheoremReport r = verify_words2(o.max_degree, lambdas, o.threads);
    print_report(r, o, out);
    return r.passed ? 0 : 1;
  }
  if (command == "check-system") {
    if (o.degree < 1) throw std::invalid_argument("--class must be at least 1");
    if (o.rank_max < 1) throw std::invalid_argument("--rank-max must be at least 1");
    if (o.samples < 0) throw std::invalid_argument("--samples must be non-negative");
    const WordSystem system = o.system == "identity" ? WordSystem::identity(o.degree) : WordSystem::reverse(o.degree);
    const SystemReport s = check_word_system(system, o.rank_max, o.seed);
    const WitnessReport w = inner_witness_check(system, o.rank_max, o.samples, o.seed);
    if (o.json)
      out << ordered_json{{"system", o.system}, {"check", to_json(s)}, {"witness", to_json(w)}}.dump(2) << "\n";
    else
      out << "system " << o.system << "\n" << to_text(s) << to_text(w);
    return s.passed && w.passed ? 0 : 1;
  }
  throw std::logic_error("unknown command " + command);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free nilpotent groups, verbal operations and word-system classification", "nilaut"};
  app.require_subcommand(1, 1);
  Options o;

  auto shape = [&o](CLI::App* sub) {
    sub->add_option("--rank,-n", o.rank, "number of generators")->capture_default_str();
    sub->add_option("--class,-d", o.degree, "nilpotency class")->capture_default_str();
  };
  auto json = [&o](CLI::App* sub) { sub->add_flag("--json", o.json, "print JSON"); };

  const std::vector<std::pair<std::string, std::string>> calculators{
      {"nf", "Mal'cev normal form of a word"},
      {"mul", "product of words"},
      {"comm", "commutator (a,b) = a^-1 b^-1 a b"},
      {"log", "logarithm in Hall coordinates"},
      {"exp", "exponential of a Lie term (products as sums, commutators as brackets)"},
      {"bch", "Campbell-Hausdorff product of two Lie terms"}};
  for (const auto& [name, help] : calculators) {
    auto* sub = app.add_subcommand(name, help);
    shape(sub);
    json(sub);
    sub->add_option("words", o.words, "words in x1, x2, ...")->required();
  }

  auto* check = app.add_subcommand("check-word", "check condition Op^d for a binary word");
  check->add_option("--class,-d", o.degree, "nilpotency class")->capture_default_str();
  check->add_option("word", o.words, "word in x1, x2")->required()->expected(1);
  json(check);

  auto* search = app.add_subcommand("search", "exhaustive search over w = xy g_2");
  search->add_option("--class,-d", o.degree, "nilpotency class")->capture_default_str();
  search->add_option("--bound,-M", o.bound, "exponent bound")->capture_default_str();
  search->add_option("--threads", o.threads, "worker threads")->capture_default_str();
  search->add_flag("--no-kappa", o.no_kappa, "check every candidate directly");
  json(search);

  auto* certify = app.add_subcommand("certify", "classify binary words through a class");
  certify->add_option("--max-class", o.max_degree, "highest class")->capture_default_str();
  certify->add_option("--lambdas", o.lambdas, "substitution scalars")->delimiter(',')->capture_default_str();
  certify->add_option("--threads", o.threads, "worker threads")->capture_default_str();
  json(certify);

  auto* system = app.add_subcommand("check-system", "verify a surviving word system and its witness");
  system->add_option("system", o.system, "identity or reverse")
      ->required()
      ->check(CLI::IsMember({"identity", "reverse"}));
  system->add_option("--class,-d", o.degree, "nilpotency class")->capture_default_str();
  system->add_option("--rank-max", o.rank_max, "highest rank")->capture_default_str();
  system->add_option("--samples", o.samples, "random samples per rank")->capture_default_str();
  system->add_option("--seed", o.seed, "random seed")->capture_default_str();
  json(system);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const DimensionMismatch& e) {
    err << "dimension mismatch: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace nilaut::cli
