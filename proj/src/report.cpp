#include "nilaut/report.hpp"

#include <sstream>

namespace nilaut {

using nlohmann::ordered_json;

namespace {

std::string yes_no(bool b) { return b ? "pass" : "FAIL"; }

std::string join_integers(const std::vector<Integer>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].get_str();
  }
  return s;
}

ordered_json axioms_json(const AxiomReport& a) {
  return ordered_json{{"assoc", a.associative}, {"unit", a.unit}, {"inverse", a.inverse}};
}

ordered_json dets_json(const SigmaReport& s) {
  ordered_json dets = ordered_json::array();
  for (const auto& d : s.determinants) dets.push_back(integer_json(d));
  return dets;
}

ordered_json vectors_json(const std::vector<MalcevVector>& vs) {
  ordered_json out = ordered_json::array();
  for (const auto& v : vs) out.push_back(vector_json(v));
  return out;
}

}  // namespace

ordered_json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

ordered_json vector_json(const MalcevVector& v) {
  ordered_json out = ordered_json::array();
  for (const auto& z : v) out.push_back(integer_json(z));
  return out;
}

ordered_json to_json(const Verdict& v) {
  ordered_json j;
  j["word"] = v.word;
  j["class"] = v.degree;
  j["rank"] = v.rank;
  j["axioms"] = axioms_json(v.axioms);
  j["forced_form"] = v.forced_form ? ordered_json(v.forced_form->passed()) : ordered_json(nullptr);
  j["layer_dets"] = v.sigma ? dets_json(*v.sigma) : ordered_json::array();
  j["op_d_pass"] = v.passed;
  j["details"] = v.details;
  return j;
}

ordered_json to_json(const SearchResult& r) {
  ordered_json j;
  j["class"] = r.degree;
  j["bound"] = r.bound;
  j["box_size"] = r.box_size;
  j["checked"] = r.checked;
  j["kappa_eliminated"] = r.kappa_eliminated;
  j["axiom_passing"] = r.axiom_passing.size();
  j["survivors"] = vectors_json(r.survivors);
  return j;
}

ordered_json to_json(const Certificate& c) {
  ordered_json j;
  ordered_json lambdas = ordered_json::array();
  for (const auto& l : c.lambdas) lambdas.push_back(integer_json(l));
  j["lambdas"] = lambdas;
  ordered_json blocks = ordered_json::array();
  for (const auto& b : c.blocks)
    blocks.push_back(ordered_json{{"bidegree", {b.bidegree.first, b.bidegree.second}},
                                  {"unknowns", b.unknowns},
                                  {"rows", b.rows},
                                  {"rank", b.rank},
                                  {"nullity", b.nullity}});
  j["blocks"] = blocks;
  j["rank"] = c.rank;
  j["nullity"] = c.nullity;
  ordered_json q1 = ordered_json::array();
  for (const auto& [lambda, coeff] : c.q1_coefficients)
    q1.push_back(ordered_json{{"lambda", integer_json(lambda)}, {"coefficient", integer_json(coeff)}});
  j["q1_coefficients"] = q1;
  return j;
}

ordered_json to_json(const TheoremReport& r) {
  ordered_json sections = ordered_json::array();
  for (const auto& s : r.sections) {
    ordered_json j;
    j["class"] = s.degree;
    j["base_or_step"] = s.kind;
    j["candidates_tested"] = s.candidates_tested;
    j["survivors"] = vectors_json(s.survivors);
    j["certificate"] = s.certificate ? to_json(*s.certificate) : ordered_json(nullptr);
    j["passed"] = s.passed;
    j["details"] = s.details;
    sections.push_back(j);
  }
  return ordered_json{{"max_class", r.max_degree}, {"sections", sections}, {"passed", r.passed}};
}

ordered_json to_json(const SystemReport& r) {
  ordered_json ranks = ordered_json::array();
  for (const auto& k : r.ranks)
    ranks.push_back(ordered_json{{"rank", k.rank},
                                 {"axioms", axioms_json(k.axioms)},
                                 {"layer_dets", dets_json(k.sigma)},
                                 {"sigma_isomorphism", k.sigma.isomorphism},
                                 {"passed", k.passed}});
  return ordered_json{{"product", r.product_word}, {"class", r.degree}, {"ranks", ranks}, {"passed", r.passed}};
}

ordered_json to_json(const WitnessReport& r) {
  return ordered_json{{"witness", r.witness},
                      {"class", r.degree},
                      {"rank_max", r.rank_max},
                      {"samples", r.samples},
                      {"homomorphism", r.homomorphism},
                      {"bijective", r.bijective},
                      {"naturality", r.naturality},
                      {"squares_checked", r.squares_checked},
                      {"passed", r.passed},
                      {"details", r.details}};
}

std::string to_text(const Verdict& v) {
  std::ostringstream os;
  os << "word " << v.word << " at class " << v.degree << "\n";
  os << "  associativity " << yes_no(v.axioms.associative) << ", unit " << yes_no(v.axioms.unit) << ", inverse "
     << yes_no(v.axioms.inverse) << "\n";
  if (v.forced_form) os << "  forced form " << yes_no(v.forced_form->passed()) << "\n";
  if (v.sigma) os << "  layer determinants (" << join_integers(v.sigma->determinants) << ")\n";
  os << "  Op^" << v.degree << ": " << (v.passed ? "pass" : "FAIL");
  if (!v.details.empty()) os << " (" << v.details << ")";
  os << "\n";
  return os.str();
}

std::string to_text(const SearchResult& r) {
  std::ostringstream os;
  os << "class " << r.degree << ", bound " << r.bound << ": " << r.box_size << " candidates, " << r.checked
     << " checked, " << r.kappa_eliminated << " eliminated by kappa, " << r.axiom_passing.size()
     << " satisfy the axioms\n";
  os << r.survivors.size() << " survivors\n";
  for (const auto& s : r.survivors) os << "  " << to_string(s) << "\n";
  return os.str();
}

std::string to_text(const TheoremReport& r) {
  std::ostringstream os;
  for (const auto& s : r.sections) {
    os << "class " << s.degree << " (" << s.kind << "): " << s.candidates_tested << " candidates, "
       << s.survivors.size() << " survivors, " << (s.passed ? "pass" : "FAIL") << "\n";
    for (const auto& v : s.survivors) os << "  " << to_string(v) << "\n";
    if (s.certificate) {
      os << "  lambdas (" << join_integers(s.certificate->lambdas) << "), rank " << s.certificate->rank
         << ", nullity " << s.certificate->nullity << "\n";
      for (const auto& b : s.certificate->blocks)
        os << "  bidegree (" << b.bidegree.first << "," << b.bidegree.second << "): " << b.unknowns
           << " unknowns, rank " << b.rank << ", nullity " << b.nullity << "\n";
      for (const auto& [lambda, coeff] : s.certificate->q1_coefficients)
        os << "  q1 coefficient at lambda=" << lambda.get_str() << ": " << coeff.get_str() << "\n";
    }
    if (!s.details.empty()) os << "  " << s.details << "\n";
  }
  os << (r.passed ? "verified" : "NOT verified") << " through class " << r.max_degree << "\n";
  return os.str();
}

std::string to_text(const SystemReport& r) {
  std::ostringstream os;
  os << "product " << r.product_word << " at class " << r.degree << "\n";
  for (const auto& k : r.ranks)
    os << "  rank " << k.rank << ": axioms " << yes_no(k.axioms.passed()) << ", layer determinants ("
       << join_integers(k.sigma.determinants) << "), " << (k.passed ? "pass" : "FAIL") << "\n";
  os << (r.passed ? "pass" : "FAIL") << "\n";
  return os.str();
}

std::string to_text(const WitnessReport& r) {
  std::ostringstream os;
  os << "witness c(b) = " << (r.witness == "inverse" ? "b^-1" : "b") << " at class " << r.degree << ", ranks <= "
     << r.rank_max << "\n";
  os << "  homomorphism " << yes_no(r.homomorphism) << ", bijective " << yes_no(r.bijective) << ", naturality "
     << yes_no(r.naturality) << " (" << r.squares_checked << " squares)\n";
  if (!r.details.empty()) os << "  " << r.details << "\n";
  os << (r.passed ? "pass" : "FAIL") << "\n";
  return os.str();
}

}  // namespace nilaut
