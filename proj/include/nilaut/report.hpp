#pragma once

// JSON and plain-text renderings of verdicts and reports. Integers that fit
// in a signed 64-bit word are JSON numbers, larger ones decimal strings.

#include <string>

#include <json.hpp>

#include "nilaut/classify.hpp"
#include "nilaut/verbal.hpp"

namespace nilaut {

nlohmann::ordered_json integer_json(const Integer& z);
nlohmann::ordered_json vector_json(const MalcevVector& v);

nlohmann::ordered_json to_json(const Verdict& v);
nlohmann::ordered_json to_json(const SearchResult& r);
nlohmann::ordered_json to_json(const Certificate& c);
nlohmann::ordered_json to_json(const TheoremReport& r);
nlohmann::ordered_json to_json(const SystemReport& r);
nlohmann::ordered_json to_json(const WitnessReport& r);

std::string to_text(const Verdict& v);
std::string to_text(const SearchResult& r);
std::string to_text(const TheoremReport& r);
std::string to_text(const SystemReport& r);
std::string to_text(const WitnessReport& r);

}  // namespace nilaut
