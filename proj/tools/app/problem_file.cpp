#include "app/problem_file.hpp"

#include <fstream>
#include <sstream>

#include "cdual/error.hpp"

namespace cdual::app {

PolynomialFunction parse_problem(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InvalidInput("problem file: top level must be an object");
  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer() ||
      doc["dimension"].get<long long>() < 1) {
    throw InvalidInput("problem file: \"dimension\" must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(doc["dimension"].get<long long>());
  if (!doc.contains("polynomial") || !doc["polynomial"].is_array()) {
    throw InvalidInput("problem file: \"polynomial\" must be an array");
  }

  std::vector<Monomial> terms;
  std::size_t index = 0;
  for (const auto& t : doc["polynomial"]) {
    const std::string where = "problem file: term " + std::to_string(index++);
    if (!t.is_object() || !t.contains("c") || !t.contains("p")) {
      throw InvalidInput(where + " needs \"c\" and \"p\"");
    }
    if (!t["c"].is_number()) throw InvalidInput(where + ": \"c\" must be a number");
    if (!t["p"].is_array()) throw InvalidInput(where + ": \"p\" must be an array");
    if (t["p"].size() != n) {
      throw InvalidInput(where + ": exponent list has length " + std::to_string(t["p"].size()) +
                         ", expected " + std::to_string(n));
    }
    Monomial m;
    m.coeff = t["c"].get<double>();
    for (const auto& e : t["p"]) {
      if (!e.is_number_integer() || e.get<long long>() < 0) {
        throw InvalidInput(where + ": exponents must be non-negative integers");
      }
      m.powers.push_back(static_cast<std::uint32_t>(e.get<long long>()));
    }
    terms.push_back(std::move(m));
  }
  return PolynomialFunction(n, std::move(terms));
}

PolynomialFunction parse_problem_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("problem file: malformed JSON: ") + e.what());
  }
  return parse_problem(doc);
}

PolynomialFunction load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read problem file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str());
}

nlohmann::ordered_json problem_to_json(const PolynomialFunction& f) {
  nlohmann::ordered_json doc;
  doc["dimension"] = f.dimension();
  auto& poly = doc["polynomial"] = nlohmann::ordered_json::array();
  for (const auto& t : f.terms()) {
    nlohmann::ordered_json term;
    term["c"] = t.coeff;
    term["p"] = t.powers;
    poly.push_back(std::move(term));
  }
  return doc;
}

}  // namespace cdual::app
