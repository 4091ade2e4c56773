#pragma once

#include <string>
#include <string_view>

#include "cdual/polynomial.hpp"
#include "json.hpp"

namespace cdual::app {

/// {"dimension": n, "polynomial": [{"c": coeff, "p": [e0, ..., e_{n-1}]}, ...]}
PolynomialFunction parse_problem(const nlohmann::json& doc);
PolynomialFunction parse_problem_text(std::string_view text);
PolynomialFunction load_problem(const std::string& path);

nlohmann::ordered_json problem_to_json(const PolynomialFunction& f);

}  // namespace cdual::app
