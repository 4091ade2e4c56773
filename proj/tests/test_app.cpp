#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "app/analysis.hpp"
#include "app/commands.hpp"
#include "app/problem_file.hpp"
#include "cdual/error.hpp"
#include "cdual/problems.hpp"
#include "oracles.hpp"

using namespace cdual;
using namespace cdual::app;

namespace {

std::string data(const std::string& name) { return std::string(CDUAL_TEST_DATA_DIR) + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

template <typename Fn>
Run capture(Fn&& fn) {
  std::ostringstream out, err;
  const int code = fn(out, err);
  return Run{code, out.str(), err.str()};
}

void collect_numbers(const nlohmann::ordered_json& j, std::vector<double>& out) {
  if (j.is_number_float()) out.push_back(j.get<double>());
  if (j.is_structured())
    for (const auto& v : j) collect_numbers(v, out);
}

// Rows of the trace CSV whose rho is within tol of the target.
std::vector<std::vector<double>> rows_near(const std::string& csv, double rho, double tol) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    if (std::abs(row[0] - rho) <= tol) rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(ProblemFile, ParsesQuartic) {
  EXPECT_EQ(load_problem(data("quartic.json")), problems::quartic_counterexample());
  const auto p = parse_problem_text(R"({"dimension": 2, "polynomial": [{"c": 1, "p": [1, 1]}]})");
  EXPECT_EQ(p, PolynomialFunction(2, {{1.0, {1, 1}}}));
  EXPECT_EQ(parse_problem(problem_to_json(problems::anisotropic_quadratic())),
            problems::anisotropic_quadratic());
}

TEST(ProblemFile, RejectsBadInput) {
  EXPECT_THROW(load_problem(data("bad_exponents.json")), InvalidInput);
  EXPECT_THROW(load_problem(data("missing.json")), InvalidInput);
  EXPECT_THROW(parse_problem_text("{"), InvalidInput);
  EXPECT_THROW(parse_problem_text(R"({"polynomial": []})"), InvalidInput);
  EXPECT_THROW(parse_problem_text(R"({"dimension": 0, "polynomial": []})"), InvalidInput);
  EXPECT_THROW(parse_problem_text(R"({"dimension": 1, "polynomial": [{"c": "x", "p": [1]}]})"),
               InvalidInput);
  EXPECT_THROW(parse_problem_text(R"({"dimension": 1, "polynomial": [{"c": 1, "p": [-1]}]})"),
               InvalidInput);
  EXPECT_THROW(parse_problem_text(R"({"dimension": 1, "polynomial": [{"c": 1, "p": [1.5]}]})"),
               InvalidInput);
}

TEST(Analyze, QuarticReport) {
  const auto r = capture([](auto& o, auto& e) { return cmd_analyze(data("quartic.json"), {}, true, o, e); });
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::ordered_json::parse(r.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"problem", "concavity", "stationary", "dual", "theorem31",
                                            "theorem32", "oracle", "refutation", "meta"}));
  EXPECT_EQ(doc["stationary"]["pairs"].size(), 2u);
  EXPECT_TRUE(doc["theorem32"]["hypotheses_hold"].get<bool>());
  EXPECT_TRUE(doc["theorem32"]["refuted"].get<bool>());
  EXPECT_EQ(doc["theorem31"]["verdict"], "refuted");
  EXPECT_NEAR(doc["oracle"]["min_value"].get<double>(), -3.0, 1e-12);
  EXPECT_NEAR(doc["refutation"]["gap"].get<double>(), 1.6, 1e-12);
}

TEST(Analyze, ParabolaReport) {
  const auto r = capture([](auto& o, auto& e) { return cmd_analyze(data("parabola.json"), {}, true, o, e); });
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(doc["theorem31"]["verdict"], "certified_exact");
  EXPECT_NEAR(doc["theorem31"]["designated_value"].get<double>(), -2.0, 1e-12);
  EXPECT_TRUE(doc["refutation"].is_null());
  EXPECT_TRUE(doc["oracle"]["comparison"]["designee_matches_oracle"].get<bool>());
}

TEST(Analyze, ExitCodes) {
  auto code = [](const std::string& f) {
    return capture([&](auto& o, auto& e) { return cmd_analyze(data(f), {}, false, o, e); }).code;
  };
  EXPECT_EQ(code("bad_exponents.json"), kExitInvalidInput);
  EXPECT_EQ(code("missing.json"), kExitInvalidInput);
  EXPECT_EQ(code("isotropic.json"), kExitInvalidInput);
}

TEST(Analyze, JsonIsDeterministic) {
  auto run = [] {
    return capture([](auto& o, auto& e) { return cmd_analyze(data("quartic.json"), {}, true, o, e); }).out;
  };
  EXPECT_EQ(run(), run());
}

TEST(Analyze, TextAndJsonCarrySameNumbers) {
  for (const char* f : {"quartic.json", "parabola.json", "anisotropic.json"}) {
    AnalysisOptions opts;
    opts.relaxed = std::string(f) == "anisotropic.json";
    const auto js = capture([&](auto& o, auto& e) { return cmd_analyze(data(f), opts, true, o, e); });
    const auto tx = capture([&](auto& o, auto& e) { return cmd_analyze(data(f), opts, false, o, e); });
    ASSERT_EQ(js.code, kExitOk);
    ASSERT_EQ(tx.code, kExitOk);
    std::vector<double> nums;
    collect_numbers(nlohmann::ordered_json::parse(js.out), nums);
    ASSERT_FALSE(nums.empty());
    for (double v : nums) {
      EXPECT_NE(tx.out.find(format_real(v)), std::string::npos) << f << ": " << format_real(v);
      EXPECT_EQ(std::strtod(format_real(v).c_str(), nullptr), v);
    }
  }
}

TEST(Example, AllAssertionsPass) {
  const auto r = capture([](auto& o, auto& e) { return cmd_example({}, std::nullopt, false, o, e); });
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Example, TightToleranceFails) {
  const auto r = capture([](auto& o, auto& e) { return cmd_example({}, 1e-15, false, o, e); });
  EXPECT_EQ(r.code, kExitNumericalFailure);
  EXPECT_NE(r.err.find("max Hessian eigenvalue"), std::string::npos) << r.err;
}

TEST(Example, JsonMatchesAssertions) {
  const auto r = capture([](auto& o, auto& e) { return cmd_example({}, std::nullopt, true, o, e); });
  ASSERT_EQ(r.code, kExitOk);
  const auto doc = nlohmann::ordered_json::parse(r.out);
  EXPECT_TRUE(doc["all_pass"].get<bool>());
  const Analysis a = run_analysis(problems::quartic_counterexample(), {});
  const auto asserts = example_assertions(a, std::nullopt);
  ASSERT_EQ(doc["assertions"].size(), asserts.size());
  for (std::size_t i = 0; i < asserts.size(); ++i) {
    EXPECT_EQ(doc["assertions"][i]["name"], asserts[i].name);
    EXPECT_EQ(doc["assertions"][i]["value"].get<double>(), asserts[i].value);
  }
}

TEST(Trace, LowerPairRowAtFour) {
  TraceOptions t;
  t.pair = 0;
  t.half_window = 0.01;
  t.step = 1e-3;
  const auto r = capture([&](auto& o, auto& e) { return cmd_trace(data("quartic.json"), {}, t, o, e); });
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "rho,x0,dx0,P_d,P_d1,P_d2_analytic,P_d2_fd");
  const auto rows = rows_near(r.out, 4.0, 1e-9);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0][1], -1.0, 1e-12);
  EXPECT_NEAR(rows[0][5], 1.25, 1e-10);
  EXPECT_NEAR(rows[0][6], 1.25, 1e-4 * 1.25);
}

TEST(Trace, UpperPairRow) {
  TraceOptions t;
  t.pair = 1;
  const auto r = capture([&](auto& o, auto& e) { return cmd_trace(data("quartic.json"), {}, t, o, e); });
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = rows_near(r.out, 44.0 / 5.0, 1e-9);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0][5], 5.0 / 76.0, 1e-10);
  EXPECT_NEAR(rows[0][6], 5.0 / 76.0, 1e-4 * 5.0 / 76.0);
}

TEST(Trace, TruncationIsFlaggedNotFatal) {
  TraceOptions t;
  t.pair = 0;
  t.half_window = 0.5;
  const auto r = capture([&](auto& o, auto& e) { return cmd_trace(data("quartic.json"), {}, t, o, e); });
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("# truncated below"), std::string::npos);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Trace, ErrorExits) {
  TraceOptions t;
  t.pair = 5;
  EXPECT_EQ(capture([&](auto& o, auto& e) { return cmd_trace(data("quartic.json"), {}, t, o, e); }).code,
            kExitInvalidInput);
  t.pair = 0;
  EXPECT_EQ(capture([&](auto& o, auto& e) { return cmd_trace(data("isotropic.json"), {}, t, o, e); }).code,
            kExitInvalidInput);
}

TEST(Validate, ShippedProblemsPass) {
  for (const char* f : {"quartic.json", "random_quartic_3d.json", "parabola.json"}) {
    const auto r = capture([&](auto& o, auto& e) { return cmd_validate(std::string(data(f)), {}, o, e); });
    EXPECT_EQ(r.code, kExitOk) << f << "\n" << r.out << r.err;
  }
}

TEST(Validate, CorruptedCallbackFails) {
  const auto q = problems::quartic_counterexample();
  // Gradient off by 1 %.
  CallbackFunction bad(
      1, [&](std::span<const double> x) { return q.value(x); },
      [&](std::span<const double> x) {
        Vector g = q.gradient(x);
        g[0] *= 1.01;
        return g;
      },
      [&](std::span<const double> x) { return q.hessian(x); });
  const auto r = capture([&](auto& o, auto& e) { return cmd_validate(bad, {}, o, e); });
  EXPECT_EQ(r.code, kExitNumericalFailure);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);

  CallbackFunction good(
      1, [&](std::span<const double> x) { return oracle::quartic(x[0]); },
      [&](std::span<const double> x) { return Vector{oracle::quartic_d1(x[0])}; },
      [&](std::span<const double> x) { return Matrix(1, oracle::quartic_d2(x[0])); });
  EXPECT_EQ(capture([&](auto& o, auto& e) { return cmd_validate(good, {}, o, e); }).code, kExitOk);
}
