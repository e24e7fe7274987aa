#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <limits>

#include "smba/errors.hpp"
#include "smba/io.hpp"
#include "smba/nsdp_instance.hpp"
#include "test_support.hpp"

using namespace smba;
using namespace smba::testing;

namespace {

int count_columns(const std::string& line) { return static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1; }

TEST(ProblemJson, RoundTripNsdp) {
  const ProblemDocument doc = nsdp_document(generate_nsdp(5, 3, 2), 0.5);
  const std::string text = problem_to_json(doc);
  const ProblemDocument back = problem_from_json(text);
  EXPECT_EQ(back.family, "nsdp");
  EXPECT_EQ(back.n, 5);
  EXPECT_EQ(back.m, 3);
  EXPECT_EQ(back.seed, 2u);
  EXPECT_EQ(back.q, doc.q);
  EXPECT_EQ(back.b, doc.b);
  ASSERT_EQ(back.a.size(), doc.a.size());
  for (std::size_t i = 0; i < doc.a.size(); ++i) EXPECT_EQ(back.a[i], doc.a[i]);
  EXPECT_EQ(back.l1_weight, Vector::Constant(5, 0.5));
  EXPECT_EQ(problem_to_json(back), text);
}

TEST(ProblemJson, BuildsEquivalentProblem) {
  const NsdpInstance inst = generate_nsdp(6, 4, 3);
  const DCProblem direct = make_nsdp_problem(inst);
  const DCProblem loaded = build_problem(problem_from_json(problem_to_json(nsdp_document(inst))));
  CounterRng rng(1);
  const Vector x = normal_vector(rng, 6, 0.1);
  EXPECT_EQ(direct.objective_value(x), loaded.objective_value(x));
  EXPECT_EQ(direct.composite_value(x, 0.3), loaded.composite_value(x, 0.3));
}

TEST(ProblemJson, OrthantAndPconeFamilies) {
  const std::string orth = R"({"family":"orthant","n":2,"m":2,"Q":[1,0,0,1],"b":[-2,1],
    "A":[[1,1],[-1,0],[0,-1]],"l1_weight":0})";
  const DCProblem p = build_problem(problem_from_json(orth));
  EXPECT_EQ(p.cone().family(), ConeFamily::NonposOrthant);
  const std::string cone = R"({"family":"pcone","n":1,"m":1,"p":2,"Q":[1],"b":[0],
    "A":[[0,-2],[-1,0]],"l1_weight":[0]})";
  const DCProblem pc = build_problem(problem_from_json(cone));
  EXPECT_EQ(pc.cone().family(), ConeFamily::PCone);
  EXPECT_DOUBLE_EQ(pc.support_value(vec({1.5})), -0.5);  // |x| - 2
  // G(x) = -A_0 - x_1 A_1 - x_2 A_2 = x - (1, 1)
  EXPECT_DOUBLE_EQ(p.support_value(vec({0, 0})), -1.0);
  EXPECT_DOUBLE_EQ(p.support_value(vec({0.5, 2})), 1.0);
}

TEST(ProblemJson, ErrorsNameTheField) {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    try {
      problem_from_json(text);
      ADD_FAILURE() << "no error for " << text;
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  expect_error("{\"family\": \"nsdp\",\n \"n\": 2,\n oops}", "line 3");
  expect_error(R"({"family":"nsdp","m":1})", "'n'");
  expect_error(R"({"family":"cube","n":1,"m":1})", "'family'");
  expect_error(R"({"family":"orthant","n":1,"m":1,"Q":[1],"b":[1,2]})", "'b'");
  expect_error(R"({"family":"orthant","n":1,"m":1,"Q":[1],"b":[1],"A":[[1],["x"]],"l1_weight":1})", "A[1]");
  expect_error(R"({"family":"orthant","n":1,"m":1,"Q":[1],"b":[1],"A":[[1],[1]],"l1_weight":-1})", "l1_weight");
}

TEST(ConfigJson, RoundTripAndDefaults) {
  SolverConfig cfg;
  cfg.eps = 3e-6;
  cfg.max_outer = 77;
  cfg.warm_start = WarmStart::Constant;
  cfg.initial_mu = 0.125;
  cfg.divergence_bound = 1e4;
  cfg.schedule = ScheduleSpec::blockwise(1.0, 10, 0.25, 0.6, ExponentRule::Ramp, 100);
  const SolverConfig back = config_from_json(config_to_json(cfg));
  EXPECT_EQ(back.eps, 3e-6);
  EXPECT_EQ(back.max_outer, 77);
  EXPECT_EQ(back.warm_start, WarmStart::Constant);
  EXPECT_EQ(back.initial_mu, 0.125);
  EXPECT_EQ(back.divergence_bound, 1e4);
  EXPECT_EQ(back.schedule.variant, ScheduleSpec::Variant::Blockwise);
  EXPECT_EQ(back.schedule.rule, ExponentRule::Ramp);
  EXPECT_EQ(back.schedule.n0, 10);
  EXPECT_EQ(back.schedule.ramp_k, 100);

  const SolverConfig defaults = config_from_json("{}");
  EXPECT_EQ(defaults.tau1, 0.01);
  EXPECT_EQ(defaults.l_min, 1e-8);
  EXPECT_EQ(defaults.l_max, 1e8);
  EXPECT_EQ(defaults.schedule.variant, ScheduleSpec::Variant::RampedLog);
  EXPECT_EQ(defaults.schedule.rbar, 0.9);
  EXPECT_EQ(defaults.schedule.sbar, 3.0);
  EXPECT_EQ(defaults.schedule.n0, 300);
  EXPECT_EQ(defaults.schedule.ramp_k, 5000);

  EXPECT_THROW(config_from_json(R"({"eps": "small"})"), ParseError);
  EXPECT_THROW(config_from_json(R"({"warm_start": "newton"})"), ParseError);
  EXPECT_THROW(config_from_json(R"({"divergence_bound": 0})"), ParseError);
  EXPECT_THROW(config_from_json(R"({"schedule": {"rbar": 1.5}})"), ParseError);
}

TEST(TraceCsv, RoundTripIsExact) {
  const DCProblem prob = make_nsdp_problem(generate_nsdp(6, 3, 1));
  SolverConfig cfg;
  cfg.eps = 1e-6;
  const SolveReport rep = SmbaSolver(prob, cfg).run(Vector::Zero(6));
  ASSERT_GE(rep.trace.size(), 1u);
  const std::string csv = trace_to_csv(rep.trace);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, kTraceHeader);
  EXPECT_EQ(count_columns(line), 14);
  while (std::getline(lines, line)) EXPECT_EQ(count_columns(line), 14);
  const auto back = trace_from_csv(csv);
  ASSERT_EQ(back.size(), rep.trace.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    EXPECT_EQ(back[k].psi, rep.trace[k].psi);
    EXPECT_EQ(back[k].mu, rep.trace[k].mu);
    EXPECT_EQ(back[k].lambda, rep.trace[k].lambda);
    EXPECT_EQ(back[k].rho, rep.trace[k].rho);
    EXPECT_EQ(back[k].elapsed_s, rep.trace[k].elapsed_s);
    EXPECT_EQ(back[k].j_k, rep.trace[k].j_k);
  }
}

TEST(TraceCsv, ParseErrorsCarryLine) {
  const std::string bad = std::string(kTraceHeader) + "\n0,1,2,3,4,5,6,7,0,0,1,1,1,1\n1,1,2,x,4,5,6,7,0,0,1,1,1,1\n";
  try {
    trace_from_csv(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("sigma_B"), std::string::npos) << e.what();
  }
  EXPECT_THROW(trace_from_csv("k,psi\n"), ParseError);
}

TEST(FormatDouble, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 1e300, 0.0, 123456789.0, std::numeric_limits<double>::denorm_min()}) {
    const std::string s = format_double(v);
    EXPECT_EQ(std::strtod(s.c_str(), nullptr), v) << s;
  }
  EXPECT_EQ(format_double(0.1), "0.1");
}

TEST(Files, ErrorsNameThePath) {
  try {
    read_text_file("/nonexistent/dir/problem.json");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/problem.json"), std::string::npos);
  }
  EXPECT_THROW(write_text_file("/nonexistent/dir/out.csv", "x"), IoError);
}

TEST(ReportJson, ContainsCertificate) {
  const DCProblem prob = make_nsdp_problem(generate_nsdp(4, 2, 3));
  const SolveReport rep = SmbaSolver(prob, SolverConfig{}).run(Vector::Zero(4));
  const std::string text = report_to_json(rep);
  for (const char* key : {"\"status\"", "\"iterations\"", "\"objective\"", "\"eps_triple\"", "\"term_step\"",
                          "\"term_slack\"", "\"rho\"", "\"complementarity\""}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
}

}  // namespace
