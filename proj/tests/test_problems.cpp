#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gop/problems.hpp"
#include "gop/solver.hpp"
#include "gop/trace_io.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace gop;
using gop_test::make_vec;

TEST_CASE("builtin catalogue") {
  const auto problems = builtin_problems();
  std::vector<std::string> names;
  for (const auto& p : problems) names.push_back(p.name);
  for (const char* expected : {"branin", "sixhump_camel", "sphere1", "sphere2",
                               "sphere5", "expfit_inverse"}) {
    CHECK(std::count(names.begin(), names.end(), expected) == 1);
  }
  CHECK_THROWS_AS(find_problem("nope"), Error);
}

TEST_CASE("branin reference minimum confirmed by grid + polish oracle") {
  const Problem p = find_problem("branin");
  const double at_ref = p.objective.evaluator(make_vec({M_PI, 2.275}));
  CHECK(at_ref == doctest::Approx(0.397887).epsilon(1e-4));

  const auto coarse = gop_test::grid_minimum(p.objective.evaluator,
                                             p.objective.domain, 500);
  AuxSolver polish;
  polish.n_starts = 20;
  polish.seed = 3;
  const SolveResult refined =
      minimize(p.objective.evaluator, p.objective.domain, polish);
  const double oracle = std::min(coarse.second, refined.value);
  CHECK(oracle == doctest::Approx(0.397887).epsilon(1e-4));
  CHECK(oracle == doctest::Approx(p.reference_minimum->second).epsilon(1e-4));
}

TEST_CASE("six-hump camel reference minimum confirmed by oracle") {
  const Problem p = find_problem("sixhump_camel");
  CHECK(p.objective.evaluator(make_vec({0.0898, -0.7126})) ==
        doctest::Approx(-1.0316).epsilon(1e-3));
  CHECK(p.objective.evaluator(make_vec({-0.0898, 0.7126})) ==
        doctest::Approx(-1.0316).epsilon(1e-3));

  const auto coarse = gop_test::grid_minimum(p.objective.evaluator,
                                             p.objective.domain, 500);
  AuxSolver polish;
  polish.n_starts = 30;
  polish.seed = 5;
  const SolveResult refined =
      minimize(p.objective.evaluator, p.objective.domain, polish);
  const double oracle = std::min(coarse.second, refined.value);
  CHECK(oracle == doctest::Approx(-1.0316).epsilon(1e-3));
}

TEST_CASE("sphere at the origin") {
  for (const char* name : {"sphere1", "sphere2", "sphere5"}) {
    const Problem p = find_problem(name);
    CHECK(p.objective.evaluator(Vector::Zero(p.objective.domain.dim())) == 0.0);
  }
}

TEST_CASE("expfit inverse problem structure") {
  const Problem p = expfit_inverse(1.5, 3.0, 2.5, 0.5);
  const Vector truth = make_vec({1.5, 3.0, 2.5, 0.5});
  CHECK(p.objective.evaluator(truth) == 0.0);

  // permutation symmetry: swapping the two exponential terms
  const Vector swapped = make_vec({2.5, 0.5, 1.5, 3.0});
  CHECK(p.objective.evaluator(swapped) == doctest::Approx(0.0).epsilon(1e-12));

  // F == 0 at the origin, so the misfit is the data energy
  double energy = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double t = 0.1 * i;
    const double y = 1.5 * std::exp(-3.0 * t) + 2.5 * std::exp(-0.5 * t);
    energy += y * y;
  }
  CHECK(p.objective.evaluator(Vector::Zero(4)) ==
        doctest::Approx(energy).epsilon(1e-12));

  CHECK_THROWS_AS(expfit_inverse(1.0, 2.0, 1.0, 2.0), Error);
  CHECK_THROWS_AS(expfit_inverse(1.0, -1.0, 1.0, 2.0), Error);
}

TEST_CASE("expfit noise is seeded and bounded") {
  const Problem clean = expfit_inverse(1.5, 3.0, 2.5, 0.5);
  const Problem noisy_a = expfit_inverse(1.5, 3.0, 2.5, 0.5, 0.05, 9);
  const Problem noisy_b = expfit_inverse(1.5, 3.0, 2.5, 0.5, 0.05, 9);
  const Vector truth = make_vec({1.5, 3.0, 2.5, 0.5});
  const double misfit = noisy_a.objective.evaluator(truth);
  CHECK(misfit > 0.0);
  CHECK(misfit <= 21 * 0.05 * 0.05 + 1e-12);
  CHECK(noisy_b.objective.evaluator(truth) == misfit);
  CHECK(clean.objective.evaluator(truth) == 0.0);
}

TEST_CASE("trace CSV header and row count") {
  std::vector<TraceRecord> trace;
  for (int i = 0; i < 3; ++i) {
    TraceRecord r;
    r.iteration = i;
    r.point = make_vec({0.1 * i, 0.2 * i});
    r.value = 1.0 - 0.1 * i;
    r.best_value = 1.0 - 0.1 * i;
    if (i == 2) r.target = -0.5;
    r.acquisition_score = 0.25 * i;
    trace.push_back(r);
  }
  const std::string csv = format_trace_csv(trace);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "iter,x1,x2,f,best_f,target,acq_score,wall_ms");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find(",-0.5,") != std::string::npos);
  // absent target serializes as an empty field
  CHECK(csv.find("0,0,0,1,1,,0,0") != std::string::npos);
}

TEST_CASE("summary JSON keys and tie break") {
  std::vector<TraceRecord> trace(2);
  trace[0].iteration = 0;
  trace[0].point = make_vec({0.25});
  trace[0].value = 1.0;
  trace[0].best_value = 1.0;
  trace[1].iteration = 1;
  trace[1].point = make_vec({0.75});
  trace[1].value = 1.0;
  trace[1].best_value = 1.0;
  const RunSummary s = summarize("rbf", trace, 12);
  CHECK(s.best_point[0] == 0.25);  // tie kept at the earlier iterate
  const std::string json = summary_to_json(s);
  for (const char* key :
       {"\"method\"", "\"best_value\"", "\"best_point\"", "\"evals\"",
        "\"wall_ms\""}) {
    CHECK(json.find(key) != std::string::npos);
  }
}
