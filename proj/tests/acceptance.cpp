// Acceptance suite: one pass/fail line per criterion. Expects the CLI binary
// path as argv[1] (needed for the determinism criterion).

#include "gop/acquisition.hpp"
#include "gop/kriging.hpp"
#include "gop/problems.hpp"
#include "gop/rbf.hpp"
#include "gop/solver.hpp"
#include "test_util.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace gop;
using gop_test::all_kernels;
using gop_test::make_vec;
using gop_test::random_unit_set;

namespace {

int g_failures = 0;

void report(int number, const std::string& name,
            const std::function<bool()>& check) {
  bool ok = false;
  std::string detail;
  try {
    ok = check();
  } catch (const std::exception& e) {
    detail = std::string(" (exception: ") + e.what() + ")";
  }
  std::printf("%s  %2d. %s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

bool interpolation_exactness() {
  for (const KernelKind& kernel : all_kernels()) {
    for (int rep = 0; rep < 25; ++rep) {
      const SampleSet set = random_unit_set(20, 2, 10'000 + rep);
      const RbfModel model = fit_rbf(set, kernel);
      for (int i = 0; i < set.size(); ++i) {
        const double f = set.values()[i];
        if (std::abs(model.evaluate(set.point(i)) - f) >
            1e-8 * (1.0 + std::abs(f))) {
          return false;
        }
      }
    }
  }
  return true;
}

bool bumpiness_identity() {
  std::mt19937_64 rng(424242);
  int done = 0;
  while (done < 50) {
    const int d = 1 + static_cast<int>(rng() % 2);
    const int n = 4 + static_cast<int>(rng() % 12);
    const SampleSet set = random_unit_set(n, d, rng());
    const KernelKind kernel = all_kernels(1.5, 1.5)[done % 5];
    const Vector y = gop_test::random_point_in(set.domain(), rng);
    if (set.min_distance_to(y) <= 1e-2) continue;
    const double f_star = set.min_value() - (0.1 + (rng() % 200) / 100.0);
    // The identity compares quantities computed through the augmented system;
    // below ~1e-9 reciprocal conditioning a 1e-6 relative match is not
    // representable in doubles, so such draws are excluded, not asserted.
    if (gop_test::augmented_rcond(set, kernel) < 1e-9) continue;
    try {
      const RbfModel model = fit_rbf(set, kernel);
      const double g = gutmann_utility(set, model, y, f_star);
      const double increase =
          bumpiness(fit_rbf(set.add(y, f_star), kernel)) - bumpiness(model);
      const double scale = std::max({std::abs(g), std::abs(increase), 1e-12});
      if (std::abs(increase - g) / scale > 1e-6) return false;
    } catch (const Error& e) {
      // Pivot-rejected instance: excluded by the fit's precondition.
      if (e.code() != ErrorCode::singular_system) return false;
      continue;
    }
    ++done;
  }
  return true;
}

bool mu_sign_property() {
  std::mt19937_64 rng(77);
  for (const KernelKind& kernel : all_kernels()) {
    const double sign = kernel.tail_degree() == 0 ? -1.0 : 1.0;
    int done = 0;
    while (done < 100) {
      const int d = 1 + static_cast<int>(rng() % 2);
      const SampleSet set =
          random_unit_set(3 + static_cast<int>(rng() % 10), d, rng());
      const Vector y = gop_test::random_point_in(set.domain(), rng);
      if (set.min_distance_to(y) <= 1e-3) continue;
      try {
        if (!(sign * mu_coefficient(set, kernel, y) > 0.0)) return false;
      } catch (const Error& e) {
        // Pivot-rejected instance: excluded by the evaluator's precondition.
        if (e.code() != ErrorCode::singular_system) return false;
        continue;
      }
      ++done;
    }
  }
  return true;
}

bool kriging_closed_form() {
  SampleSet set{BoxDomain::unit_cube(1)};
  set = set.add(make_vec({0.0}), 0.0).add(make_vec({1.0}), 1.0);
  KrigingParams params{make_vec({1.0}), make_vec({1.0})};
  const KrigingModel two(params, set);
  const double rho = std::exp(-1.0);
  if (std::abs(two.mu_hat() - 0.5) > 1e-6) return false;
  if (std::abs(two.sigma2_hat() - 0.5 / (1.0 - rho) / 2.0) > 1e-6) return false;
  if (std::abs(two.sigma2_hat() - 0.3954944) > 1e-6) return false;

  for (double theta : {0.5, 2.0, 8.0}) {
    for (double power : {1.0, 1.5, 2.0}) {
      const SampleSet data =
          random_unit_set(10, 2, 555 + static_cast<int>(theta * 10 + power));
      KrigingParams p{Vector::Constant(2, theta), Vector::Constant(2, power)};
      const KrigingModel model(p, data);
      for (int i = 0; i < data.size(); ++i) {
        const double f = data.values()[i];
        if (std::abs(model.predict_mean(data.point(i)) - f) >
            1e-6 * (1.0 + std::abs(f))) {
          return false;
        }
        if (model.predict_variance(data.point(i)) > 1e-6 * model.sigma2_hat()) {
          return false;
        }
      }
    }
  }
  return true;
}

bool pi_ei_monte_carlo() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    const double yhat = 2.0 * unif(rng) - 1.0;
    const double s = 0.1 + unif(rng);
    const double target = yhat + 2.0 * (unif(rng) - 0.5) * s;
    const double f_min = yhat + 2.0 * (unif(rng) - 0.5) * s;

    double hits = 0.0;
    for (int i = 0; i < 100'000; ++i) {
      if (yhat + s * normal(rng) <= target) hits += 1.0;
    }
    if (std::abs(pi_value(yhat, s, target) - hits / 100'000.0) > 1e-2) {
      return false;
    }

    double gain = 0.0;
    for (int i = 0; i < 1'000'000; ++i) {
      gain += std::max(f_min - (yhat + s * normal(rng)), 0.0);
    }
    if (std::abs(ei_value(yhat, s, f_min) - gain / 1'000'000.0) > 1e-3) {
      return false;
    }
  }
  return true;
}

bool rbf_kriging_equivalence() {
  const double gamma = 4.0;
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    const SampleSet set = random_unit_set(12, 2, 880 + rep);
    KrigingParams params{Vector::Constant(2, gamma), Vector::Constant(2, 2.0)};
    const KrigingModel kriging(params, set);
    const KernelKind kernel =
        KernelKind(KernelType::gaussian, gamma).with_tail_degree(0);
    const RbfModel rbf = fit_rbf(set, kernel);
    for (int i = 0; i < 100; ++i) {
      const Vector x = gop_test::random_point_in(set.domain(), rng);
      const double a = kriging.predict_mean(x);
      const double b = rbf.evaluate(x);
      if (std::abs(a - b) > 1e-8 * (1.0 + std::abs(b))) return false;
    }
  }
  return true;
}

bool mle_recovery() {
  const double theta_star = 2.0;
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Matrix pts = latin_hypercube(40, BoxDomain::unit_cube(1), seed);
    KrigingParams truth{make_vec({theta_star}), make_vec({2.0})};
    Matrix r = Matrix::Identity(40, 40);
    for (int i = 0; i < 40; ++i) {
      for (int j = 0; j < 40; ++j) {
        if (i != j) {
          r(i, j) = correlation(truth, pts.row(i).transpose(),
                                pts.row(j).transpose());
        }
      }
    }
    r.diagonal().array() += 1e-10;
    const Matrix chol_l = r.llt().matrixL();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector z(40);
    for (int i = 0; i < 40; ++i) z[i] = normal(rng);
    const Vector y = chol_l * z;

    SampleSet set{BoxDomain::unit_cube(1)};
    for (int i = 0; i < 40; ++i) set = set.add(pts.row(i).transpose(), y[i]);
    const KrigingModel model =
        fit_kriging(set, MleBounds{}, default_mle_solver(1, seed));
    const double theta = model.params().theta[0];
    if (theta >= 1.0 && theta <= 4.0) ++hits;
  }
  return hits >= 4;
}

bool branin_end_to_end() {
  const Problem branin = find_problem("branin");
  // confirm the reference value with the grid oracle before using it
  const auto oracle = gop_test::grid_minimum(branin.objective.evaluator,
                                             branin.objective.domain, 500);
  AuxSolver polish;
  polish.n_starts = 20;
  polish.seed = 1;
  const double refined =
      minimize(branin.objective.evaluator, branin.objective.domain, polish)
          .value;
  const double reference = std::min(oracle.second, refined);
  if (std::abs(reference - 0.397887) > 1e-3) return false;

  const double threshold = reference + 0.05;
  for (Method method : {Method::rbf, Method::kriging_ei}) {
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      RunConfig config;
      config.method = method;
      config.kernel = KernelKind(KernelType::cubic);
      config.stop.max_evaluations = 60;
      config.seed = seed;
      const RunResult result = run_optimization(branin.objective, config);
      if (result.trace.back().best_value <= threshold) ++hits;
    }
    if (hits < 2) return false;
  }
  return true;
}

bool expfit_sanity() {
  const Problem problem = expfit_inverse(1.5, 3.0, 2.5, 0.5);
  const int design_size = 2 * (4 + 1);
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    RunConfig config;
    config.method = Method::rbf;
    config.kernel = KernelKind(KernelType::gaussian, 1.0);
    config.stop.max_evaluations = 120;
    config.seed = seed;
    const RunResult result = run_optimization(problem.objective, config);
    double design_best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < design_size; ++i) {
      design_best = std::min(design_best, result.trace[i].value);
    }
    if (result.trace.back().best_value <= 0.1 * design_best) ++hits;
  }
  return hits >= 2;
}

bool coverage_proxy() {
  const Problem sphere = find_problem("sphere1");
  RunConfig config;
  config.method = Method::kriging_pi;
  config.stop.max_evaluations = 40;
  config.seed = 2;
  const RunResult result = run_optimization(sphere.objective, config);
  if (result.trace.size() != 40) return false;
  auto fill_at = [&](int count) {
    SampleSet set{sphere.objective.domain};
    for (int i = 0; i < count; ++i) {
      set = set.add(result.trace[i].point, result.trace[i].value);
    }
    return fill_distance(set, sphere.objective.domain, 2001);
  };
  return fill_at(40) <= 0.6 * fill_at(10);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool cli_determinism(const std::string& cli) {
  if (cli.empty()) return false;
  const std::vector<std::string> invocations = {
      " run --problem sphere2 --method rbf --kernel cubic --budget 16 --seed 1",
      " run --problem sphere1 --method kriging_pi --budget 14 --seed 4",
  };
  int idx = 0;
  for (const std::string& args : invocations) {
    std::string contents[2];
    for (int i = 0; i < 2; ++i) {
      const std::string out =
          "acc_det_" + std::to_string(idx) + "_" + std::to_string(i) + ".csv";
      const std::string cmd =
          "\"" + cli + "\"" + args + " --out " + out + " > /dev/null";
      if (std::system(cmd.c_str()) != 0) return false;
      contents[i] = slurp(out);
      std::remove(out.c_str());
      if (contents[i].empty()) return false;
    }
    if (contents[0] != contents[1]) return false;
    ++idx;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  report(1, "interpolation exactness for all five kernels",
         interpolation_exactness);
  report(2, "bumpiness increase equals the Gutmann utility",
         bumpiness_identity);
  report(3, "mu sign property per kernel", mu_sign_property);
  report(4, "kriging two-point closed form and node behaviour",
         kriging_closed_form);
  report(5, "PI/EI match Monte-Carlo oracles", pi_ei_monte_carlo);
  report(6, "kriging predictor equals gaussian RBF with constant tail",
         rbf_kriging_equivalence);
  report(7, "MLE recovers the synthetic field length scale", mle_recovery);
  report(8, "branin desk-scale optimization reaches the optimum",
         branin_end_to_end);
  report(9, "expfit inverse run cuts the design residual tenfold",
         expfit_sanity);
  report(10, "PI cycle coverage proxy shrinks the fill distance",
         coverage_proxy);
  report(11, "CLI reruns produce byte-identical traces",
         [&cli] { return cli_determinism(cli); });

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
