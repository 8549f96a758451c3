// gop: run and compare response-surface global optimizers on benchmark
// problems. Talks to the gop shared library through its C API only.

#include "gop/gop.h"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct CliOptions {
  std::string problem;
  std::string method = "rbf";
  std::string kernel = "cubic";
  double gamma = 1.0;
  int budget = 0;
  std::uint64_t seed = 0;
  int cycle_length = 5;
  double noise = 0.0;
  std::string out;
  std::string summary_out;
  std::string config_path;
};

// JSON config file mirroring the run configuration; explicit flags win.
void apply_config_file(const CliOptions& flags, CLI::App* cmd,
                       CliOptions* opts) {
  if (flags.config_path.empty()) return;
  std::ifstream in(flags.config_path);
  if (!in) {
    throw CLI::ValidationError("--config", "cannot read " + flags.config_path);
  }
  nlohmann::json j = nlohmann::json::parse(in);
  auto take = [&](const char* flag, const char* key, auto* field) {
    if (j.contains(key) && cmd->count(flag) == 0) {
      *field = j.at(key).get<std::decay_t<decltype(*field)>>();
    }
  };
  take("--problem", "problem", &opts->problem);
  take("--method", "method", &opts->method);
  take("--kernel", "kernel", &opts->kernel);
  take("--gamma", "gamma", &opts->gamma);
  take("--budget", "budget", &opts->budget);
  take("--seed", "seed", &opts->seed);
  take("--cycle-length", "cycle_length", &opts->cycle_length);
  take("--noise", "noise", &opts->noise);
  take("--out", "output_path", &opts->out);
}

gop_run_config to_config(const CliOptions& o) {
  gop_run_config cfg{};
  cfg.problem = o.problem.c_str();
  cfg.method = o.method.c_str();
  cfg.kernel = o.kernel.c_str();
  cfg.gamma = o.gamma;
  cfg.budget = o.budget;
  cfg.seed = o.seed;
  cfg.cycle_length = o.cycle_length;
  cfg.noise = o.noise;
  return cfg;
}

nlohmann::ordered_json summary_json(const std::string& method, gop_run* run) {
  double best_value = 0.0;
  double best_point[GOP_MAX_DIM];
  int dim = 0, evals = 0;
  gop_run_best(run, &best_value, best_point, &dim, &evals);
  nlohmann::ordered_json j;
  j["method"] = method;
  j["best_value"] = best_value;
  j["best_point"] = std::vector<double>(best_point, best_point + dim);
  j["evals"] = evals;
  j["wall_ms"] = gop_run_wall_ms(run);
  return j;
}

// Returns the process exit code: 0 ok, 2 config error, 3 early no-new-point.
int execute_one(const CliOptions& o, const std::string& method,
                const std::string& trace_path, nlohmann::ordered_json* summary) {
  CliOptions local = o;
  local.method = method;
  const gop_run_config cfg = to_config(local);
  gop_run* run = nullptr;
  const gop_status st = gop_run_execute(&cfg, &run);
  if (st != GOP_OK) {
    std::cerr << "gop: run failed: " << gop_last_error_message() << "\n";
    return st == GOP_ERR_INVALID_ARGUMENT ? 2 : 1;
  }
  if (!trace_path.empty() &&
      gop_run_write_csv(run, trace_path.c_str()) != GOP_OK) {
    std::cerr << "gop: cannot write trace: " << gop_last_error_message()
              << "\n";
    gop_run_free(run);
    return 1;
  }
  *summary = summary_json(method, run);
  const bool stopped_early = gop_run_result(run) == GOP_RUN_NO_NEW_POINT;
  gop_run_free(run);
  return stopped_early ? 3 : 0;
}

void print_summary_line(const nlohmann::ordered_json& s) {
  std::printf("method=%s best=%.10g evals=%d wall_ms=%lld\n",
              s.at("method").get<std::string>().c_str(),
              s.at("best_value").get<double>(), s.at("evals").get<int>(),
              static_cast<long long>(s.at("wall_ms").get<std::int64_t>()));
}

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  out << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"response-surface global optimization benchmark harness"};
  app.require_subcommand(1);

  CliOptions o;
  auto add_common = [&o](CLI::App* cmd, bool with_method) {
    cmd->add_option("--problem", o.problem, "builtin problem name");
    if (with_method) {
      cmd->add_option("--method", o.method, "rbf | kriging_pi | kriging_ei");
    }
    cmd->add_option("--kernel", o.kernel, "rbf kernel");
    cmd->add_option("--gamma", o.gamma, "gaussian/multiquadric shape");
    cmd->add_option("--budget", o.budget, "total objective evaluations");
    cmd->add_option("--seed", o.seed, "run seed");
    cmd->add_option("--cycle-length", o.cycle_length, "target cycle length");
    cmd->add_option("--noise", o.noise, "expfit data noise amplitude");
    cmd->add_option("--config", o.config_path, "JSON config file");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run one method");
  add_common(run_cmd, true);
  run_cmd->add_option("--out", o.out, "trace CSV path");
  run_cmd->add_option("--summary-out", o.summary_out, "summary JSON path");

  CLI::App* cmp_cmd =
      app.add_subcommand("compare", "run all three methods with a shared seed");
  add_common(cmp_cmd, false);
  cmp_cmd->add_option("--out", o.out,
                      "output prefix (<prefix>_<method>.csv + summary)");

  CLI::App* problems_cmd =
      app.add_subcommand("problems", "list builtin problems");

  CLI11_PARSE(app, argc, argv);

  try {
    if (problems_cmd->parsed()) {
      for (size_t i = 0; i < gop_problem_count(); ++i) {
        const char* name = gop_problem_name(i);
        std::printf("%s (d=%d)\n", name, gop_problem_dim(name));
      }
      return 0;
    }

    CLI::App* active = run_cmd->parsed() ? run_cmd : cmp_cmd;
    apply_config_file(o, active, &o);
    if (o.problem.empty()) {
      std::cerr << "gop: --problem is required\n";
      return 2;
    }
    if (gop_problem_dim(o.problem.c_str()) == 0) {
      std::cerr << "gop: unknown problem '" << o.problem << "'\n";
      return 2;
    }

    if (run_cmd->parsed()) {
      nlohmann::ordered_json summary;
      const int code = execute_one(o, o.method, o.out, &summary);
      if (code != 0 && code != 3) return code;
      print_summary_line(summary);
      if (!o.summary_out.empty()) write_json(o.summary_out, summary);
      return code;
    }

    // compare: shared seed and budget across the three methods
    const std::string prefix = o.out.empty() ? "compare" : o.out;
    nlohmann::ordered_json all = nlohmann::ordered_json::array();
    int exit_code = 0;
    for (const std::string method : {"rbf", "kriging_pi", "kriging_ei"}) {
      nlohmann::ordered_json summary;
      const int code =
          execute_one(o, method, prefix + "_" + method + ".csv", &summary);
      if (code != 0 && code != 3) return code;
      if (code == 3) exit_code = 3;
      print_summary_line(summary);
      all.push_back(summary);
    }
    write_json(prefix + "_summary.json", all);
    return exit_code;
  } catch (const std::exception& e) {
    std::cerr << "gop: " << e.what() << "\n";
    return 2;
  }
}
