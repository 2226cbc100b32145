// Command-line front end: gen | run | check | sweep.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nadense/commands.hpp"
#include "nadense/errors.hpp"

namespace {

void add_mode_option(CLI::App& app, std::string& mode) {
  app.add_option("--mode", mode, "exact | faithful")->check(CLI::IsMember({"exact", "faithful"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nadense: certified norm-attaining approximation of operators C(K) -> C(S)"};
  app.require_subcommand(1);

  nadense::GenOptions gen;
  std::string gen_out;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Write a seeded random instance file");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--k", gen.k_size, "Size of K")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--s", gen.s_size, "Size of S")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--scale", gen.norm_scale, "Field norm after scaling")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--out", gen_out, "Output path (stdout when omitted)");

  nadense::RunOptions run;
  std::string run_mode = "exact";
  std::string run_trace;
  std::string run_out;
  CLI::App* run_cmd = app.add_subcommand("run", "Run the certified iteration on an instance");
  run_cmd->add_option("instance", run.instance, "Instance JSON file")->required();
  run_cmd->add_option("--rho", run.config.rho, "Target distance")->check(CLI::PositiveNumber);
  run_cmd->add_option("--r", run.config.r, "Geometric ratio in (1/2, 1)");
  add_mode_option(*run_cmd, run_mode);
  std::uint64_t run_arcs = 0;
  run_cmd->add_option("--arcs", run_arcs, "Circle partition size for the faithful lift");
  run_cmd->add_option("--defect-tol", run.config.defect_tol, "Terminal eps level");
  run_cmd->add_option("--max-iter", run.config.max_iter, "Maximum reduction steps");
  run_cmd->add_option("--trace", run_trace, "Write the per-step trace CSV here");
  run_cmd->add_option("--out", run_out, "Write the certificate summary here");

  nadense::CheckOptions check;
  std::string check_mode = "exact";
  CLI::App* check_cmd = app.add_subcommand("check", "Run one lemma's certificate suite on an instance");
  check_cmd->add_option("instance", check.instance, "Instance JSON file")->required();
  check_cmd->add_option("--lemma", check.lemma, "1, 2 or 3")->required();
  check_cmd->add_option("--delta", check.delta, "Lift tolerance (lemma 2)");
  check_cmd->add_option("--eps", check.eps, "Reduction eps (lemma 3)");
  check_cmd->add_option("--r", check.r, "Reduction ratio (lemma 3)");
  check_cmd->add_option("--grid", check.grid, "Phase grid of the dual oracle (lemma 1)");
  check_cmd->add_option("--seed", check.seed, "Seed for the lemma 1 weights");
  std::uint64_t check_arcs = 0;
  check_cmd->add_option("--arcs", check_arcs, "Circle partition size (lemma 2, faithful)");
  add_mode_option(*check_cmd, check_mode);

  nadense::SweepOptions sweep;
  sweep.rs = {0.81};
  std::vector<std::string> sweep_sizes;
  std::string sweep_mode = "exact";
  std::string sweep_out;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run the pipeline over a parameter grid");
  sweep_cmd->add_option("--seeds", sweep.seeds, "Seeds")->delimiter(',');
  sweep_cmd->add_option("--sizes", sweep_sizes, "Sizes as KxS")->delimiter(',');
  sweep_cmd->add_option("--rho", sweep.rhos, "Target distances")->delimiter(',');
  sweep_cmd->add_option("--r", sweep.rs, "Ratios (default 0.81)")->delimiter(',');
  sweep_cmd->add_option("--scale", sweep.norm_scale, "Field norm of generated instances");
  sweep_cmd->add_option("--defect-tol", sweep.defect_tol, "Terminal eps level");
  sweep_cmd->add_option("--max-iter", sweep.max_iter, "Maximum reduction steps");
  sweep_cmd->add_option("--out", sweep_out, "Aggregate CSV path (stdout when omitted)");
  add_mode_option(*sweep_cmd, sweep_mode);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? nadense::kExitPass : nadense::kExitInput;
  }

  try {
    if (*gen_cmd) {
      if (!gen_out.empty()) gen.out = gen_out;
      return nadense::cmd_gen(gen, std::cout, std::cerr);
    }
    if (*run_cmd) {
      run.config.mode = nadense::parse_lift_mode(run_mode);
      if (run_arcs > 0) run.config.lift_arcs = run_arcs;
      if (!run_trace.empty()) run.trace = run_trace;
      if (!run_out.empty()) run.out = run_out;
      return nadense::cmd_run(run, std::cout, std::cerr);
    }
    if (*check_cmd) {
      check.mode = nadense::parse_lift_mode(check_mode);
      if (check_arcs > 0) check.arcs = check_arcs;
      return nadense::cmd_check(check, std::cout, std::cerr);
    }
    if (*sweep_cmd) {
      sweep.mode = nadense::parse_lift_mode(sweep_mode);
      for (const std::string& size : sweep_sizes) sweep.sizes.push_back(nadense::parse_size(size));
      if (!sweep_out.empty()) sweep.out = sweep_out;
      return nadense::cmd_sweep(sweep, std::cout, std::cerr);
    }
  } catch (const nadense::InputError& e) {
    std::cerr << e.what() << "\n";
    return nadense::kExitInput;
  }
  return nadense::kExitInput;
}
