// Acceptance suite: one pass/fail line per criterion. argv[1] is the nadense CLI binary,
// used by the determinism criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nadense/defect_reduction.hpp"
#include "nadense/instance_io.hpp"
#include "nadense/iteration.hpp"
#include "nadense/measure.hpp"
#include "nadense/phase_lift.hpp"
#include "support.hpp"

using namespace nadense;
namespace oracle = nadense::testing;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kIdentityRel = 1e-12;  // AC1
constexpr std::size_t kGrid = 720;      // AC1
constexpr double kFloor = 1e-12;        // AC2, AC6 strict-inequality floor; AC2 non-strict tolerance
constexpr double kOracleRel = 1e-12;    // AC5
constexpr double kEpsCap = 1e-8;        // AC3
constexpr double kBudgetMargin = 0.9;   // AC4
constexpr double kDelta = 0.08;         // AC6

struct Outcome {
  bool passed;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3g", value);
  return buffer;
}

double real_mass(const ComplexMeasure& nu) {
  double sum = 0.0;
  for (const Complex& z : nu.atoms()) sum += z.real();
  return sum;
}

double row_tv(const ComplexMeasure& nu) { return oracle::oracle_tv({nu.atoms().begin(), nu.atoms().end()}); }

// max_s |sum_t f(t) mu(s)[t]|, evaluated directly.
double image_sup(const MeasureField& mu, std::span<const Complex> f) {
  double best = 0.0;
  for (const ComplexMeasure& row : mu.rows()) {
    Complex value{};
    for (std::size_t t = 0; t < row.k_size(); ++t) value += f[t] * row[t];
    best = std::max(best, std::abs(value));
  }
  return best;
}

Outcome ac1_identity() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1001);
  const double gap_factor = 1.0 - std::cos(kPi / static_cast<double>(kGrid));
  std::size_t violations = 0;
  double worst_rel = 0.0;
  double worst_gap_ratio = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t k = oracle::pick(rng, 1, 8);
    const std::vector<Complex> atoms = oracle::random_atoms(rng, k);
    const std::vector<double> f = oracle::random_weights(rng, k, 1.0);
    const ComplexMeasure nu(atoms);
    const WeightFunction weight(f);

    const double variation = weighted_variation(weight, nu);
    double closed_form = 0.0;
    for (std::size_t t = 0; t < k; ++t) closed_form += f[t] * std::abs(atoms[t]);
    const double rel = std::abs(variation - closed_form) / std::max(1.0, std::abs(closed_form));
    const double attained_rel = std::abs(dual_attainment(weight, nu) - closed_form) / std::max(1.0, closed_form);
    worst_rel = std::max({worst_rel, rel, attained_rel});

    const double gap = variation - dual_sup_bruteforce(weight, nu, kGrid);
    const double allowed = oracle::oracle_tv(atoms) * gap_factor;
    if (allowed > 0.0) worst_gap_ratio = std::max(worst_gap_ratio, gap / allowed);
    if (rel > kIdentityRel || attained_rel > kIdentityRel || gap < -kFloor || gap > allowed + kFloor) ++violations;
  }
  const double elapsed = seconds_since(start);
  return {violations == 0 && elapsed < 5.0,
          "500 cases, " + std::to_string(violations) + " violations, max rel err " + fmt(worst_rel) +
              ", max gap / bound " + fmt(worst_gap_ratio) + ", " + fmt(elapsed) + " s (limit 5 s)"};
}

// Random field with a nonempty U and an eps satisfying Re mu(s)(K) > M - eps on U. Odd trials are
// built from nearly real rows below a separate peak row so that the Dirac bump branch is hit.
struct ReductionInstance {
  MeasureField mu;
  IndexSet U;
  double eps;
  double r;
};

ReductionInstance random_reduction_instance(std::mt19937_64& rng, int trial) {
  const double r = 0.55 + 0.4 * oracle::unit(rng);
  const double M = 0.05 + 1.95 * oracle::unit(rng);
  if (trial % 2 == 1) {
    const std::size_t k = oracle::pick(rng, 1, 8);
    const std::size_t s = oracle::pick(rng, 2, 8);
    std::vector<std::vector<Complex>> grid(s, std::vector<Complex>(k));
    for (auto& z : grid[0]) z = std::polar(oracle::unit(rng) + 0.1, 2.0 * kPi * oracle::unit(rng));
    const double lightness = 0.01 + 0.2 * oracle::unit(rng);
    for (std::size_t row = 1; row < s; ++row)
      for (auto& z : grid[row]) z = std::polar(oracle::unit(rng) + 0.1, 0.02 * (oracle::unit(rng) - 0.5));
    double peak = oracle::oracle_tv(grid[0]);
    for (auto& z : grid[0]) z *= M / peak;
    for (std::size_t row = 1; row < s; ++row) {
      const double tv = oracle::oracle_tv(grid[row]);
      const double target = M * (1.0 - lightness * (0.5 + 0.5 * oracle::unit(rng)));
      for (auto& z : grid[row]) z *= target / tv;
    }
    const MeasureField mu = MeasureField::from_grid(grid);
    IndexSet U;
    double worst = 0.0;
    double heaviest = 0.0;
    for (std::size_t row = 1; row < s; ++row) {
      if (U.empty() || oracle::unit(rng) < 0.6) {
        U.push_back(row);
        worst = std::max(worst, M - real_mass(mu.row(row)));
        heaviest = std::max(heaviest, row_tv(mu.row(row)));
      }
    }
    // Case 1 needs worst < eps <= (M - heaviest) / a.
    const double hi = (M - heaviest) / (1.0 - r);
    const double eps =
        hi > worst * 1.001 ? worst + (hi - worst) * (0.05 + 0.9 * oracle::unit(rng)) : worst * 1.5 + 1e-3;
    return {mu, U, eps, r};
  }
  const MeasureField mu = oracle::random_field(rng, 8, M);
  IndexSet U;
  double worst = 0.0;
  for (std::size_t row = 0; row < mu.s_size(); ++row) {
    const bool peak = row_tv(mu.row(row)) == oracle::oracle_field_norm(mu);
    if ((peak && U.empty()) || oracle::unit(rng) < 0.4) {
      U.push_back(row);
      worst = std::max(worst, M - real_mass(mu.row(row)));
    }
  }
  if (U.empty()) {
    U.push_back(0);
    worst = M - real_mass(mu.row(0));
  }
  return {mu, U, (worst + 1e-3) * (1.0 + oracle::unit(rng)), r};
}

Outcome ac2_reduction() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2002);
  std::size_t violations = 0;
  std::size_t bumps = 0;
  std::size_t blends = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::string first_violation;
  for (int trial = 0; trial < 500; ++trial) {
    const ReductionInstance inst = random_reduction_instance(rng, trial);
    const double M = oracle::oracle_field_norm(inst.mu);
    const LiftMode mode = trial % 4 < 2 ? LiftMode::exact : LiftMode::faithful;
    try {
      const ReductionOutcome out = reduce(inst.mu, inst.U, ReductionParams::with_defaults(inst.r, inst.eps, mode));
      bumps += out.case_tag == ReductionCase::dirac_bump;
      blends += out.case_tag == ReductionCase::phase_blend;
      const double new_norm = oracle::oracle_field_norm(out.field);
      const double distance = oracle::oracle_field_distance(out.field, inst.mu);
      const double bound = std::sqrt(2.0 * M * inst.eps) + 2.0 * inst.eps;
      const bool norm_ok = new_norm <= M + kFloor;
      const bool distance_ok = distance <= bound + kFloor;
      bool defect_ok = !out.surviving.empty();
      for (std::size_t s : out.surviving) {
        const double slack = real_mass(out.field.row(s)) - (new_norm - inst.r * inst.eps);
        worst_slack = std::min(worst_slack, slack);
        if (!(slack >= kFloor) || std::find(inst.U.begin(), inst.U.end(), s) == inst.U.end()) defect_ok = false;
      }
      if (!(norm_ok && distance_ok && defect_ok)) {
        ++violations;
        if (first_violation.empty()) first_violation = " (first at trial " + std::to_string(trial) + ")";
      }
    } catch (const std::exception& e) {
      ++violations;
      if (first_violation.empty()) first_violation = " (trial " + std::to_string(trial) + ": " + e.what() + ")";
    }
  }
  const double elapsed = seconds_since(start);
  return {violations == 0 && bumps > 0 && blends > 0 && elapsed < 10.0,
          "500 instances (" + std::to_string(bumps) + " bump, " + std::to_string(blends) + " blend), " +
              std::to_string(violations) + " violations" + first_violation + ", min U' slack " + fmt(worst_slack) +
              ", " + fmt(elapsed) + " s (limit 10 s)"};
}

struct PipelineRun {
  RunResult result;
  IterationConfig config;
  MeasureField mu;
};

struct PipelineStats {
  std::vector<PipelineRun> runs;
  std::size_t errors = 0;
  std::string first_error;
  double elapsed = 0.0;
};

// 200 seeded instances x rho in {0.05, 0.1, 0.5} x three run settings: exact, faithful, and
// faithful with a lower terminal level so that the reduction steps actually run.
PipelineStats run_pipeline() {
  PipelineStats stats;
  const auto start = Clock::now();
  std::mt19937_64 rng(3003);
  struct Setting {
    LiftMode mode;
    double defect_tol;
  };
  const Setting settings[] = {{LiftMode::exact, 1e-8}, {LiftMode::faithful, 1e-8}, {LiftMode::faithful, 1e-11}};
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t seed = rng();
    const std::size_t k = oracle::pick(rng, 1, 8);
    const std::size_t s = oracle::pick(rng, 1, 8);
    const double M = trial < 5 ? 0.0 : 2.0 * (1.0 - oracle::unit(rng));
    const MeasureField mu = gen(seed, k, s, M).mu;
    for (const double rho : {0.05, 0.1, 0.5}) {
      for (const Setting& setting : settings) {
        IterationConfig config;
        config.rho = rho;
        config.mode = setting.mode;
        config.defect_tol = setting.defect_tol;
        try {
          stats.runs.push_back({run(mu, config), config, mu});
        } catch (const std::exception& e) {
          ++stats.errors;
          if (stats.first_error.empty()) stats.first_error = e.what();
        }
      }
    }
  }
  stats.elapsed = seconds_since(start);
  return stats;
}

Outcome ac3_pipeline(const PipelineStats& stats) {
  std::size_t violations = stats.errors;
  std::size_t steps = 0;
  double worst_ratio = 0.0;
  for (const PipelineRun& p : stats.runs) {
    const NACertificate& c = p.result.certificate;
    steps += c.steps;
    const double distance = oracle::oracle_field_distance(c.final_field, p.mu);
    const double defect = oracle::oracle_field_norm(c.final_field) - image_sup(c.final_field, c.witness.values());
    bool ok = c.status == RunStatus::pass && p.result.trace.complete && distance < p.config.rho &&
              defect < c.eps_final && c.eps_final <= kEpsCap;
    const IterationTrace& trace = p.result.trace;
    for (const TraceRow& row : trace.rows) {
      const double level = trace.eps0 * std::pow(trace.r, static_cast<double>(row.n));
      if (!(row.defect < level * (1.0 + 1e-9))) ok = false;
      worst_ratio = std::max(worst_ratio, row.defect / level);
    }
    violations += ok ? 0 : 1;
  }
  const std::size_t total = stats.runs.size() + stats.errors;
  return {violations == 0 && total == 1800 && stats.elapsed < 60.0,
          std::to_string(total) + " runs (200 instances x 3 rho x 3 settings), " + std::to_string(steps) +
              " reduction steps, " + std::to_string(violations) + " violations" +
              (stats.first_error.empty() ? "" : " (" + stats.first_error + ")") + ", max defect / r^n eps0 " +
              fmt(worst_ratio) + ", " + fmt(stats.elapsed) + " s (limit 60 s)"};
}

Outcome ac4_budget(const PipelineStats& stats) {
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst_use = 0.0;
  for (const PipelineRun& p : stats.runs) {
    if (p.result.certificate.status != RunStatus::pass) continue;
    ++checked;
    const IterationTrace& trace = p.result.trace;
    double sum = 0.0;
    for (const TraceRow& row : trace.rows) sum += row.perturbation;
    const double budget = std::sqrt(2.0 * trace.nu0_norm * trace.eps0) / (1.0 - std::sqrt(trace.r)) +
                          2.0 * trace.eps0 / (1.0 - trace.r);
    worst_use = std::max(worst_use, sum / (kBudgetMargin * p.config.rho));
    const bool ok = sum <= budget && budget <= kBudgetMargin * p.config.rho * (1.0 + 1e-12) &&
                    verify_trace(trace, trace.nu0_norm, p.config.rho).failures().empty();
    violations += ok ? 0 : 1;
  }
  return {violations == 0 && checked == stats.runs.size() && checked > 0,
          std::to_string(checked) + " passing runs re-verified, " + std::to_string(violations) +
              " violations, max sum / (0.9 rho) " + fmt(worst_use)};
}

Outcome ac5_oracle(const PipelineStats& stats) {
  std::size_t violations = 0;
  double worst_oracle = 0.0;
  double worst_ratio = 0.0;
  for (const PipelineRun& p : stats.runs) {
    const NACertificate& c = p.result.certificate;
    const double norm = oracle::oracle_field_norm(c.final_field);
    double oracle_defect = 0.0;
    if (norm > 0.0) oracle_defect = norm - image_sup(c.final_field, oracle_exact_na(c.final_field).values());
    const double defect = attainment_defect(c.final_field, c.witness.as_witness());
    worst_oracle = std::max(worst_oracle, norm > 0.0 ? oracle_defect / norm : 0.0);
    worst_ratio = std::max(worst_ratio, defect / c.eps_final);
    if (!(oracle_defect <= kOracleRel * norm) || !(defect < c.eps_final)) ++violations;
  }
  return {violations == 0 && !stats.runs.empty(),
          std::to_string(stats.runs.size()) + " final fields, " + std::to_string(violations) +
              " violations, max oracle defect / norm " + fmt(worst_oracle) + ", max d / eps_N " + fmt(worst_ratio)};
}

Outcome ac6_quantization() {
  std::mt19937_64 rng(6006);
  std::size_t violations = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::uint64_t max_arcs = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = oracle::pick(rng, 1, 8);
    std::vector<Complex> atoms = oracle::random_atoms(rng, k, 0.1);
    if (oracle::oracle_tv(atoms) == 0.0) atoms[0] = 1.0;
    const double scale = (0.05 + 1.95 * oracle::unit(rng)) / oracle::oracle_tv(atoms);
    for (Complex& z : atoms) z *= scale;
    const MeasureField mu = MeasureField::from_grid({atoms});
    const double norm = oracle::oracle_tv(atoms);
    // eta just inside eta * ||mu(s0)|| < delta / 8, then N = ceil(2 pi / eta).
    const double eta = 0.95 * kDelta / (8.0 * norm);
    const auto arcs = static_cast<std::uint64_t>(std::ceil(2.0 * kPi / eta));
    max_arcs = std::max(max_arcs, arcs);
    try {
      const LiftResult result = lift(mu, kDelta, LiftMode::faithful, arcs);
      Complex value{};
      for (std::size_t t = 0; t < k; ++t) value += result.h[t] * atoms[t];
      const double slack = value.real() - (norm - kDelta / 2.0);
      worst_slack = std::min(worst_slack, slack);
      if (!(eta * norm < kDelta / 8.0) || !(slack >= kFloor)) ++violations;
    } catch (const std::exception&) {
      ++violations;
    }
  }
  return {violations == 0, "100 single-row lifts, delta 0.08, up to " + std::to_string(max_arcs) + " arcs, " +
                               std::to_string(violations) + " violations, min slack over ||mu|| - delta/2 " +
                               fmt(worst_slack)};
}

std::string read_file(const std::filesystem::path& path) {
  try {
    return load_text(path);
  } catch (const std::exception&) {
    return {};
  }
}

std::string shell_quote(const std::filesystem::path& path) { return "\"" + path.string() + "\""; }

Outcome ac7_determinism(const std::string& cli) {
  std::size_t mismatches = 0;
  std::size_t compared = 0;

  // In-process: instance text, trace CSV and certificate summary, two executions each.
  for (std::uint64_t seed : {1ULL, 7ULL, 42ULL, 1234ULL}) {
    for (LiftMode mode : {LiftMode::exact, LiftMode::faithful}) {
      IterationConfig config;
      config.mode = mode;
      config.defect_tol = mode == LiftMode::faithful ? 1e-11 : 1e-8;
      std::string outputs[2];
      for (std::string& text : outputs) {
        const Instance instance = gen(seed, 5, 4, 1.5);
        const RunResult result = run(instance.mu, config);
        text = write_instance(instance) + trace_csv(result.trace) + certificate_summary(result, config, instance.meta);
      }
      ++compared;
      mismatches += outputs[0] == outputs[1] ? 0 : 1;
    }
  }

  // Two consecutive executions of the CLI.
  std::string cli_note = "CLI skipped (no binary given)";
  bool cli_ok = false;
  if (!cli.empty()) {
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "nadense_acceptance";
    std::filesystem::create_directories(dir);
    std::string files[2][3];
    int failures = 0;
    for (int pass = 0; pass < 2; ++pass) {
      const std::string tag = std::to_string(pass);
      const std::filesystem::path instance = dir / ("instance" + tag + ".json");
      const std::filesystem::path trace = dir / ("trace" + tag + ".csv");
      const std::filesystem::path summary = dir / ("summary" + tag + ".txt");
      const std::string gen_cmd = shell_quote(cli) + " gen --seed 11 --k 6 --s 5 --scale 1.8 --out " + shell_quote(instance);
      const std::string run_cmd = shell_quote(cli) + " run " + shell_quote(instance) +
                                  " --mode faithful --rho 0.1 --defect-tol 1e-11 --trace " + shell_quote(trace) +
                                  " --out " + shell_quote(summary) + " > /dev/null";
      failures += std::system(gen_cmd.c_str()) != 0;
      failures += std::system(run_cmd.c_str()) != 0;
      files[pass][0] = read_file(instance);
      files[pass][1] = read_file(trace);
      files[pass][2] = read_file(summary);
    }
    bool same = failures == 0;
    for (int i = 0; i < 3; ++i) same = same && !files[0][i].empty() && files[0][i] == files[1][i];
    cli_ok = same;
    cli_note = std::string("CLI gen+run twice: ") + (same ? "identical bytes" : "MISMATCH or failure");
  }
  return {mismatches == 0 && cli_ok, std::to_string(compared) + " in-process (seed, config) pairs, " +
                                         std::to_string(mismatches) + " mismatches; " + cli_note};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  int failed = 0;
  auto report = [&](const char* id, const char* title, const Outcome& outcome) {
    std::printf("[%s] %s %s: %s\n", outcome.passed ? "PASS" : "FAIL", id, title, outcome.detail.c_str());
    std::fflush(stdout);
    failed += outcome.passed ? 0 : 1;
  };

  report("AC1", "weighted variation identity and dual grid gap", ac1_identity());
  report("AC2", "reduction step certificates", ac2_reduction());
  const PipelineStats pipeline = run_pipeline();
  report("AC3", "pipeline distance and final defect", ac3_pipeline(pipeline));
  report("AC4", "telescoped perturbation budget", ac4_budget(pipeline));
  report("AC5", "oracle consistency", ac5_oracle(pipeline));
  report("AC6", "faithful quantization bound", ac6_quantization());
  report("AC7", "determinism", ac7_determinism(cli));

  std::printf("%s: %d of 7 criteria failed\n", failed == 0 ? "ACCEPTED" : "REJECTED", failed);
  return failed == 0 ? 0 : 1;
}
