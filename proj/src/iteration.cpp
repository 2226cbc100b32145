#include "nadense/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nadense {
namespace {

struct StateDefect {
  double defect;
  std::size_t row;
};

// Smallest ||nu|| - Re nu(s)(K) over U, lowest index on ties.
StateDefect best_defect(const MeasureField& nu, const IndexSet& U) {
  const double norm = field_norm(nu);
  StateDefect best{std::numeric_limits<double>::infinity(), U.front()};
  for (std::size_t s : U) {
    const double defect = norm - nu.row(s).mass().real();
    if (defect < best.defect) best = {defect, s};
  }
  return best;
}

IndexSet restrict_to_level(const MeasureField& nu, const IndexSet& U, double eps) {
  const double norm = field_norm(nu);
  IndexSet out;
  for (std::size_t s : U) {
    if (nu.row(s).mass().real() - (norm - eps) >= kSlackFloor) out.push_back(s);
  }
  return out;
}

bool close_relative(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

const char* to_string(RunStatus status) noexcept {
  switch (status) {
    case RunStatus::pass:
      return "pass";
    case RunStatus::partial:
      return "partial";
    case RunStatus::fail:
      return "fail";
  }
  return "fail";
}

double telescoping_budget(double norm, double eps0, double r) {
  return std::sqrt(2.0 * norm * eps0) / (1.0 - std::sqrt(r)) + 2.0 * eps0 / (1.0 - r);
}

double choose_epsilon0(double norm, double rho, double r) {
  if (!(r > 0.5 && r < 1.0)) throw std::invalid_argument("choose_epsilon0: r must lie in (1/2, 1)");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("choose_epsilon0: rho must be positive");
  if (!(norm >= 0.0) || !std::isfinite(norm)) throw std::invalid_argument("choose_epsilon0: norm must be finite");
  const double target = 0.9 * rho;
  // The linear term alone reaches the target at hi; the square-root term only lowers the root.
  double hi = target * (1.0 - r) / 2.0;
  if (norm == 0.0) return hi;
  double lo = 0.0;
  for (int i = 0; i < 200 && lo < hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (telescoping_budget(norm, mid, r) <= target ? lo : hi) = mid;
  }
  return lo;
}

RunResult run(const MeasureField& mu, const IterationConfig& config) {
  if (!(config.rho > 0.0) || !std::isfinite(config.rho)) throw std::invalid_argument("run: rho must be positive");
  if (!(config.r > 0.5 && config.r < 1.0)) throw std::invalid_argument("run: r must lie in (1/2, 1)");
  if (!(config.defect_tol > 0.0)) throw std::invalid_argument("run: defect_tol must be positive");

  const double norm = field_norm(mu);
  const double eps0 = config.eps0 ? *config.eps0 : choose_epsilon0(norm, config.rho, config.r);
  if (!(eps0 > 0.0) || !(telescoping_budget(norm, eps0, config.r) < config.rho))
    throw std::invalid_argument("run: eps0 violates sqrt(2 M eps0) / (1 - sqrt r) + 2 eps0 / (1 - r) < rho");

  LiftResult lifted = lift(mu, eps0, config.mode, config.lift_arcs);
  const MeasureField nu0 = scale_rows(lifted.h.values(), mu);
  const double nu0_norm = field_norm(nu0);
  if (!close_relative(nu0_norm, norm, kArithTol)) throw CertificateFailure("lift_isometry", nu0_norm - norm);

  // eps_{n+1} = r eps_n, the same product the reduction uses for its threshold.
  std::vector<double> schedule{eps0};
  while (schedule.back() > config.defect_tol) schedule.push_back(config.r * schedule.back());
  const std::size_t last = schedule.size() - 1;

  IterationTrace trace{config.rho, config.r, eps0, config.defect_tol, nu0_norm, lifted, {}, false};

  MeasureField nu = nu0;
  IndexSet U = restrict_to_level(nu0, lifted.U, eps0);
  if (U.empty()) throw StepFailure(0, "lift_hypothesis", 0.0);
  std::size_t n = 0;
  std::size_t steps = 0;
  bool all_certified = true;

  for (;;) {
    const StateDefect state = best_defect(nu, U);
    const double level = schedule[n];
    const double current_norm = field_norm(nu);

    // Once the defect already beats the terminal level, the remaining steps are identities.
    if (n < last && schedule[last] - state.defect >= kSlackFloor) {
      n = last;
      U = restrict_to_level(nu, U, schedule[last]);
    }
    if (n == last) {
      const StateDefect final_state = best_defect(nu, U);
      trace.rows.push_back({n, schedule[n], current_norm, ReductionCase::trivial, 0.0,
                            perturbation_bound(nu0_norm, schedule[n]), final_state.defect,
                            schedule[n] - final_state.defect, final_state.row});
      trace.complete = true;
      break;
    }
    if (steps >= config.max_iter) {
      trace.rows.push_back({n, level, current_norm, ReductionCase::trivial, 0.0,
                            perturbation_bound(nu0_norm, level), state.defect, level - state.defect, state.row});
      break;
    }

    const ReductionParams params = ReductionParams::with_defaults(config.r, level, config.mode);
    ReductionOutcome outcome = [&] {
      try {
        return reduce(nu, U, params);
      } catch (const HypothesisViolation& e) {
        throw StepFailure(n, "hypothesis", e.slack());
      } catch (const CertificateFailure& e) {
        throw StepFailure(n, e.inequality(), e.slack());
      }
    }();
    all_certified = all_certified && outcome.certificate.all_hold();
    trace.rows.push_back({n, level, current_norm, outcome.case_tag, outcome.perturbation,
                          perturbation_bound(nu0_norm, level), state.defect,
                          std::min(outcome.certificate.min_strict_slack(), level - state.defect), state.row});
    nu = std::move(outcome.field);
    U = std::move(outcome.surviving);
    ++n;
    ++steps;
  }

  const UnimodularFunction h_bar = lifted.h.conjugate();
  MeasureField final_field = scale_rows(h_bar.values(), nu);
  const double distance = field_distance(final_field, mu);
  const double nu_distance = field_distance(nu, nu0);
  const Witness witness = lifted.h.as_witness();
  const double final_defect = attainment_defect(final_field, witness);
  const double final_norm = field_norm(final_field);
  const double oracle_defect = final_norm > 0.0 ? attainment_defect(final_field, oracle_exact_na(final_field)) : 0.0;
  const double eps_final = trace.rows.back().eps;

  double perturbation_sum = 0.0;
  for (const TraceRow& row : trace.rows) perturbation_sum += row.perturbation;

  double unimodular_error = 0.0;
  for (const Complex& v : lifted.h.values()) unimodular_error = std::max(unimodular_error, std::abs(std::abs(v) - 1.0));
  const std::vector<Complex> image = apply(final_field, witness);
  double image_error = 0.0;
  for (std::size_t s = 0; s < image.size(); ++s) image_error = std::max(image_error, std::abs(image[s] - nu.row(s).mass()));

  Certificate checks;
  checks.require_less_equal("distance_identity", std::abs(distance - nu_distance), 0.0);
  checks.require_less("distance_rho", distance, config.rho);
  checks.require_less_equal("budget_sum", perturbation_sum, telescoping_budget(nu0_norm, eps0, config.r));
  checks.require_less("budget_rho", telescoping_budget(nu0_norm, eps0, config.r), config.rho);
  checks.require_less("final_defect", final_defect, eps_final);
  checks.require_less_equal("eps_final_tol", eps_final, config.defect_tol);
  checks.require_less_equal("witness_unimodular", unimodular_error, 0.0);
  checks.require_less_equal("witness_image", image_error, 0.0);
  checks.require_less_equal("oracle_exact", oracle_defect, kArithTol * final_norm);
  checks.require_less_equal("oracle_not_worse", oracle_defect, final_defect);

  RunStatus status = RunStatus::pass;
  if (!trace.complete) {
    status = RunStatus::partial;
  } else if (!checks.all_hold() || !all_certified) {
    status = RunStatus::fail;
  }

  NACertificate certificate{lifted.h, std::move(final_field), distance, nu_distance, final_defect, oracle_defect,
                            eps_final, steps, all_certified, status, std::move(checks)};
  return RunResult{std::move(certificate), std::move(trace)};
}

bool TraceReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const TraceCheck& c) { return c.passed; });
}

std::vector<TraceCheck> TraceReport::failures() const {
  std::vector<TraceCheck> out;
  std::copy_if(checks.begin(), checks.end(), std::back_inserter(out), [](const TraceCheck& c) { return !c.passed; });
  return out;
}

TraceReport verify_trace(const IterationTrace& trace, double nu0_norm, double rho) {
  TraceReport report;
  auto check = [&](std::string name, std::optional<std::size_t> step, double lhs, double rhs, bool passed) {
    report.checks.push_back({std::move(name), step, lhs, rhs, passed});
  };
  constexpr double kAbs = 1e-12;

  check("nonempty", std::nullopt, 0.0, static_cast<double>(trace.rows.size()), !trace.rows.empty());
  double previous_norm = nu0_norm;
  std::optional<std::size_t> previous_n;
  double perturbation_sum = 0.0;
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const TraceRow& row = trace.rows[i];
    const bool terminal = trace.complete && i + 1 == trace.rows.size();
    const double scheduled = trace.eps0 * std::pow(trace.r, static_cast<double>(row.n));

    if (previous_n) {
      check("index_increasing", row.n, static_cast<double>(*previous_n), static_cast<double>(row.n),
            row.n > *previous_n);
    }
    check("eps_schedule", row.n, row.eps, scheduled, std::abs(row.eps - scheduled) <= 1e-12 * scheduled);
    check("defect_decay", row.n, row.defect, scheduled, row.defect < row.eps && row.defect < scheduled);
    check("norm_monotone", row.n, row.norm, previous_norm, row.norm <= previous_norm + kAbs);
    const double bound = std::sqrt(2.0 * nu0_norm * row.eps) + 2.0 * row.eps;
    check("bound_formula", row.n, row.bound, bound, std::abs(row.bound - bound) <= 1e-12 * std::max(1.0, bound));
    if (terminal) {
      check("terminal_no_step", row.n, row.perturbation, 0.0, row.perturbation == 0.0);
      check("terminal_tolerance", row.n, row.eps, trace.defect_tol, row.eps <= trace.defect_tol);
    } else {
      check("perturbation_bound", row.n, row.perturbation, row.bound, row.perturbation <= row.bound + kAbs);
    }
    perturbation_sum += row.perturbation;
    previous_norm = row.norm;
    previous_n = row.n;
  }

  const double budget = telescoping_budget(nu0_norm, trace.eps0, trace.r);
  check("budget_sum", std::nullopt, perturbation_sum, budget, perturbation_sum <= budget + kAbs);
  check("budget_margin", std::nullopt, budget, 0.9 * rho, budget <= 0.9 * rho * (1.0 + 1e-12));
  check("sum_below_rho", std::nullopt, perturbation_sum, rho, perturbation_sum < rho);
  return report;
}

}  // namespace nadense
