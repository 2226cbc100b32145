#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nadense/certificate.hpp"
#include "nadense/defect_reduction.hpp"
#include "nadense/errors.hpp"
#include "nadense/operator_field.hpp"
#include "nadense/phase_lift.hpp"

namespace nadense {

struct IterationConfig {
  double rho = 0.1;                 // target distance ||mu_N - mu|| < rho
  double r = 0.81;                  // eps_n = r^n eps0
  std::optional<double> eps0;       // derived from rho and r when absent
  std::size_t max_iter = 1000;      // reduction steps before giving up
  double defect_tol = 1e-8;         // stop once eps_n <= defect_tol
  LiftMode mode = LiftMode::exact;
  std::optional<std::uint64_t> lift_arcs;  // faithful lift partition size
};

// sqrt(2 M eps0) / (1 - sqrt r) + 2 eps0 / (1 - r): the summed step bounds over all n.
double telescoping_budget(double norm, double eps0, double r);

// Largest eps0 (to bisection precision) with telescoping_budget(norm, eps0, r) <= 0.9 rho.
double choose_epsilon0(double norm, double rho, double r);

// State n of the iteration and the reduction step taken from it. The last row of a
// complete trace is terminal: no step is taken and perturbation is zero. Steps that
// leave the field unchanged are not recorded, so n may jump.
struct TraceRow {
  std::size_t n;
  double eps;           // eps_n
  double norm;          // ||nu_n||
  ReductionCase case_tag;
  double perturbation;  // ||nu_{n+1} - nu_n||
  double bound;         // sqrt(2 ||nu_0|| eps_n) + 2 eps_n
  double defect;        // ||nu_n|| - Re nu_n(s_n)(K)
  double min_slack;     // smallest strict-certificate slack of the step
  std::size_t witness_row;  // s_n
};

struct IterationTrace {
  double rho;
  double r;
  double eps0;
  double defect_tol;
  double nu0_norm;
  LiftResult lift;
  std::vector<TraceRow> rows;
  bool complete;  // false when max_iter ran out first
};

enum class RunStatus { pass, partial, fail };
const char* to_string(RunStatus status) noexcept;

struct NACertificate {
  UnimodularFunction witness;  // h
  MeasureField final_field;    // mu_N = h-bar nu_N
  double distance;             // ||mu_N - mu||
  double nu_distance;          // ||nu_N - nu_0||
  double final_defect;         // ||mu_N|| - ||T_N h||_inf
  double oracle_defect;        // same with the exact oracle witness
  double eps_final;            // eps_N
  std::size_t steps;           // reductions actually applied
  bool all_steps_certified;
  RunStatus status;
  Certificate checks;          // end-of-run inequalities
};

struct RunResult {
  NACertificate certificate;
  IterationTrace trace;
};

// A reduction step inside run() broke one of its inequalities.
class StepFailure : public CertificateFailure {
 public:
  StepFailure(std::size_t step, const std::string& inequality, double slack)
      : CertificateFailure("step " + std::to_string(step) + ": " + inequality, slack), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// Lift, reduce with eps_n = r^n eps0 until eps_n <= defect_tol, transform back by h-bar.
// Throws std::invalid_argument for a bad config and StepFailure when a step fails.
RunResult run(const MeasureField& mu, const IterationConfig& config);

struct TraceCheck {
  std::string name;
  std::optional<std::size_t> step;
  double lhs;
  double rhs;
  bool passed;
};

struct TraceReport {
  std::vector<TraceCheck> checks;

  bool passed() const noexcept;
  std::vector<TraceCheck> failures() const;
};

// Offline re-check of a trace: step bounds, norm monotonicity, defect decay against
// r^n eps0, and the telescoped budget against rho.
TraceReport verify_trace(const IterationTrace& trace, double nu0_norm, double rho);

}  // namespace nadense
