#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nadense/certificate.hpp"
#include "nadense/measure.hpp"
#include "nadense/operator_field.hpp"
#include "nadense/phase_lift.hpp"

namespace nadense {

// Tolerances of one defect-reduction step.
//   1/2 < r < 1,  a = 1 - r,  0 < gamma < (2r - 1) eps,  2 a eps + gamma + 2 lsc_eta < 2 eps.
class ReductionParams {
 public:
  // Throws std::invalid_argument when the chain above is violated.
  ReductionParams(double r, double eps, double gamma, double lsc_eta, LiftMode mode = LiftMode::exact,
                  std::optional<std::uint64_t> arcs = std::nullopt);

  // gamma = (2r - 1) eps / 2 and lsc_eta = (2 eps - 2 a eps - gamma) / 4.
  static ReductionParams with_defaults(double r, double eps, LiftMode mode = LiftMode::exact,
                                       std::optional<std::uint64_t> arcs = std::nullopt);

  double r() const noexcept { return r_; }
  double eps() const noexcept { return eps_; }
  double a() const noexcept { return 1.0 - r_; }
  double gamma() const noexcept { return gamma_; }
  double lsc_eta() const noexcept { return lsc_eta_; }
  LiftMode mode() const noexcept { return mode_; }
  // Partition size for the faithful corrector; chosen from gamma when absent.
  std::optional<std::uint64_t> arcs() const noexcept { return arcs_; }

 private:
  double r_;
  double eps_;
  double gamma_;
  double lsc_eta_;
  LiftMode mode_;
  std::optional<std::uint64_t> arcs_;
};

enum class ReductionCase : int {
  trivial = 0,      // zero field, nothing to do
  dirac_bump = 1,   // every row of U is lighter than M - a eps
  phase_blend = 2,  // some row of U is heavier than M - a eps
};

struct ReductionOutcome {
  MeasureField field;  // mu'
  IndexSet surviving;  // U'
  ReductionCase case_tag;
  double perturbation;  // ||mu' - mu||
  double bound;         // sqrt(2 M eps) + 2 eps
  std::size_t active_row;  // s0 (bump) or s1 (blend); psi is the indicator of this row
  std::optional<std::size_t> bump_point;       // t0, dirac_bump only
  std::optional<std::vector<Complex>> corrector;  // q, phase_blend only
  std::optional<WeightFunction> blend_weight;     // |q - 1| / 2, phase_blend only
  IndexSet lsc_neighbourhood;                   // U0, phase_blend only
  Certificate certificate;
};

// sqrt(2 M eps) + 2 eps.
double perturbation_bound(double norm, double eps);

// Throws HypothesisViolation if Re mu(s)(K) > M - eps fails (slack below kSlackFloor) on U.
void check_hypothesis(const MeasureField& mu, const IndexSet& U, double eps);

// dirac_bump iff max over U of ||mu(s)|| <= M - a eps. Verifies the hypothesis first.
// Returns trivial for the zero field.
ReductionCase classify_case(const MeasureField& mu, const IndexSet& U, const ReductionParams& params);

// mu'(s0) = mu(s0) + a eps delta_{t0}; all other rows unchanged.
ReductionOutcome case1_dirac_bump(const MeasureField& mu, const IndexSet& U, const ReductionParams& params);

// P(z) = z inside the closed unit disc, z / |z| outside.
Complex radial_projection(Complex z);

struct Corrector {
  std::vector<Complex> u;  // L1(|nu|) approximant of theta-bar
  std::vector<Complex> q;  // P o u
  std::optional<std::uint64_t> arcs;
};

// Exact mode: u = q = theta-bar. Faithful mode: u is theta-bar snapped to a circle partition
// fine enough that the L1(|nu|) error stays below gamma. Throws std::invalid_argument when a
// configured partition is too coarse.
Corrector build_corrector(const ComplexMeasure& nu, double gamma, LiftMode mode,
                          std::optional<std::uint64_t> arcs = std::nullopt);
std::vector<Complex> build_q(const ComplexMeasure& nu, double gamma, LiftMode mode,
                             std::optional<std::uint64_t> arcs = std::nullopt);

// d mu'(s) = ((1 - psi(s)) + psi(s) q) d mu(s), psi(s) in [0, 1].
MeasureField blend_field(const MeasureField& mu, std::span<const Complex> q, std::span<const double> psi);

// Phase blend at the heaviest row s1 of U.
ReductionOutcome case2_phase_blend(const MeasureField& mu, const IndexSet& U, const ReductionParams& params);

// One defect-reduction step. Given Re mu(s)(K) > M - eps on U, returns mu' and nonempty
// U' of U with ||mu'|| <= M, ||mu' - mu|| <= sqrt(2 M eps) + 2 eps and
// Re mu'(s)(K) > ||mu'|| - r eps on U'.
ReductionOutcome reduce(const MeasureField& mu, const IndexSet& U, const ReductionParams& params);

}  // namespace nadense
