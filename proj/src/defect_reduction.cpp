#include "nadense/defect_reduction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nadense/errors.hpp"

namespace nadense {
namespace {

IndexSet normalized(const IndexSet& U, std::size_t s_size) {
  if (U.empty()) throw std::invalid_argument("reduction: U must be nonempty");
  IndexSet out = U;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.back() >= s_size) throw std::out_of_range("reduction: U contains an index outside S");
  return out;
}

// Heaviest row of U, lowest index on ties.
std::size_t heaviest_in(const MeasureField& mu, const IndexSet& U) {
  std::size_t best = U.front();
  double best_norm = total_variation(mu.row(best));
  for (std::size_t s : U) {
    const double norm = total_variation(mu.row(s));
    if (norm > best_norm) {
      best = s;
      best_norm = norm;
    }
  }
  return best;
}

IndexSet survivors(const MeasureField& field, const IndexSet& candidates, double threshold) {
  IndexSet out;
  for (std::size_t s : candidates) {
    if (field.row(s).mass().real() - threshold >= kSlackFloor) out.push_back(s);
  }
  return out;
}

}  // namespace

ReductionParams::ReductionParams(double r, double eps, double gamma, double lsc_eta, LiftMode mode,
                                 std::optional<std::uint64_t> arcs)
    : r_(r), eps_(eps), gamma_(gamma), lsc_eta_(lsc_eta), mode_(mode), arcs_(arcs) {
  if (!(r > 0.5 && r < 1.0)) throw std::invalid_argument("ReductionParams: r must lie in (1/2, 1)");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("ReductionParams: eps must be positive");
  if (!(gamma > 0.0 && gamma < (2.0 * r - 1.0) * eps))
    throw std::invalid_argument("ReductionParams: need 0 < gamma < (2r - 1) eps");
  if (!(lsc_eta > 0.0 && 2.0 * a() * eps + gamma + 2.0 * lsc_eta < 2.0 * eps))
    throw std::invalid_argument("ReductionParams: need eta > 0 and 2 a eps + gamma + 2 eta < 2 eps");
}

ReductionParams ReductionParams::with_defaults(double r, double eps, LiftMode mode,
                                               std::optional<std::uint64_t> arcs) {
  const double gamma = (2.0 * r - 1.0) * eps / 2.0;
  const double lsc_eta = (2.0 * eps - 2.0 * (1.0 - r) * eps - gamma) / 4.0;
  return ReductionParams(r, eps, gamma, lsc_eta, mode, arcs);
}

double perturbation_bound(double norm, double eps) { return std::sqrt(2.0 * norm * eps) + 2.0 * eps; }

void check_hypothesis(const MeasureField& mu, const IndexSet& U, double eps) {
  const double norm = field_norm(mu);
  for (std::size_t s : U) {
    const double slack = mu.row(s).mass().real() - (norm - eps);
    if (!(slack >= kSlackFloor)) throw HypothesisViolation(s, slack);
  }
}

ReductionCase classify_case(const MeasureField& mu, const IndexSet& U, const ReductionParams& params) {
  const IndexSet set = normalized(U, mu.s_size());
  const double norm = field_norm(mu);
  if (norm == 0.0) return ReductionCase::trivial;
  check_hypothesis(mu, set, params.eps());
  const double heaviest = total_variation(mu.row(heaviest_in(mu, set)));
  return heaviest <= norm - params.a() * params.eps() ? ReductionCase::dirac_bump : ReductionCase::phase_blend;
}

ReductionOutcome case1_dirac_bump(const MeasureField& mu, const IndexSet& U, const ReductionParams& params) {
  const IndexSet set = normalized(U, mu.s_size());
  const double norm = field_norm(mu);
  const double eps = params.eps();
  const double bump = params.a() * eps;

  const std::size_t s0 = heaviest_in(mu, set);
  const ComplexMeasure& row = mu.row(s0);
  const double row_norm = total_variation(row);
  if (!(row_norm <= norm - bump)) throw std::invalid_argument("case1_dirac_bump: some row of U exceeds M - a eps");

  std::vector<double> moduli(row.k_size());
  for (std::size_t t = 0; t < row.k_size(); ++t) moduli[t] = std::abs(row[t]);
  const std::size_t t0 = argmax_index(moduli);

  MeasureField bumped = mu.with_row(s0, row + ComplexMeasure::dirac(row.k_size(), t0, bump));
  const double new_norm = field_norm(bumped);
  const double value = bumped.row(s0).mass().real();
  const double perturbation = field_distance(bumped, mu);
  const double bound = perturbation_bound(norm, eps);

  Certificate cert;
  cert.require_less_equal("bump_row_norm", total_variation(bumped.row(s0)), row_norm + bump);
  cert.require_less_equal("bump_norm_cap", row_norm + bump, norm);
  cert.require_less_equal("norm_monotone", new_norm, norm);
  cert.require_less_equal("bump_mass", row.mass().real() + bump, value);
  cert.require_less("defect_at_s0", norm - params.r() * eps, value);
  cert.require_less("defect_vs_new_norm", new_norm - params.r() * eps, value);
  cert.require_less_equal("perturbation_bump", perturbation, bump);
  cert.require_less_equal("perturbation_bound", perturbation, bound);

  IndexSet surviving = survivors(bumped, set, new_norm - params.r() * eps);
  cert.require_less("surviving_nonempty", 0.0, static_cast<double>(surviving.size()));
  cert.enforce();

  return ReductionOutcome{std::move(bumped),
                          std::move(surviving),
                          ReductionCase::dirac_bump,
                          perturbation,
                          bound,
                          s0,
                          t0,
                          std::nullopt,
                          std::nullopt,
                          {},
                          std::move(cert)};
}

Complex radial_projection(Complex z) {
  const double modulus = std::abs(z);
  return modulus <= 1.0 ? z : z / modulus;
}

Corrector build_corrector(const ComplexMeasure& nu, double gamma, LiftMode mode,
                          std::optional<std::uint64_t> arcs) {
  if (!(gamma > 0.0)) throw std::invalid_argument("build_q: gamma must be positive");
  const std::vector<Complex> theta_bar = polar_decompose(nu).conjugate_phases();
  Corrector out;
  if (mode == LiftMode::exact) {
    out.u = theta_bar;
  } else {
    const double nu_norm = total_variation(nu);
    const std::uint64_t count = arcs ? *arcs : arcs_for_budget(nu_norm, gamma);
    const CirclePartition partition = CirclePartition::with_arcs(count);
    if (!(gamma - partition.arc_diameter() * nu_norm >= kSlackFloor)) {
      throw std::invalid_argument("build_q: " + std::to_string(count) +
                                  " arcs cannot meet gamma; need at least " +
                                  std::to_string(arcs_for_budget(nu_norm, gamma)));
    }
    const UnimodularFunction snapped = quantize_phases(nu, partition);
    out.u.assign(snapped.values().begin(), snapped.values().end());
    out.arcs = count;
  }
  out.q.resize(out.u.size());
  std::transform(out.u.begin(), out.u.end(), out.q.begin(), radial_projection);
  if (!(l1_distance(out.q, theta_bar, nu) < gamma))
    throw std::invalid_argument("build_q: corrector misses gamma; use a finer partition");
  return out;
}

std::vector<Complex> build_q(const ComplexMeasure& nu, double gamma, LiftMode mode,
                             std::optional<std::uint64_t> arcs) {
  return build_corrector(nu, gamma, mode, arcs).q;
}

MeasureField blend_field(const MeasureField& mu, std::span<const Complex> q, std::span<const double> psi) {
  if (q.size() != mu.k_size()) throw DimensionMismatch("blend_field q", mu.k_size(), q.size());
  if (psi.size() != mu.s_size()) throw DimensionMismatch("blend_field psi", mu.s_size(), psi.size());
  std::vector<ComplexMeasure> rows;
  rows.reserve(mu.s_size());
  for (std::size_t s = 0; s < mu.s_size(); ++s) {
    if (!(psi[s] >= 0.0 && psi[s] <= 1.0)) throw std::invalid_argument("blend_field: psi must lie in [0, 1]");
    if (psi[s] == 0.0) {
      rows.push_back(mu.row(s));
      continue;
    }
    std::vector<Complex> weights(q.size());
    for (std::size_t t = 0; t < q.size(); ++t) weights[t] = (1.0 - psi[s]) + psi[s] * q[t];
    rows.push_back(scale_by_function(weights, mu.row(s)));
  }
  return MeasureField(std::move(rows));
}

ReductionOutcome case2_phase_blend(const MeasureField& mu, const IndexSet& U, const ReductionParams& params) {
  const IndexSet set = normalized(U, mu.s_size());
  const double norm = field_norm(mu);
  const double eps = params.eps();
  const double a = params.a();
  const double r = params.r();
  const double gamma = params.gamma();
  const double eta = params.lsc_eta();

  const std::size_t s1 = heaviest_in(mu, set);
  const ComplexMeasure& nu = mu.row(s1);
  const double nu_norm = total_variation(nu);
  if (!(nu_norm > norm - a * eps)) throw std::invalid_argument("case2_phase_blend: no row of U exceeds M - a eps");

  Certificate cert;

  // (i) corrector and the lower bound at s1.
  const Corrector corrector = build_corrector(nu, gamma, params.mode(), params.arcs());
  const std::vector<Complex>& q = corrector.q;
  const std::vector<Complex> theta_bar = polar_decompose(nu).conjugate_phases();
  const std::vector<Complex> ones(nu.k_size(), Complex{1.0, 0.0});
  const double u_error = l1_distance(corrector.u, theta_bar, nu);
  const double q_error = l1_distance(q, theta_bar, nu);
  const double value_q = integrate(q, nu).real();
  cert.require_less_equal("projection_no_worse", q_error, u_error);
  cert.require_less("q_l1_gamma", q_error, gamma);
  cert.require_less_equal("re_lower_chain", nu_norm - q_error, value_q);
  cert.require_less("re_above_gamma_band", norm - a * eps - gamma, value_q);
  cert.require_less("blend_value_lower", norm - r * eps, value_q);

  // (ii) Cauchy-Schwarz cost of rotating theta-bar onto 1.
  const double phase_cost = l1_distance(theta_bar, ones, nu);
  const double cauchy = std::sqrt(2.0 * nu_norm * real_deficiency(nu));
  const double root = std::sqrt(2.0 * norm * eps);
  const double q_cost = l1_distance(q, ones, nu);
  cert.require_less_equal("cauchy", phase_cost, cauchy);
  cert.require_less("cauchy_budget", cauchy, root);
  cert.require_less_equal("triangle", q_cost, q_error + phase_cost);
  cert.require_less("q_cost_bound", q_cost, gamma + root);

  // (iii) U0 by direct enumeration, and the cost bound on every row of it.
  std::vector<double> half_gap(q.size());
  std::vector<double> complement(q.size());
  for (std::size_t t = 0; t < q.size(); ++t) {
    half_gap[t] = std::abs(q[t] - 1.0) / 2.0;
    complement[t] = std::max(0.0, 1.0 - half_gap[t]);
  }
  WeightFunction phi(half_gap);
  const WeightFunction one_minus_phi(std::move(complement));
  const double base = weighted_variation(one_minus_phi, nu);
  IndexSet lsc_set;
  for (std::size_t s : set) {
    if (weighted_variation(one_minus_phi, mu.row(s)) - (base - eta) >= kSlackFloor) lsc_set.push_back(s);
  }
  for (std::size_t s : lsc_set) {
    const double cost = l1_distance(q, ones, mu.row(s));
    const std::string tag = "[" + std::to_string(s) + "]";
    cert.require_less("u0_cost_chain" + tag, cost, 2.0 * a * eps + q_cost + 2.0 * eta);
    cert.require_less("u0_cost_bound" + tag, cost, root + 2.0 * eps);
  }

  // (iv) blend with psi = indicator of s1.
  std::vector<double> psi(mu.s_size(), 0.0);
  psi[s1] = 1.0;
  MeasureField blended = blend_field(mu, q, psi);
  const double new_norm = field_norm(blended);
  cert.require_less_equal("blend_contraction", total_variation(blended.row(s1)), nu_norm);
  cert.require_less_equal("norm_monotone", new_norm, norm);

  // (v) defect at s1, surviving set and the perturbation cost.
  const double value = blended.row(s1).mass().real();
  cert.require_less("defect_at_s1", new_norm - r * eps, value);
  const double perturbation = field_distance(blended, mu);
  const double bound = perturbation_bound(norm, eps);
  cert.require_less_equal("perturbation_matches_cost", std::abs(perturbation - q_cost), 0.0);
  cert.require_less_equal("perturbation_bound", perturbation, bound);

  IndexSet surviving = survivors(blended, lsc_set, new_norm - r * eps);
  cert.require_less("surviving_nonempty", 0.0, static_cast<double>(surviving.size()));
  cert.enforce();

  return ReductionOutcome{std::move(blended),
                          std::move(surviving),
                          ReductionCase::phase_blend,
                          perturbation,
                          bound,
                          s1,
                          std::nullopt,
                          q,
                          std::move(phi),
                          std::move(lsc_set),
                          std::move(cert)};
}

ReductionOutcome reduce(const MeasureField& mu, const IndexSet& U, const ReductionParams& params) {
  const IndexSet set = normalized(U, mu.s_size());
  switch (classify_case(mu, set, params)) {
    case ReductionCase::trivial:
      return ReductionOutcome{mu, set, ReductionCase::trivial, 0.0, perturbation_bound(0.0, params.eps()),
                              set.front(), std::nullopt, std::nullopt, std::nullopt, {}, {}};
    case ReductionCase::dirac_bump:
      return case1_dirac_bump(mu, set, params);
    case ReductionCase::phase_blend:
      return case2_phase_blend(mu, set, params);
  }
  throw std::logic_error("reduce: unreachable");
}

}  // namespace nadense
