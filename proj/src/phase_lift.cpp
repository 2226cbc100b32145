#include "nadense/phase_lift.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nadense/errors.hpp"

namespace nadense {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

const char* to_string(LiftMode mode) noexcept {
  return mode == LiftMode::exact ? "exact" : "faithful";
}

LiftMode parse_lift_mode(const std::string& text) {
  if (text == "exact") return LiftMode::exact;
  if (text == "faithful") return LiftMode::faithful;
  throw InputError("unknown mode '" + text + "' (expected exact or faithful)");
}

UnimodularFunction::UnimodularFunction(std::vector<Complex> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("UnimodularFunction: point set K must be nonempty");
  for (std::size_t t = 0; t < values_.size(); ++t) {
    const double modulus = std::abs(values_[t]);
    if (!std::isfinite(modulus) || modulus == 0.0)
      throw std::invalid_argument("UnimodularFunction: value at t=" + std::to_string(t) +
                                  " has no direction");
    values_[t] /= modulus;
  }
}

UnimodularFunction UnimodularFunction::constant_one(std::size_t k_size) {
  return UnimodularFunction(std::vector<Complex>(k_size, Complex{1.0, 0.0}));
}

UnimodularFunction UnimodularFunction::conjugate() const {
  std::vector<Complex> out(values_.size());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = std::conj(values_[t]);
  return UnimodularFunction(std::move(out));
}

CirclePartition CirclePartition::with_arcs(std::uint64_t arc_count) {
  if (arc_count == 0) throw std::invalid_argument("CirclePartition: need at least one arc");
  return CirclePartition(arc_count, kTwoPi / static_cast<double>(arc_count));
}

CirclePartition CirclePartition::for_diameter(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw std::invalid_argument("CirclePartition: arc diameter must be positive");
  const double count = std::ceil(kTwoPi / eta);
  if (count > 4.0e18) throw std::invalid_argument("CirclePartition: arc diameter too small");
  return CirclePartition(std::max<std::uint64_t>(1, static_cast<std::uint64_t>(count)), eta);
}

Complex CirclePartition::representative(std::uint64_t arc) const {
  if (arc >= arc_count_) throw std::out_of_range("CirclePartition: arc index out of range");
  return std::polar(1.0, kTwoPi * static_cast<double>(arc) / static_cast<double>(arc_count_));
}

std::uint64_t CirclePartition::arc_of(Complex z) const {
  if (z == Complex{}) return 0;
  const double n = static_cast<double>(arc_count_);
  // Arc j covers angles [(j - 1/2) w, (j + 1/2) w) with w = 2 pi / N.
  const auto position = static_cast<std::int64_t>(std::floor(std::arg(z) / kTwoPi * n + 0.5));
  const auto count = static_cast<std::int64_t>(arc_count_);
  std::int64_t arc = position % count;
  if (arc < 0) arc += count;
  return static_cast<std::uint64_t>(arc);
}

std::uint64_t arcs_for_budget(double mass, double budget) {
  if (!(budget > 0.0)) throw std::invalid_argument("arcs_for_budget: budget must be positive");
  if (mass <= 0.0) return 1;
  const double estimate = std::floor(kTwoPi * mass / budget) + 1.0;
  if (!(estimate < 4.0e18)) throw std::invalid_argument("arcs_for_budget: required partition too fine");
  auto count = static_cast<std::uint64_t>(estimate);
  while (!(budget - kTwoPi / static_cast<double>(count) * mass >= kSlackFloor)) ++count;
  return count;
}

std::size_t select_peak_point(const MeasureField& mu, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("select_peak_point: delta must be positive");
  const std::vector<double> norms = row_norms(mu);
  const std::size_t peak = argmax_index(norms);
  if (norms[peak] == 0.0) throw std::domain_error("select_peak_point: zero field has no peak row");
  return peak;
}

UnimodularFunction quantize_phases(const ComplexMeasure& nu, const CirclePartition& partition) {
  const std::vector<Complex> phi = polar_decompose(nu).conjugate_phases();
  std::vector<Complex> h(phi.size());
  for (std::size_t t = 0; t < phi.size(); ++t) h[t] = partition.representative(partition.arc_of(phi[t]));
  return UnimodularFunction(std::move(h));
}

LiftResult lift(const MeasureField& mu, double delta, LiftMode mode, std::optional<std::uint64_t> arcs) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("lift: delta must be positive");
  const double norm = field_norm(mu);

  Certificate cert;
  std::optional<UnimodularFunction> h;
  std::optional<std::uint64_t> arcs_used;
  std::size_t peak = 0;

  if (norm == 0.0) {
    h = UnimodularFunction::constant_one(mu.k_size());
  } else {
    peak = select_peak_point(mu, delta);
    const ComplexMeasure& nu = mu.row(peak);
    const double nu_norm = total_variation(nu);
    const std::vector<Complex> phi = polar_decompose(nu).conjugate_phases();
    cert.require_less("peak_point", norm - delta / 4.0, nu_norm);

    if (mode == LiftMode::exact) {
      h = UnimodularFunction(phi);
    } else {
      const std::uint64_t count = arcs ? *arcs : arcs_for_budget(nu_norm, delta / 8.0);
      const CirclePartition partition = CirclePartition::with_arcs(count);
      const double eta = partition.arc_diameter();
      if (!(delta / 8.0 - eta * nu_norm >= kSlackFloor)) {
        throw std::invalid_argument("lift: " + std::to_string(count) + " arcs too coarse for delta; need at least " +
                                    std::to_string(arcs_for_budget(nu_norm, delta / 8.0)));
      }
      arcs_used = count;
      h = quantize_phases(nu, partition);
      const double quantization_error = l1_distance(h->values(), phi, nu);
      cert.require_less("arc_budget", eta * nu_norm, delta / 8.0);
      // F = K on a finite space: the regularity remainder |nu|(K \ F) is exactly zero.
      cert.require_less("regularity_remainder", 0.0, delta / 16.0);
      cert.require_less("quantization_l1", quantization_error, eta * nu_norm);
      cert.require_less("quantization_quarter_delta", quantization_error, delta / 4.0);
    }
    const double value = integrate(h->values(), nu).real();
    const double error = l1_distance(h->values(), phi, nu);
    cert.require_less_equal("peak_lower_bound", nu_norm - error, value);
    cert.require_less("half_delta", norm - delta / 2.0, value);
  }

  LiftResult result{*h, {}, {}, peak, delta, 0.0, mode, arcs_used, {}};
  for (std::size_t s = 0; s < mu.s_size(); ++s) {
    const double value = integrate(h->values(), mu.row(s)).real();
    if (s == peak) result.peak_value = value;
    const double slack = value - (norm - delta);
    if (slack >= kSlackFloor) {
      result.U.push_back(s);
      result.slack.push_back(slack);
    }
  }
  if (result.U.empty()) throw CertificateFailure("lift.U_nonempty", 0.0);
  cert.require_less("U_contains_peak", norm - delta, result.peak_value);
  cert.enforce();
  result.certificate = std::move(cert);
  return result;
}

}  // namespace nadense
