#include "nadense/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nadense/errors.hpp"

namespace nadense {
namespace {

void require_same_size(const char* what, std::size_t expected, std::size_t actual) {
  if (expected != actual) throw DimensionMismatch(what, expected, actual);
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

ComplexMeasure::ComplexMeasure(std::vector<Complex> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("ComplexMeasure: point set K must be nonempty");
  for (std::size_t t = 0; t < atoms_.size(); ++t) {
    if (!finite(atoms_[t]))
      throw std::invalid_argument("ComplexMeasure: non-finite atom at t=" + std::to_string(t));
  }
}

ComplexMeasure ComplexMeasure::zero(std::size_t k_size) {
  return ComplexMeasure(std::vector<Complex>(k_size, Complex{}));
}

ComplexMeasure ComplexMeasure::dirac(std::size_t k_size, std::size_t point, Complex mass) {
  if (point >= k_size) throw std::out_of_range("ComplexMeasure::dirac: point outside K");
  std::vector<Complex> atoms(k_size, Complex{});
  atoms[point] = mass;
  return ComplexMeasure(std::move(atoms));
}

Complex ComplexMeasure::mass() const noexcept {
  Complex sum{};
  for (const Complex& a : atoms_) sum += a;
  return sum;
}

bool ComplexMeasure::is_zero() const noexcept {
  return std::all_of(atoms_.begin(), atoms_.end(), [](Complex a) { return a == Complex{}; });
}

ComplexMeasure operator+(const ComplexMeasure& lhs, const ComplexMeasure& rhs) {
  require_same_size("ComplexMeasure +", lhs.k_size(), rhs.k_size());
  std::vector<Complex> out(lhs.k_size());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = lhs[t] + rhs[t];
  return ComplexMeasure(std::move(out));
}

ComplexMeasure operator-(const ComplexMeasure& lhs, const ComplexMeasure& rhs) {
  require_same_size("ComplexMeasure -", lhs.k_size(), rhs.k_size());
  std::vector<Complex> out(lhs.k_size());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = lhs[t] - rhs[t];
  return ComplexMeasure(std::move(out));
}

std::vector<Complex> PolarDecomposition::conjugate_phases() const {
  std::vector<Complex> out(phases.size());
  std::transform(phases.begin(), phases.end(), out.begin(), [](Complex z) { return std::conj(z); });
  return out;
}

WeightFunction::WeightFunction(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("WeightFunction: point set K must be nonempty");
  for (std::size_t t = 0; t < values_.size(); ++t) {
    if (!std::isfinite(values_[t]) || values_[t] < 0.0)
      throw std::invalid_argument("WeightFunction: value at t=" + std::to_string(t) +
                                  " is not a finite nonnegative real");
  }
}

WeightFunction WeightFunction::constant(std::size_t k_size, double value) {
  return WeightFunction(std::vector<double>(k_size, value));
}

double total_variation(const ComplexMeasure& nu) {
  double sum = 0.0;
  for (const Complex& a : nu.atoms()) sum += std::abs(a);
  return sum;
}

double real_deficiency(const ComplexMeasure& nu) {
  double sum = 0.0;
  for (const Complex& a : nu.atoms()) {
    const double modulus = std::abs(a);
    // |a| - Re a = Im(a)^2 / (|a| + Re a) avoids cancellation when a is nearly real positive.
    sum += a.real() > 0.0 ? a.imag() * a.imag() / (modulus + a.real()) : modulus - a.real();
  }
  return sum;
}

PolarDecomposition polar_decompose(const ComplexMeasure& nu) {
  PolarDecomposition out;
  out.phases.reserve(nu.k_size());
  out.variation.reserve(nu.k_size());
  for (const Complex& a : nu.atoms()) {
    const double modulus = std::abs(a);
    out.variation.push_back(modulus);
    out.phases.push_back(modulus > 0.0 ? a / modulus : Complex{1.0, 0.0});
  }
  return out;
}

double weighted_variation(const WeightFunction& f, const ComplexMeasure& nu) {
  require_same_size("weighted_variation", nu.k_size(), f.k_size());
  double sum = 0.0;
  for (std::size_t t = 0; t < nu.k_size(); ++t) sum += f[t] * std::abs(nu[t]);
  return sum;
}

double dual_attainment(const WeightFunction& f, const ComplexMeasure& nu) {
  require_same_size("dual_attainment", nu.k_size(), f.k_size());
  const std::vector<Complex> theta_bar = polar_decompose(nu).conjugate_phases();
  double sum = 0.0;
  for (std::size_t t = 0; t < nu.k_size(); ++t) sum += (f[t] * theta_bar[t] * nu[t]).real();
  return sum;
}

double dual_sup_bruteforce(const WeightFunction& f, const ComplexMeasure& nu, std::size_t grid) {
  require_same_size("dual_sup_bruteforce", nu.k_size(), f.k_size());
  if (grid < 4) throw std::invalid_argument("dual_sup_bruteforce: grid must be at least 4");
  std::vector<Complex> rotations(grid);
  for (std::size_t k = 0; k < grid; ++k) {
    rotations[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                       static_cast<double>(grid));
  }
  double sum = 0.0;
  for (std::size_t t = 0; t < nu.k_size(); ++t) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Complex& w : rotations) best = std::max(best, (f[t] * w * nu[t]).real());
    sum += best;
  }
  return sum;
}

ComplexMeasure scale_by_function(std::span<const Complex> g, const ComplexMeasure& nu) {
  require_same_size("scale_by_function", nu.k_size(), g.size());
  std::vector<Complex> out(nu.k_size());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = g[t] * nu[t];
  return ComplexMeasure(std::move(out));
}

ComplexMeasure scale_by_function(const WeightFunction& f, const ComplexMeasure& nu) {
  require_same_size("scale_by_function", nu.k_size(), f.k_size());
  std::vector<Complex> out(nu.k_size());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = f[t] * nu[t];
  return ComplexMeasure(std::move(out));
}

Complex integrate(std::span<const Complex> g, const ComplexMeasure& nu) {
  require_same_size("integrate", nu.k_size(), g.size());
  Complex sum{};
  for (std::size_t t = 0; t < nu.k_size(); ++t) sum += g[t] * nu[t];
  return sum;
}

double l1_distance(std::span<const Complex> a, std::span<const Complex> b, const ComplexMeasure& nu) {
  require_same_size("l1_distance", nu.k_size(), a.size());
  require_same_size("l1_distance", nu.k_size(), b.size());
  double sum = 0.0;
  for (std::size_t t = 0; t < nu.k_size(); ++t) sum += std::abs(a[t] - b[t]) * std::abs(nu[t]);
  return sum;
}

IdentityCheck variation_identity_check(const WeightFunction& f, const ComplexMeasure& nu) {
  const double lhs = total_variation(scale_by_function(f, nu));
  const double rhs = weighted_variation(f, nu);
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  const double deviation = scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
  return {deviation <= kRelTol, lhs, rhs, deviation};
}

}  // namespace nadense
