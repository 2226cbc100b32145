#pragma once

// Seeded generators and independent oracles shared by the test binaries. Nothing here
// calls into the library's numerical routines, so the oracles can check them.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "nadense/measure.hpp"
#include "nadense/operator_field.hpp"

namespace nadense::testing {

inline ComplexMeasure measure(std::initializer_list<Complex> atoms) {
  return ComplexMeasure(std::vector<Complex>(atoms));
}

inline MeasureField field(std::initializer_list<std::initializer_list<Complex>> rows) {
  std::vector<std::vector<Complex>> grid;
  for (const auto& row : rows) grid.emplace_back(row);
  return MeasureField::from_grid(grid);
}

inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

// Atoms with uniform phases; each atom is zero with probability zero_prob.
inline std::vector<Complex> random_atoms(std::mt19937_64& rng, std::size_t k, double zero_prob = 0.15) {
  std::vector<Complex> atoms(k);
  for (Complex& z : atoms) {
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    const double modulus = unit(rng);
    z = unit(rng) < zero_prob ? Complex{} : std::polar(modulus, angle);
  }
  return atoms;
}

inline std::vector<double> random_weights(std::mt19937_64& rng, std::size_t k, double scale = 2.0) {
  std::vector<double> f(k);
  for (double& v : f) v = scale * unit(rng);
  return f;
}

// Random field with k, s in [1, max_size], scaled so that the field norm is `norm`.
inline MeasureField random_field(std::mt19937_64& rng, std::size_t max_size, double norm) {
  const std::size_t k = pick(rng, 1, max_size);
  const std::size_t s = pick(rng, 1, max_size);
  std::vector<std::vector<Complex>> grid(s);
  double peak = 0.0;
  for (auto& row : grid) {
    row = random_atoms(rng, k);
    double tv = 0.0;
    for (const Complex& z : row) tv += std::hypot(z.real(), z.imag());
    peak = std::max(peak, tv);
  }
  if (peak == 0.0) {
    grid[0][0] = 1.0;
    peak = 1.0;
  }
  for (auto& row : grid)
    for (Complex& z : row) z *= norm / peak;
  return MeasureField::from_grid(grid);
}

inline double oracle_tv(const std::vector<Complex>& atoms) {
  double sum = 0.0;
  for (const Complex& z : atoms) sum += std::hypot(z.real(), z.imag());
  return sum;
}

inline double oracle_field_norm(const MeasureField& mu) {
  double best = 0.0;
  for (const ComplexMeasure& row : mu.rows()) {
    best = std::max(best, oracle_tv(std::vector<Complex>(row.atoms().begin(), row.atoms().end())));
  }
  return best;
}

inline double oracle_row_distance(const ComplexMeasure& a, const ComplexMeasure& b) {
  double sum = 0.0;
  for (std::size_t t = 0; t < a.k_size(); ++t) sum += std::hypot((a[t] - b[t]).real(), (a[t] - b[t]).imag());
  return sum;
}

inline double oracle_field_distance(const MeasureField& a, const MeasureField& b) {
  double best = 0.0;
  for (std::size_t s = 0; s < a.s_size(); ++s) best = std::max(best, oracle_row_distance(a.row(s), b.row(s)));
  return best;
}

// Full product-grid enumeration of max Re sum g(t) nu(t), g(t) = f(t) exp(2 pi i k_t / grid):
// grid^k candidates, no decoupling.
inline double oracle_dual_sup_product(const std::vector<double>& f, const std::vector<Complex>& atoms,
                                      std::size_t grid) {
  const std::size_t k = atoms.size();
  std::vector<std::size_t> digits(k, 0);
  double best = -std::numeric_limits<double>::infinity();
  for (;;) {
    double value = 0.0;
    for (std::size_t t = 0; t < k; ++t) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(digits[t]) / static_cast<double>(grid);
      value += f[t] * (std::cos(angle) * atoms[t].real() - std::sin(angle) * atoms[t].imag());
    }
    best = std::max(best, value);
    std::size_t pos = 0;
    while (pos < k && ++digits[pos] == grid) digits[pos++] = 0;
    if (pos == k) break;
  }
  return best;
}

// Root of (2 / (1 - r)) x^2 + (sqrt(2M) / (1 - sqrt r)) x = 0.9 rho in x = sqrt(eps0).
inline double oracle_eps0_closed_form(double norm, double rho, double r) {
  const double a = 2.0 / (1.0 - r);
  const double b = std::sqrt(2.0 * norm) / (1.0 - std::sqrt(r));
  const double c = 0.9 * rho;
  const double x = 2.0 * c / (b + std::sqrt(b * b + 4.0 * a * c));
  return x * x;
}

// Nearest of the N arc midpoints exp(2 pi i j / N), by scanning all of them.
inline Complex oracle_nearest_midpoint(Complex z, std::uint64_t arcs) {
  Complex best{};
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::uint64_t j = 0; j < arcs; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(arcs);
    const Complex candidate{std::cos(angle), std::sin(angle)};
    const double d = std::abs(candidate - z);
    if (d < best_distance) {
      best_distance = d;
      best = candidate;
    }
  }
  return best;
}

inline bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace nadense::testing
