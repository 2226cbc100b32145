#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nadense {

using Complex = std::complex<double>;

// Atomic complex measure on the finite point set K = {0, ..., k_size - 1}.
// Atom t carries the weight nu({t}).
class ComplexMeasure {
 public:
  // Throws std::invalid_argument on an empty point set or a non-finite atom.
  explicit ComplexMeasure(std::vector<Complex> atoms);

  static ComplexMeasure zero(std::size_t k_size);
  static ComplexMeasure dirac(std::size_t k_size, std::size_t point, Complex mass = 1.0);

  std::size_t k_size() const noexcept { return atoms_.size(); }
  std::span<const Complex> atoms() const noexcept { return atoms_; }
  const Complex& operator[](std::size_t t) const { return atoms_[t]; }

  // nu(K), the integral of the constant function 1.
  Complex mass() const noexcept;
  bool is_zero() const noexcept;

  friend bool operator==(const ComplexMeasure&, const ComplexMeasure&) = default;

 private:
  std::vector<Complex> atoms_;
};

ComplexMeasure operator+(const ComplexMeasure& lhs, const ComplexMeasure& rhs);
ComplexMeasure operator-(const ComplexMeasure& lhs, const ComplexMeasure& rhs);

// d nu = theta d|nu|, one phase and one modulus per atom. Zero atoms get phase 1.
struct PolarDecomposition {
  std::vector<Complex> phases;
  std::vector<double> variation;

  // theta-bar, the phase corrector that rotates every atom onto the positive axis.
  std::vector<Complex> conjugate_phases() const;
};

// Nonnegative real function on K.
class WeightFunction {
 public:
  explicit WeightFunction(std::vector<double> values);
  static WeightFunction constant(std::size_t k_size, double value);

  std::size_t k_size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t t) const { return values_[t]; }

 private:
  std::vector<double> values_;
};

// ||nu|| = |nu|(K) = sum of atom moduli.
double total_variation(const ComplexMeasure& nu);

PolarDecomposition polar_decompose(const ComplexMeasure& nu);

// ||nu|| - Re nu(K), summed atom by atom so that small values keep their relative accuracy.
double real_deficiency(const ComplexMeasure& nu);

// Integral of f against |nu|.
double weighted_variation(const WeightFunction& f, const ComplexMeasure& nu);

// Re sum_t f(t) theta-bar(t) nu({t}): the supremum over |g| <= f, attained in closed form.
double dual_attainment(const WeightFunction& f, const ComplexMeasure& nu);

// max of Re sum_t g(t) nu({t}) over g(t) = f(t) exp(2 pi i k_t / grid).
// The maximisation decouples per atom, so the cost is O(k_size * grid).
// Falls short of weighted_variation(f, nu) by at most weighted_variation * (1 - cos(pi / grid)).
double dual_sup_bruteforce(const WeightFunction& f, const ComplexMeasure& nu, std::size_t grid);

// g nu, i.e. d(g nu) = g d nu.
ComplexMeasure scale_by_function(std::span<const Complex> g, const ComplexMeasure& nu);
ComplexMeasure scale_by_function(const WeightFunction& f, const ComplexMeasure& nu);

// Integral of g against nu.
Complex integrate(std::span<const Complex> g, const ComplexMeasure& nu);

// Integral of |a - b| against |nu|, the L1(|nu|) distance between two functions on K.
double l1_distance(std::span<const Complex> a, std::span<const Complex> b, const ComplexMeasure& nu);

struct IdentityCheck {
  bool holds;
  double lhs;  // ||f nu||
  double rhs;  // integral of f d|nu|
  double deviation;
};

// Checks |f nu| = f |nu| in total variation, to kRelTol.
IdentityCheck variation_identity_check(const WeightFunction& f, const ComplexMeasure& nu);

}  // namespace nadense
