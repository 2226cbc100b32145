#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nadense/measure.hpp"

namespace nadense {

// Sorted, duplicate-free subset of S. On a finite discrete S every subset is open.
using IndexSet = std::vector<std::size_t>;

// Operator T : C(K) -> C(S) stored as one measure per point of S:
// (T f)(s) = integral of f d mu(s), ||T|| = max_s ||mu(s)||.
class MeasureField {
 public:
  // Throws std::invalid_argument on an empty S or rows over different K.
  explicit MeasureField(std::vector<ComplexMeasure> rows);

  static MeasureField zero(std::size_t s_size, std::size_t k_size);
  static MeasureField from_grid(const std::vector<std::vector<Complex>>& grid);

  std::size_t s_size() const noexcept { return rows_.size(); }
  std::size_t k_size() const noexcept { return rows_.front().k_size(); }
  const ComplexMeasure& row(std::size_t s) const { return rows_.at(s); }
  std::span<const ComplexMeasure> rows() const noexcept { return rows_; }

  // Copy with row s replaced.
  MeasureField with_row(std::size_t s, ComplexMeasure row) const;

  friend bool operator==(const MeasureField&, const MeasureField&) = default;

 private:
  std::vector<ComplexMeasure> rows_;
};

// Element of the closed unit ball of C(K).
class Witness {
 public:
  // Throws std::invalid_argument if some |value| exceeds 1 + 1e-12.
  explicit Witness(std::vector<Complex> values);
  static Witness constant(std::size_t k_size, Complex value = 1.0);

  std::size_t k_size() const noexcept { return values_.size(); }
  std::span<const Complex> values() const noexcept { return values_; }
  double sup_modulus() const noexcept;

 private:
  std::vector<Complex> values_;
};

std::vector<double> row_norms(const MeasureField& mu);
double field_norm(const MeasureField& mu);

// sup_s ||mu'(s) - mu(s)||.
double field_distance(const MeasureField& lhs, const MeasureField& rhs);

std::vector<Complex> apply(const MeasureField& mu, const Witness& f);

// ||T|| - ||T f||_inf.
double attainment_defect(const MeasureField& mu, const Witness& f);

// Conjugate phases of the heaviest row: the exact finite-dimensional attainment witness.
// Throws std::domain_error for the zero field.
Witness oracle_exact_na(const MeasureField& mu);

// Row-wise product g mu(s), the same g on every row.
MeasureField scale_rows(std::span<const Complex> g, const MeasureField& mu);

// First index of the maximum (ties go to the lowest index).
std::size_t argmax_index(std::span<const double> values);

}  // namespace nadense
