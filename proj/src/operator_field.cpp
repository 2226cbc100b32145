#include "nadense/operator_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nadense/errors.hpp"

namespace nadense {

MeasureField::MeasureField(std::vector<ComplexMeasure> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("MeasureField: point set S must be nonempty");
  const std::size_t k = rows_.front().k_size();
  for (const ComplexMeasure& row : rows_) {
    if (row.k_size() != k) throw DimensionMismatch("MeasureField row", k, row.k_size());
  }
}

MeasureField MeasureField::zero(std::size_t s_size, std::size_t k_size) {
  return MeasureField(std::vector<ComplexMeasure>(s_size, ComplexMeasure::zero(k_size)));
}

MeasureField MeasureField::from_grid(const std::vector<std::vector<Complex>>& grid) {
  std::vector<ComplexMeasure> rows;
  rows.reserve(grid.size());
  for (const auto& atoms : grid) rows.emplace_back(atoms);
  return MeasureField(std::move(rows));
}

MeasureField MeasureField::with_row(std::size_t s, ComplexMeasure row) const {
  if (s >= rows_.size()) throw std::out_of_range("MeasureField::with_row: s outside S");
  if (row.k_size() != k_size()) throw DimensionMismatch("MeasureField::with_row", k_size(), row.k_size());
  std::vector<ComplexMeasure> rows = rows_;
  rows[s] = std::move(row);
  return MeasureField(std::move(rows));
}

Witness::Witness(std::vector<Complex> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("Witness: point set K must be nonempty");
  for (std::size_t t = 0; t < values_.size(); ++t) {
    const double modulus = std::abs(values_[t]);
    if (!std::isfinite(modulus) || modulus > 1.0 + 1e-12)
      throw std::invalid_argument("Witness: |f(" + std::to_string(t) + ")| exceeds 1");
  }
}

Witness Witness::constant(std::size_t k_size, Complex value) {
  return Witness(std::vector<Complex>(k_size, value));
}

double Witness::sup_modulus() const noexcept {
  double best = 0.0;
  for (const Complex& v : values_) best = std::max(best, std::abs(v));
  return best;
}

std::vector<double> row_norms(const MeasureField& mu) {
  std::vector<double> out;
  out.reserve(mu.s_size());
  for (const ComplexMeasure& row : mu.rows()) out.push_back(total_variation(row));
  return out;
}

double field_norm(const MeasureField& mu) {
  const std::vector<double> norms = row_norms(mu);
  return *std::max_element(norms.begin(), norms.end());
}

double field_distance(const MeasureField& lhs, const MeasureField& rhs) {
  if (lhs.s_size() != rhs.s_size()) throw DimensionMismatch("field_distance", lhs.s_size(), rhs.s_size());
  if (lhs.k_size() != rhs.k_size()) throw DimensionMismatch("field_distance", lhs.k_size(), rhs.k_size());
  double best = 0.0;
  for (std::size_t s = 0; s < lhs.s_size(); ++s) {
    best = std::max(best, total_variation(lhs.row(s) - rhs.row(s)));
  }
  return best;
}

std::vector<Complex> apply(const MeasureField& mu, const Witness& f) {
  if (f.k_size() != mu.k_size()) throw DimensionMismatch("apply", mu.k_size(), f.k_size());
  std::vector<Complex> out;
  out.reserve(mu.s_size());
  for (const ComplexMeasure& row : mu.rows()) out.push_back(integrate(f.values(), row));
  return out;
}

double attainment_defect(const MeasureField& mu, const Witness& f) {
  const std::vector<Complex> image = apply(mu, f);
  double sup = 0.0;
  for (const Complex& v : image) sup = std::max(sup, std::abs(v));
  return field_norm(mu) - sup;
}

Witness oracle_exact_na(const MeasureField& mu) {
  const std::vector<double> norms = row_norms(mu);
  const std::size_t peak = argmax_index(norms);
  if (norms[peak] == 0.0) throw std::domain_error("oracle_exact_na: zero field has no peak row");
  return Witness(polar_decompose(mu.row(peak)).conjugate_phases());
}

MeasureField scale_rows(std::span<const Complex> g, const MeasureField& mu) {
  std::vector<ComplexMeasure> rows;
  rows.reserve(mu.s_size());
  for (const ComplexMeasure& row : mu.rows()) rows.push_back(scale_by_function(g, row));
  return MeasureField(std::move(rows));
}

std::size_t argmax_index(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmax_index: empty range");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

}  // namespace nadense
