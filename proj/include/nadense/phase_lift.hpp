#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nadense/certificate.hpp"
#include "nadense/measure.hpp"
#include "nadense/operator_field.hpp"

namespace nadense {

enum class LiftMode {
  exact,     // h is the conjugate phase of the peak row itself
  faithful,  // h is that phase snapped to the midpoint of a circle arc
};

const char* to_string(LiftMode mode) noexcept;
// Accepts "exact" and "faithful"; throws InputError otherwise.
LiftMode parse_lift_mode(const std::string& text);

// Function on K with |h(t)| = 1 everywhere. Values are renormalised on construction.
class UnimodularFunction {
 public:
  // Throws std::invalid_argument on an empty vector or a zero / non-finite value.
  explicit UnimodularFunction(std::vector<Complex> values);
  static UnimodularFunction constant_one(std::size_t k_size);

  std::size_t k_size() const noexcept { return values_.size(); }
  std::span<const Complex> values() const noexcept { return values_; }
  const Complex& operator[](std::size_t t) const { return values_[t]; }

  UnimodularFunction conjugate() const;
  Witness as_witness() const { return Witness(values_); }

  friend bool operator==(const UnimodularFunction&, const UnimodularFunction&) = default;

 private:
  std::vector<Complex> values_;
};

// The unit circle cut into N congruent half-open arcs; arc j is centred at
// lambda_j = exp(2 pi i j / N). Every arc has chord diameter below 2 pi / N.
class CirclePartition {
 public:
  static CirclePartition with_arcs(std::uint64_t arc_count);
  // N = ceil(2 pi / eta) arcs, so every arc has diameter below eta.
  static CirclePartition for_diameter(double eta);

  std::uint64_t arc_count() const noexcept { return arc_count_; }
  double arc_diameter() const noexcept { return arc_diameter_; }
  Complex representative(std::uint64_t arc) const;
  // Arc containing the direction of z (z = 0 maps to the arc of 1).
  std::uint64_t arc_of(Complex z) const;

 private:
  CirclePartition(std::uint64_t arc_count, double arc_diameter)
      : arc_count_(arc_count), arc_diameter_(arc_diameter) {}

  std::uint64_t arc_count_;
  double arc_diameter_;
};

// Smallest N with (2 pi / N) * mass < budget by at least kSlackFloor. Returns 1 for zero mass.
std::uint64_t arcs_for_budget(double mass, double budget);

struct LiftResult {
  UnimodularFunction h;
  IndexSet U;
  std::vector<double> slack;  // Re int h d mu(s) - (||mu|| - delta), parallel to U
  std::size_t peak;           // s0
  double delta;
  double peak_value;          // Re int h d mu(s0)
  LiftMode mode;
  std::optional<std::uint64_t> arcs;  // partition size used in faithful mode
  Certificate certificate;
};

// Heaviest row (lowest index on ties). Throws std::domain_error for the zero field
// and std::invalid_argument for delta <= 0.
std::size_t select_peak_point(const MeasureField& mu, double delta);

// h(t) = lambda_j where phi(t) = theta-bar(t) lies in arc j.
UnimodularFunction quantize_phases(const ComplexMeasure& nu, const CirclePartition& partition);

// Unimodular h and nonempty U with Re int h d mu(s) > ||mu|| - delta on U.
// Faithful mode picks N so that (2 pi / N) ||mu(s0)|| < delta / 8 unless `arcs` is given,
// in which case a too coarse partition throws std::invalid_argument.
LiftResult lift(const MeasureField& mu, double delta, LiftMode mode = LiftMode::exact,
                std::optional<std::uint64_t> arcs = std::nullopt);

}  // namespace nadense
