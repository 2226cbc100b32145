#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nadense {

// Numeric floors shared by every certificate in the library.
inline constexpr double kSlackFloor = 1e-12;  // minimum slack of a strict inequality
inline constexpr double kArithTol = 1e-12;    // pure arithmetic identities (relative)
inline constexpr double kRelTol = 1e-9;       // derived equality checks (relative)

// Two objects live over point sets of different size.
class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(const std::string& what, std::size_t expected, std::size_t actual)
      : std::invalid_argument(what + ": expected size " + std::to_string(expected) +
                              ", got " + std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

// A reduction step was handed a set U on which Re mu(s)(K) > M - eps fails.
class HypothesisViolation : public std::domain_error {
 public:
  HypothesisViolation(std::size_t index, double slack)
      : std::domain_error("hypothesis Re mu(s)(K) > M - eps fails at s=" + std::to_string(index) +
                          " (slack " + std::to_string(slack) + ")"),
        index_(index),
        slack_(slack) {}

  std::size_t index() const noexcept { return index_; }
  double slack() const noexcept { return slack_; }

 private:
  std::size_t index_;
  double slack_;
};

// A checked inequality did not hold (or held with slack below kSlackFloor).
class CertificateFailure : public std::runtime_error {
 public:
  CertificateFailure(std::string inequality, double slack)
      : std::runtime_error("certificate '" + inequality + "' failed (slack " + format_slack(slack) +
                           ")"),
        inequality_(std::move(inequality)),
        slack_(slack) {}

  const std::string& inequality() const noexcept { return inequality_; }
  double slack() const noexcept { return slack_; }

 private:
  static std::string format_slack(double slack);

  std::string inequality_;
  double slack_;
};

// Malformed instance file or command-line input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nadense
