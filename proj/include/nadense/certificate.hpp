#pragma once

#include <span>
#include <string>
#include <vector>

namespace nadense {

enum class Relation {
  strict_less,  // lhs < rhs, with slack at least kSlackFloor
  less_equal,   // lhs <= rhs, up to kArithTol * max(1, |rhs|)
};

// One inequality of a proof, evaluated in floating point.
struct Inequality {
  std::string name;
  double lhs;
  double rhs;
  Relation relation;

  double slack() const noexcept { return rhs - lhs; }
  bool holds() const noexcept;
};

// Ordered list of checked inequalities. Certificates are built as a step runs and
// enforced before the step returns, so a returned outcome always carries a valid one.
class Certificate {
 public:
  void require_less(std::string name, double lhs, double rhs);
  void require_less_equal(std::string name, double lhs, double rhs);
  void append(const Certificate& other, const std::string& prefix = {});

  std::span<const Inequality> entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  bool all_hold() const noexcept;
  const Inequality* first_failure() const noexcept;
  const Inequality* find(const std::string& name) const noexcept;

  // Smallest slack among the strict entries; +inf without any.
  double min_strict_slack() const noexcept;

  // Throws CertificateFailure naming the first failed inequality.
  void enforce() const;

 private:
  std::vector<Inequality> entries_;
};

}  // namespace nadense
