#include "nadense/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "nadense/errors.hpp"

namespace nadense {

std::string CertificateFailure::format_slack(double slack) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", slack);
  return buf;
}

bool Inequality::holds() const noexcept {
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) return false;
  switch (relation) {
    case Relation::strict_less:
      return slack() >= kSlackFloor;
    case Relation::less_equal:
      return slack() >= -kArithTol * std::max(1.0, std::abs(rhs));
  }
  return false;
}

void Certificate::require_less(std::string name, double lhs, double rhs) {
  entries_.push_back({std::move(name), lhs, rhs, Relation::strict_less});
}

void Certificate::require_less_equal(std::string name, double lhs, double rhs) {
  entries_.push_back({std::move(name), lhs, rhs, Relation::less_equal});
}

void Certificate::append(const Certificate& other, const std::string& prefix) {
  for (const Inequality& e : other.entries_) {
    entries_.push_back({prefix + e.name, e.lhs, e.rhs, e.relation});
  }
}

bool Certificate::all_hold() const noexcept { return first_failure() == nullptr; }

const Inequality* Certificate::first_failure() const noexcept {
  for (const Inequality& e : entries_) {
    if (!e.holds()) return &e;
  }
  return nullptr;
}

const Inequality* Certificate::find(const std::string& name) const noexcept {
  for (const Inequality& e : entries_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

double Certificate::min_strict_slack() const noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (const Inequality& e : entries_) {
    if (e.relation == Relation::strict_less) best = std::min(best, e.slack());
  }
  return best;
}

void Certificate::enforce() const {
  if (const Inequality* failed = first_failure()) throw CertificateFailure(failed->name, failed->slack());
}

}  // namespace nadense
