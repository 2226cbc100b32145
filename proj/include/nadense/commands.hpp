#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "nadense/iteration.hpp"
#include "nadense/phase_lift.hpp"

namespace nadense {

// Process exit codes; stable contract.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCertificate = 1;
inline constexpr int kExitInput = 2;

struct GenOptions {
  std::uint64_t seed = 1;
  std::size_t k_size = 4;
  std::size_t s_size = 3;
  double norm_scale = 1.0;
  std::optional<std::filesystem::path> out;  // stdout when absent
};

struct RunOptions {
  std::filesystem::path instance;
  IterationConfig config;
  std::optional<std::filesystem::path> trace;  // CSV trace
  std::optional<std::filesystem::path> out;    // certificate summary (also printed)
};

struct CheckOptions {
  std::filesystem::path instance;
  int lemma = 1;
  double delta = 0.1;   // lemma 2
  double eps = 0.1;     // lemma 3
  double r = 0.81;      // lemma 3
  LiftMode mode = LiftMode::exact;
  std::optional<std::uint64_t> arcs;
  std::size_t grid = 720;  // lemma 1 dual oracle
  std::uint64_t seed = 1;  // lemma 1 weight functions
};

struct SweepOptions {
  std::vector<std::uint64_t> seeds;
  std::vector<std::pair<std::size_t, std::size_t>> sizes;  // (k_size, s_size)
  std::vector<double> rhos;
  std::vector<double> rs;
  double norm_scale = 1.0;
  LiftMode mode = LiftMode::exact;
  double defect_tol = 1e-8;
  std::size_t max_iter = 1000;
  std::optional<std::filesystem::path> out;  // stdout when absent
};

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err);
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_check(const CheckOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err);

// "KxS", e.g. "4x3". Throws InputError.
std::pair<std::size_t, std::size_t> parse_size(const std::string& text);

}  // namespace nadense
