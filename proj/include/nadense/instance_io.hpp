#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>

#include "json.hpp"
#include "nadense/iteration.hpp"
#include "nadense/operator_field.hpp"

namespace nadense {

// On-disk problem instance:
//   { "k_size": int, "s_size": int, "mu": [[[re, im], ...], ...], "meta": {...} }
struct Instance {
  MeasureField mu;
  nlohmann::json meta = nlohmann::json::object();
};

// Shortest "%.17g" rendering that still reads back as a JSON float ("5" becomes "5.0").
std::string format_double(double value);

std::string write_instance(const Instance& instance);
// Throws InputError on malformed text, mismatched sizes or non-finite entries.
Instance parse_instance(std::string_view text);

void save_text(const std::filesystem::path& path, const std::string& text);
std::string load_text(const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double uniform01(std::mt19937_64& rng);

// Moduli uniform in [0, 1), phases uniform on the circle, then the whole field scaled so
// that field_norm equals norm_scale. Same seed, same bits.
Instance gen(std::uint64_t seed, std::size_t k_size, std::size_t s_size, double norm_scale);

// "# nadense trace v1" header comment, then
// n,eps_n,norm_nu,case,perturbation,bound,defect_at_one,min_slack
std::string trace_csv(const IterationTrace& trace);

// "key: value" certificate summary.
std::string certificate_summary(const RunResult& result, const IterationConfig& config,
                                const nlohmann::json& meta);

}  // namespace nadense
