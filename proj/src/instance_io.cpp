#include "nadense/instance_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nadense/errors.hpp"

namespace nadense {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  std::string out = buf;
  if (std::isfinite(value) && out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

std::string write_instance(const Instance& instance) {
  const MeasureField& mu = instance.mu;
  std::string out = "{\n";
  out += "  \"k_size\": " + std::to_string(mu.k_size()) + ",\n";
  out += "  \"s_size\": " + std::to_string(mu.s_size()) + ",\n";
  out += "  \"mu\": [\n";
  for (std::size_t s = 0; s < mu.s_size(); ++s) {
    out += "    [";
    for (std::size_t t = 0; t < mu.k_size(); ++t) {
      const Complex& z = mu.row(s)[t];
      out += (t ? ", [" : "[") + format_double(z.real()) + ", " + format_double(z.imag()) + "]";
    }
    out += s + 1 < mu.s_size() ? "],\n" : "]\n";
  }
  out += "  ],\n";
  out += "  \"meta\": " + (instance.meta.is_null() ? std::string("{}") : instance.meta.dump()) + "\n";
  out += "}\n";
  return out;
}

Instance parse_instance(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("instance: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("instance: top level must be an object");
  auto size_field = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_unsigned() || doc[key].get<std::uint64_t>() == 0)
      throw InputError(std::string("instance: '") + key + "' must be a positive integer");
    return static_cast<std::size_t>(doc[key].get<std::uint64_t>());
  };
  const std::size_t k_size = size_field("k_size");
  const std::size_t s_size = size_field("s_size");
  if (!doc.contains("mu") || !doc["mu"].is_array()) throw InputError("instance: 'mu' must be an array");
  const nlohmann::json& grid = doc["mu"];
  if (grid.size() != s_size) throw InputError("instance: 'mu' has " + std::to_string(grid.size()) +
                                              " rows, s_size is " + std::to_string(s_size));
  std::vector<ComplexMeasure> rows;
  rows.reserve(s_size);
  for (std::size_t s = 0; s < s_size; ++s) {
    const nlohmann::json& row = grid[s];
    if (!row.is_array() || row.size() != k_size)
      throw InputError("instance: row " + std::to_string(s) + " must hold " + std::to_string(k_size) + " entries");
    std::vector<Complex> atoms;
    atoms.reserve(k_size);
    for (std::size_t t = 0; t < k_size; ++t) {
      const nlohmann::json& entry = row[t];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
        throw InputError("instance: entry (" + std::to_string(s) + ", " + std::to_string(t) +
                         ") must be a [re, im] pair");
      const double re = entry[0].get<double>();
      const double im = entry[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im))
        throw InputError("instance: entry (" + std::to_string(s) + ", " + std::to_string(t) + ") is not finite");
      atoms.emplace_back(re, im);
    }
    rows.emplace_back(std::move(atoms));
  }
  Instance out{MeasureField(std::move(rows)), nlohmann::json::object()};
  if (doc.contains("meta")) {
    if (!doc["meta"].is_object()) throw InputError("instance: 'meta' must be an object");
    out.meta = doc["meta"];
  }
  return out;
}

void save_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  file << text;
  if (!file) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::string load_text(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

Instance load_instance(const std::filesystem::path& path) { return parse_instance(load_text(path)); }

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Instance gen(std::uint64_t seed, std::size_t k_size, std::size_t s_size, double norm_scale) {
  if (k_size == 0 || s_size == 0) throw std::invalid_argument("gen: k_size and s_size must be at least 1");
  if (!(norm_scale >= 0.0) || !std::isfinite(norm_scale))
    throw std::invalid_argument("gen: norm_scale must be a finite nonnegative number");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Complex>> grid(s_size, std::vector<Complex>(k_size));
  for (auto& row : grid) {
    for (Complex& z : row) {
      const double modulus = uniform01(rng);
      const double angle = 2.0 * std::numbers::pi * uniform01(rng);
      z = std::polar(modulus, angle);
    }
  }
  const double norm = field_norm(MeasureField::from_grid(grid));
  for (auto& row : grid) {
    for (Complex& z : row) z = (norm_scale == 0.0 || norm == 0.0) ? Complex{} : z * (norm_scale / norm);
  }
  nlohmann::json meta = {{"generator", "uniform-phase"}, {"seed", seed}, {"norm_scale", norm_scale}};
  return Instance{MeasureField::from_grid(grid), std::move(meta)};
}

std::string trace_csv(const IterationTrace& trace) {
  std::string out = "# nadense trace v1\n";
  out += "n,eps_n,norm_nu,case,perturbation,bound,defect_at_one,min_slack\n";
  for (const TraceRow& row : trace.rows) {
    out += std::to_string(row.n) + "," + format_double(row.eps) + "," + format_double(row.norm) + "," +
           std::to_string(static_cast<int>(row.case_tag)) + "," + format_double(row.perturbation) + "," +
           format_double(row.bound) + "," + format_double(row.defect) + "," + format_double(row.min_slack) + "\n";
  }
  return out;
}

std::string certificate_summary(const RunResult& result, const IterationConfig& config, const nlohmann::json& meta) {
  const NACertificate& cert = result.certificate;
  const IterationTrace& trace = result.trace;
  std::string out = "# nadense certificate v1\n";
  auto line = [&](const std::string& key, const std::string& value) { out += key + ": " + value + "\n"; };
  line("status", to_string(cert.status));
  line("mode", to_string(config.mode));
  line("seed", meta.contains("seed") ? meta["seed"].dump() : "none");
  line("k_size", std::to_string(cert.final_field.k_size()));
  line("s_size", std::to_string(cert.final_field.s_size()));
  line("rho", format_double(config.rho));
  line("r", format_double(config.r));
  line("eps0", format_double(trace.eps0));
  line("defect_tol", format_double(config.defect_tol));
  line("norm_mu", format_double(trace.nu0_norm));
  line("lift_peak_row", std::to_string(trace.lift.peak));
  line("lift_U_size", std::to_string(trace.lift.U.size()));
  line("steps", std::to_string(cert.steps));
  line("trace_rows", std::to_string(trace.rows.size()));
  line("eps_final", format_double(cert.eps_final));
  line("distance", format_double(cert.distance));
  line("nu_distance", format_double(cert.nu_distance));
  line("final_defect", format_double(cert.final_defect));
  line("oracle_defect", format_double(cert.oracle_defect));
  line("all_steps_certified", cert.all_steps_certified ? "true" : "false");
  for (const Inequality& e : cert.checks.entries()) {
    line("check." + e.name, std::string(e.holds() ? "pass" : "FAIL") + " lhs=" + format_double(e.lhs) +
                                " rhs=" + format_double(e.rhs));
  }
  return out;
}

}  // namespace nadense
