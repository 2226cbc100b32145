#include "nadense/commands.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "nadense/defect_reduction.hpp"
#include "nadense/errors.hpp"
#include "nadense/instance_io.hpp"
#include "nadense/measure.hpp"

namespace nadense {
namespace {

void print_inequality(std::ostream& out, const std::string& prefix, const Inequality& e) {
  out << "  [" << (e.holds() ? "PASS" : "FAIL") << "] " << prefix << e.name << ": lhs=" << format_double(e.lhs)
      << " rhs=" << format_double(e.rhs) << " slack=" << format_double(e.slack()) << "\n";
}

// Prints and returns whether it held.
bool report(std::ostream& out, const std::string& name, double lhs, double rhs, bool holds) {
  out << "  [" << (holds ? "PASS" : "FAIL") << "] " << name << ": lhs=" << format_double(lhs)
      << " rhs=" << format_double(rhs) << " slack=" << format_double(rhs - lhs) << "\n";
  return holds;
}

std::string join(const IndexSet& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) out += (i ? "," : "") + std::to_string(set[i]);
  return out + "}";
}

bool check_lemma1(const Instance& instance, const CheckOptions& options, std::ostream& out) {
  bool ok = true;
  std::mt19937_64 rng(options.seed);
  const double grid_gap = 1.0 - std::cos(std::numbers::pi / static_cast<double>(options.grid));
  out << "lemma 1: dual representation of weighted variation (grid " << options.grid << ")\n";
  for (std::size_t s = 0; s < instance.mu.s_size(); ++s) {
    const ComplexMeasure& nu = instance.mu.row(s);
    std::vector<double> weights(nu.k_size());
    for (double& w : weights) w = 2.0 * uniform01(rng);
    for (const WeightFunction& f : {WeightFunction::constant(nu.k_size(), 1.0), WeightFunction(weights)}) {
      const double variation = weighted_variation(f, nu);
      const double attained = dual_attainment(f, nu);
      const double sup = dual_sup_bruteforce(f, nu, options.grid);
      const std::string label = "row[" + std::to_string(s) + "]";
      ok &= report(out, label + " sup_below_variation", sup, variation, sup <= variation + kArithTol * std::max(1.0, variation));
      ok &= report(out, label + " grid_gap", variation - sup, variation * grid_gap,
                   variation - sup <= variation * grid_gap + kArithTol * std::max(1.0, variation));
      ok &= report(out, label + " attainment", std::abs(attained - variation), kArithTol * std::max(1.0, variation),
                   std::abs(attained - variation) <= kArithTol * std::max(1.0, variation));
      const IdentityCheck identity = variation_identity_check(f, nu);
      ok &= report(out, label + " variation_identity", identity.lhs, identity.rhs, identity.holds);
    }
  }
  return ok;
}

bool check_lemma2(const Instance& instance, const CheckOptions& options, std::ostream& out) {
  const LiftResult result = lift(instance.mu, options.delta, options.mode, options.arcs);
  out << "lemma 2: unimodular lift (delta " << format_double(options.delta) << ", mode " << to_string(options.mode)
      << ")\n";
  if (field_norm(instance.mu) == 0.0) out << "  zero field: h = 1, U = S\n";
  out << "  peak row s0 = " << result.peak << ", Re int h dmu(s0) = " << format_double(result.peak_value) << "\n";
  if (result.arcs) out << "  arcs N = " << *result.arcs << "\n";
  out << "  U = " << join(result.U) << " (" << result.U.size() << " of " << instance.mu.s_size() << ")\n";
  for (const Inequality& e : result.certificate.entries()) print_inequality(out, "", e);
  return result.certificate.all_hold() && !result.U.empty();
}

bool check_lemma3(const Instance& instance, const CheckOptions& options, std::ostream& out) {
  out << "lemma 3: defect reduction (eps " << format_double(options.eps) << ", r " << format_double(options.r)
      << ", mode " << to_string(options.mode) << ")\n";
  const ReductionParams params = ReductionParams::with_defaults(options.r, options.eps, options.mode);
  if (field_norm(instance.mu) == 0.0) {
    const ReductionOutcome outcome = reduce(instance.mu, {0}, params);
    out << "  trivial branch: M = 0, mu' = mu, U' = U, perturbation " << format_double(outcome.perturbation) << "\n";
    return outcome.field == instance.mu;
  }
  // Rotate by the exact lift first so that the hypothesis holds on a nonempty U.
  const LiftResult lifted = lift(instance.mu, options.eps, LiftMode::exact);
  const MeasureField nu = scale_rows(lifted.h.values(), instance.mu);
  IndexSet U;
  const double norm = field_norm(nu);
  for (std::size_t s : lifted.U) {
    if (nu.row(s).mass().real() - (norm - options.eps) >= kSlackFloor) U.push_back(s);
  }
  const ReductionOutcome outcome = reduce(nu, U, params);
  out << "  lifted by h from row " << lifted.peak << ", U = " << join(U) << "\n";
  out << "  case " << static_cast<int>(outcome.case_tag) << " at row " << outcome.active_row << ", U' = "
      << join(outcome.surviving) << "\n";
  for (const Inequality& e : outcome.certificate.entries()) print_inequality(out, "", e);
  bool ok = outcome.certificate.all_hold();
  ok &= report(out, "perturbation_vs_bound", outcome.perturbation, outcome.bound,
               outcome.perturbation <= outcome.bound + kArithTol);
  return ok && !outcome.surviving.empty();
}

}  // namespace

std::pair<std::size_t, std::size_t> parse_size(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos || x == 0 || x + 1 == text.size()) throw InputError("size '" + text + "' is not KxS");
  try {
    std::size_t used_k = 0;
    std::size_t used_s = 0;
    const std::string k_text = text.substr(0, x);
    const std::string s_text = text.substr(x + 1);
    const unsigned long k = std::stoul(k_text, &used_k);
    const unsigned long s = std::stoul(s_text, &used_s);
    if (used_k != k_text.size() || used_s != s_text.size() || k == 0 || s == 0) throw std::invalid_argument(text);
    return {k, s};
  } catch (const std::logic_error&) {
    throw InputError("size '" + text + "' is not KxS with positive integers");
  }
}

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const std::string text = write_instance(gen(options.seed, options.k_size, options.s_size, options.norm_scale));
    if (options.out) {
      save_text(*options.out, text);
    } else {
      out << text;
    }
    return kExitPass;
  } catch (const std::exception& e) {
    err << "gen: " << e.what() << "\n";
    return kExitInput;
  }
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  std::optional<Instance> instance;
  try {
    instance = load_instance(options.instance);
  } catch (const std::exception& e) {
    err << "run: " << e.what() << "\n";
    return kExitInput;
  }
  try {
    const RunResult result = run(instance->mu, options.config);
    const TraceReport verified = verify_trace(result.trace, result.trace.nu0_norm, options.config.rho);
    if (options.trace) save_text(*options.trace, trace_csv(result.trace));
    std::string summary = certificate_summary(result, options.config, instance->meta);
    summary += std::string("trace_verified: ") + (verified.passed() ? "true" : "false") + "\n";
    for (const TraceCheck& failed : verified.failures()) {
      summary += "trace_failure: " + failed.name + (failed.step ? "[" + std::to_string(*failed.step) + "]" : "") +
                 " lhs=" + format_double(failed.lhs) + " rhs=" + format_double(failed.rhs) + "\n";
    }
    if (options.out) save_text(*options.out, summary);
    out << summary;
    return result.certificate.status == RunStatus::pass && verified.passed() ? kExitPass : kExitCertificate;
  } catch (const CertificateFailure& e) {
    err << "run: " << e.what() << "\n";
    return kExitCertificate;
  } catch (const std::exception& e) {
    err << "run: " << e.what() << "\n";
    return kExitInput;
  }
}

int cmd_check(const CheckOptions& options, std::ostream& out, std::ostream& err) {
  std::optional<Instance> instance;
  try {
    instance = load_instance(options.instance);
  } catch (const std::exception& e) {
    err << "check: " << e.what() << "\n";
    return kExitInput;
  }
  try {
    bool ok = false;
    switch (options.lemma) {
      case 1:
        ok = check_lemma1(*instance, options, out);
        break;
      case 2:
        ok = check_lemma2(*instance, options, out);
        break;
      case 3:
        ok = check_lemma3(*instance, options, out);
        break;
      default:
        err << "check: --lemma must be 1, 2 or 3\n";
        return kExitInput;
    }
    out << (ok ? "result: pass\n" : "result: FAIL\n");
    return ok ? kExitPass : kExitCertificate;
  } catch (const CertificateFailure& e) {
    err << "check: " << e.what() << "\n";
    return kExitCertificate;
  } catch (const HypothesisViolation& e) {
    err << "check: " << e.what() << "\n";
    return kExitCertificate;
  } catch (const std::exception& e) {
    err << "check: " << e.what() << "\n";
    return kExitInput;
  }
}

int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err) {
  if (options.seeds.empty() || options.sizes.empty() || options.rhos.empty() || options.rs.empty()) {
    err << "sweep: --seeds, --sizes, --rho and --r each need at least one value\n";
    return kExitInput;
  }
  std::string table = "# nadense sweep v1\n";
  table += "seed,k_size,s_size,rho,r,mode,eps0,steps,trace_rows,distance,final_defect,eps_final,status\n";
  bool all_pass = true;
  for (std::uint64_t seed : options.seeds) {
    for (const auto& [k_size, s_size] : options.sizes) {
      const Instance instance = gen(seed, k_size, s_size, options.norm_scale);
      for (double rho : options.rhos) {
        for (double r : options.rs) {
          IterationConfig config;
          config.rho = rho;
          config.r = r;
          config.mode = options.mode;
          config.defect_tol = options.defect_tol;
          config.max_iter = options.max_iter;
          std::string row = std::to_string(seed) + "," + std::to_string(k_size) + "," + std::to_string(s_size) + "," +
                            format_double(rho) + "," + format_double(r) + "," + to_string(options.mode) + ",";
          try {
            const RunResult result = run(instance.mu, config);
            const bool verified = verify_trace(result.trace, result.trace.nu0_norm, rho).passed();
            const NACertificate& cert = result.certificate;
            const bool pass = cert.status == RunStatus::pass && verified;
            all_pass &= pass;
            row += format_double(result.trace.eps0) + "," + std::to_string(cert.steps) + "," +
                   std::to_string(result.trace.rows.size()) + "," + format_double(cert.distance) + "," +
                   format_double(cert.final_defect) + "," + format_double(cert.eps_final) + "," +
                   (pass ? "pass" : to_string(cert.status == RunStatus::pass ? RunStatus::fail : cert.status));
          } catch (const std::exception& e) {
            all_pass = false;
            err << "sweep: seed " << seed << ": " << e.what() << "\n";
            row += ",,,,,,error";
          }
          table += row + "\n";
        }
      }
    }
  }
  try {
    if (options.out) {
      save_text(*options.out, table);
    } else {
      out << table;
    }
  } catch (const std::exception& e) {
    err << "sweep: " << e.what() << "\n";
    return kExitInput;
  }
  return all_pass ? kExitPass : kExitCertificate;
}

}  // namespace nadense
