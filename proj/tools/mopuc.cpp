// Command-line front end: deterministic coefficient generation, sum-rule
// verification reports, the bundled property suite, and gem partial sums.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mopuc/errors.hpp"
#include "mopuc/random.hpp"
#include "mopuc/schur.hpp"
#include "mopuc/serialization.hpp"
#include "mopuc/sumrule.hpp"

namespace {

using namespace mopuc;

struct RunConfig {
  std::uint64_t seed = 1;
  Index dim = 1;
  int trunc = 8;
  Index grid = 4096;
  double tol = 1e-6;
  double norm_cap = 0.8;
  std::vector<double> g_list;
  std::string out;
  std::string format = "json";

  void validate() const {
    if (grid < 8 || (grid & (grid - 1)) != 0)
      throw BadConfig("--grid must be a power of two >= 8");
    if (trunc < 0 || grid < 8 * std::max(1, trunc))
      throw BadConfig("--grid must be at least 8 * --trunc");
    for (double g : g_list)
      if (std::abs(g) > 1.0) throw BadConfig("--g entries must satisfy |g| <= 1");
    if (format != "json" && format != "csv")
      throw BadConfig("--format must be json or csv");
  }
  std::vector<double> gs_or_default() const {
    return g_list.empty() ? std::vector<double>{0.0} : g_list;
  }
};

int worker_count(std::size_t jobs) {
  unsigned n = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("MOPUC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = static_cast<unsigned>(v);
  }
  if (n < 1) n = 1;
  return static_cast<int>(std::min<std::size_t>(n, jobs));
}

// Run fn(i) for i in [0, jobs) on a bounded pool; results land by index.
template <typename Fn>
void parallel_indexed(std::size_t jobs, Fn&& fn) {
  const int workers = worker_count(jobs);
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

void write_text(const std::string& out, const std::string& text, bool append) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, append ? std::ios::app : std::ios::trunc);
  if (!f) throw BadConfig("cannot open output file '" + out + "'");
  f << text;
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw BadConfig("cannot open input file '" + path + "'");
  return nlohmann::json::parse(f);
}

// ---- gen ----

int cmd_gen(const RunConfig& cfg) {
  cfg.validate();
  ContractionSampler rng(cfg.seed);
  VerblunskySequence alpha = rng.sequence(cfg.dim, cfg.trunc, cfg.norm_cap);
  write_text(cfg.out, verblunsky_to_json(alpha).dump(2) + "\n", false);
  return 0;
}

// ---- sumrule ----

struct SumruleInput {
  std::optional<VerblunskySequence> alpha; // coefficient file
  std::optional<MatrixMeasure> measure;    // measure file or builtin
};

SumruleInput load_sumrule_input(const std::string& input, const RunConfig& cfg) {
  SumruleInput in;
  if (is_builtin_measure_name(input)) {
    in.measure = builtin_measure(input, cfg.dim, cfg.grid);
    return in;
  }
  nlohmann::json j = load_json(input);
  if (j.contains("coeffs"))
    in.alpha = verblunsky_from_json(j);
  else
    in.measure = measure_from_json(j);
  return in;
}

int cmd_sumrule(const std::string& input, const RunConfig& cfg) {
  cfg.validate();
  SumruleInput in = load_sumrule_input(input, cfg);
  std::optional<VerblunskySequence> alpha = in.alpha;
  if (!alpha) // series side of a measure input: extract to the truncation depth
    alpha = verblunsky_from_measure(*in.measure, cfg.trunc);

  const std::vector<double> gs = cfg.gs_or_default();
  std::vector<SumRuleReport> reports(gs.size());
  std::exception_ptr failure;
  parallel_indexed(gs.size(), [&](std::size_t i) {
    try {
      reports[i] = in.measure ? sumrule_report(*in.measure, *alpha, gs[i])
                              : sumrule_report(*alpha, gs[i], cfg.grid);
    } catch (...) {
      failure = std::current_exception();
    }
  });
  if (failure) std::rethrow_exception(failure);

  bool all_ok = true;
  for (const auto& r : reports) all_ok = all_ok && r.residual < cfg.tol;

  if (cfg.format == "csv") {
    std::string text;
    const bool append = !cfg.out.empty() && std::filesystem::exists(cfg.out) &&
                        std::filesystem::file_size(cfg.out) > 0;
    if (!append) text += report_csv_header() + "\n";
    for (const auto& r : reports) text += report_csv_row(r) + "\n";
    write_text(cfg.out, text, append);
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    write_text(cfg.out, arr.dump(2) + "\n", false);
  }
  return all_ok ? 0 : 1;
}

// ---- verify ----

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
};

// Draws whose measure the grid cannot represent within `defect_tol` are
// redrawn: those probe grid resolution, not the identities under test.
VerblunskySequence representable_draw(ContractionSampler& rng, Index dim, int count,
                                      Index grid, double defect_tol, double cap) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    VerblunskySequence alpha = rng.sequence(dim, count, cap);
    if (bernstein_szego_grid_defect(alpha, grid) < defect_tol) return alpha;
  }
  throw TrivialMeasure("no grid-representable draw found");
}

int cmd_verify(const RunConfig& cfg) {
  cfg.validate();
  const Index p = cfg.dim;
  const int n = std::max(1, cfg.trunc);
  const Index m = cfg.grid;
  const int trials = 10;
  std::vector<CheckResult> results;

  ContractionSampler rng(cfg.seed);
  {
    CheckResult r{"round_trip"};
    for (int t = 0; t < trials; ++t) {
      VerblunskySequence alpha = representable_draw(rng, p, n, m, 1e-11, cfg.norm_cap);
      VerblunskySequence back =
          extract_verblunsky_gram_schmidt(bernstein_szego_measure(alpha, m), n);
      for (int k = 0; k < n; ++k)
        r.max_residual = std::max(r.max_residual,
                                  (back[k] - alpha[k]).cwiseAbs().maxCoeff());
    }
    results.push_back(r);
  }
  {
    CheckResult r{"dual_path"};
    for (int t = 0; t < trials; ++t) {
      VerblunskySequence alpha = representable_draw(rng, p, n, m, 1e-11, cfg.norm_cap);
      MatrixMeasure mu = bernstein_szego_measure(alpha, m);
      VerblunskySequence gs = extract_verblunsky_gram_schmidt(mu, n);
      VerblunskySequence sc = extract_verblunsky_schur(mu, n);
      for (int k = 0; k < n; ++k)
        r.max_residual =
            std::max(r.max_residual, (gs[k] - sc[k]).cwiseAbs().maxCoeff());
    }
    results.push_back(r);
  }
  {
    CheckResult r{"step_rule"};
    for (int t = 0; t < trials; ++t) {
      VerblunskySequence alpha = representable_draw(rng, p, n, m, 1e-8, cfg.norm_cap);
      const double g = 0.1 * (t % 11);
      r.max_residual = std::max(r.max_residual, step_rule_residual(alpha, g, m));
    }
    results.push_back(r);
  }
  {
    CheckResult r{"ff1_identity"};
    for (int t = 0; t < trials; ++t) {
      VerblunskySequence alpha = rng.sequence(p, n, cfg.norm_cap);
      MatrixMeasure mu = bernstein_szego_measure(alpha, m);
      for (int j = 0; j < 8; ++j) {
        const Complex z = std::polar(0.88 * (j + 1) / 8.0, 0.9 * (j + t));
        FF1Residual f = ff1_residual(mu, z);
        r.max_residual = std::max({r.max_residual, f.determinant_identity,
                                   f.defect_identity});
      }
    }
    results.push_back(r);
  }
  {
    CheckResult r{"flip_covariance"};
    for (int t = 0; t < trials; ++t) {
      VerblunskySequence alpha = rng.sequence(p, n, cfg.norm_cap);
      MatrixMeasure mu = bernstein_szego_measure(alpha, m);
      VerblunskySequence direct = extract_verblunsky_gram_schmidt(mu, n);
      VerblunskySequence flipped = extract_verblunsky_gram_schmidt(mu.flipped(), n);
      for (int k = 0; k < n; ++k) {
        const double sign = k % 2 == 0 ? -1.0 : 1.0;
        r.max_residual = std::max(
            r.max_residual, (flipped[k] - sign * direct[k]).cwiseAbs().maxCoeff());
      }
    }
    results.push_back(r);
  }
  {
    CheckResult r{"a_k_positivity"};
    for (int t = 0; t < 200; ++t) {
      const ComplexMatrix ak = rng.strict_contraction(p, 0.1, cfg.norm_cap);
      const ComplexMatrix an = rng.strict_contraction(p, 0.1, cfg.norm_cap);
      for (double g : {0.0, 0.5, 1.0}) {
        const double term = a_k_term(ak, an, g);
        r.max_residual = std::max(r.max_residual, -term);
        r.max_residual =
            std::max(r.max_residual, a_k_lower_bound(ak, an, g) - term);
      }
    }
    r.max_residual = std::max(r.max_residual, 0.0);
    results.push_back(r);
  }
  {
    CheckResult r{"telescoping"};
    for (int t = 0; t < trials; ++t) {
      VerblunskySequence alpha = representable_draw(rng, p, n, m, 1e-8, cfg.norm_cap);
      const double g = 0.2 * (t % 6) - 0.5;
      MatrixMeasure mu = bernstein_szego_measure(alpha, m);
      r.max_residual = std::max(
          r.max_residual,
          std::abs(iterated_G(alpha, g, n).value - lhs_sumrule(mu, g)));
    }
    results.push_back(r);
  }
  {
    CheckResult r{"main_sumrule"};
    for (int t = 0; t < trials; ++t) {
      VerblunskySequence alpha = representable_draw(rng, p, n, m, 1e-8, cfg.norm_cap);
      for (double g : cfg.gs_or_default())
        r.max_residual = std::max(
            r.max_residual, sumrule_report(alpha, g, m).residual);
    }
    results.push_back(r);
  }

  bool all_ok = true;
  std::ostringstream summary;
  for (const auto& r : results) {
    const bool ok = r.max_residual < cfg.tol;
    all_ok = all_ok && ok;
    char line[128];
    std::snprintf(line, sizeof line, "%-16s max residual %10.3e  %s\n",
                  r.name.c_str(), r.max_residual, ok ? "pass" : "FAIL");
    summary << line;
  }
  summary << (all_ok ? "verify: all checks passed\n" : "verify: FAILURES present\n");
  write_text(cfg.out, summary.str(), false);
  return all_ok ? 0 : 1;
}

// ---- gems ----

VerblunskySequence gems_input(const std::string& input, const RunConfig& cfg) {
  auto scalar_of = [](double v) {
    ComplexMatrix mat(1, 1);
    // magnitudes at or above 1 clamp just inside the unit disc
    mat(0, 0) = std::min(v, 1.0 - 1e-9);
    return mat;
  };
  if (input.rfind("geometric:", 0) == 0) {
    std::istringstream ss(input.substr(10));
    double r = 0;
    char sep = 0;
    int count = 0;
    if (!(ss >> r >> sep >> count) || sep != ':' || count < 1 || std::abs(r) >= 1.0)
      throw BadConfig("expected geometric:<r>:<count> with |r| < 1");
    std::vector<ComplexMatrix> coeffs;
    for (int k = 0; k < count; ++k) coeffs.push_back(scalar_of(std::pow(r, k)));
    return VerblunskySequence(1, std::move(coeffs));
  }
  if (input.rfind("invsqrt:", 0) == 0) {
    std::istringstream ss(input.substr(8));
    double c = 0;
    char sep = 0;
    int count = 0;
    if (!(ss >> c >> sep >> count) || sep != ':' || count < 1)
      throw BadConfig("expected invsqrt:<c>:<count>");
    std::vector<ComplexMatrix> coeffs;
    for (int k = 0; k < count; ++k)
      coeffs.push_back(scalar_of(c / std::sqrt(k + 1.0)));
    return VerblunskySequence(1, std::move(coeffs));
  }
  (void)cfg;
  nlohmann::json j = load_json(input);
  if (!j.contains("coeffs")) throw BadConfig("gems input must be a coefficient file");
  return verblunsky_from_json(j);
}

int cmd_gems(const std::string& input, const RunConfig& cfg) {
  cfg.validate();
  VerblunskySequence alpha = gems_input(input, cfg);
  GemDiagnostics gems = gem_diagnostics(alpha, cfg.gs_or_default().front());
  std::string text = "# mopuc-gems-v1: k,sum_i,sum_ii,sum_iii\n";
  char line[160];
  for (std::size_t k = 0; k < gems.sum_i.size(); ++k) {
    std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g\n", k, gems.sum_i[k],
                  gems.sum_ii[k], gems.sum_iii[k]);
    text += line;
  }
  write_text(cfg.out, text, false);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"matrix orthogonal polynomials on the unit circle: "
               "coefficient transforms and sum-rule verification"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string input;

  auto add_common = [&](CLI::App* sub, bool with_input) {
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--dim", cfg.dim, "matrix dimension p");
    sub->add_option("--trunc", cfg.trunc, "coefficient truncation depth N");
    sub->add_option("--grid", cfg.grid, "quadrature grid size (power of two)");
    sub->add_option("--g", cfg.g_list, "reference parameter in [-1,1] (repeatable)");
    sub->add_option("--tol", cfg.tol, "residual tolerance");
    sub->add_option("--norm-cap", cfg.norm_cap, "top singular value cap for draws");
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
    sub->add_option("--format", cfg.format, "output format: json|csv");
    if (with_input)
      sub->add_option("input", input,
                      "coefficient/measure JSON file, builtin measure name, or "
                      "generator spec")
          ->required();
  };

  CLI::App* gen = app.add_subcommand("gen", "emit a random coefficient file");
  add_common(gen, false);
  CLI::App* sumrule =
      app.add_subcommand("sumrule", "sum-rule report for coefficients or a measure");
  add_common(sumrule, true);
  CLI::App* verify = app.add_subcommand("verify", "run the bundled property suite");
  add_common(verify, false);
  CLI::App* gems = app.add_subcommand("gems", "emit finiteness-diagnostic partial sums");
  add_common(gems, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(cfg);
    if (sumrule->parsed()) return cmd_sumrule(input, cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (gems->parsed()) return cmd_gems(input, cfg);
  } catch (const Error& e) {
    nlohmann::json err{{"error", e.kind()}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    nlohmann::json err{{"error", "Unexpected"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return 2;
}
