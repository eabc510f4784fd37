#pragma once

// Command-line front end: classify, solve, verify. Structured output is one
// JSON document per run and depends only on the RunConfig; wall-clock
// timing goes to the diagnostic stream.

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cva/adinv/quartic.hpp"
#include "cva/celestial/jacobi.hpp"
#include "cva/liealg/cache.hpp"
#include "cva/liealg/chevalley.hpp"
#include "cva/report.hpp"

namespace cva::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kConfigError = 2 };

struct RunConfig {
  std::string command;
  std::string algebra;
  int grid = 1;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::optional<Rational> beta;  // empty: formal
  bool json = false;
  bool enable_e78 = false;
  std::string cache_dir;

  [[nodiscard]] std::string beta_str() const { return beta ? beta->str() : "formal"; }
  [[nodiscard]] Scalar beta_scalar() const { return beta ? Scalar(*beta) : Scalar::var(Param::Beta); }

  [[nodiscard]] Json to_json() const {
    Json j;
    j["command"] = command;
    if (!algebra.empty()) j["algebra"] = algebra;
    j["grid"] = grid;
    j["samples"] = samples;
    j["seed"] = seed;
    j["beta"] = beta_str();
    j["enable_e78"] = enable_e78;
    return j;
  }
};

/// Test hooks that are not reachable from the command line.
struct RunHooks {
  celestial::RuleSet::Tamper tamper;
};

inline std::optional<Rational> parse_beta(const std::string& text) {
  if (text == "formal") return std::nullopt;
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw ConfigurationError("--beta expects p/q or 'formal', got '" + text + "'");
  }
}

struct HelpRequested : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses argv into a RunConfig. Throws HelpRequested for --help, CLI::ParseError for
/// malformed flags; ConfigurationError for bad values.
inline RunConfig parse_args(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Celestial vertex algebra checks: classification, constants, Jacobi sweeps"};
  app.require_subcommand(1);
  std::string beta = "formal";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--grid", cfg.grid, "largest bidegree entry in the Jacobi sweep")->envname("CVA_GRID");
    sub->add_option("--samples", cfg.samples, "random tuples per sampled check")->envname("CVA_SAMPLES");
    sub->add_option("--seed", cfg.seed, "master seed")->envname("CVA_SEED");
    sub->add_option("--beta", beta, "p/q or formal")->envname("CVA_BETA");
    sub->add_flag("--json", cfg.json, "emit one JSON document on stdout")->envname("CVA_JSON");
    sub->add_flag("--enable-e78", cfg.enable_e78, "allow E7 and E8")->envname("CVA_ENABLE_E78");
    sub->add_option("--cache-dir", cfg.cache_dir, "structure-constant cache directory")->envname("CVA_CACHE_DIR");
  };
  CLI::App* classify = app.add_subcommand("classify", "membership table for the quartic identity");
  CLI::App* solve = app.add_subcommand("solve", "solve the deformed Jacobi identities for D and C");
  CLI::App* verify = app.add_subcommand("verify", "Jacobi sweep and trace-identity batches");
  for (CLI::App* sub : {classify, solve, verify}) add_common(sub);
  solve->add_option("algebra", cfg.algebra, "simple type, e.g. A2")->required();
  verify->add_option("algebra", cfg.algebra, "simple type, e.g. A2")->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.beta = parse_beta(beta);
  if (cfg.grid < 0) throw ConfigurationError("--grid must be nonnegative");
  if (cfg.command == "verify" && cfg.samples == 0) throw ConfigurationError("--samples must be positive");
  if (!cfg.algebra.empty()) cfg.algebra = liealg::parse_cartan_type(cfg.algebra).name();
  return cfg;
}

inline liealg::LieAlgebra load_algebra(const RunConfig& cfg, const std::string& name) {
  const liealg::CartanType t = liealg::parse_cartan_type(name);
  if ((t.name() == "E7" || t.name() == "E8") && !cfg.enable_e78) {
    throw ConfigurationError(t.name() + " requires --enable-e78");
  }
  if (!cfg.cache_dir.empty()) return liealg::load_or_build(t, cfg.cache_dir);
  return liealg::make_algebra(t);
}

inline std::string opt_str(const std::optional<Rational>& r) { return r ? r->str() : "-"; }

class Timer {
 public:
  explicit Timer(std::ostream& err, std::string what) : err_(err), what_(std::move(what)) {}
  ~Timer() {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    err_ << "[time] " << what_ << ": " << std::fixed << std::setprecision(2) << s << " s\n";
  }
  Timer(const Timer&) = delete;
  Timer& operator=(const Timer&) = delete;

 private:
  std::ostream& err_;
  std::string what_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// ---------------------------------------------------------------------------

inline int cmd_classify(const RunConfig& cfg, Json& doc, std::ostream& out, std::ostream& err) {
  static const std::set<std::string> expected_all{"A1", "A2", "D4", "G2", "F4", "E6", "E7", "E8"};
  const auto types = adinv::default_classify_types(cfg.enable_e78);
  const std::size_t samples = std::max<std::size_t>(cfg.samples, 20);
  Json rows = Json::array();
  bool matches = true;
  if (!cfg.json) out << std::left << std::setw(6) << "type" << std::setw(6) << "dim" << std::setw(8) << "h_dual"
                     << std::setw(11) << "satisfies" << "alpha\n";
  for (const auto& name : types) {
    Timer timer(err, "classify " + name);
    const liealg::LieAlgebra L = load_algebra(cfg, name);
    const adinv::ClassificationRow row = adinv::classify_one(L, samples, cfg.seed);
    const bool expected = expected_all.count(name) > 0;
    bool ok = row.satisfies == expected;
    if (row.alpha) ok = ok && *row.alpha == adinv::alpha_closed_form(L.dim());
    matches = matches && ok;
    Json j;
    j["type"] = row.type;
    j["dim"] = row.dim;
    j["h_dual"] = row.h_dual;
    j["satisfies"] = row.satisfies;
    j["alpha"] = row.alpha ? Json(row.alpha->str()) : Json(nullptr);
    j["expected"] = expected;
    rows.push_back(j);
    if (!cfg.json) {
      out << std::left << std::setw(6) << row.type << std::setw(6) << row.dim << std::setw(8) << row.h_dual
          << std::setw(11) << (row.satisfies ? "true" : "false") << opt_str(row.alpha) << '\n';
    }
  }
  doc["results"] = rows;
  doc["pass"] = matches;
  if (!cfg.json) out << "matches the admissible list: " << (matches ? "yes" : "no") << '\n';
  return matches ? kPass : kFail;
}

inline int cmd_solve(const RunConfig& cfg, Json& doc, std::ostream& out, std::ostream& err) {
  const liealg::LieAlgebra L = load_algebra(cfg, cfg.algebra);
  celestial::ConstantSolution sol;
  lambda::CalculusStats stats;
  {
    Timer timer(err, "solve " + L.name());
    celestial::SolveOptions opt;
    opt.seed = cfg.seed;
    opt.stats = &stats;
    opt.progress = &err;
    sol = celestial::solve_constants(L, opt);
  }
  const bool admissible = celestial::is_admissible(L.name());
  Json j;
  j["algebra"] = L.name();
  j["dim"] = L.dim();
  j["h_dual"] = L.dual_coxeter();
  j["status"] = celestial::status_name(sol.status);
  j["triples"] = sol.triples;
  j["sampled"] = sol.sampled;
  j["rank"] = sol.rank;
  j["D_over_beta2"] = sol.D_over_beta2 ? Json(sol.D_over_beta2->str()) : Json(nullptr);
  j["C_over_beta2"] = sol.C_over_beta2 ? Json(sol.C_over_beta2->str()) : Json(nullptr);
  bool agree = false;
  const Scalar beta = cfg.beta_scalar();
  if (admissible) {
    const auto [d, c] = celestial::closed_form_constants(L, Scalar::var(Param::Beta));
    const Rational d0 = d.coefficient(Monomial(2, 0, 0)), c0 = c.coefficient(Monomial(2, 0, 0));
    j["closed_form"] = {{"D_over_beta2", d0.str()}, {"C_over_beta2", c0.str()}};
    agree = sol.status == celestial::SolutionStatus::Unique && *sol.D_over_beta2 == d0 && *sol.C_over_beta2 == c0;
    if (sol.D_over_beta2) {
      const Scalar b2 = beta * beta;
      j["D"] = (b2 * *sol.D_over_beta2).str();
      j["C"] = (b2 * *sol.C_over_beta2).str();
    }
  } else {
    j["closed_form"] = nullptr;
    agree = sol.status == celestial::SolutionStatus::TrivialOnly;
  }
  j["left_bracket"] = {{"invocations", stats.left_bracket_invocations},
                       {"path_checks", stats.left_bracket_path_checks},
                       {"disagreements", stats.left_bracket_disagreements}};
  j["agreement"] = agree;
  doc["results"] = Json::array({j});
  doc["pass"] = agree;
  if (!cfg.json) {
    out << "solve " << L.name() << " (dim " << L.dim() << ", h_dual " << L.dual_coxeter() << ")\n";
    out << "  status: " << celestial::status_name(sol.status) << " (" << sol.triples << " triples"
        << (sol.sampled ? ", sampled" : "") << ")\n";
    out << "  D/beta^2 = " << opt_str(sol.D_over_beta2) << "\n  C/beta^2 = " << opt_str(sol.C_over_beta2) << '\n';
    if (admissible) {
      out << "  closed form: D/beta^2 = " << j["closed_form"]["D_over_beta2"].get<std::string>()
          << ", C/beta^2 = " << j["closed_form"]["C_over_beta2"].get<std::string>() << '\n';
    } else {
      out << "  closed form: not admissible\n";
    }
    if (cfg.beta && sol.D_over_beta2) out << "  at beta = " << cfg.beta_str() << ": D = " << j["D"].get<std::string>() << ", C = " << j["C"].get<std::string>() << '\n';
    out << "  agreement: " << (agree ? "yes" : "no") << '\n';
  }
  return agree ? kPass : kFail;
}

inline int cmd_verify(const RunConfig& cfg, Json& doc, std::ostream& out, std::ostream& err,
                      const RunHooks& hooks = {}) {
  const liealg::LieAlgebra L = load_algebra(cfg, cfg.algebra);
  std::vector<Json> results;
  bool pass = true;
  auto record = [&](const Report& r, Json extra = Json::object()) {
    Json j = r.to_json();
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    pass = pass && r.pass;
    if (!cfg.json) {
      out << (r.pass ? "PASS " : "FAIL ") << r.check << ' ' << r.algebra << " (" << r.samples << " samples, seed "
          << r.seed << ")\n";
      if (r.first_counterexample) out << "  first counterexample: " << *r.first_counterexample << '\n';
    }
    results.push_back(std::move(j));
  };
  {
    Timer timer(err, "jacobi sweep " + L.name());
    lambda::CalculusStats stats;
    celestial::SweepOptions opt;
    opt.beta = cfg.beta_scalar();
    opt.stats = &stats;
    opt.tamper = hooks.tamper;
    opt.progress = &err;
    const Report r = celestial::verify_extended_jacobi(L, cfg.grid, opt);
    record(r, {{"grid", cfg.grid},
               {"left_bracket",
                {{"invocations", stats.left_bracket_invocations},
                 {"path_checks", stats.left_bracket_path_checks},
                 {"disagreements", stats.left_bracket_disagreements}}}});
  }
  {
    Timer timer(err, "trace identities " + L.name());
    record(adinv::contract_suite(L, cfg.samples, cfg.seed));
    record(adinv::dihedral_suite(L, cfg.samples, cfg.seed));
    record(adinv::commutator_suite(L, cfg.samples, cfg.seed));
    const auto alpha = adinv::quartic_alpha(L, std::max<std::size_t>(cfg.samples, 20), cfg.seed);
    if (alpha) {
      record(adinv::polarized_suite(L, *alpha, cfg.samples, cfg.seed), {{"alpha", alpha->str()}});
    } else {
      // no alpha exists: every candidate from the ratio test must be refuted
      const auto refutations = adinv::refute_candidates(L, std::max<std::size_t>(cfg.samples, 20), cfg.seed);
      Report r{"polarized_refutation", L.name(), refutations.size(), cfg.seed, true, std::nullopt};
      for (const auto& c : refutations) {
        if (!c.counterexample) r.fail("candidate alpha " + c.alpha.str() + " not refuted");
      }
      record(r);
    }
  }
  doc["results"] = results;
  doc["pass"] = pass;
  return pass ? kPass : kFail;
}

/// Runs a parsed configuration; returns the exit code.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err, const RunHooks& hooks = {}) {
  Json doc;
  doc["config"] = cfg.to_json();
  int code = kFail;
  try {
    if (cfg.command == "classify") {
      code = cmd_classify(cfg, doc, out, err);
    } else if (cfg.command == "solve") {
      code = cmd_solve(cfg, doc, out, err);
    } else if (cfg.command == "verify") {
      code = cmd_verify(cfg, doc, out, err, hooks);
    } else {
      throw ConfigurationError("unknown command '" + cfg.command + "'");
    }
  } catch (const ConfigurationError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    doc["pass"] = false;
    doc["error"] = e.what();
    code = kFail;
  }
  if (cfg.json) out << doc.dump(2) << '\n';
  return code;
}

/// argv in, exit code out.
inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(argc, argv);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ConfigurationError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  }
  return run(cfg, out, err);
}

}  // namespace cva::cli
