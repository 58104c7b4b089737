// lorentz-levy: verification suites for the unitary representation theory of
// so(3,1), its distinguished Schurmann triple, the associated Fock-space
// Levy realization, and the so(3)/so(2,1) decompositions, all at finite
// truncation with machine-readable reports.

#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "lorentz/suites.hpp"

namespace {

using namespace lorentz;

struct CliOptions {
  RunConfig cfg;
  std::string l0_str = "1";
  std::string l1_str = "0";
  std::string interval_str = "0,1";
  std::string window_str = "100:10000";
  std::vector<std::string> tol_overrides;
  std::string output_path;
  std::string format = "json";
  bool timing = false;
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
  auto* fmt = cmd->add_option("--format", opt.format,
                              "Output format: json, csv, or text");
  fmt->check(CLI::IsMember({"json", "csv", "text"}))
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--output", opt.output_path,
                  "Write the report to this path instead of stdout")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_flag("--timing", opt.timing,
                "Embed wall_time_ms in the report (breaks byte determinism)");
  cmd->add_option("--tol", opt.tol_overrides,
                  "Tolerance override key=value (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  cmd->add_option("--lmax", opt.cfg.lmax, "Shell truncation")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--nmax", opt.cfg.nmax, "Particle-number truncation")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--l0", opt.l0_str, "Lowest shell l0 (half-integer)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--l1", opt.l1_str, "Series parameter l1, e.g. 0.5 or 2i")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

int emit(const ReportDocument& doc, const CliOptions& opt) {
  std::string body;
  if (opt.format == "json")
    body = doc.to_json().dump();
  else if (opt.format == "csv")
    body = doc.to_csv();
  else
    body = doc.to_text();
  if (opt.output_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(opt.output_path);
    if (!out) {
      std::cerr << "error: cannot write " << opt.output_path << "\n";
      return 2;
    }
    out << body;
  }
  return doc.exit_code();
}

// Flat key=value config support: injected as flags ahead of the real command
// line, so explicit flags override the file.
std::vector<std::string> inject_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") {
      config_path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
  }
  if (config_path.empty()) return args;
  std::ifstream in(config_path);
  if (!in) throw UsageError("cannot read config file: " + config_path);
  const auto kv = parse_config_stream(in);
  // insert after the subcommand token (the first non-flag argument)
  std::size_t pos = 0;
  while (pos < args.size() && !args[pos].empty() && args[pos][0] == '-') ++pos;
  if (pos < args.size()) ++pos;
  std::vector<std::string> injected;
  for (const auto& [k, v] : kv) {
    injected.push_back("--" + k);
    injected.push_back(v);
  }
  args.insert(args.begin() + pos, injected.begin(), injected.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of the so(3,1) representation suite"};
  app.require_subcommand(1);

  CliOptions opt;
  std::string raabe_direction = "F-";

  CLI::App* structure = app.add_subcommand(
      "check-structure", "Bracket table, Jacobi, involution checks");
  add_common_options(structure, opt);

  CLI::App* rep = app.add_subcommand(
      "rep-check", "Commutator closure and adjointness for one spec");
  add_common_options(rep, opt);
  rep->add_option("--export", opt.cfg.export_expr,
                  "Export this operator's matrix (generator expression)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  rep->add_option("--export-prefix", opt.cfg.export_prefix,
                  "Path prefix for the exported .csv and .json")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CLI::App* cas = app.add_subcommand(
      "casimir", "Scalar action of the two Casimir operators");
  add_common_options(cas, opt);

  CLI::App* coc = app.add_subcommand(
      "cocycle-check", "Cocycle and psi identities for the canonical triple");
  add_common_options(coc, opt);

  CLI::App* cob = app.add_subcommand(
      "coboundary-test", "Cocycle identity for random coboundaries");
  add_common_options(cob, opt);
  cob->add_option("--trials", opt.cfg.trials, "Number of random vectors")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CLI::App* raabe = app.add_subcommand(
      "raabe", "Convergence classification of the recurrence series");
  add_common_options(raabe, opt);
  raabe->add_option("--target", opt.cfg.target, "coboundary or weight")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  raabe->add_option("--m0", opt.cfg.m0, "Weight for --target weight")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  raabe->add_option("--direction", raabe_direction, "F- or F+")
      ->check(CLI::IsMember({"F-", "F+"}))
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  raabe->add_option("--window", opt.window_str, "Fit window lo:hi in l")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  raabe->add_option("--sequence-csv", opt.cfg.sequence_csv,
                    "Write (l, |x_l|^2) rows to this file")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CLI::App* remark = app.add_subcommand(
      "remark-limit", "Normalized coboundaries approaching the cocycle");
  add_common_options(remark, opt);

  CLI::App* fock = app.add_subcommand(
      "fock-moments", "Vacuum moments of the Levy realization");
  add_common_options(fock, opt);
  fock->add_option("--generator", opt.cfg.generator,
                   "Algebra element, e.g. 'F3' or 'F+ - F- + 2*H3'")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  fock->add_option("--interval", opt.interval_str, "Interval s,t")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  fock->add_option("--order", opt.cfg.order, "Highest moment order")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CLI::App* levy = app.add_subcommand(
      "levy-axioms", "Increment, independence, stationarity, continuity");
  add_common_options(levy, opt);

  CLI::App* dec = app.add_subcommand(
      "decompose", "Restriction to so(3) or so(2,1)");
  add_common_options(dec, opt);
  dec->add_option("--subalgebra", opt.cfg.subalgebra, "so3 or so21")
      ->check(CLI::IsMember({"so3", "so21"}))
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  dec->add_option("--spectrum-csv", opt.cfg.spectrum_csv,
                  "Write the rest K-spectrum to this file (so21 only)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Closure and Casimir suites over a parameter grid");
  add_common_options(sweep, opt);
  sweep->add_option("--l0-grid", opt.cfg.sweep_l0,
                    "l0 values (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  sweep->add_option("--l1-grid", opt.cfg.sweep_l1,
                    "l1 values (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  std::vector<std::string> args;
  try {
    args = inject_config(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    std::vector<const char*> cargs;
    cargs.push_back(argv[0]);
    for (const std::string& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    for (const std::string& kv : opt.tol_overrides) {
      const std::size_t eq = kv.find('=');
      if (eq == std::string::npos)
        throw UsageError("--tol expects key=value");
      opt.cfg.tol.override_kv(kv.substr(0, eq), std::stod(kv.substr(eq + 1)));
    }
    opt.cfg.l0 = parse_half(opt.l0_str);
    opt.cfg.l1 = parse_complex(opt.l1_str);
    {
      const std::size_t comma = opt.interval_str.find(',');
      if (comma == std::string::npos)
        throw UsageError("--interval expects s,t");
      opt.cfg.interval_s = std::stod(opt.interval_str.substr(0, comma));
      opt.cfg.interval_t = std::stod(opt.interval_str.substr(comma + 1));
    }
    {
      const std::size_t colon = opt.window_str.find(':');
      if (colon == std::string::npos)
        throw UsageError("--window expects lo:hi");
      opt.cfg.window_lo = std::stol(opt.window_str.substr(0, colon));
      opt.cfg.window_hi = std::stol(opt.window_str.substr(colon + 1));
    }
    opt.cfg.direction = raabe_direction;
    // the so(2,1) decomposition needs a deep truncation to say anything
    if (dec->parsed() && opt.cfg.subalgebra == "so21" &&
        dec->count("--lmax") == 0)
      opt.cfg.lmax = 200;

    const auto t0 = std::chrono::steady_clock::now();
    ReportDocument doc;
    if (structure->parsed()) doc = run_check_structure(opt.cfg);
    else if (rep->parsed()) doc = run_rep_check(opt.cfg);
    else if (cas->parsed()) doc = run_casimir(opt.cfg);
    else if (coc->parsed()) doc = run_cocycle_check(opt.cfg);
    else if (cob->parsed()) doc = run_coboundary_test(opt.cfg);
    else if (raabe->parsed()) doc = run_raabe(opt.cfg);
    else if (remark->parsed()) doc = run_remark_limit(opt.cfg);
    else if (fock->parsed()) doc = run_fock_moments(opt.cfg);
    else if (levy->parsed()) doc = run_levy_axioms(opt.cfg);
    else if (dec->parsed()) doc = run_decompose(opt.cfg);
    else if (sweep->parsed()) doc = run_sweep(opt.cfg);
    else {
      std::cerr << "error: no subcommand\n";
      return 2;
    }
    if (opt.timing) {
      doc.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    }
    return emit(doc, opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
