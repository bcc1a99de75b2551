// entcont: seeded verification campaigns and single-state computations.
//
//   entcont --command verify-fannes --trials 2500 --dims 2x1,4x1 --amplitudes 0.1,1
//   entcont --command compute --state werner:0.5 --measure eof-2q
//   entcont --command tightness --d-list 4,16,64,256 --policy fixed-t --param 1
//
// Exit status: 0 clean, 2 when a theorem-class bound was violated, 1 on any
// operational error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "entcont/error.hpp"
#include "entcont/state_io.hpp"
#include "harness.hpp"

namespace {

using namespace entcont;
using namespace entcont::harness;

struct Options {
  std::string command;
  int trials = 100;
  std::string dims = "2x2";
  std::string amplitudes = "1";
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  int restarts = OptimizerConfig{}.restarts;
  int max_sweeps = OptimizerConfig{}.max_sweeps;
  double tol = OptimizerConfig{}.tol_objective;
  std::string provider = "oracle";
  bool chain = false;
  int threads = 1;

  std::string state;
  std::string state2;
  std::string state_in;
  std::string state_in2;
  std::string state_out;
  std::string measure;

  std::string d_list;
  std::string policy = "fixed-t";
  double param = 1.0;

  std::string schmidt = "0.9,0.1";
};

ReportFormat parse_format(const std::string& f) {
  if (f == "csv") return ReportFormat::Csv;
  if (f == "json") return ReportFormat::Json;
  throw Error(Errc::InvalidConfig, "format must be csv or json");
}

OptimizerConfig optimizer_from(const Options& o) {
  OptimizerConfig c;
  c.restarts = o.restarts;
  c.max_sweeps = o.max_sweeps;
  c.tol_objective = o.tol;
  c.seed = o.seed;
  c.threads = o.threads;
  return c;
}

std::optional<BipartiteState> resolve_state(const std::string& named, const std::string& file) {
  if (!named.empty() && !file.empty()) {
    throw Error(Errc::InvalidConfig, "give either a named state or a state file, not both");
  }
  if (!named.empty()) return named_state(named);
  if (!file.empty()) return load_state(file);
  return std::nullopt;
}

// Writes to --out when given, stdout otherwise.
template <typename Fn>
void emit(const std::string& out_path, Fn&& write) {
  if (out_path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw Error(Errc::IoError, "cannot open " + out_path);
  write(file);
  if (!file) throw Error(Errc::IoError, "write failed for " + out_path);
}

int run(const Options& o) {
  const Command command = parse_command(o.command);
  const ReportFormat format = parse_format(o.format);

  switch (command) {
    case Command::VerifyFannes:
    case Command::VerifyPure:
    case Command::VerifyEof: {
      CampaignConfig config;
      config.command = command;
      config.trials = o.trials;
      config.dims = parse_dims_list(o.dims);
      config.amplitudes = parse_real_list(o.amplitudes);
      config.seed = o.seed;
      config.format = format;
      if (!o.out.empty()) config.out_path = o.out;
      if (o.provider == "oracle") {
        config.provider = EofProvider::Oracle;
      } else if (o.provider == "optimizer") {
        config.provider = EofProvider::Optimizer;
      } else {
        throw Error(Errc::InvalidConfig, "provider must be oracle or optimizer");
      }
      config.optimizer = optimizer_from(o);
      config.optimizer.threads = 1;
      config.chain = o.chain;
      config.threads = o.threads;
      const CampaignResult result = run_campaign(config);
      if (!config.out_path) write_reports(std::cout, result.rows, format);
      print_summary(config.out_path ? std::cout : std::cerr, result.summary);
      return result.summary.theorem_violations > 0 ? 2 : 0;
    }
    case Command::Tightness: {
      TightnessPolicy policy;
      if (o.policy == "fixed-t") {
        policy = TightnessPolicy::FixedT;
      } else if (o.policy == "fixed-eps") {
        policy = TightnessPolicy::FixedEps;
      } else {
        throw Error(Errc::InvalidConfig, "policy must be fixed-t or fixed-eps");
      }
      const TightnessTable table = emit_tightness_table(parse_index_list(o.d_list), policy, o.param);
      emit(o.out, [&](std::ostream& out) { write_tightness(out, table, format); });
      bool theorem_ok = true;
      for (const auto& r : table.rows) theorem_ok = theorem_ok && r.bound_holds && r.t_matches;
      (o.out.empty() ? std::cerr : std::cout)
          << "fit_slope=" << format_double(table.fit.slope)
          << "\nfit_intercept=" << format_double(table.fit.intercept) << '\n';
      return theorem_ok ? 0 : 2;
    }
    case Command::Compute: {
      const auto state = resolve_state(o.state, o.state_in);
      if (!state) throw Error(Errc::InvalidConfig, "compute needs --state or --state-in");
      if (!o.state_out.empty()) save_state(o.state_out, *state);
      if (o.measure.empty()) {
        if (o.state_out.empty()) throw Error(Errc::InvalidConfig, "compute needs --measure");
        return 0;
      }
      const Measure measure = parse_measure(o.measure);
      const auto second = resolve_state(o.state2, o.state_in2);
      std::cout << format_value(compute_single(measure, *state, second, optimizer_from(o)))
                << '\n';
      return 0;
    }
    case Command::DemoMonotone: {
      const ProportionalityRecord rec = proportionality_demo(ProbVector(parse_real_list(o.schmidt)));
      std::cout << "s=" << format_value(rec.s) << '\n';
      std::cout << "tilde=" << format_value(rec.tilde) << '\n';
      std::cout << "ratio=" << (rec.ratio ? format_value(*rec.ratio) : std::string("undefined"))
                << '\n';
      return 0;
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement continuity bounds: measures, campaigns and tables"};
  Options o;

  app.add_option("--command", o.command,
                 "verify-fannes | verify-pure | verify-eof | tightness | compute | demo-monotone")
      ->required();
  app.add_option("--trials", o.trials, "Trials per (dims, amplitude) cell");
  app.add_option("--dims", o.dims, "dAxdB[,dAxdB...]");
  app.add_option("--amplitudes", o.amplitudes, "Perturbation amplitudes a[,a...] in [0,1]");
  app.add_option("--seed", o.seed, "Base seed");
  app.add_option("--out", o.out, "Report path (stdout when omitted)");
  app.add_option("--format", o.format, "csv | json");
  app.add_option("--restarts", o.restarts, "Optimizer random restarts");
  app.add_option("--max-sweeps", o.max_sweeps, "Optimizer sweep cap per restart");
  app.add_option("--tol,--tol-objective", o.tol, "Optimizer objective tolerance");
  app.add_option("--provider", o.provider, "EoF provider for verify-eof: oracle | optimizer");
  app.add_flag("--chain", o.chain, "Emit intermediate proof-chain reports (verify-eof)");
  app.add_option("--threads", o.threads, "Worker threads");

  app.add_option("--state", o.state,
                 "Named state: bell, product, maximally-mixed:d, werner:p, tightness:d:eps");
  app.add_option("--state2", o.state2, "Second named state for distance measures");
  app.add_option("--state-in", o.state_in, "State file");
  app.add_option("--state-in2", o.state_in2, "Second state file for distance measures");
  app.add_option("--state-out", o.state_out, "Write the resolved state to this file");
  app.add_option("--measure", o.measure,
                 "entropy | trace-distance | fidelity | bures | pure-E | eof-2q | eof-min | tilde");

  app.add_option("--d-list", o.d_list, "Dimensions for the tightness table, d[,d...]");
  app.add_option("--policy", o.policy, "fixed-t | fixed-eps");
  app.add_option("--param", o.param, "t (fixed-t) or epsilon (fixed-eps)");
  app.add_option("--schmidt", o.schmidt, "Schmidt weights for demo-monotone");

  CLI11_PARSE(app, argc, argv);

  try {
    return run(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
