#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>
#include <thread>

#include <json.hpp>

#include "entcont/error.hpp"
#include "entcont/metrics.hpp"
#include "entcont/state_io.hpp"

namespace entcont::harness {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t pos = text.find(sep, start);
    const std::size_t end = pos == std::string_view::npos ? text.size() : pos;
    parts.push_back(text.substr(start, end - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T parse_token(std::string_view token, std::string_view what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
    throw Error(Errc::ParseError, "bad " + std::string(what) + " '" + std::string(token) + "'");
  }
  return value;
}

BoundReport tag(BoundReport r, BipartiteDims dims, std::uint64_t seed, std::uint64_t stream) {
  r.da = dims.a;
  r.db = dims.b;
  r.seed = seed;
  r.stream = stream;
  if (r.provider.empty()) r.provider = "none";
  return r;
}

std::vector<BoundReport> run_trial(const CampaignConfig& config, BipartiteDims dims,
                                   double amplitude, std::uint64_t stream) {
  Engine rng = make_engine({config.seed, stream});
  const Index n = dims.total();
  std::vector<BoundReport> rows;

  switch (config.command) {
    case Command::VerifyFannes: {
      std::uniform_int_distribution<Index> ancilla(1, 2 * n);
      const DensityMatrix rho = sample_density(n, ancilla(rng), rng);
      const DensityMatrix sigma = perturb(rho, amplitude, rng);
      rows.push_back(tag(check_fannes(rho, sigma), dims, config.seed, stream));
      break;
    }
    case Command::VerifyPure: {
      const PureState psi = sample_haar_pure(n, rng);
      const PureState phi = perturb_pure(psi, amplitude, rng);
      rows.push_back(tag(check_pure_continuity(psi, phi, dims), dims, config.seed, stream));
      break;
    }
    case Command::VerifyEof: {
      std::uniform_int_distribution<Index> ancilla(1, n);
      const BipartiteState rho(dims, sample_density(n, ancilla(rng), rng));
      const BipartiteState sigma(dims, perturb(rho.rho(), amplitude, rng));
      EofContinuityOptions options;
      options.provider = config.provider;
      options.chain = config.chain;
      options.optimizer = config.optimizer;
      options.optimizer.seed = config.optimizer.seed ^ (stream * 0x9E3779B97F4A7C15ULL);
      const EofContinuityReport report = check_eof_continuity(rho, sigma, options);
      rows.push_back(tag(report.main, dims, config.seed, stream));
      for (const auto& link : report.chain) rows.push_back(tag(link, dims, config.seed, stream));
      break;
    }
    default:
      throw Error(Errc::InvalidConfig, "not a verification command: " +
                                           std::string(to_string(config.command)));
  }
  return rows;
}

void validate(const CampaignConfig& config) {
  if (config.trials < 1) throw Error(Errc::InvalidConfig, "trials must be >= 1");
  if (config.dims.empty()) throw Error(Errc::InvalidConfig, "dims list is empty");
  if (config.amplitudes.empty()) throw Error(Errc::InvalidConfig, "amplitude list is empty");
  for (const auto& d : config.dims) {
    if (d.a < 1 || d.b < 1) throw Error(Errc::InvalidConfig, "dimensions must be positive");
  }
  for (double a : config.amplitudes) {
    if (!(a >= 0.0 && a <= 1.0)) throw Error(Errc::InvalidConfig, "amplitudes must lie in [0, 1]");
  }
  if (config.threads < 1) throw Error(Errc::InvalidConfig, "threads must be >= 1");
}

nlohmann::json to_json(const BoundReport& r) {
  return {{"name", r.name},   {"dA", r.da},
          {"dB", r.db},       {"lhs", r.lhs},
          {"rhs", r.rhs},     {"slack", r.slack},
          {"satisfied", r.satisfied}, {"regime_ok", r.regime_ok},
          {"distance", r.distance},   {"provider", r.provider},
          {"seed", r.seed},   {"stream", r.stream}};
}

}  // namespace

Command parse_command(std::string_view name) {
  if (name == "verify-fannes") return Command::VerifyFannes;
  if (name == "verify-pure") return Command::VerifyPure;
  if (name == "verify-eof") return Command::VerifyEof;
  if (name == "tightness") return Command::Tightness;
  if (name == "compute") return Command::Compute;
  if (name == "demo-monotone") return Command::DemoMonotone;
  throw Error(Errc::InvalidConfig, "unknown command '" + std::string(name) + "'");
}

std::string_view to_string(Command command) {
  switch (command) {
    case Command::VerifyFannes: return "verify-fannes";
    case Command::VerifyPure: return "verify-pure";
    case Command::VerifyEof: return "verify-eof";
    case Command::Tightness: return "tightness";
    case Command::Compute: return "compute";
    case Command::DemoMonotone: return "demo-monotone";
  }
  return "?";
}

std::uint64_t trial_stream(const CampaignConfig& config, std::size_t dims_index,
                           std::size_t amplitude_index, int trial) {
  const auto trials = static_cast<std::uint64_t>(config.trials);
  const auto n_amp = static_cast<std::uint64_t>(config.amplitudes.size());
  return (dims_index * n_amp + amplitude_index) * trials + static_cast<std::uint64_t>(trial);
}

CampaignResult run_campaign(const CampaignConfig& config) {
  validate(config);
  const auto started = std::chrono::steady_clock::now();

  struct Job {
    BipartiteDims dims;
    double amplitude;
    std::uint64_t stream;
  };
  std::vector<Job> jobs;
  for (std::size_t di = 0; di < config.dims.size(); ++di) {
    for (std::size_t ai = 0; ai < config.amplitudes.size(); ++ai) {
      for (int t = 0; t < config.trials; ++t) {
        jobs.push_back({config.dims[di], config.amplitudes[ai], trial_stream(config, di, ai, t)});
      }
    }
  }

  std::vector<std::vector<BoundReport>> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  auto work = [&](std::size_t i) {
    try {
      results[i] = run_trial(config, jobs[i].dims, jobs[i].amplitude, jobs[i].stream);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const auto workers = static_cast<std::size_t>(config.threads);
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        for (std::size_t i = next++; i < jobs.size(); i = next++) work(i);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  CampaignResult out;
  out.summary.worst_slack = std::numeric_limits<double>::infinity();
  for (auto& trial_rows : results) {
    for (auto& row : trial_rows) {
      ++out.summary.total;
      if (!row.satisfied) {
        ++out.summary.violations;
        if (row.klass == BoundClass::Theorem) ++out.summary.theorem_violations;
      }
      out.summary.worst_slack = std::min(out.summary.worst_slack, row.slack);
      if (row.name.rfind("chain:", 0) != 0) {
        ++out.summary.regime_counts[row.regime_ok ? "restricted" : "unrestricted"];
      }
      out.rows.push_back(std::move(row));
    }
  }

  if (config.out_path) {
    std::ofstream file(*config.out_path, std::ios::binary);
    if (!file) throw Error(Errc::IoError, "cannot open " + config.out_path->string());
    write_reports(file, out.rows, config.format);
    if (!file) throw Error(Errc::IoError, "write failed for " + config.out_path->string());
  }
  out.summary.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

std::string csv_row(const BoundReport& r) {
  std::string line;
  line += r.name;
  line += ',' + std::to_string(r.da);
  line += ',' + std::to_string(r.db);
  line += ',' + format_double(r.lhs);
  line += ',' + format_double(r.rhs);
  line += ',' + format_double(r.slack);
  line += r.satisfied ? ",1" : ",0";
  line += r.regime_ok ? ",1" : ",0";
  line += ',' + format_double(r.distance);
  line += ',' + r.provider;
  line += ',' + std::to_string(r.seed);
  line += ',' + std::to_string(r.stream);
  return line;
}

void write_reports(std::ostream& out, const std::vector<BoundReport>& rows, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) out << csv_row(r) << '\n';
    return;
  }
  nlohmann::json array = nlohmann::json::array();
  for (const auto& r : rows) array.push_back(to_json(r));
  out << array.dump(2) << '\n';
}

void print_summary(std::ostream& out, const CampaignSummary& s) {
  out << "total=" << s.total << '\n';
  out << "violations=" << s.violations << '\n';
  out << "theorem_violations=" << s.theorem_violations << '\n';
  out << "worst_slack=" << format_double(s.total ? s.worst_slack : 0.0) << '\n';
  for (const auto& [regime, count] : s.regime_counts) {
    out << "regime." << regime << '=' << count << '\n';
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s.wall_time);
  out << "wall_time=" << buf << "s\n";
}

// --- single computations ---------------------------------------------------

Measure parse_measure(std::string_view name) {
  if (name == "entropy") return Measure::Entropy;
  if (name == "trace-distance") return Measure::TraceDistance;
  if (name == "fidelity") return Measure::Fidelity;
  if (name == "bures") return Measure::Bures;
  if (name == "pure-E") return Measure::PureE;
  if (name == "eof-2q") return Measure::Eof2q;
  if (name == "eof-min") return Measure::EofMin;
  if (name == "tilde") return Measure::Tilde;
  throw Error(Errc::InvalidConfig, "unknown measure '" + std::string(name) + "'");
}

bool needs_second_state(Measure measure) {
  return measure == Measure::TraceDistance || measure == Measure::Fidelity ||
         measure == Measure::Bures;
}

BipartiteState named_state(std::string_view text) {
  const auto parts = split(text, ':');
  const std::string_view name = parts.front();
  auto expect_args = [&](std::size_t count) {
    if (parts.size() != count + 1) {
      throw Error(Errc::ParseError, "named state '" + std::string(text) + "' expects " +
                                        std::to_string(count) + " argument(s)");
    }
  };

  if (name == "bell") {
    expect_args(0);
    ComplexVector v = ComplexVector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return BipartiteState::from_pure(PureState(v), {2, 2});
  }
  if (name == "product") {
    expect_args(0);
    return BipartiteState::from_pure(PureState::basis(4, 1), {2, 2});
  }
  if (name == "maximally-mixed") {
    expect_args(1);
    const auto factors = split(parts[1], 'x');
    if (factors.size() == 2) {
      const BipartiteDims dims(parse_token<Index>(factors[0], "dimension"),
                               parse_token<Index>(factors[1], "dimension"));
      return BipartiteState(dims, DensityMatrix::maximally_mixed(dims.total()));
    }
    const auto d = parse_token<Index>(parts[1], "dimension");
    if (d < 1) throw Error(Errc::ParseError, "dimension must be positive");
    return BipartiteState({d, 1}, DensityMatrix::maximally_mixed(d));
  }
  if (name == "werner") {
    expect_args(1);
    const auto p = parse_token<double>(parts[1], "werner weight");
    if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::ParseError, "werner weight outside [0, 1]");
    ComplexVector bell = ComplexVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    ComplexMatrix m = p * bell * bell.adjoint() + (1.0 - p) * ComplexMatrix::Identity(4, 4) / 4.0;
    return BipartiteState({2, 2}, DensityMatrix(std::move(m)));
  }
  if (name == "tightness") {
    expect_args(2);
    const auto d = parse_token<Index>(parts[1], "dimension");
    const auto eps = parse_token<double>(parts[2], "epsilon");
    return BipartiteState({d, 1}, tightness_state(d, eps));
  }
  throw Error(Errc::ParseError, "unknown named state '" + std::string(text) + "'");
}

namespace {

PureState as_pure(const BipartiteState& state) {
  if (std::abs(state.rho().purity() - 1.0) > 1e-8) {
    throw Error(Errc::InvalidState, "measure needs a pure state");
  }
  const EigenSystem es = hermitian_eig(state.rho().matrix());
  return PureState::normalized(es.eigenvectors.col(0));
}

}  // namespace

double compute_single(Measure measure, const BipartiteState& state,
                      const std::optional<BipartiteState>& second,
                      const OptimizerConfig& optimizer) {
  if (needs_second_state(measure) && !second) {
    throw Error(Errc::InvalidConfig, "measure needs a second state");
  }
  switch (measure) {
    case Measure::Entropy: return entropy(state.rho());
    case Measure::TraceDistance: return trace_distance(state.rho(), second->rho());
    case Measure::Fidelity: return fidelity(state.rho(), second->rho());
    case Measure::Bures: return bures_distance(state.rho(), second->rho());
    case Measure::PureE: return pure_entanglement(as_pure(state), state.dims());
    case Measure::Eof2q: return eof_two_qubit(state);
    case Measure::EofMin: return eof_minimize(state, optimizer).value;
    case Measure::Tilde: return monotone_tilde(as_pure(state), state.dims());
  }
  throw Error(Errc::InvalidConfig, "unhandled measure");
}

std::string format_value(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.10g", value);
  return buf;
}

// --- tightness table -------------------------------------------------------

TightnessTable emit_tightness_table(const std::vector<Index>& d_list, TightnessPolicy policy,
                                    double parameter) {
  if (d_list.empty()) throw Error(Errc::InvalidConfig, "empty d list");
  TightnessTable table;
  for (Index d : d_list) {
    const double eps =
        policy == TightnessPolicy::FixedEps ? parameter : epsilon_for_distance(d, parameter);
    table.rows.push_back(tightness_row(d, eps));
  }
  table.fit = fit_gap_vs_log_d(table.rows);
  return table;
}

void write_tightness(std::ostream& out, const TightnessTable& table, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    out << "d,epsilon,gap,t,lower,t_matches,bound_holds,fit_slope,fit_intercept\n";
    for (const auto& r : table.rows) {
      out << r.d << ',' << format_double(r.epsilon) << ',' << format_double(r.gap) << ','
          << format_double(r.t) << ',' << format_double(r.lower) << ','
          << (r.t_matches ? 1 : 0) << ',' << (r.bound_holds ? 1 : 0) << ','
          << format_double(table.fit.slope) << ',' << format_double(table.fit.intercept)
          << '\n';
    }
    return;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"d", r.d},
                    {"epsilon", r.epsilon},
                    {"gap", r.gap},
                    {"t", r.t},
                    {"lower", r.lower},
                    {"t_matches", r.t_matches},
                    {"bound_holds", r.bound_holds}});
  }
  const nlohmann::json doc = {
      {"rows", rows}, {"fit", {{"slope", table.fit.slope}, {"intercept", table.fit.intercept}}}};
  out << doc.dump(2) << '\n';
}

// --- parsing helpers -------------------------------------------------------

std::vector<BipartiteDims> parse_dims_list(std::string_view text) {
  std::vector<BipartiteDims> out;
  for (auto item : split(text, ',')) {
    const auto factors = split(item, 'x');
    if (factors.size() != 2) {
      throw Error(Errc::InvalidConfig, "dims entry '" + std::string(item) + "' is not dAxdB");
    }
    const auto da = parse_token<Index>(factors[0], "dimension");
    const auto db = parse_token<Index>(factors[1], "dimension");
    if (da < 1 || db < 1) throw Error(Errc::InvalidConfig, "dimensions must be positive");
    out.emplace_back(da, db);
  }
  return out;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (auto item : split(text, ',')) out.push_back(parse_token<double>(item, "number"));
  return out;
}

std::vector<Index> parse_index_list(std::string_view text) {
  std::vector<Index> out;
  if (text.empty()) return out;
  for (auto item : split(text, ',')) out.push_back(parse_token<Index>(item, "integer"));
  return out;
}

}  // namespace entcont::harness
