#include "pfid/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pfid/channels.hpp"
#include "pfid/distances.hpp"
#include "pfid/error.hpp"
#include "pfid/fidelity.hpp"
#include "pfid/io.hpp"
#include "pfid/measurement.hpp"
#include "pfid/verify.hpp"

namespace pfid {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDimension = 3;
constexpr int kExitProperty = 4;

struct ComputeArgs {
  std::string rho;
  std::string omega;
  std::size_t k = 0;
  CLI::Option* k_opt = nullptr;
};

struct VerifyArgs {
  std::string suite;
  std::size_t trials = 0;
  std::string dims = "2";
  std::size_t env_dim = 2;
  std::uint64_t seed = 0;
  bool timing = false;
};

struct SweepArgs {
  double v = 0.5;
  double w = 0.5;
  std::size_t steps = 0;
  std::optional<double> gamma_max;
  bool closed = false;
  std::string out;
};

struct RandomArgs {
  std::string kind;
  std::size_t dim = 2;
  std::optional<std::size_t> n;
  std::uint64_t seed = 0;
  std::string out;
};

const std::vector<std::string> kComputeCommands = {"fk", "profile", "dk", "dprofile", "f0", "trace-distance",
                                                   "classical-fk", "classical-dk"};

bool needs_k(const std::string& cmd) { return cmd == "fk" || cmd == "dk" || cmd == "classical-fk" || cmd == "classical-dk"; }

DensityMatrix read_state(const std::string& path, const Tolerances& tol) {
  return validate_density(matrix_from_json(read_json_file(path)), tol);
}

Json profile_json(const std::string& measure, const std::vector<double>& values) {
  Json j;
  j["measure"] = measure;
  j["profile"] = values;
  return j;
}

Json value_json(const std::string& measure, std::size_t k, double value) {
  Json j;
  j["measure"] = measure;
  j["k"] = k;
  j["value"] = value;
  return j;
}

Json compute(const std::string& cmd, const ComputeArgs& a, const Tolerances& tol) {
  if (needs_k(cmd) && a.k_opt->count() == 0) throw Error(ErrorCode::BadParameter, fmt::format("{} requires --k", cmd));
  if (cmd == "classical-fk" || cmd == "classical-dk") {
    const ProbabilityDistribution p = distribution_from_json(read_json_file(a.rho));
    const ProbabilityDistribution q = distribution_from_json(read_json_file(a.omega));
    if (cmd == "classical-fk") return value_json(cmd, a.k, classical_partial_fidelity(p, q, a.k));
    return value_json(cmd, a.k, classical_partitioned_distance(p, q, a.k));
  }
  const DensityMatrix rho = read_state(a.rho, tol);
  const DensityMatrix omega = read_state(a.omega, tol);
  require_same_dim(rho, omega);
  if (cmd == "fk") return value_json(cmd, a.k, partial_fidelity(rho, omega, a.k, tol));
  if (cmd == "dk") return value_json(cmd, a.k, partitioned_trace_distance(rho, omega, a.k, tol));
  if (cmd == "f0") return value_json(cmd, 0, fidelity(rho, omega, tol));
  if (cmd == "trace-distance") return value_json(cmd, rho.dim(), trace_distance(rho, omega, tol));
  if (cmd == "profile") return profile_json(cmd, fidelity_profile(rho, omega, tol).values);
  return profile_json(cmd, distance_profile(rho, omega, tol).values);
}

std::size_t parse_dim(const std::string& s) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || v == 0) throw Error(ErrorCode::BadParameter, fmt::format("bad dimension \"{}\"", s));
  return v;
}

/// "D", "A-B" (inclusive range) or "A,B,...".
std::vector<std::size_t> parse_dims(const std::string& spec) {
  std::vector<std::size_t> dims;
  if (const auto dash = spec.find('-'); dash != std::string::npos) {
    const std::size_t lo = parse_dim(spec.substr(0, dash));
    const std::size_t hi = parse_dim(spec.substr(dash + 1));
    if (lo > hi) throw Error(ErrorCode::BadParameter, fmt::format("empty dimension range \"{}\"", spec));
    for (std::size_t d = lo; d <= hi; ++d) dims.push_back(d);
    return dims;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) dims.push_back(parse_dim(item));
  if (dims.empty()) throw Error(ErrorCode::BadParameter, "no dimensions given");
  return dims;
}

int verify(const VerifyArgs& a, double scale, std::ostream& out, std::ostream& err) {
  SuiteConfig config;
  config.suite = a.suite;
  config.trials = a.trials;
  config.dims = parse_dims(a.dims);
  config.env_dim = a.env_dim;
  config.master_seed = a.seed;
  config.tolerance_scale = scale;
  if (!is_suite(config.suite)) throw Error(ErrorCode::BadParameter, fmt::format("unknown suite \"{}\"", a.suite));
  const SuiteReport report = run_suite(config);
  out << dump_json(report_to_json(report, a.timing), 2) << '\n';
  err << fmt::format("{}: {} trials x {} dims, {} checks, {} failures, worst margin {:.3e} (tolerance {:.1e})\n",
                     report.suite, report.trials, report.dims.size(), report.checks, report.failures.size(),
                     report.worst_margin, report.tolerance);
  return report.passed() ? kExitOk : kExitProperty;
}

int sweep(const std::string& which, const SweepArgs& a, std::ostream& out) {
  const bool increase = which == "ad-increase";
  const double upper = increase ? 0.5 : 1.0;
  const double gamma_max = a.gamma_max.value_or(upper);
  if (!(gamma_max > 0.0 && gamma_max <= upper)) {
    throw Error(ErrorCode::BadParameter, fmt::format("--gamma-max {} outside (0, {}]", gamma_max, upper));
  }
  if (a.steps == 0 && !a.closed) throw Error(ErrorCode::BadParameter, "--gamma-steps must be positive");

  std::string csv = "gamma,f1_before,f1_after,closed_form_before,closed_form_after\n";
  const std::size_t first = a.closed ? 0 : 1;
  const std::size_t last = a.closed ? a.steps + 1 : a.steps;
  for (std::size_t i = first; i <= last; ++i) {
    const double gamma = gamma_max * static_cast<double>(i) / static_cast<double>(a.steps + 1);
    const AmplitudeDampingCurve row =
        increase ? ad_counterexample_increase(gamma) : ad_counterexample_decrease(gamma, a.v, a.w);
    csv += fmt::format("{},{},{},{},{}\n", format_number(gamma), format_number(row.f1_before),
                       format_number(row.f1_after), format_number(row.closed_form_before),
                       format_number(row.closed_form_after));
  }
  if (a.out.empty()) {
    out << csv;
  } else {
    write_text_file(a.out, csv);
  }
  return kExitOk;
}

int random_object(const RandomArgs& a, std::ostream& out) {
  Json j;
  if (a.kind == "state") {
    j = matrix_to_json(random_density_hs(a.dim, a.seed).matrix());
  } else if (a.kind == "unitary") {
    j = matrix_to_json(random_haar_unitary(a.dim, a.seed));
  } else if (a.kind == "povm") {
    j = povm_to_json(random_povm(a.dim, a.n.value_or(a.dim), a.seed));
  } else {
    j = channel_to_json(Channel(unistochastic(a.dim, a.n.value_or(2), a.seed)));
  }
  const std::string text = dump_json(j, 2) + "\n";
  if (a.out.empty()) {
    out << text;
  } else {
    write_text_file(a.out, text);
  }
  return kExitOk;
}

int exit_code_for(ErrorCode code) {
  return code == ErrorCode::DimensionMismatch || code == ErrorCode::LengthMismatch ? kExitDimension : kExitUsage;
}

}  // namespace

double tolerance_scale_from_env() {
  const char* raw = std::getenv("PFID_TOLERANCE_SCALE");
  if (raw == nullptr || *raw == '\0') return 1.0;
  char* end = nullptr;
  const double scale = std::strtod(raw, &end);
  if (*end != '\0' || !(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::BadParameter, fmt::format("PFID_TOLERANCE_SCALE=\"{}\" is not a positive number", raw));
  }
  return scale;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partial fidelities, partitioned trace distances and their verification suites", "pfid"};
  app.require_subcommand(1);

  ComputeArgs compute_args;
  std::vector<CLI::App*> compute_cmds;
  std::vector<CLI::Option*> k_opts;
  for (const auto& name : kComputeCommands) {
    CLI::App* sub = app.add_subcommand(name, fmt::format("compute {} for two states or distributions", name));
    sub->add_option("--rho", compute_args.rho, "first state (or distribution) JSON file")->required();
    sub->add_option("--omega", compute_args.omega, "second state (or distribution) JSON file")->required();
    k_opts.push_back(sub->add_option("--k", compute_args.k, "index k"));
    compute_cmds.push_back(sub);
  }

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run a seeded property suite");
  verify_cmd->add_option("--suite", verify_args.suite, "suite name")->required();
  verify_cmd->add_option("--trials", verify_args.trials, "trials per dimension")->required();
  verify_cmd->add_option("--dim", verify_args.dims, "D, A-B or A,B,...");
  verify_cmd->add_option("--env-dim", verify_args.env_dim, "second factor / environment dimension");
  verify_cmd->add_option("--seed", verify_args.seed, "master seed");
  verify_cmd->add_flag("--timing", verify_args.timing, "include wall_time in the report");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "amplitude-damping counterexample curves as CSV");
  sweep_cmd->require_subcommand(1);
  CLI::App* decrease_cmd = sweep_cmd->add_subcommand("ad-decrease", "Bloch-z pair (0,0,v), (0,0,w)");
  decrease_cmd->add_option("--v", sweep_args.v, "Bloch z of rho")->required();
  decrease_cmd->add_option("--w", sweep_args.w, "Bloch z of omega")->required();
  CLI::App* increase_cmd = sweep_cmd->add_subcommand("ad-increase", "pair mapped onto the maximally mixed state");
  for (CLI::App* sub : {decrease_cmd, increase_cmd}) {
    sub->add_option("--gamma-steps", sweep_args.steps, "number of interior grid points")->required();
    sub->add_option("--gamma-max", sweep_args.gamma_max, "right end of the gamma grid");
    sub->add_flag("--closed", sweep_args.closed, "include both grid endpoints");
    sub->add_option("--out", sweep_args.out, "CSV file (default stdout)");
  }

  RandomArgs random_args;
  CLI::App* random_cmd = app.add_subcommand("random", "sample a random object as JSON");
  random_cmd->add_option("kind", random_args.kind, "state, unitary, povm or channel")
      ->required()
      ->check(CLI::IsMember({"state", "unitary", "povm", "channel"}));
  random_cmd->add_option("--dim", random_args.dim, "dimension")->required()->check(CLI::PositiveNumber);
  random_cmd->add_option("--n", random_args.n, "POVM outcomes or environment dimension")->check(CLI::PositiveNumber);
  random_cmd->add_option("--seed", random_args.seed, "seed");
  random_cmd->add_option("--out", random_args.out, "output file (default stdout)");

  std::vector<const char*> argv{"pfid"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    const double scale = tolerance_scale_from_env();
    const Tolerances tol = Tolerances{}.scaled(scale);
    for (std::size_t i = 0; i < compute_cmds.size(); ++i) {
      if (compute_cmds[i]->parsed()) {
        compute_args.k_opt = k_opts[i];
        out << dump_json(compute(compute_cmds[i]->get_name(), compute_args, tol)) << '\n';
        return kExitOk;
      }
    }
    if (verify_cmd->parsed()) return verify(verify_args, scale, out, err);
    if (decrease_cmd->parsed()) return sweep("ad-decrease", sweep_args, out);
    if (increase_cmd->parsed()) return sweep("ad-increase", sweep_args, out);
    return random_object(random_args, out);
  } catch (const Error& e) {
    err << "pfid: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace pfid
