#include "backflow/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>

#include "CLI11.hpp"
#include "backflow/backflow_scan.hpp"
#include "backflow/case_catalog.hpp"
#include "backflow/error.hpp"
#include "backflow/fock_toy.hpp"
#include "backflow/report_io.hpp"

namespace backflow::cli {

double parse_angle(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s += ch;
  if (s.empty()) throw std::invalid_argument("empty angle");

  auto parse_number = [](const std::string& num) {
    std::size_t used = 0;
    const double v = std::stod(num, &used);
    if (used != num.size()) throw std::invalid_argument("trailing characters in '" + num + "'");
    return v;
  };

  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    std::string scale = s.substr(0, s.size() - 2);
    if (!scale.empty() && scale.back() == '*') scale.pop_back();
    double factor = 1.0;
    if (scale == "-")
      factor = -1.0;
    else if (scale == "+" || scale.empty())
      factor = 1.0;
    else
      factor = parse_number(scale);
    return factor * std::numbers::pi;
  }
  return parse_number(s);
}

namespace {

struct GlobalOptions {
  PhysicalParams params;
  std::string out_path;
  std::string format = "csv";
  double tol = kDefaultRegionTolerance;
  std::uint64_t seed = 1;
};

struct StateOptions {
  int case_id = 1;
  double a = 0.5;
  std::string phi = "0";
  int lambda = 1;
  double k = 1.0;
  int energy_sign = 1;
  double zmin = -10.0;
  double zmax = 10.0;
  std::size_t samples = 1001;
  double t = 0.0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_state_options(CLI::App* cmd, StateOptions& o, bool id_required) {
  auto* id = cmd->add_option("--id", o.case_id, "Case family 1..7");
  if (id_required) id->required();
  cmd->add_option("--a", o.a, "Amplitude of the second component");
  cmd->add_option("--phi", o.phi, "Relative phase (number, or multiple of pi such as 0.5pi)");
  cmd->add_option("--lambda", o.lambda, "Helicity +1 or -1");
  cmd->add_option("--k", o.k, "Wavenumber k > 0");
  cmd->add_option("--energy-sign", o.energy_sign, "Energy sign for cases 1 and 6 (+1 or -1)");
  cmd->add_option("--zmin", o.zmin, "Lower end of the z range");
  cmd->add_option("--zmax", o.zmax, "Upper end of the z range");
  cmd->add_option("--samples", o.samples, "Number of z samples");
  cmd->add_option("--t", o.t, "Time");
}

int sign_flag(int v, const char* flag) {
  if (v != 1 && v != -1) throw UsageError(std::string(flag) + " must be +1 or -1");
  return v;
}

CaseSpec to_case_spec(const StateOptions& o, const GlobalOptions& g) {
  CaseSpec spec;
  spec.case_id = o.case_id;
  spec.a = o.a;
  try {
    spec.phi = parse_angle(o.phi);
  } catch (const std::exception& e) {
    throw UsageError("--phi: cannot parse '" + o.phi + "'");
  }
  spec.lambda = sign_flag(o.lambda, "--lambda") > 0 ? Helicity::up : Helicity::down;
  spec.energy_sign = sign_flag(o.energy_sign, "--energy-sign") > 0 ? EnergySign::positive
                                                                  : EnergySign::negative;
  spec.k = o.k;
  spec.params = g.params;
  if (o.case_id < 1 || o.case_id > 7)
    throw UsageError("--id: unknown case " + std::to_string(o.case_id) + " (expected 1..7)");
  try {
    spec.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return spec;
}

AxisRange z_axis(const StateOptions& o) {
  AxisRange z{o.zmin, o.zmax, o.samples};
  try {
    z.validate();
  } catch (const Error& e) {
    throw UsageError(std::string("--zmin/--zmax/--samples: ") + e.what());
  }
  return z;
}

/// Writes to --out when given, otherwise to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("--out: cannot open '" + path + "'");
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

void check_format(const GlobalOptions& g) {
  if (g.format != "csv" && g.format != "json")
    throw UsageError("--format: expected csv or json, got '" + g.format + "'");
}

int cmd_case(const StateOptions& o, const GlobalOptions& g, std::ostream& out) {
  check_format(g);
  const CaseSpec spec = to_case_spec(o, g);
  const AxisRange z = z_axis(o);
  CaseReport report;
  try {
    report = make_case_report(spec, z, o.t, g.tol);
  } catch (const Error& e) {
    if (e.code() != Errc::scale_not_positive) throw;
    out << nlohmann::json{{"case_id", spec.case_id}, {"verification_passed", false}, {"error", e.what()}}.dump(2)
        << '\n';
    return kVerificationFailed;
  }
  if (!g.out_path.empty()) {
    Sink sink(g.out_path, out);
    const auto samples = scan_current(build_case(spec), ScanGrid{z, o.t});
    if (g.format == "csv")
      write_samples_csv(sink.stream(), samples);
    else
      sink.stream() << samples_json(samples).dump(2) << '\n';
  }
  out << case_report_json(report).dump(2) << '\n';
  return report.verification.passed ? kPass : kVerificationFailed;
}

int cmd_scan(const StateOptions& o, const GlobalOptions& g, std::ostream& out) {
  check_format(g);
  const CaseSpec spec = to_case_spec(o, g);
  const auto samples = scan_current(build_case(spec), ScanGrid{z_axis(o), o.t});
  Sink sink(g.out_path, out);
  if (g.format == "csv")
    write_samples_csv(sink.stream(), samples);
  else
    sink.stream() << samples_json(samples).dump(2) << '\n';
  return kPass;
}

struct Fig1Options {
  double amin = 0.0, amax = 1.0, xmin = -6.0, xmax = 6.0;
  std::size_t res = 400;
  double k = 1.0;
  std::string phi = "0";
};

int cmd_fig1(const Fig1Options& o, const GlobalOptions& g, std::ostream& out) {
  if (g.format != "csv") throw UsageError("--format: fig1 writes csv only");
  Fig1Spec spec;
  spec.a = AxisRange{o.amin, o.amax, o.res};
  spec.x = AxisRange{o.xmin, o.xmax, o.res};
  spec.k = o.k;
  spec.params = g.params;
  try {
    spec.phi = parse_angle(o.phi);
  } catch (const std::exception&) {
    throw UsageError("--phi: cannot parse '" + o.phi + "'");
  }
  try {
    spec.a.validate();
    spec.x.validate();
  } catch (const Error& e) {
    throw UsageError(std::string("--amin/--amax/--xmin/--xmax/--res: ") + e.what());
  }
  if (g.params.mass <= 0.0) throw UsageError("--mass must be > 0 for the nonrelativistic map");
  Sink sink(g.out_path, out);
  write_fig1_header(sink.stream());
  stream_fig1(spec, [&](std::span<const Fig1Point> row) { write_fig1_row(sink.stream(), row); });
  return kPass;
}

struct NrOptions {
  double a = 0.5, k = 1.0, x = 0.0;
  std::string phi = "0";
};

int cmd_nr(const NrOptions& o, const GlobalOptions& g, std::ostream& out) {
  double phi = 0.0;
  try {
    phi = parse_angle(o.phi);
  } catch (const std::exception&) {
    throw UsageError("--phi: cannot parse '" + o.phi + "'");
  }
  try {
    const double v = nr_velocity(o.a, o.k, o.x, phi, g.params);
    const double q = quantum_potential(o.a, o.k, o.x, phi, g.params);
    Sink sink(g.out_path, out);
    sink.stream() << nlohmann::json{{"a", o.a}, {"k", o.k}, {"x", o.x}, {"phi", phi},
                                    {"params", params_json(g.params)}, {"v", v}, {"Q", q},
                                    {"backflow", v < 0.0}}
                         .dump(2)
                  << '\n';
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return kPass;
}

struct ThresholdOptions {
  StateOptions state;
  double alo = 0.0, ahi = 1.0;
};

int cmd_threshold(const ThresholdOptions& o, const GlobalOptions& g, std::ostream& out) {
  const CaseSpec spec = to_case_spec(o.state, g);
  nlohmann::json report{{"case_id", spec.case_id}, {"params", params_json(spec.params)},
                        {"phi", spec.phi},         {"lambda", value(spec.lambda)},
                        {"k", spec.k},             {"bracket", {o.alo, o.ahi}}};
  const double c = spec.params.c;
  const double gamma = lorentz_factor(spec.k, spec.params);
  if (spec.case_id == 2) report["closed_form"] = critical_amplitude(gamma);
  if (spec.case_id == 3) {
    const double v = c * c * spec.params.hbar * spec.k / std::abs(dispersion(spec.k, EnergySign::positive, spec.params));
    report["closed_form"] = (c - std::sqrt(c * c - v * v)) / v;
  }
  try {
    report["threshold"] = backflow_threshold(spec, Interval{o.alo, o.ahi}, std::min(g.tol, 1e-12));
  } catch (const Error& e) {
    if (e.code() != Errc::no_sign_change && e.code() != Errc::invalid_argument) throw;
    report["error"] = e.what();
    Sink(g.out_path, out).stream() << report.dump(2) << '\n';
    return e.code() == Errc::no_sign_change ? kVerificationFailed : kUsage;
  }
  Sink(g.out_path, out).stream() << report.dump(2) << '\n';
  return kPass;
}

struct FockOptions {
  int modes = 1;
  double spin = 0.5;
  double K = 1.0;
};

int cmd_fock(const FockOptions& o, const GlobalOptions& g, std::ostream& out) {
  if (o.modes < 1 || o.modes > kMaxFockModes)
    throw UsageError("--modes: expected 1.." + std::to_string(kMaxFockModes) + ", got " +
                     std::to_string(o.modes));
  if (o.spin != 0.5 && o.spin != -0.5) throw UsageError("--spin: expected 0.5 or -0.5");
  if (!(o.K > 0.0) || !std::isfinite(o.K)) throw UsageError("--K: must be positive");
  const auto report = verify_charge_identity(o.modes, o.spin > 0 ? Spin::up : Spin::down, o.K);
  Sink(g.out_path, out).stream() << charge_identity_json(report).dump(2) << '\n';
  return report.identity_holds ? kPass : kVerificationFailed;
}

struct VerifyAllOptions {
  std::size_t draws = 50;
  std::size_t grid = 201;
};

int cmd_verify_all(const VerifyAllOptions& o, const GlobalOptions& g, std::ostream& out) {
  std::mt19937_64 rng(g.seed);
  std::uniform_real_distribution<double> amp(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> wave(0.0, 3.0);
  std::bernoulli_distribution coin(0.5);
  const std::vector<double> zs = linspace(-10.0, 10.0, o.grid);

  bool all_pass = true;
  auto cases = nlohmann::json::array();
  for (int id = 1; id <= 7; ++id) {
    double worst = 0.0;
    std::size_t failures = 0;
    for (std::size_t n = 0; n < o.draws; ++n) {
      CaseSpec spec;
      spec.case_id = id;
      spec.a = amp(rng);
      spec.phi = phase(rng);
      spec.lambda = coin(rng) ? Helicity::up : Helicity::down;
      spec.energy_sign = coin(rng) ? EnergySign::positive : EnergySign::negative;
      double k = wave(rng);
      spec.k = k > 0.0 ? k : 1.0;
      spec.params = g.params;
      try {
        const auto v = verify_case(spec, zs);
        worst = std::max(worst, v.max_residual);
        if (!v.passed) ++failures;
      } catch (const Error&) {
        ++failures;
      }
    }
    all_pass = all_pass && failures == 0;
    cases.push_back({{"case_id", id}, {"draws", o.draws}, {"failures", failures}, {"max_residual", worst}});
  }

  auto thresholds = nlohmann::json::array();
  for (double gamma : {1.1, 2.0, 5.0, 20.0}) {
    CaseSpec spec;
    spec.case_id = 2;
    spec.phi = std::numbers::pi;
    spec.params = g.params;
    spec.k = spec.params.mass * spec.params.c * std::sqrt(gamma * gamma - 1.0) / spec.params.hbar;
    double found = std::nan("");
    bool ok = false;
    try {
      found = backflow_threshold(spec, Interval{0.0, 1.0});
      ok = std::abs(found - critical_amplitude(gamma)) < 1e-8;
    } catch (const Error&) {
    }
    all_pass = all_pass && ok;
    thresholds.push_back({{"gamma", gamma}, {"threshold", found}, {"closed_form", critical_amplitude(gamma)}, {"passed", ok}});
  }

  // The charge identity is checked for spin up, the configuration worked out explicitly.
  auto fock = nlohmann::json::array();
  for (int m = 1; m <= 4; ++m) {
    const auto r = verify_charge_identity(m, Spin::up, 1.0);
    all_pass = all_pass && r.identity_holds;
    fock.push_back({{"M", m}, {"identity_holds", r.identity_holds}, {"max_entry_deviation", r.max_entry_deviation}});
  }

  Sink(g.out_path, out).stream() << nlohmann::json{{"seed", g.seed}, {"params", params_json(g.params)},
                                                   {"cases", cases}, {"case2_thresholds", thresholds},
                                                   {"fock", fock}, {"all_passed", all_pass}}
                                        .dump(2)
                                 << '\n';
  return all_pass ? kPass : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dirac-spinor superposition currents and quantum backflow", "backflow"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--hbar", g.params.hbar, "Reduced Planck constant")->capture_default_str();
  app.add_option("--c", g.params.c, "Speed of light")->capture_default_str();
  app.add_option("--mass", g.params.mass, "Particle mass")->capture_default_str();
  app.add_option("--out", g.out_path, "Output file (default: stdout)");
  app.add_option("--format", g.format, "csv or json")->capture_default_str();
  app.add_option("--tol", g.tol, "Root-refinement tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomized sweeps")->capture_default_str();

  StateOptions case_opts;
  auto* case_cmd = app.add_subcommand("case", "Build one case family, verify its closed form, report backflow");
  add_state_options(case_cmd, case_opts, true);

  StateOptions scan_opts;
  auto* scan_cmd = app.add_subcommand("scan", "Sample rho, j and v_z of a case state over z");
  add_state_options(scan_cmd, scan_opts, true);

  Fig1Options fig_opts;
  auto* fig_cmd = app.add_subcommand("fig1", "Two-wave nonrelativistic v<0 / Q>0 region grid over (a, x)");
  fig_cmd->add_option("--amin", fig_opts.amin);
  fig_cmd->add_option("--amax", fig_opts.amax);
  fig_cmd->add_option("--xmin", fig_opts.xmin);
  fig_cmd->add_option("--xmax", fig_opts.xmax);
  fig_cmd->add_option("--res", fig_opts.res, "Points per axis");
  fig_cmd->add_option("--k", fig_opts.k);
  fig_cmd->add_option("--phi", fig_opts.phi);

  NrOptions nr_opts;
  auto* nr_cmd = app.add_subcommand("nr", "Nonrelativistic two-wave velocity and quantum potential at one point");
  nr_cmd->add_option("--a", nr_opts.a);
  nr_cmd->add_option("--k", nr_opts.k);
  nr_cmd->add_option("--x", nr_opts.x);
  nr_cmd->add_option("--phi", nr_opts.phi);

  ThresholdOptions th_opts;
  th_opts.state.case_id = 2;
  th_opts.state.phi = "pi";
  auto* th_cmd = app.add_subcommand("threshold", "Backflow onset in the amplitude a");
  add_state_options(th_cmd, th_opts.state, false);
  th_cmd->add_option("--alo", th_opts.alo, "Bracket lower end");
  th_cmd->add_option("--ahi", th_opts.ahi, "Bracket upper end");

  FockOptions fock_opts;
  auto* fock_cmd = app.add_subcommand("fock", "Check the vacuum-subtracted current against K N");
  fock_cmd->add_option("--modes", fock_opts.modes, "Number of momentum modes M");
  fock_cmd->add_option("--spin", fock_opts.spin, "0.5 or -0.5");
  fock_cmd->add_option("--K", fock_opts.K, "Positive normalization constant");

  VerifyAllOptions all_opts;
  auto* all_cmd = app.add_subcommand("verify-all", "Randomized closed-form, threshold and Fock checks");
  all_cmd->add_option("--draws", all_opts.draws, "Draws per case");
  all_cmd->add_option("--grid", all_opts.grid, "z points per verification");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    g.params.validate();
    if (!(g.tol > 0.0)) throw UsageError("--tol must be positive");
    if (*case_cmd) return cmd_case(case_opts, g, out);
    if (*scan_cmd) return cmd_scan(scan_opts, g, out);
    if (*fig_cmd) return cmd_fig1(fig_opts, g, out);
    if (*nr_cmd) return cmd_nr(nr_opts, g, out);
    if (*th_cmd) return cmd_threshold(th_opts, g, out);
    if (*fock_cmd) return cmd_fock(fock_opts, g, out);
    if (*all_cmd) return cmd_verify_all(all_opts, g, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::invalid_argument || e.code() == Errc::invalid_case ? kUsage
                                                                                : kVerificationFailed;
  }
  return kUsage;
}

}  // namespace backflow::cli
