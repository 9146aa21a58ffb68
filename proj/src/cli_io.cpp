#include "su11/cli_io.hpp"

#include "su11/amplifier.hpp"
#include "su11/displacement.hpp"
#include "su11/dynamics.hpp"
#include "su11/errors.hpp"
#include "su11/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace su11::cli {

using Json = nlohmann::ordered_json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void write_json(std::string& out, const Json& j) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        write_json(out, it.value());
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        write_json(out, v);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      break;
    }
    default:
      out += j.dump();
  }
}

std::string dump(const Json& j) {
  std::string s;
  write_json(s, j);
  s += '\n';
  return s;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& header) { out_ = header + "\n"; }

  CsvWriter& field(double x) { return raw(format_double(x)); }
  CsvWriter& field(int x) { return raw(std::to_string(x)); }
  CsvWriter& field(const std::string& s) { return raw(csv_quote(s)); }
  CsvWriter& empty() { return raw(""); }
  void end_row() {
    out_ += '\n';
    first_ = true;
  }
  const std::string& str() const { return out_; }

 private:
  CsvWriter& raw(const std::string& s) {
    if (!first_) out_ += ',';
    first_ = false;
    out_ += s;
    return *this;
  }
  std::string out_;
  bool first_ = true;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

bool finite(double x) { return std::isfinite(x); }

// ---------------------------------------------------------------------------

CommandOutput cmd_verify(const RunConfig& cfg, std::ostream* log) {
  VerifyConfig vc;
  vc.dim = cfg.dim;
  if (cfg.tol_given) vc.tol_override = cfg.tol;
  const VerifyReport report =
      run_verification(vc, [log](const CheckResult& c) {
        if (!log) return;
        *log << "[" << (c.criterion < 10 ? " " : "") << c.criterion << "] "
             << to_string(c.status) << "  " << c.name << "  residual "
             << format_double(c.residual) << "  tolerance "
             << format_double(c.tolerance) << '\n';
        log->flush();
      });
  if (log) {
    *log << (report.passed() ? "verify: all checks passed" : "verify: FAILED")
         << " (" << format_double(report.seconds) << " s)\n";
  }

  CommandOutput out;
  out.exit_code = report.passed() ? kSuccess : kVerificationFailure;
  if (cfg.format == Format::Csv) {
    CsvWriter w(
        "criterion,name,status,residual,tolerance,truncation_sensitive,detail");
    for (const auto& c : report.checks) {
      w.field(c.criterion).field(c.name).field(std::string(to_string(c.status)));
      w.field(c.residual).field(c.tolerance);
      w.field(std::string(c.truncation_sensitive ? "true" : "false"));
      w.field(c.detail);
      w.end_row();
    }
    out.body = w.str();
    return out;
  }

  Json j;
  j["meta"] = {{"dim", cfg.dim},
               {"tol_override", cfg.tol_given ? Json(cfg.tol) : Json(nullptr)},
               {"reduced_window", vc.reduced_window()}};
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"criterion", c.criterion},
                      {"name", c.name},
                      {"status", to_string(c.status)},
                      {"residual", c.residual},
                      {"tolerance", c.tolerance},
                      {"truncation_sensitive", c.truncation_sensitive},
                      {"detail", c.detail}});
  }
  j["checks"] = checks;
  Json criteria = Json::array();
  for (int c = 1; c <= 10; ++c) {
    criteria.push_back({{"criterion", c}, {"passed", report.criterion_passed(c)}});
  }
  j["criteria"] = criteria;
  Json disc = Json::array();
  for (const auto& d : report.discrepancies) {
    disc.push_back({{"form", d.form},
                    {"points_compared", d.points_compared},
                    {"points_outside_tolerance", d.points_outside_tolerance},
                    {"singular_points", d.singular_points},
                    {"max_abs_difference", d.max_abs_difference},
                    {"worst_point", d.worst_point},
                    {"corrected_max_abs_difference",
                     d.corrected_max_abs_difference}});
  }
  j["discrepancies"] = disc;
  j["passed"] = report.passed();
  out.body = dump(j);
  return out;
}

PncsResult checked_series(BargmannIndex k, int n, const DisplacementParams& p,
                          int dim, double tol) {
  PncsResult r = pncs_series(k, n, p, dim, 1e-16, TruncationPolicy::Report);
  if (r.state.tail_mass() > tol) {
    throw TruncationError("truncation tail mass " +
                          format_double(r.state.tail_mass()) +
                          " exceeds --tol " + format_double(tol) +
                          "; increase --dim");
  }
  return r;
}

CommandOutput cmd_state(const RunConfig& cfg) {
  const BargmannIndex k(cfg.k);
  const DisplacementParams p = make_params(cfg.tau, cfg.phi);
  const PncsResult r = checked_series(k, cfg.n, p, cfg.dim, cfg.tol);
  const Vector& a = r.state.amplitudes();

  CommandOutput out;
  if (cfg.format == Format::Csv) {
    CsvWriter w("n,re,im,abs2");
    for (int i = 0; i < a.size(); ++i) {
      if (a(i) == cplx{0.0, 0.0}) continue;
      w.field(i).field(a(i).real()).field(a(i).imag()).field(std::norm(a(i)));
      w.end_row();
    }
    out.body = w.str();
    return out;
  }
  Json j;
  j["meta"] = {{"k", cfg.k},
               {"n_source", r.source_n},
               {"zeta_re", p.zeta.real()},
               {"zeta_im", p.zeta.imag()},
               {"eta", p.eta},
               {"tail_mass", r.state.tail_mass()},
               {"series_terms", r.series_terms_used}};
  Json amps = Json::array();
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) == cplx{0.0, 0.0}) continue;
    amps.push_back({{"n", i},
                    {"re", a(i).real()},
                    {"im", a(i).imag()},
                    {"abs2", std::norm(a(i))}});
  }
  j["amplitudes"] = amps;
  out.body = dump(j);
  return out;
}

CommandOutput cmd_spectrum(const RunConfig& cfg) {
  const AmplifierSpec a{cfg.omega, cfg.chi, cfg.pump_phase};
  const AmplifierSpec ref{cfg.omega, 0.0, cfg.pump_phase};
  const TiltResult tilt = amplifier_tilt(a);  // throws above threshold

  struct Row {
    int n;
    double chi;
    double energy;
  };
  std::vector<Row> rows;
  std::vector<Row> reference;
  for (int nr = 0; nr <= cfg.n_max; ++nr) {
    const auto q = TwoModeQuantumNumbers::from_radial(nr, cfg.m);
    rows.push_back({nr, cfg.chi, amplifier_energy(q, a)});
    if (cfg.chi != 0.0) reference.push_back({nr, 0.0, amplifier_energy(q, ref)});
  }

  CommandOutput out;
  if (cfg.format == Format::Csv) {
    CsvWriter w("n,m,omega,chi,energy");
    for (const auto* set : {&rows, &reference}) {
      for (const Row& r : *set) {
        w.field(r.n).field(cfg.m).field(cfg.omega).field(r.chi).field(r.energy);
        w.end_row();
      }
    }
    out.body = w.str();
    return out;
  }
  auto to_json = [&](const std::vector<Row>& set) {
    Json arr = Json::array();
    for (const Row& r : set) {
      arr.push_back({{"n", r.n},
                     {"m", cfg.m},
                     {"omega", cfg.omega},
                     {"chi", r.chi},
                     {"energy", r.energy}});
    }
    return arr;
  };
  Json j;
  j["meta"] = {{"omega", cfg.omega},
               {"chi", cfg.chi},
               {"pump_phase", cfg.pump_phase},
               {"m", cfg.m},
               {"omega_eff", tilt.omega_eff},
               {"tau", tilt.params.tau}};
  j["levels"] = to_json(rows);
  j["reference"] = to_json(cfg.chi != 0.0 ? reference : rows);
  out.body = dump(j);
  return out;
}

CommandOutput cmd_wavefunction(const RunConfig& cfg) {
  const bool amplifier_mode =
      cfg.omega_given || cfg.chi_given || cfg.pump_phase_given;
  DisplacementParams p;
  if (amplifier_mode) {
    p = amplifier_tilt(AmplifierSpec{cfg.omega, cfg.chi, cfg.pump_phase}).params;
  } else {
    p = make_params(cfg.tau, cfg.phi);
  }
  const auto q = TwoModeQuantumNumbers::from_radial(cfg.n, cfg.m);
  const PncsWavefunction psi(q, p);
  const double threshold = cfg.tol_given ? cfg.tol : 1e-8;

  double r_max = 0.0;
  if (cfg.r_max) {
    r_max = *cfg.r_max;
  } else {
    const double z = std::abs(p.zeta);
    r_max = std::sqrt(
        radial_cutoff((1.0 - z) / (1.0 + z), q.abs_m() + 2.0 * cfg.n + 2.0));
  }

  std::optional<cplx> sigma;
  if (!p.is_identity()) sigma = sigma_parameter(p);

  struct Sample {
    double r, angle;
    cplx series;
    std::optional<cplx> closed;
    cplx corrected;
  };
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(cfg.radial_points) *
                  static_cast<std::size_t>(cfg.angular_points));
  double max_diff = 0.0;
  double max_corrected = 0.0;
  int singular = 0;
  int mismatched = 0;
  for (int i = 0; i < cfg.radial_points; ++i) {
    const double r = cfg.radial_points == 1
                         ? r_max
                         : r_max * i / (cfg.radial_points - 1.0);
    for (int j = 0; j < cfg.angular_points; ++j) {
      const double angle = kTwoPi * j / cfg.angular_points;
      Sample s{r, angle, psi(r, angle), std::nullopt,
               pncs_wavefunction_corrected(q, p, r, angle)};
      try {
        s.closed = pncs_wavefunction_closed(q, p, r, angle);
        const double d = std::abs(*s.closed - s.series);
        max_diff = std::max(max_diff, d);
        if (d > threshold) ++mismatched;
      } catch (const DomainError&) {
        ++singular;
      }
      max_corrected = std::max(max_corrected, std::abs(s.corrected - s.series));
      samples.push_back(s);
    }
  }
  auto flag_of = [&](const Sample& s) -> std::string {
    if (!s.closed) return "singular";
    return std::abs(*s.closed - s.series) <= threshold ? "agree" : "mismatch";
  };

  CommandOutput out;
  if (cfg.format == Format::Csv) {
    CsvWriter w(
        "r,angle,series_re,series_im,series_abs2,closed_re,closed_im,"
        "closed_abs2,difference,corrected_re,corrected_im,corrected_abs2,"
        "corrected_difference,flag");
    for (const Sample& s : samples) {
      w.field(s.r).field(s.angle);
      w.field(s.series.real()).field(s.series.imag()).field(std::norm(s.series));
      if (s.closed) {
        w.field(s.closed->real()).field(s.closed->imag());
        w.field(std::norm(*s.closed)).field(std::abs(*s.closed - s.series));
      } else {
        w.empty().empty().empty().empty();
      }
      w.field(s.corrected.real()).field(s.corrected.imag());
      w.field(std::norm(s.corrected)).field(std::abs(s.corrected - s.series));
      w.field(flag_of(s));
      w.end_row();
    }
    out.body = w.str();
    return out;
  }

  auto opt = [](const std::optional<double>& x) {
    return x ? Json(*x) : Json(nullptr);
  };
  Json j;
  j["meta"] = {{"n", cfg.n},
               {"m", cfg.m},
               {"k", q.k().value()},
               {"tau", p.tau},
               {"phi", p.phi},
               {"zeta_re", p.zeta.real()},
               {"zeta_im", p.zeta.imag()},
               {"sigma_re", opt(sigma ? std::optional(sigma->real()) : std::nullopt)},
               {"sigma_im", opt(sigma ? std::optional(sigma->imag()) : std::nullopt)},
               {"r_max", r_max},
               {"threshold", threshold},
               {"max_difference", max_diff},
               {"max_corrected_difference", max_corrected},
               {"mismatched_points", mismatched},
               {"singular_points", singular}};
  Json rows = Json::array();
  for (const Sample& s : samples) {
    Json row = {{"r", s.r},
                {"angle", s.angle},
                {"series_re", s.series.real()},
                {"series_im", s.series.imag()},
                {"series_abs2", std::norm(s.series)}};
    if (s.closed) {
      row["closed_re"] = s.closed->real();
      row["closed_im"] = s.closed->imag();
      row["closed_abs2"] = std::norm(*s.closed);
      row["difference"] = std::abs(*s.closed - s.series);
    } else {
      row["closed_re"] = nullptr;
      row["closed_im"] = nullptr;
      row["closed_abs2"] = nullptr;
      row["difference"] = nullptr;
    }
    row["corrected_re"] = s.corrected.real();
    row["corrected_im"] = s.corrected.imag();
    row["corrected_abs2"] = std::norm(s.corrected);
    row["corrected_difference"] = std::abs(s.corrected - s.series);
    row["flag"] = flag_of(s);
    rows.push_back(std::move(row));
  }
  j["samples"] = rows;
  out.body = dump(j);
  return out;
}

CommandOutput cmd_evolve(const RunConfig& cfg) {
  const BargmannIndex k(cfg.k);
  const Su11Hamiltonian h =
      AmplifierSpec{cfg.omega, cfg.chi, cfg.pump_phase}.as_su11();
  const TiltResult tilt = tilt_parameters(h);
  const PncsResult psi = checked_series(k, cfg.n, tilt.params, cfg.dim, cfg.tol);
  const TruncatedRep rep(k, cfg.dim);
  const Vector& v = psi.state.amplitudes();

  struct Row {
    double t, analytic, oracle, difference, modulus, state_difference;
  };
  std::vector<Row> rows;
  for (int j = 0; j <= cfg.steps; ++j) {
    const double t = cfg.t * j / cfg.steps;
    const StateVector an = time_evolve(psi, t, tilt, k, cfg.n);
    const Vector dense = evolve_dense(rep, h, v, t);
    const double analytic =
        std::remainder(-tilt.omega_eff * (cfg.k + cfg.n) * t, kTwoPi);
    const double oracle = std::arg(v.dot(dense));
    rows.push_back({t, analytic, oracle,
                    std::remainder(analytic - oracle, kTwoPi),
                    std::abs(inner_product(psi.state, an)),
                    (an.amplitudes() - dense).cwiseAbs().maxCoeff()});
  }

  CommandOutput out;
  if (cfg.format == Format::Csv) {
    CsvWriter w(
        "t,analytic_phase,oracle_phase,phase_difference,overlap_modulus,"
        "state_difference");
    for (const Row& r : rows) {
      w.field(r.t).field(r.analytic).field(r.oracle).field(r.difference);
      w.field(r.modulus).field(r.state_difference);
      w.end_row();
    }
    out.body = w.str();
    return out;
  }
  Json j;
  j["meta"] = {{"k", cfg.k},
               {"n", cfg.n},
               {"omega", cfg.omega},
               {"chi", cfg.chi},
               {"pump_phase", cfg.pump_phase},
               {"omega_eff", tilt.omega_eff},
               {"zeta_re", tilt.params.zeta.real()},
               {"zeta_im", tilt.params.zeta.imag()},
               {"tail_mass", psi.state.tail_mass()},
               {"dim", cfg.dim}};
  Json trace = Json::array();
  for (const Row& r : rows) {
    trace.push_back({{"t", r.t},
                     {"analytic_phase", r.analytic},
                     {"oracle_phase", r.oracle},
                     {"phase_difference", r.difference},
                     {"overlap_modulus", r.modulus},
                     {"state_difference", r.state_difference}});
  }
  j["trace"] = trace;
  out.body = dump(j);
  return out;
}

}  // namespace

void validate(const RunConfig& c) {
  require(c.dim >= 4 && c.dim <= 2048, "--dim must lie in [4, 2048]");
  require(finite(c.tol) && c.tol > 0.0, "--tol must be a positive number");
  require(finite(c.k) && c.k > 0.0, "--k must be a positive number");
  require(c.n >= 0, "--n must be >= 0");
  require(finite(c.tau), "--tau must be finite");
  require(finite(c.phi), "--phi must be finite");
  require(finite(c.omega), "--omega must be finite");
  require(finite(c.chi) && c.chi >= 0.0, "--chi must be >= 0");
  require(finite(c.pump_phase), "--Phi must be finite");
  require(finite(c.t), "--t must be finite");
  require(c.n_max >= 0 && c.n_max <= 100000, "--n-max must lie in [0, 100000]");
  require(c.m >= -1000 && c.m <= 1000, "--m must lie in [-1000, 1000]");
  require(c.radial_points >= 1 && c.radial_points <= 100000,
          "--radial-points must lie in [1, 100000]");
  require(c.angular_points >= 1 && c.angular_points <= 100000,
          "--angular-points must lie in [1, 100000]");
  require(c.steps >= 1 && c.steps <= 100000, "--steps must lie in [1, 100000]");
  if (c.r_max) require(finite(*c.r_max) && *c.r_max > 0.0, "--r-max must be > 0");

  switch (c.command) {
    case Command::State:
    case Command::Evolve:
      require(c.n < c.dim, "--n must be smaller than --dim");
      break;
    case Command::Wavefunction:
      require(!((c.tau_given || c.phi_given) &&
                (c.omega_given || c.chi_given || c.pump_phase_given)),
              "give either --tau/--phi or --omega/--chi/--Phi, not both");
      break;
    default:
      break;
  }
  if (c.command == Command::Spectrum || c.command == Command::Evolve ||
      (c.command == Command::Wavefunction && (c.omega_given || c.chi_given))) {
    require(c.omega > 0.0, "--omega must be > 0");
  }
}

CommandOutput execute(const RunConfig& cfg, std::ostream* log) {
  switch (cfg.command) {
    case Command::Verify: return cmd_verify(cfg, log);
    case Command::State: return cmd_state(cfg);
    case Command::Spectrum: return cmd_spectrum(cfg);
    case Command::Wavefunction: return cmd_wavefunction(cfg);
    case Command::Evolve: return cmd_evolve(cfg);
  }
  throw std::logic_error("unknown command");
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"su(1,1) number coherent states: checks and data export", "su11"};
  RunConfig cfg;
  std::string command;
  std::string format = "json";
  double r_max = 0.0;

  const std::map<std::string, Command> commands{
      {"verify", Command::Verify},
      {"state", Command::State},
      {"spectrum", Command::Spectrum},
      {"wavefunction", Command::Wavefunction},
      {"evolve", Command::Evolve}};

  app.add_option("command", command, "verify | state | spectrum | wavefunction | evolve")
      ->required()
      ->check(CLI::IsMember({"verify", "state", "spectrum", "wavefunction", "evolve"}));
  app.add_option("--k", cfg.k, "Bargmann index");
  app.add_option("--n", cfg.n, "source level / radial quantum number");
  auto* tau = app.add_option("--tau", cfg.tau, "displacement magnitude");
  auto* phi = app.add_option("--phi", cfg.phi, "displacement phase");
  auto* omega = app.add_option("--omega", cfg.omega, "mode frequency");
  auto* chi = app.add_option("--chi", cfg.chi, "pump coupling");
  auto* pump = app.add_option("--Phi", cfg.pump_phase, "pump phase");
  app.add_option("--m", cfg.m, "angular quantum number");
  app.add_option("--t", cfg.t, "evolution time");
  auto* dim = app.add_option("--dim", cfg.dim, "Fock window size");
  auto* tol = app.add_option("--tol", cfg.tol, "tolerance");
  app.add_option("--n-max", cfg.n_max, "highest radial level in the spectrum");
  app.add_option("--radial-points", cfg.radial_points, "radial samples");
  app.add_option("--angular-points", cfg.angular_points, "angular samples");
  app.add_option("--steps", cfg.steps, "time steps in the evolution trace");
  auto* rmax = app.add_option("--r-max", r_max, "outer radius of the sample grid");
  app.add_option("--format", format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", cfg.output, "write to PATH instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidArguments;
  }

  cfg.command = commands.at(command);
  cfg.format = format == "csv" ? Format::Csv : Format::Json;
  cfg.tau_given = tau->count() > 0;
  cfg.phi_given = phi->count() > 0;
  cfg.omega_given = omega->count() > 0;
  cfg.chi_given = chi->count() > 0;
  cfg.pump_phase_given = pump->count() > 0;
  cfg.dim_given = dim->count() > 0;
  cfg.tol_given = tol->count() > 0;
  if (rmax->count() > 0) cfg.r_max = r_max;

  CommandOutput result;
  try {
    validate(cfg);
    result = execute(cfg, &err);
  } catch (const TruncationError& e) {
    err << "su11: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const std::invalid_argument& e) {
    err << "su11: invalid argument: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const std::exception& e) {
    err << "su11: domain error: " << e.what() << '\n';
    return kDomainError;
  }

  if (cfg.output.empty()) {
    out << result.body;
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) {
      err << "su11: cannot open output path " << cfg.output << '\n';
      return kInvalidArguments;
    }
    f << result.body;
  }
  return result.exit_code;
}

}  // namespace su11::cli
