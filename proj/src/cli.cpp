#include "boxrevive/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "boxrevive/carpet.hpp"
#include "boxrevive/error.hpp"
#include "boxrevive/parallel.hpp"
#include "boxrevive/revival.hpp"
#include "boxrevive/subplanck.hpp"
#include "boxrevive/wigner.hpp"

namespace boxrevive::cli {

namespace {

namespace fs = std::filesystem;

// Every resolved parameter of one invocation, defaults included.
struct RunConfig {
  std::string subcommand;
  PacketSpec packet;
  SystemConfig system;
  std::optional<int> nbar_override;
  std::string output_dir = ".";
  std::vector<std::string> formats{"csv", "pgm"};

  // carpet / fidelity
  double t0 = 0.0;
  double t1 = 0.5;
  int nt = kDefaultCarpetTimes;
  int nx = kDefaultCarpetPositions;
  // wigner
  double t = 0.25;
  int wigner_nx = kDefaultWignerPositions;
  int wigner_np = kDefaultWignerMomenta;
  std::optional<double> p_half_range;
  // subplanck
  std::vector<double> q2_list{0.0, 2e-6, 4e-6, 6e-6, 8e-6, 1e-5};
  std::string mode = "short_time";
  bool fringes = false;
  // revivals
  int s_max = 4;
  // fidelity
  double scan_t0 = 0.9;
  double scan_t1 = 1.1;
  int scan_nt = 2001;
  double threshold = kPeakThresholdFraction;

  bool wants(std::string_view f) const { return std::find(formats.begin(), formats.end(), f) != formats.end(); }
  int n_bar() const { return nbar_override.value_or(mean_quantum_number(packet.p_bar)); }
};

// Ordered key = value record written as manifest.txt.
class Manifest {
 public:
  void set(const std::string& key, const std::string& value) {
    if (!index_.count(key)) order_.push_back(key);
    index_[key] = value;
  }
  void set(const std::string& key, double v) { set(key, format_number(v)); }
  void set(const std::string& key, int v) { set(key, std::to_string(v)); }
  void set(const std::string& key, bool v) { set(key, std::string(v ? "true" : "false")); }
  void warn(const std::string& w) { warnings_.push_back(w); }

  void write(const fs::path& path) const {
    std::ofstream out(path);
    for (const auto& k : order_) out << k << " = " << index_.at(k) << '\n';
    out << "warnings = " << warnings_.size() << '\n';
    for (std::size_t i = 0; i < warnings_.size(); ++i) out << "warning." << i << " = " << warnings_[i] << '\n';
  }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::vector<std::string> order_;
  std::map<std::string, std::string> index_;
  std::vector<std::string> warnings_;
};

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
  return s;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

void validate(const RunConfig& rc) {
  rc.packet.validate();
  rc.system.validate();
  if (rc.nbar_override && *rc.nbar_override < 1) throw ContractError("nbar_override >= 1 required");
  for (const auto& f : rc.formats)
    if (f != "csv" && f != "pgm") throw ContractError("formats must be a subset of {csv, pgm} (got " + f + ")");
  const std::string& sc = rc.subcommand;
  if (sc == "carpet") {
    CarpetRequest{rc.t0, rc.t1, rc.nt, rc.nx}.validate();
  } else if (sc == "wigner") {
    if (!(rc.t >= 0.0)) throw ContractError("wigner: t >= 0 required");
    WignerRequest{rc.wigner_nx, rc.wigner_np, rc.p_half_range, kMinReconstructionSamples}.validate();
    const double need = wigner_required_half_range(rc.packet);
    if (rc.p_half_range && *rc.p_half_range < need)
      throw ContractError("wigner: pmax >= |p_bar| + 3/delta_x = " + format_number(need) + " required");
  } else if (sc == "subplanck") {
    if (rc.q2_list.empty()) throw ContractError("subplanck: q2 list must not be empty");
    for (double q2 : rc.q2_list)
      if (!(q2 >= 0.0)) throw ContractError("subplanck: every q^2 >= 0 required");
    if (!parse_sensitivity_mode(rc.mode)) throw ContractError("subplanck: mode must be short_time or super_revival");
  } else if (sc == "revivals") {
    if (!(rc.system.q_squared > 0.0)) throw ContractError("revivals: q^2 > 0 required");
    if (rc.s_max < 2) throw ContractError("revivals: s_max >= 2 required");
  } else if (sc == "fidelity") {
    if (rc.scan_nt < 3) throw ContractError("fidelity: nt >= 3 required");
    if (!(rc.scan_t1 > rc.scan_t0)) throw ContractError("fidelity: t1 > t0 required");
    if (!(rc.threshold >= 0.0 && rc.threshold <= 1.0)) throw ContractError("fidelity: threshold in [0, 1] required");
  }
}

void record_common(Manifest& m, const RunConfig& rc) {
  m.set("tool_version", std::string(kToolVersion));
  m.set("subcommand", rc.subcommand);
  m.set("q2", rc.system.q_squared);
  m.set("xbar", rc.packet.x_bar);
  m.set("dx", rc.packet.delta_x);
  m.set("pbar", rc.packet.p_bar);
  m.set("nbar", rc.n_bar());
  m.set("nbar_override", rc.nbar_override ? std::to_string(*rc.nbar_override) : std::string("none"));
  m.set("eps", rc.system.truncation_epsilon);
  m.set("nmax_cap", rc.system.n_max_cap);
  m.set("out", rc.output_dir);
  m.set("formats", join(rc.formats));
  m.set("threads", thread_count());
}

void record_expansion(Manifest& m, const RunConfig& rc, const EigenExpansion& e) {
  m.set("captured_norm", e.captured_norm());
  m.set("n_min", e.n_min());
  m.set("n_max", e.n_max());
  if (!rc.packet.clears_walls())
    m.warn("packet tails reach the walls: x_bar -/+ 3 delta_x outside (0, 1)");
  for (double q2 : rc.subcommand == "subplanck" ? rc.q2_list : std::vector<double>{rc.system.q_squared}) {
    SystemConfig cfg = rc.system;
    cfg.q_squared = q2;
    if (exceeds_validity_guard(e.n_max(), cfg))
      m.warn("basis n_max = " + std::to_string(e.n_max()) + " exceeds 0.7 n* = " +
             format_number(kValidityGuardFraction * *spectrum_turnover(cfg)) + " for q2 = " + format_number(q2));
  }
}

void write_field(const fs::path& dir, const std::string& name, const Field2D& f, PgmMapping mapping,
                 const RunConfig& rc) {
  if (rc.wants("csv")) {
    std::ofstream out(dir / (name + ".csv"));
    write_csv(out, f);
  }
  if (rc.wants("pgm")) {
    std::ofstream out(dir / (name + ".pgm"), std::ios::binary);
    write_pgm(out, f, mapping);
  }
}

void run_spectrum(const RunConfig& rc, const EigenExpansion& e, Manifest& m, const fs::path& dir) {
  const TimeScales ts = time_scales(rc.n_bar(), rc.system);
  {
    std::ofstream out(dir / "spectrum.csv");
    out << "n,energy,population\n";
    for (int n = 1; n <= e.n_max(); ++n)
      out << n << ',' << format_number(energy_level(n, rc.system)) << ',' << format_number(std::norm(e.coefficient(n)))
          << '\n';
  }
  std::vector<std::pair<std::string, std::optional<double>>> rows{
      {"t_cl", ts.t_cl}, {"t_cl_bar", ts.t_cl_bar}, {"t_rev", ts.t_rev}, {"t_rev_bar", ts.t_rev_bar},
      {"t_sr3", ts.t_sr3}, {"t_sr4", ts.t_sr4}};
  std::ofstream out(dir / "timescales.csv");
  out << "quantity,value_T_rev\n";
  for (const auto& [k, v] : rows) {
    out << k << ',' << (v ? format_number(*v) : std::string("absent")) << '\n';
    m.set(k, v ? format_number(*v) : std::string("absent"));
  }
  const auto turnover = spectrum_turnover(rc.system);
  m.set("n_turnover", turnover ? format_number(*turnover) : std::string("absent"));
}

void run_carpet(const RunConfig& rc, const EigenExpansion& e, Manifest& m, const fs::path& dir) {
  m.set("t0", rc.t0);
  m.set("t1", rc.t1);
  m.set("nt", rc.nt);
  m.set("nx", rc.nx);
  const Field2D f = carpet(e, rc.system, CarpetRequest{rc.t0, rc.t1, rc.nt, rc.nx});
  double worst = 0.0;
  for (std::size_t i = 0; i < f.row_count(); ++i)
    worst = std::max(worst, std::fabs(trapezoid(f.cols().samples, f.row(i)) - e.captured_norm()));
  m.set("row_norm_max_error", worst);
  m.set("pgm_gamma", kDensityGamma);
  m.set("pgm_max", f.max_value());
  if (worst > 1e-4) throw NumericalError("carpet: row norm deviates from captured_norm by " + format_number(worst));
  write_field(dir, "carpet", f, PgmMapping::density_gamma, rc);
  const auto trace = centroid_trace(f);
  std::ofstream out(dir / "centroid.csv");
  out << "t,centroid\n";
  for (std::size_t i = 0; i < trace.size(); ++i)
    out << format_number(f.rows().samples[i]) << ',' << format_number(trace[i]) << '\n';
}

void run_wigner(const RunConfig& rc, const EigenExpansion& e, Manifest& m, const fs::path& dir) {
  const EvolvedState state = evolve(e, rc.t, rc.system);
  const WignerRequest req{rc.wigner_nx, rc.wigner_np, rc.p_half_range, kMinReconstructionSamples};
  m.set("t", rc.t);
  m.set("wigner_nx", rc.wigner_nx);
  m.set("wigner_np", rc.wigner_np);
  m.set("pmax", rc.p_half_range.value_or(wigner_required_half_range(rc.packet)));
  const WignerField w = wigner(state, req);
  const MarginalReport mr = check_marginals(w, state);
  m.set("reconstruction_step", w.reconstruction_step);
  m.set("reconstruction_samples", w.reconstruction_samples);
  m.set("integral", integral(w));
  m.set("min_value", w.min_value());
  m.set("negativity_volume", negativity_volume(w));
  m.set("marginal_x_error", mr.position_error);
  m.set("marginal_p_error", mr.momentum_error);
  m.set("norm_error", mr.norm_error);
  write_field(dir, "wigner", w.field, PgmMapping::signed_symmetric, rc);
  if (!mr.within(kWignerMarginalTolerance))
    throw NumericalError("wigner: marginal check breached (x " + format_number(mr.position_error) + ", p " +
                         format_number(mr.momentum_error) + ", norm " + format_number(mr.norm_error) +
                         ", tolerance 1e-3); density near a wall needs a wider --pmax with a matching --np");
}

void run_subplanck(const RunConfig& rc, Manifest& m, const fs::path& dir) {
  const SensitivityMode mode = *parse_sensitivity_mode(rc.mode);
  m.set("q2_list", join(rc.q2_list));
  m.set("mode", rc.mode);
  m.set("fringes", rc.fringes);
  const auto curve = sensitivity_curve(rc.packet, rc.q2_list, mode, rc.system, rc.fringes);
  std::ofstream out(dir / "subplanck.csv");
  out << "q_squared,time,delta_x,delta_p,action_A,dim_a,delta_ratio,fringe_spacing\n";
  for (const auto& p : curve) {
    const auto& r = p.report;
    out << format_number(p.q_squared) << ',' << format_number(r.time) << ',' << format_number(r.delta_x_eff) << ','
        << format_number(r.delta_p_eff) << ',' << format_number(r.action_A) << ',' << format_number(r.dim_a) << ','
        << format_number(p.delta) << ',' << (r.fringe_spacing_p ? format_number(*r.fringe_spacing_p) : "") << '\n';
    if (r.action_A < 0.5) throw NumericalError("subplanck: action below the Heisenberg floor 0.5");
  }
}

void run_revivals(const RunConfig& rc, Manifest& m, const fs::path& dir) {
  m.set("s_max", rc.s_max);
  const auto preds = enumerate_fractional(rc.n_bar(), rc.system, rc.s_max);
  nlohmann::ordered_json j;
  j["n_bar"] = rc.n_bar();
  j["q_squared"] = rc.system.q_squared;
  j["t_sr3"] = 1.0 / (4.0 * rc.n_bar() * rc.system.q_squared);
  j["t_sr4"] = 1.0 / rc.system.q_squared;
  j["predictions"] = nlohmann::ordered_json::array();
  for (const auto& p : preds) {
    j["predictions"].push_back({{"time", p.time},
                                {"r1", p.on_sr3.num},
                                {"s1", p.on_sr3.den},
                                {"r2", p.on_sr4.num},
                                {"s2", p.on_sr4.den},
                                {"kind", std::string(to_string(p.kind))}});
  }
  std::ofstream(dir / "revivals.json") << j.dump(2) << '\n';
  m.set("predictions", static_cast<int>(preds.size()));
}

void run_fidelity(const RunConfig& rc, const EigenExpansion& e, Manifest& m, const fs::path& dir) {
  m.set("t0", rc.scan_t0);
  m.set("t1", rc.scan_t1);
  m.set("nt", rc.scan_nt);
  m.set("threshold", rc.threshold);
  const FidelityScan scan = fidelity_scan(e, rc.system, rc.scan_t0, rc.scan_t1, rc.scan_nt, rc.threshold);
  {
    std::ofstream out(dir / "fidelity.csv");
    out << "t,fidelity\n";
    for (const auto& s : scan.samples) out << format_number(s.t) << ',' << format_number(s.fidelity) << '\n';
  }
  std::ofstream out(dir / "fidelity_peaks.csv");
  out << "t,fidelity\n";
  for (const auto& s : scan.peaks) out << format_number(s.t) << ',' << format_number(s.fidelity) << '\n';
  m.set("peaks", static_cast<int>(scan.peaks.size()));
}

void execute(const RunConfig& rc, std::ostream& err) {
  validate(rc);
  const fs::path dir(rc.output_dir);
  fs::create_directories(dir);
  Manifest m;
  record_common(m, rc);
  // The manifest is written even when a numerical contract fails midway.
  try {
    const EigenExpansion e = expand(rc.packet, rc.system);
    record_expansion(m, rc, e);
    const std::string& sc = rc.subcommand;
    if (sc == "spectrum") run_spectrum(rc, e, m, dir);
    else if (sc == "carpet") run_carpet(rc, e, m, dir);
    else if (sc == "wigner") run_wigner(rc, e, m, dir);
    else if (sc == "subplanck") run_subplanck(rc, m, dir);
    else if (sc == "revivals") run_revivals(rc, m, dir);
    else if (sc == "fidelity") run_fidelity(rc, e, m, dir);
  } catch (const NumericalError& ex) {
    m.set("status", std::string("numerical_failure"));
    m.write(dir / "manifest.txt");
    throw;
  }
  m.set("status", std::string("ok"));
  m.write(dir / "manifest.txt");
  for (const auto& w : m.warnings()) err << "warning: " << w << '\n';
}

void add_common(CLI::App& app, RunConfig& rc) {
  app.add_option("--q2", rc.system.q_squared, "relativistic parameter q^2")->capture_default_str();
  app.add_option("--xbar", rc.packet.x_bar, "initial mean position (units of L)")->capture_default_str();
  app.add_option("--dx", rc.packet.delta_x, "packet width Delta x (units of L)")->capture_default_str();
  app.add_option("--pbar", rc.packet.p_bar, "mean momentum (units of hbar/L)")->capture_default_str();
  app.add_option("--nbar-override", rc.nbar_override, "average quantum number (default round(pbar/pi))");
  app.add_option("--eps", rc.system.truncation_epsilon, "truncation norm deficit")->capture_default_str();
  app.add_option("--nmax-cap", rc.system.n_max_cap, "hard cap on the basis size")->capture_default_str();
  app.add_option("--out", rc.output_dir, "output directory")->capture_default_str();
  app.add_option("--format", rc.formats, "output formats (csv,pgm)")->delimiter(',')->capture_default_str();
}

}  // namespace

std::vector<std::string> manifest_schema(std::string_view subcommand) {
  std::vector<std::string> keys{"tool_version", "subcommand", "q2", "xbar", "dx", "pbar", "nbar", "nbar_override",
                                "eps", "nmax_cap", "out", "formats", "threads", "captured_norm", "n_min", "n_max",
                                "status", "warnings"};
  auto add = [&](std::initializer_list<const char*> more) { keys.insert(keys.end(), more.begin(), more.end()); };
  if (subcommand == "spectrum") add({"t_cl", "t_cl_bar", "t_rev", "t_rev_bar", "t_sr3", "t_sr4", "n_turnover"});
  else if (subcommand == "carpet") add({"t0", "t1", "nt", "nx", "row_norm_max_error", "pgm_gamma", "pgm_max"});
  else if (subcommand == "wigner")
    add({"t", "wigner_nx", "wigner_np", "pmax", "reconstruction_step", "reconstruction_samples", "integral",
         "min_value", "negativity_volume", "marginal_x_error", "marginal_p_error", "norm_error"});
  else if (subcommand == "subplanck") add({"q2_list", "mode", "fringes"});
  else if (subcommand == "revivals") add({"s_max", "predictions"});
  else if (subcommand == "fidelity") add({"t0", "t1", "nt", "threshold", "peaks"});
  return keys;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Relativistic particle-in-a-box revival simulator", "boxrevive"};
  app.set_config("--config", "", "key = value configuration file; flags override it");
  app.require_subcommand(1, 1);
  app.fallthrough();
  add_common(app, rc);

  auto* spectrum = app.add_subcommand("spectrum", "energy table and characteristic time scales");
  auto* carpet_cmd = app.add_subcommand("carpet", "space-time probability density");
  carpet_cmd->add_option("--t0", rc.t0, "first time (units of T_rev)")->capture_default_str();
  carpet_cmd->add_option("--t1", rc.t1, "last time (units of T_rev)")->capture_default_str();
  carpet_cmd->add_option("--nt", rc.nt, "time samples")->capture_default_str();
  carpet_cmd->add_option("--nx", rc.nx, "position samples")->capture_default_str();
  auto* wigner_cmd = app.add_subcommand("wigner", "phase-space Wigner function at one time");
  wigner_cmd->add_option("--t", rc.t, "time (units of T_rev)")->capture_default_str();
  wigner_cmd->add_option("--nx", rc.wigner_nx, "position samples")->capture_default_str();
  wigner_cmd->add_option("--np", rc.wigner_np, "momentum samples")->capture_default_str();
  wigner_cmd->add_option("--pmax", rc.p_half_range, "momentum half range (default |pbar| + 3/dx)");
  auto* subplanck_cmd = app.add_subcommand("subplanck", "sub-Planck dimension versus q^2");
  subplanck_cmd->add_option("--q2-list", rc.q2_list, "comma separated q^2 values")->delimiter(',')->capture_default_str();
  subplanck_cmd->add_option("--mode", rc.mode, "short_time or super_revival")->capture_default_str();
  subplanck_cmd->add_flag("--fringes", rc.fringes, "also measure the fringe period of W(xbar, p)");
  auto* revivals_cmd = app.add_subcommand("revivals", "commensurate super-revival times");
  revivals_cmd->add_option("--s-max", rc.s_max, "largest denominator s2")->capture_default_str();
  auto* fidelity_cmd = app.add_subcommand("fidelity", "autocorrelation scan with peak detection");
  fidelity_cmd->add_option("--t0", rc.scan_t0, "first time (units of T_rev)")->capture_default_str();
  fidelity_cmd->add_option("--t1", rc.scan_t1, "last time (units of T_rev)")->capture_default_str();
  fidelity_cmd->add_option("--nt", rc.scan_nt, "time samples")->capture_default_str();
  fidelity_cmd->add_option("--threshold", rc.threshold, "peak threshold as a fraction of captured norm")
      ->capture_default_str();
  for (auto* sc : {spectrum, carpet_cmd, wigner_cmd, subplanck_cmd, revivals_cmd, fidelity_cmd})
    sc->fallthrough();

  std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  rc.subcommand = app.get_subcommands().front()->get_name();

  try {
    execute(rc, err);
  } catch (const ContractError& e) {
    err << "error: invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "error: numerical contract failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  out << rc.subcommand << ": wrote results to " << rc.output_dir << '\n';
  return kExitOk;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace boxrevive::cli
