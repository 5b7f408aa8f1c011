#include "wallscale/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wallscale/error.hpp"
#include "wallscale/format.hpp"
#include "wallscale/kernels.hpp"
#include "wallscale/lab.hpp"
#include "wallscale/magnetostatics.hpp"
#include "wallscale/minimize.hpp"
#include "wallscale/parallel.hpp"
#include "wallscale/walls.hpp"

namespace wallscale::cli {

namespace {

constexpr int kUsage = 1;
constexpr int kVerification = 2;
constexpr int kNumerical = 3;

struct Globals {
  std::string tol;
  std::string out;
  std::string format = "csv";
  int threads = 0;
  std::uint64_t seed = 1;
};

double num(const std::string& s, const char* name) {
  try {
    return parse_double(s);
  } catch (const InvalidArgument&) {
    throw InvalidArgument(std::string("--") + name + ": not a number: '" + s + "'");
  }
}

std::vector<double> nums(const std::vector<std::string>& v, const char* name) {
  std::vector<double> r;
  for (const auto& s : v) r.push_back(num(s, name));
  return r;
}

// Rows of (name, value) written as a one-row CSV table or a JSON object.
class Table {
 public:
  void add(const std::string& k, double v) { cols_.push_back({k, format_double(v), v, Kind::number}); }
  void add(const std::string& k, bool v) { cols_.push_back({k, v ? "true" : "false", 0.0, Kind::boolean}); }
  void add(const std::string& k, std::size_t v) {
    cols_.push_back({k, std::to_string(v), static_cast<double>(v), Kind::number});
  }

  void write(std::ostream& o, ReportFormat f) const {
    if (f == ReportFormat::csv) {
      for (std::size_t i = 0; i < cols_.size(); ++i) o << (i ? "," : "") << cols_[i].key;
      o << '\n';
      for (std::size_t i = 0; i < cols_.size(); ++i) o << (i ? "," : "") << cols_[i].text;
      o << '\n';
      return;
    }
    nlohmann::ordered_json j;
    for (const auto& c : cols_) {
      if (c.kind == Kind::boolean)
        j[c.key] = c.text == "true";
      else if (std::isfinite(c.value))
        j[c.key] = c.value;
      else
        j[c.key] = nullptr;
    }
    o << j.dump(2) << '\n';
  }

 private:
  enum class Kind { number, boolean };
  struct Col {
    std::string key;
    std::string text;
    double value;
    Kind kind;
  };
  std::vector<Col> cols_;
};

Profile1D load_profile(const std::string& path, bool validate) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open profile " + path);
  return read_profile_csv(in, validate);
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(int argc, const char* const* argv);

 private:
  void setup();
  quad::QuadratureConfig quad_cfg() const {
    quad::QuadratureConfig q;
    if (!g_.tol.empty()) {
      q.rel_tol = num(g_.tol, "tol");
      q.abs_tol = std::min(q.abs_tol, q.rel_tol);
    }
    q.validate();
    return q;
  }
  ReportFormat format() const { return parse_report_format(g_.format); }
  void emit(const std::function<void(std::ostream&)>& write) {
    if (g_.out.empty()) {
      write(out_);
      return;
    }
    std::ofstream f(g_.out);
    if (!f) throw InvalidArgument("cannot write " + g_.out);
    write(f);
    if (!f) throw InvalidArgument("write to " + g_.out + " failed");
  }
  void emit(const Table& t) {
    const ReportFormat f = format();
    emit([&](std::ostream& o) { t.write(o, f); });
  }

  CrossSection section() const { return CrossSection(num(l_, "l"), num(d_, "d")); }
  ClosedFormWall wall() const { return {num(alpha_, "alpha"), num(beta_, "beta"), num(theta_, "theta")}; }

  void kernel_a_c();
  void kernel_b_c();
  void kernel_i();
  int kernel_verify();
  void wall_eval();
  void wall_sample();
  void energy_reduced();
  void energy_full();
  int energy_lipschitz();
  void minimize_reduced_cmd();
  void minimize_ansatz_cmd();
  int sweep_rate();
  int sweep_corollary();

  std::ostream& out_;
  std::ostream& err_;
  CLI::App app_{"Thin-wire domain-wall energies: kernels, walls, energies, minimization and sweeps.\n"
                "Results do not depend on --threads (pure computations, reductions in fixed order)."};
  Globals g_;
  std::function<int()> action_;

  std::string c_, l_, d_, x_ = "0", alpha_ = "1", beta_ = "1", theta_ = "0", half_length_ = "20", profile_;
  std::string trials_ = "20", amplitude_ = "0.1";
  std::size_t nodes_ = 4097;
  bool swap_ = false, e0_ = false, ev_exact_ = false;
  std::vector<std::string> xs_, c_grid_, l_grid_, scales_;
  std::string trace_;
  std::size_t max_iters_ = 200000;
  std::string grad_tol_;
};

void Runner::setup() {
  app_.fallthrough();
  app_.require_subcommand(1);
  app_.add_option("--tol", g_.tol, "relative quadrature tolerance");
  app_.add_option("--out", g_.out, "write data to this file instead of standard output");
  app_.add_option("--format", g_.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app_.add_option("--threads", g_.threads, "worker threads, 0 = auto")->check(CLI::NonNegativeNumber);
  app_.add_option("--seed", g_.seed, "seed for randomized checks");

  const auto bind = [this](CLI::App* sub, std::function<int()> f) {
    sub->callback([this, f] { action_ = f; });
  };
  const auto done = [](auto g) { return [g] { g(); return 0; }; };

  CLI::App* kernel = app_.add_subcommand("kernel", "magnetostatic kernels");
  kernel->require_subcommand(1);
  CLI::App* ac = kernel->add_subcommand("a_c", "a_c for one ratio c");
  ac->add_option("--c", c_, "ratio d/l")->required();
  bind(ac, done([this] { kernel_a_c(); }));
  CLI::App* bc = kernel->add_subcommand("b_c", "b_c = a_{1/c}");
  bc->add_option("--c", c_, "ratio d/l")->required();
  bind(bc, done([this] { kernel_b_c(); }));
  CLI::App* ki = kernel->add_subcommand("i", "I(l,d,x), or I(d,l,x) with --swap");
  ki->add_option("--l", l_)->required();
  ki->add_option("--d", d_)->required();
  ki->add_option("--x", x_, "frequency");
  ki->add_flag("--swap", swap_);
  bind(ki, done([this] { kernel_i(); }));
  CLI::App* kv = kernel->add_subcommand("verify", "two-sided bounds on I(d,l,x)");
  kv->add_option("--l", l_)->required();
  kv->add_option("--d", d_)->required();
  kv->add_option("--x", xs_, "samples (default 0, +-1/(2l), +-1/l)")->delimiter(',');
  bind(kv, [this] { return kernel_verify(); });

  CLI::App* wall = app_.add_subcommand("wall", "closed-form walls");
  wall->require_subcommand(1);
  for (CLI::App* w : {wall->add_subcommand("eval", "m(x) of the closed-form wall"),
                      wall->add_subcommand("sample", "sampled wall as profile CSV")}) {
    w->add_option("--alpha", alpha_);
    w->add_option("--beta", beta_);
    w->add_option("--theta", theta_);
  }
  wall->get_subcommand("eval")->add_option("--x", xs_, "positions")->delimiter(',')->required();
  bind(wall->get_subcommand("eval"), done([this] { wall_eval(); }));
  wall->get_subcommand("sample")->add_option("--L", half_length_, "half-length");
  wall->get_subcommand("sample")->add_option("--N", nodes_, "odd node count");
  bind(wall->get_subcommand("sample"), done([this] { wall_sample(); }));

  CLI::App* energy = app_.add_subcommand("energy", "energies of a profile CSV");
  energy->require_subcommand(1);
  CLI::App* er = energy->add_subcommand("reduced", "E_alpha, or E_0 with --e0");
  er->add_option("--profile", profile_)->required();
  er->add_option("--alpha", alpha_);
  er->add_flag("--e0", e0_);
  bind(er, done([this] { energy_reduced(); }));
  CLI::App* ef = energy->add_subcommand("full", "exchange, E_s and the E_v bound");
  ef->add_option("--profile", profile_)->required();
  ef->add_option("--l", l_)->required();
  ef->add_option("--d", d_)->required();
  ef->add_flag("--ev-exact", ev_exact_, "also evaluate E_v spectrally");
  bind(ef, done([this] { energy_full(); }));
  CLI::App* el = energy->add_subcommand("lipschitz", "Lipschitz estimate on random perturbations");
  el->add_option("--profile", profile_)->required();
  el->add_option("--l", l_)->required();
  el->add_option("--d", d_)->required();
  el->add_option("--trials", trials_);
  el->add_option("--amplitude", amplitude_);
  bind(el, [this] { return energy_lipschitz(); });

  CLI::App* minimize = app_.add_subcommand("minimize", "minimization");
  minimize->require_subcommand(1);
  CLI::App* mr = minimize->add_subcommand("reduced", "projected descent from the arc");
  mr->add_option("--alpha", alpha_);
  mr->add_flag("--e0", e0_);
  mr->add_option("--L", half_length_);
  mr->add_option("--N", nodes_);
  mr->add_option("--max-iters", max_iters_);
  mr->add_option("--grad-tol", grad_tol_);
  mr->add_option("--trace", trace_, "per-iteration CSV");
  bind(mr, done([this] { minimize_reduced_cmd(); }));
  CLI::App* ma = minimize->add_subcommand("ansatz", "best scaled wall for a cross-section");
  ma->add_option("--l", l_)->required();
  ma->add_option("--d", d_)->required();
  ma->add_option("--scales", scales_, "scale grid")->delimiter(',');
  bind(ma, done([this] { minimize_ansatz_cmd(); }));

  CLI::App* sweep = app_.add_subcommand("sweep", "parameter sweeps");
  sweep->require_subcommand(1);
  CLI::App* sr = sweep->add_subcommand("rate", "rate check over a grid of c");
  sr->add_option("--c-grid", c_grid_)->delimiter(',');
  sr->add_option("--l", l_grid_, "one or more l")->delimiter(',');
  bind(sr, [this] { return sweep_rate(); });
  CLI::App* sc = sweep->add_subcommand("corollary", "a_c / (c |ln c|) toward 1/2");
  sc->add_option("--c-grid", c_grid_)->delimiter(',');
  bind(sc, [this] { return sweep_corollary(); });
}

void Runner::kernel_a_c() {
  Table t;
  const double c = num(c_, "c");
  t.add("c", c);
  t.add("a_c", a_c(c, quad_cfg()));
  emit(t);
}

void Runner::kernel_b_c() {
  Table t;
  const double c = num(c_, "c");
  t.add("c", c);
  t.add("b_c", b_c(c, quad_cfg()));
  emit(t);
}

void Runner::kernel_i() {
  const CrossSection cs = section();
  const double x = num(x_, "x");
  const quad::QuadratureResult r = i_kernel_result(cs, swap_, x, quad_cfg());
  Table t;
  t.add("l", cs.l());
  t.add("d", cs.d());
  t.add("x", x);
  t.add("swap", swap_);
  t.add("value", r.value);
  t.add("error_estimate", r.error_estimate);
  emit(t);
}

int Runner::kernel_verify() {
  const CrossSection cs = section();
  std::vector<double> xs = nums(xs_, "x");
  if (xs.empty()) {
    const double l = cs.l();
    xs = {0.0, 0.5 / l, -0.5 / l, 1.0 / l, -1.0 / l};
  }
  const Lemma32Report r = evaluate_lemma32(cs, xs, quad_cfg());
  const ReportFormat f = format();
  emit([&](std::ostream& o) {
    if (f == ReportFormat::csv) {
      o << "x,value,error_estimate,upper_i,upper_ii,lower_iii,lower_checked,passed\n";
      for (const auto& s : r.samples)
        o << format_double(s.x) << ',' << format_double(s.value) << ',' << format_double(s.error_estimate) << ','
          << format_double(r.bounds.upper_i) << ',' << format_double(r.bounds.upper_ii) << ','
          << format_double(r.bounds.lower_iii) << ',' << (s.lower_checked ? "true" : "false") << ','
          << (s.passed ? "true" : "false") << '\n';
    } else {
      nlohmann::ordered_json j;
      j["upper_i"] = r.bounds.upper_i;
      j["upper_ii"] = r.bounds.upper_ii;
      j["lower_iii"] = r.bounds.lower_iii;
      j["vacuous"] = r.bounds.vacuous;
      j["samples"] = nlohmann::ordered_json::array();
      for (const auto& s : r.samples)
        j["samples"].push_back({{"x", s.x},
                                {"value", s.value},
                                {"error_estimate", s.error_estimate},
                                {"lower_checked", s.lower_checked},
                                {"passed", s.passed}});
      j["passed"] = r.passed;
      o << j.dump(2) << '\n';
    }
  });
  if (!r.passed) {
    err_ << "error: kernel bounds violated\n";
    return kVerification;
  }
  return 0;
}

void Runner::wall_eval() {
  const ClosedFormWall w = wall();
  w.validate();
  const std::vector<double> xs = nums(xs_, "x");
  const ReportFormat f = format();
  emit([&](std::ostream& o) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    if (f == ReportFormat::csv) o << "x,m1,m2,m3\n";
    for (double x : xs) {
      const Vec3 m = eval_wall(w, x);
      if (f == ReportFormat::csv)
        o << format_double(x) << ',' << format_double(m.m1) << ',' << format_double(m.m2) << ','
          << format_double(m.m3) << '\n';
      else
        j.push_back({{"x", x}, {"m1", m.m1}, {"m2", m.m2}, {"m3", m.m3}});
    }
    if (f == ReportFormat::json) o << j.dump(2) << '\n';
  });
}

void Runner::wall_sample() {
  const WallSample s = sample_wall(wall(), num(half_length_, "L"), nodes_);
  err_ << "snap " << format_double(s.snap) << ", transverse snap " << format_double(s.transverse_snap) << '\n';
  emit([&](std::ostream& o) { write_profile_csv(o, s.profile); });
}

void Runner::energy_reduced() {
  const Profile1D p = load_profile(profile_, true);
  Table t;
  if (e0_) {
    const ReducedEnergy e = reduced_energy_E0(p);
    t.add("E0", e.is_infinite() ? std::numeric_limits<double>::infinity() : e.value());
  } else {
    const double alpha = num(alpha_, "alpha");
    t.add("alpha", alpha);
    t.add("E_alpha", reduced_energy_alpha(p, alpha));
  }
  t.add("exchange", exchange_integral(p));
  t.add("m2_integral", m2_integral(p));
  t.add("m3_integral", m3_integral(p));
  emit(t);
}

void Runner::energy_full() {
  const Profile1D p = load_profile(profile_, true);
  const CrossSection cs = section();
  MagnetostaticsConfig cfg;
  cfg.quad = quad_cfg();
  cfg.e_v_exact = ev_exact_;
  const EnergyBreakdown e = full_energy(p, cs, cfg);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  Table t;
  t.add("exchange", e.exchange);
  t.add("e_s", e.e_s);
  t.add("e_v_bound", e.e_v_bound);
  t.add("e_v_exact", e.e_v_exact.value_or(nan));
  t.add("total_upper", e.total_upper);
  t.add("rescaled_upper", e.rescaled_upper.value_or(nan));
  emit(t);
}

int Runner::energy_lipschitz() {
  const Profile1D p = load_profile(profile_, true);
  const CrossSection cs = section();
  const double trials = num(trials_, "trials");
  const double amplitude = num(amplitude_, "amplitude");
  if (!(trials >= 1.0) || trials != std::floor(trials)) throw InvalidArgument("--trials must be a positive integer");
  if (!(amplitude > 0.0)) throw InvalidArgument("--amplitude must be positive");
  MagnetostaticsConfig cfg;
  cfg.quad = quad_cfg();
  std::mt19937_64 rng(g_.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<LipschitzReport> reports;
  int code = 0;
  for (int k = 0; k < static_cast<int>(trials); ++k) {
    std::vector<Vec3> v = p.values();
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
      v[i] = normalized(v[i] + amplitude * Vec3{noise(rng), noise(rng), noise(rng)});
    try {
      reports.push_back(emag_lipschitz_check(p, Profile1D(p.half_length(), v), cs, cfg));
    } catch (const VerificationFailure& e) {
      err_ << "trial " << k << ": " << e.what() << '\n';
      code = kVerification;
    }
  }
  emit([&](std::ostream& o) {
    o << "trial,e1,e2,distance,lhs,rhs_12,rhs_21\n";
    for (std::size_t k = 0; k < reports.size(); ++k) {
      const auto& r = reports[k];
      o << k << ',' << format_double(r.e1) << ',' << format_double(r.e2) << ',' << format_double(r.distance) << ','
        << format_double(r.lhs) << ',' << format_double(r.rhs_12) << ',' << format_double(r.rhs_21) << '\n';
    }
  });
  return code;
}

void Runner::minimize_reduced_cmd() {
  const double L = num(half_length_, "L");
  DescentConfig cfg;
  cfg.max_iters = max_iters_;
  if (!grad_tol_.empty()) cfg.grad_tol = num(grad_tol_, "grad-tol");
  cfg.record_trace = !trace_.empty();
  const Profile1D init = arc_profile(L, nodes_, L);
  const double alpha = num(alpha_, "alpha");
  const DescentResult r = e0_ ? minimize_reduced(init, ReducedEnergyWeights{}, cfg) : minimize_reduced(init, alpha, cfg);
  err_ << "energy " << format_double(r.energy) << ", iterations " << r.iterations << ", gradient norm "
       << format_double(r.grad_norm) << (r.converged ? "" : " (not converged)") << '\n';
  if (!e0_) {
    const RecenterReport rc = compare_recentered(r.profile, alpha);
    err_ << "center " << format_double(rc.center) << ", deviation from closed form "
         << format_double(rc.max_deviation) << '\n';
  }
  if (cfg.record_trace) {
    std::ofstream t(trace_);
    if (!t) throw InvalidArgument("cannot write " + trace_);
    write_trace_csv(t, r.trace);
  }
  emit([&](std::ostream& o) { write_profile_csv(o, r.profile); });
}

void Runner::minimize_ansatz_cmd() {
  const CrossSection cs = section();
  AnsatzConfig cfg;
  cfg.magnetostatics.quad = quad_cfg();
  const AnsatzSearchResult r = minimize_full_ansatz(cs, nums(scales_, "scales"), cfg);
  Table t;
  t.add("l", cs.l());
  t.add("d", cs.d());
  t.add("best_scale", r.best_scale);
  t.add("best_beta", r.best_beta);
  t.add("energy", r.energy);
  t.add("gap", r.energy - gamma_limit());
  t.add("evaluations", r.evaluations);
  emit(t);
}

int Runner::sweep_rate() {
  std::vector<CrossSection> cases;
  if (c_grid_.empty() && l_grid_.empty()) {
    cases = default_sweep_cases();
  } else {
    const std::vector<double> cs = c_grid_.empty() ? std::vector<double>{1e-2, 1e-4, 1e-6} : nums(c_grid_, "c-grid");
    const std::vector<double> ls = l_grid_.empty() ? std::vector<double>{1e-3} : nums(l_grid_, "l");
    for (double l : ls)
      for (double c : cs) cases.emplace_back(l, c * l);
  }
  SweepConfig cfg;
  cfg.ansatz.magnetostatics.quad = quad_cfg();
  const std::vector<SweepRecord> records = rate_sweep(cases, cfg);
  const ReportFormat f = format();
  if (g_.out.empty()) {
    if (f == ReportFormat::csv)
      write_sweep_csv(out_, records);
    else
      write_sweep_json(out_, records);
  } else {
    emit_report(records, f, g_.out);
  }
  int code = 0;
  for (const auto& r : records) {
    if (!r.error.empty()) {
      err_ << "case l = " << format_double(r.l) << ", d = " << format_double(r.d) << ": " << r.error << '\n';
      code = kNumerical;
    } else if (!r.pass && code == 0) {
      code = kVerification;
    }
  }
  return code;
}

int Runner::sweep_corollary() {
  const std::vector<double> grid = c_grid_.empty() ? std::vector<double>{1e-4, 1e-8, 1e-12} : nums(c_grid_, "c-grid");
  const CorollaryReport r = corollary33_report(grid, quad_cfg());
  const ReportFormat f = format();
  emit([&](std::ostream& o) {
    if (f == ReportFormat::csv)
      write_corollary_csv(o, r);
    else
      write_corollary_json(o, r);
  });
  if (!r.gap_decreasing) {
    err_ << "error: |ratio - 1/2| is not decreasing along the grid\n";
    return kVerification;
  }
  return 0;
}

int Runner::run(int argc, const char* const* argv) {
  setup();
  try {
    app_.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out_ << app_.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out_ << app_.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err_ << "error: " << e.what() << "\n\n" << app_.help();
    return kUsage;
  }
  try {
    set_thread_count(g_.threads);
    return action_ ? action_() : kUsage;
  } catch (const InvalidArgument& e) {
    err_ << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const VerificationFailure& e) {
    err_ << "verification failed: " << e.what() << '\n';
    return kVerification;
  } catch (const std::exception& e) {
    err_ << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Runner r(out, err);
  return r.run(argc, argv);
}

}  // namespace wallscale::cli
