#include "commands.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "dualhop/dualhop.hpp"
#include "scenario_file.hpp"

#ifndef DUALHOP_VERSION
#define DUALHOP_VERSION "0.0.0"
#endif

namespace dualhop::cli {
namespace {

constexpr double kDefaultTol = 1e-7;
constexpr std::size_t kDefaultSamples = 200'000;
constexpr std::uint64_t kDefaultSeed = 1;
constexpr int kDefaultCdfPoints = 50;

struct Flags {
  std::string scenario;
  std::string out;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  unsigned threads = 1;
  std::optional<std::string> combiner;
  bool full_precision = false;
  std::optional<std::string> grid;
};

/// Flags merged over the scenario file.
struct Settings {
  ScenarioFile file;
  double tol = kDefaultTol;
  std::optional<std::uint64_t> seed;
  std::size_t samples = kDefaultSamples;
  unsigned threads = 1;
  bool full_precision = false;
  std::optional<std::string> grid;
};

class NonConvergence : public std::runtime_error {
 public:
  explicit NonConvergence(std::vector<std::string> points)
      : std::runtime_error("numerical integration did not converge"), points_(std::move(points)) {}
  const std::vector<std::string>& points() const { return points_; }

 private:
  std::vector<std::string> points_;
};

Settings resolve(const Flags& flags) {
  Settings s;
  s.file = load_scenario(flags.scenario);
  if (flags.combiner) {
    const auto c = parse_combiner(*flags.combiner);
    if (!c) throw ConfigError("--combiner", "expected exact or harmonic");
    s.file.combiner = *c;
  }
  s.tol = flags.tol ? *flags.tol : s.file.tol.value_or(kDefaultTol);
  if (!(s.tol > 0.0 && s.tol <= 1e-2)) throw ConfigError("tol", "must lie in (0, 1e-2]");
  s.seed = flags.seed ? flags.seed : s.file.mc_seed;
  s.samples = flags.samples ? *flags.samples : s.file.mc_samples.value_or(kDefaultSamples);
  if (s.samples < 1) throw ConfigError("samples", "must be >= 1");
  s.threads = flags.threads;
  s.full_precision = flags.full_precision;
  s.grid = flags.grid;
  return s;
}

std::string prob(const Settings& s, double p) {
  return s.full_precision ? fmt::format("{:.17g}", p) : fmt::format("{:.5e}", p);
}

std::string real(const Settings& s, double x) {
  return s.full_precision ? fmt::format("{:.17g}", x) : fmt::format("{:.6g}", x);
}

std::string db(double x) { return fmt::format("{:.2f}", x); }

std::string fading_m(const ScenarioFile& f) {
  return f.hop1_m == f.hop2_m ? fmt::format("{:g}", f.hop1_m)
                              : fmt::format("{:g}/{:g}", f.hop1_m, f.hop2_m);
}

std::string metadata(const Settings& s, std::string_view command, bool uses_seed) {
  std::string seed = "none";
  if (uses_seed && s.seed) seed = std::to_string(*s.seed);
  return fmt::format("# dualhop {} command={} scenario={} seed={} samples={} tol={:g} combiner={}\n",
                     DUALHOP_VERSION, command, s.file.name, seed,
                     uses_seed && s.seed ? std::to_string(s.samples) : "none", s.tol,
                     to_string(s.file.combiner));
}

std::vector<std::vector<SerCurve>> sweep_all(const Settings& s, const ScenarioFile& file,
                                             bool with_mc) {
  const auto grid = file.hop2_grid_db();
  SweepOptions options;
  options.tol = s.tol;
  options.threads = s.threads;
  options.mc_samples = s.samples;
  if (with_mc) options.mc_seed = s.seed;

  std::vector<std::vector<SerCurve>> by_hop1;
  std::vector<std::string> failed;
  for (double h1 : file.hop1_snr_db) {
    by_hop1.push_back(ser_sweep(file.link(h1, grid.front()), file.modulations, grid, h1, options));
    for (const auto& curve : by_hop1.back()) {
      for (double h2 : curve.failed_points_db()) {
        failed.push_back(fmt::format("{} {} hop1={} dB hop2={} dB", to_string(file.case_tag),
                                     curve.modulation.name(), db(h1), db(h2)));
      }
    }
  }
  if (!failed.empty()) throw NonConvergence(std::move(failed));
  return by_hop1;
}

std::string cmd_ser_sweep(const Settings& s) {
  const ScenarioFile& f = s.file;
  const auto by_hop1 = sweep_all(s, f, true);
  const bool mc = s.seed.has_value();

  std::string text = metadata(s, "ser-sweep", true);
  text += "case,modulation,n_s,n_r,n_d,m,hop1_snr_db,hop2_snr_db,ser_analytical";
  text += mc ? ",ser_mc,mc_halfwidth\n" : "\n";
  for (std::size_t m = 0; m < f.modulations.size(); ++m) {
    for (std::size_t h = 0; h < by_hop1.size(); ++h) {
      const SerCurve& curve = by_hop1[h][m];
      for (const SerPoint& row : curve.rows) {
        text += fmt::format("{},{},{},{},{},{},{},{},{}", to_string(f.case_tag),
                            curve.modulation.name(), f.n_s(), f.n_r(), f.n_d(), fading_m(f),
                            db(curve.hop1_snr_db), db(row.hop2_snr_db), prob(s, row.analytical));
        if (mc) text += fmt::format(",{},{}", prob(s, *row.mc), prob(s, *row.mc_halfwidth));
        text += '\n';
      }
    }
  }
  return text;
}

struct CdfSetup {
  LinkScenario link;
  std::vector<double> grid;
};

std::vector<double> linspace(double start, double stop, int points) {
  if (points < 1) throw ConfigError("grid", "need at least one point");
  if (points > 1 && !(stop > start)) throw ConfigError("grid", "stop must exceed start");
  if (start < 0.0) throw ConfigError("grid", "gamma must be >= 0");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid[i] = points == 1 ? start : start + (stop - start) * i / (points - 1);
  }
  return grid;
}

CdfSetup cdf_setup(const Settings& s) {
  const ScenarioFile& f = s.file;
  CdfSetup setup;
  setup.link = f.link(f.hop1_snr_db.front(), f.cdf_hop2_snr_db.value_or(f.hop2_start_db));
  if (s.grid) {
    const std::string& spec = *s.grid;
    const auto c1 = spec.find(':');
    const auto c2 = c1 == std::string::npos ? c1 : spec.find(':', c1 + 1);
    if (c2 == std::string::npos) throw ConfigError("--grid", "expected start:stop:points");
    try {
      std::size_t used = 0;
      const std::string points = spec.substr(c2 + 1);
      const int n = std::stoi(points, &used);
      if (used != points.size()) throw std::invalid_argument(points);
      setup.grid = linspace(std::stod(spec.substr(0, c1)),
                            std::stod(spec.substr(c1 + 1, c2 - c1 - 1)), n);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("--grid", "expected start:stop:points, got '" + spec + "'");
    }
  } else {
    const double scale = std::min(typical_scale(effective_distribution(setup.link.hop1)),
                                  typical_scale(effective_distribution(setup.link.hop2)));
    setup.grid = linspace(f.cdf_gamma_start.value_or(0.0), f.cdf_gamma_stop.value_or(2.0 * scale),
                          f.cdf_points.value_or(kDefaultCdfPoints));
  }
  return setup;
}

std::vector<CdfEvaluation> analytical_cdf(const Settings& s, const CdfSetup& setup) {
  const auto evals = end_to_end_cdf_grid(effective_distribution(setup.link.hop1),
                                         effective_distribution(setup.link.hop2), setup.grid,
                                         setup.link.combiner, s.tol, s.threads);
  std::vector<std::string> failed;
  for (std::size_t i = 0; i < evals.size(); ++i) {
    if (!evals[i].converged) failed.push_back(fmt::format("cdf gamma={:g}", setup.grid[i]));
  }
  if (!failed.empty()) throw NonConvergence(std::move(failed));
  return evals;
}

McRun mc_run(const Settings& s) {
  return McRun{s.seed.value_or(kDefaultSeed), s.samples, s.threads};
}

std::string cmd_cdf(Settings s) {
  if (!s.seed) s.seed = kDefaultSeed;
  const CdfSetup setup = cdf_setup(s);
  const auto evals = analytical_cdf(s, setup);
  const auto eq = simulate_end_to_end(setup.link, mc_run(s));
  const auto empirical = empirical_cdf(eq, setup.grid);

  std::string text = metadata(s, "cdf", true);
  text += fmt::format("# hop1_snr_db={} hop2_snr_db={}\n", db(s.file.hop1_snr_db.front()),
                      db(s.file.cdf_hop2_snr_db.value_or(s.file.hop2_start_db)));
  text += "gamma,cdf_analytical,cdf_mc\n";
  double worst = 0.0;
  for (std::size_t i = 0; i < setup.grid.size(); ++i) {
    worst = std::max(worst, std::abs(evals[i].value - empirical[i]));
    text += fmt::format("{},{},{}\n", real(s, setup.grid[i]), prob(s, evals[i].value),
                        prob(s, empirical[i]));
  }
  text += fmt::format("# max_abs_diff={}\n", prob(s, worst));
  return text;
}

struct Check {
  std::string name;
  double statistic;
  double threshold;
  bool pass() const { return statistic <= threshold; }
};

std::vector<Check> run_checks(Settings& s) {
  if (!s.seed) s.seed = kDefaultSeed;
  const ScenarioFile& f = s.file;
  const McRun run = mc_run(s);
  const double n = static_cast<double>(s.samples);
  const double ks_limit = std::max(0.01, 1.63 / std::sqrt(n));
  const double cdf_limit = std::max(0.005, 1.63 / std::sqrt(n));

  // Convergence first: a failure here is exit 3, not a failed check.
  const CdfSetup setup = cdf_setup(s);
  const auto evals = analytical_cdf(s, setup);
  const auto by_hop1 = sweep_all(s, f, true);

  std::vector<Check> checks;
  const std::array<std::pair<const HopConfig*, std::uint64_t>, 2> hops{
      {{&setup.link.hop1, kHop1Stream}, {&setup.link.hop2, kHop2Stream}}};
  for (std::size_t h = 0; h < hops.size(); ++h) {
    const auto samples = simulate_hop(*hops[h].first, run, hops[h].second);
    const HopDistribution law = effective_distribution(*hops[h].first);
    const double ks = ks_distance(samples, [&](double g) { return cdf(law, g); });
    checks.push_back({fmt::format("hop{}_law_ks", h + 1), ks, ks_limit});
  }

  const auto empirical = empirical_cdf(simulate_end_to_end(setup.link, run), setup.grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < setup.grid.size(); ++i) {
    worst = std::max(worst, std::abs(evals[i].value - empirical[i]));
  }
  checks.push_back({"cdf_max_deviation", worst, cdf_limit});

  // Normalized so that <= 1 means |a - mc| <= max(2% of a, 2 half-widths).
  for (std::size_t m = 0; m < f.modulations.size(); ++m) {
    for (const auto& curves : by_hop1) {
      const SerCurve& curve = curves[m];
      double ratio = 0.0;
      for (const SerPoint& row : curve.rows) {
        if (row.analytical < 1e-4) continue;
        const double allowed = std::max(0.02 * row.analytical, 2.0 * *row.mc_halfwidth);
        ratio = std::max(ratio, std::abs(row.analytical - *row.mc) / allowed);
      }
      checks.push_back({fmt::format("ser_agreement_{}_hop1_{}dB", curve.modulation.name(),
                                    db(curve.hop1_snr_db)),
                        ratio, 1.0});
    }
  }
  return checks;
}

std::string cmd_validate(Settings s, bool& all_pass) {
  const auto checks = run_checks(s);
  std::string text = metadata(s, "validate", true);
  text += fmt::format("{:<36} {:>12} {:>12}  {}\n", "check", "statistic", "threshold", "result");
  all_pass = true;
  for (const Check& c : checks) {
    all_pass = all_pass && c.pass();
    text += fmt::format("{:<36} {:>12.4e} {:>12.4e}  {}\n", c.name, c.statistic, c.threshold,
                        c.pass() ? "PASS" : "FAIL");
  }
  text += fmt::format("# overall={}\n", all_pass ? "PASS" : "FAIL");
  return text;
}

std::string ordering(const std::array<double, 3>& ser) {
  static constexpr std::array<std::string_view, 3> names{"MIMO_MIMO", "MISO_SIMO", "SIMO_MISO"};
  std::array<int, 3> idx{0, 1, 2};
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return ser[a] < ser[b]; });
  std::string out(names[idx[0]]);
  for (int k = 1; k < 3; ++k) {
    const double lo = ser[idx[k - 1]];
    const double hi = ser[idx[k]];
    out += (hi - lo <= 1e-6 * hi) ? "=" : "<";
    out += names[idx[k]];
  }
  return out;
}

std::string cmd_compare_cases(const Settings& s) {
  const ScenarioFile& f = s.file;
  const int n = std::max({f.n_s(), f.n_r(), f.n_d()});
  const std::array<CaseTag, 3> tags{CaseTag::MimoMimo, CaseTag::MisoSimo, CaseTag::SimoMiso};
  std::array<std::vector<std::vector<SerCurve>>, 3> results;
  for (std::size_t c = 0; c < tags.size(); ++c) results[c] = sweep_all(s, as_case(f, tags[c], n), false);

  std::string text = metadata(s, "compare-cases", false);
  text += "modulation,n,m,hop1_snr_db,hop2_snr_db,ser_mimo_mimo,ser_miso_simo,ser_simo_miso,ordering\n";
  std::size_t total = 0;
  std::size_t mimo_best = 0;
  std::size_t simo_miso_better = 0;
  for (std::size_t m = 0; m < f.modulations.size(); ++m) {
    for (std::size_t h = 0; h < f.hop1_snr_db.size(); ++h) {
      const auto& rows = results[0][h][m].rows;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::array<double, 3> ser{results[0][h][m].rows[i].analytical,
                                        results[1][h][m].rows[i].analytical,
                                        results[2][h][m].rows[i].analytical};
        ++total;
        if (ser[0] <= ser[1] && ser[0] <= ser[2]) ++mimo_best;
        if (ser[2] < ser[1]) ++simo_miso_better;
        text += fmt::format("{},{},{},{},{},{},{},{},{}\n", f.modulations[m].name(), n,
                            fading_m(f), db(f.hop1_snr_db[h]), db(rows[i].hop2_snr_db),
                            prob(s, ser[0]), prob(s, ser[1]), prob(s, ser[2]), ordering(ser));
      }
    }
  }
  text += fmt::format("# mimo_mimo_lowest={}/{}\n", mimo_best, total);
  text += fmt::format("# simo_miso_below_miso_simo={}/{}\n", simo_miso_better, total);
  return text;
}

void emit(const Flags& flags, const std::string& text, std::ostream& out) {
  if (flags.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(flags.out, std::ios::binary);
  file << text;
  if (!file) throw ConfigError("--out", "cannot write '" + flags.out + "'");
}

void add_common(CLI::App* sub, Flags& flags) {
  sub->add_option("--scenario", flags.scenario, "Scenario file")->required();
  sub->add_option("--out", flags.out, "Write output here instead of stdout");
  sub->add_option("--tol", flags.tol, "Relative quadrature tolerance");
  sub->add_option("--seed", flags.seed, "Monte-Carlo master seed");
  sub->add_option("--samples", flags.samples, "Monte-Carlo sample count")
      ->check(CLI::PositiveNumber);
  sub->add_option("--threads", flags.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  sub->add_option("--combiner", flags.combiner, "exact | harmonic")
      ->check(CLI::IsMember({"exact", "harmonic"}));
  sub->add_flag("--full-precision", flags.full_precision, "Print probabilities with %.17g");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dual-hop amplify-and-forward relay performance evaluator", "dualhop"};
  app.set_version_flag("--version", DUALHOP_VERSION);
  app.require_subcommand(1);
  Flags flags;
  CLI::App* sweep = app.add_subcommand("ser-sweep", "SER against the R-D mean branch SNR");
  CLI::App* cdf_cmd = app.add_subcommand("cdf", "Analytical and Monte-Carlo end-to-end CDF");
  CLI::App* validate = app.add_subcommand("validate", "Check the analysis against Monte-Carlo");
  CLI::App* compare =
      app.add_subcommand("compare-cases", "MIMO_MIMO vs MISO_SIMO vs SIMO_MISO at equal budget");
  for (CLI::App* sub : {sweep, cdf_cmd, validate, compare}) add_common(sub, flags);
  cdf_cmd->add_option("--grid", flags.grid, "Gamma grid start:stop:points (linear SNR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    Settings settings = resolve(flags);
    if (sweep->parsed()) {
      emit(flags, cmd_ser_sweep(settings), out);
    } else if (cdf_cmd->parsed()) {
      emit(flags, cmd_cdf(settings), out);
    } else if (validate->parsed()) {
      bool all_pass = false;
      emit(flags, cmd_validate(settings, all_pass), out);
      return all_pass ? kExitOk : kExitCheckFailed;
    } else {
      emit(flags, cmd_compare_cases(settings), out);
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << " at " << e.points().size() << " point(s):\n";
    for (const auto& p : e.points()) err << "  " << p << '\n';
    return kExitNonConvergence;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace dualhop::cli
