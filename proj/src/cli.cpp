#include "ergopt/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "ergopt/acceptance.hpp"
#include "ergopt/error.hpp"
#include "ergopt/io.hpp"
#include "ergopt/lorenz.hpp"
#include "ergopt/optimizer.hpp"
#include "ergopt/potentials.hpp"

namespace ergopt {

namespace {

namespace fs = std::filesystem;

struct CommonFlags {
  std::string config;
  std::string out = ".";
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::optional<int> pmax;
};

class InvalidModel : public Error {
 public:
  using Error::Error;
};

class NonMonotoneCurve : public Error {
 public:
  using Error::Error;
};

struct Config {
  Json json;
  fs::path dir;

  bool has(const char* key) const { return json.contains(key); }

  // Inline value under `key`, or the contents of the file named by `key_file`.
  Json object(const std::string& key) const {
    if (json.contains(key)) return json[key];
    const std::string file_key = key + "_file";
    if (json.contains(file_key)) return read_json_file(dir / json[file_key].get<std::string>());
    throw InputError("config needs '" + key + "' or '" + file_key + "'");
  }

  TransitionStructure sft() const {
    if (json.contains("sft")) {
      if (!json["sft"].is_string()) throw InputError("'sft' must be the SFT text");
      return parse_sft(json["sft"].get<std::string>());
    }
    if (json.contains("sft_file")) return parse_sft(read_text_file(dir / json["sft_file"].get<std::string>()));
    throw InputError("config needs 'sft' or 'sft_file'");
  }

  double number(const char* key, double fallback) const {
    if (!json.contains(key)) return fallback;
    if (!json[key].is_number()) throw InputError(std::string("'") + key + "' must be a number");
    return json[key].get<double>();
  }
};

Config load_config(const CommonFlags& flags) {
  if (flags.config.empty()) throw InputError("--config is required");
  Config c{read_json_file(flags.config), fs::path(flags.config).parent_path()};
  if (!c.json.is_object()) throw InputError("config must be a JSON object");
  return c;
}

void check_flags(const CommonFlags& flags) {
  if (!(flags.tol > 0.0)) throw InputError("--tol must be > 0");
  if (flags.pmax && *flags.pmax < 1) throw InputError("--pmax must be >= 1");
}

SolverOptions solver_options(const CommonFlags& flags) {
  SolverOptions opts;
  opts.tolerance = flags.tol;
  return opts;
}

int cmd_map_optimize(const CommonFlags& flags) {
  const Config config = load_config(flags);
  const TransitionStructure ts = config.sft();
  const OneSidedPotential psi = one_sided_from_json(ts, config.object("potential"));
  const MaximizationResult r = maximize_map(psi, solver_options(flags));
  Json out = to_json(r);
  out["seed"] = flags.seed;
  write_json_file(fs::path(flags.out) / "map_result.json", out);
  std::cout << "M = " << format_number(r.value) << "\n";
  return kExitOk;
}

int cmd_flow_optimize(const CommonFlags& flags) {
  const Config config = load_config(flags);
  const TransitionStructure ts = config.sft();
  const OneSidedPotential phi = one_sided_from_json(ts, config.object("potential"));
  const OneSidedPotential roof = one_sided_from_json(ts, config.object("roof"));
  const FlowResult r = maximize_flow(phi, roof, solver_options(flags));
  Json out = to_json(r.result);
  out["residual"] = std::max(r.result.residual, std::abs(r.reduced_maximum));
  out["reduced_maximum"] = r.reduced_maximum;
  out["reduced_potential"] = "reduced_potential.json";
  out["seed"] = flags.seed;
  write_json_file(fs::path(flags.out) / "flow_result.json", out);
  Json reduced = to_json(r.reduced);
  reduced["seed"] = flags.seed;
  write_json_file(fs::path(flags.out) / "reduced_potential.json", reduced);
  std::cout << "M = " << format_number(r.result.value) << "\n";
  return kExitOk;
}

int cmd_reduce(const CommonFlags& flags) {
  const Config config = load_config(flags);
  const TransitionStructure ts = config.sft();
  const TwoSidedPotential phi = two_sided_from_json(ts, config.object("potential"));
  const OneSidedPotential psi = reduce_two_sided(phi, ReferenceScheme(ts));
  const int p_max = flags.pmax.value_or(6);
  const double tolerance = 1e-12;
  double worst = 0.0;
  std::size_t orbits = 0;
  for (const PeriodicCertificate& o : periodic_words(ts, p_max)) {
    worst = std::max(worst, std::abs(psi.cycle_average(o) - phi.cycle_average(o)));
    ++orbits;
  }
  if (worst > tolerance) {
    throw SolverError("reduced potential changes an orbit average by " + format_number(worst));
  }
  Json out = to_json(psi);
  out["verification"] = {{"p_max", p_max}, {"orbits", orbits}, {"max_average_delta", worst}, {"tolerance", tolerance}};
  out["seed"] = flags.seed;
  write_json_file(fs::path(flags.out) / "reduced_potential.json", out);
  std::cout << "reduced to depth " << psi.depth() << ", max orbit delta " << format_number(worst) << "\n";
  return kExitOk;
}

LorenzModel lorenz_model(const Config& c) {
  LorenzModel m;
  m.gamma = c.number("gamma", m.gamma);
  m.a = c.number("a", m.a);
  m.lambda_y = c.number("lambda_y", m.lambda_y);
  m.lambda1 = c.number("lambda1", m.lambda1);
  m.s0 = c.number("s0", m.s0);
  m.lambda2 = c.number("lambda2", m.lambda2);
  m.lambda3 = c.number("lambda3", m.lambda3);
  return m;
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string line;
  for (const std::string& c : cells) line += (line.empty() ? "" : ",") + c;
  return line + "\n";
}

int cmd_lorenz(const CommonFlags& flags) {
  const Config config = load_config(flags);
  const LorenzModel m = lorenz_model(config);
  const fs::path out_dir(flags.out);

  const ValidationReport report = validate_model(m);
  const RoofComparability comparability = roof_comparability(m);
  Json checks = Json::array();
  for (const ModelCheck& c : report.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  write_json_file(out_dir / "validation.json",
                  {{"seed", flags.seed},
                   {"passed", report.passed()},
                   {"min_alpha_prime_analytic", report.min_alpha_prime_analytic},
                   {"min_alpha_prime_grid", report.min_alpha_prime_grid},
                   {"roof_comparability", {{"c1", comparability.c1}, {"c2", comparability.c2}, {"x_bar", comparability.x_bar}}},
                   {"checks", checks}});
  if (!report.passed()) throw InvalidModel("model fails validation, see validation.json");

  std::vector<double> grid{0.3, 0.1, 0.03, 0.01, 0.003};
  if (config.has("epsilon_grid")) grid = config.json["epsilon_grid"].get<std::vector<double>>();
  const int p_max = flags.pmax.value_or(static_cast<int>(config.number("p_max", 12)));
  std::vector<std::string> names{"log_singular", "bump", "bump_singular", "constant"};
  if (config.has("observables")) names = config.json["observables"].get<std::vector<std::string>>();
  const double dirac_eps = config.number("dirac_epsilon", 0.1);
  const int family_p_max = static_cast<int>(config.number("family_p_max", 16));

  std::string orbit_csv = csv_row({"period", "itinerary", "min_abs_x", "roof_mean", "lyap"});
  for (const LorenzOrbit& o : enumerate_orbits(m, p_max, 0.0)) {
    const OrbitStats s = orbit_stats(m, o, [](double) { return 0.0; });
    orbit_csv += csv_row({std::to_string(o.period()), o.itinerary, format_number(o.min_abs()),
                          format_number(s.roof_sum / o.period()), format_number(s.lyap)});
  }
  write_text_file(out_dir / "orbits.csv", orbit_csv);

  Json shapes = Json::object();
  std::vector<std::pair<std::string, std::string>> curve_files;
  for (const std::string& name : names) {
    const ConstrainedCurve curve = constrained_m_curve(m, lorenz_observable(name).phi, grid, p_max);
    if (!curve.non_increasing) throw NonMonotoneCurve("constrained curve for " + name + " increases in epsilon");
    std::string csv = csv_row({"eps", "M_hat", "period", "itinerary"});
    for (const CurvePoint& p : curve.points) {
      csv += csv_row({format_number(p.epsilon), format_number(p.m_hat),
                      p.certificate ? std::to_string(p.certificate->period()) : "",
                      p.certificate ? p.certificate->itinerary : ""});
    }
    curve_files.emplace_back("curve_" + name + ".csv", csv);
    for (const std::string& w : curve.warnings) std::cerr << "warning: " << name << ": " << w << "\n";
    shapes[name] = {{"shape", shape_label(curve.shape)}, {"non_increasing", curve.non_increasing},
                    {"warnings", curve.warnings}};
  }
  for (const auto& [file, csv] : curve_files) write_text_file(out_dir / file, csv);
  write_json_file(out_dir / "shape.json",
                  {{"seed", flags.seed}, {"p_max", p_max}, {"epsilon_grid", grid}, {"curves", shapes}});

  const DiracExperiment ex = dirac_mass_experiment(m, near_singular_family(m, family_p_max), dirac_eps);
  Json rows = Json::array();
  for (const DiracRow& r : ex.rows) {
    rows.push_back({{"itinerary", r.itinerary}, {"min_abs_x", r.min_abs_x}, {"roof_mean", r.roof_mean},
                    {"lyap", r.lyap}, {"f_eps", r.f_eps}, {"bound", r.bound}});
  }
  write_json_file(out_dir / "dirac.json", {{"seed", flags.seed},
                                          {"epsilon", ex.epsilon},
                                          {"c_eps", ex.c_eps},
                                          {"family_p_max", family_p_max},
                                          {"bound_holds", ex.bound_holds},
                                          {"f_increasing", ex.f_increasing},
                                          {"orbits", rows}});

  std::ostringstream plot;
  plot << "# column plots, one panel per file\n";
  for (const auto& [file, csv] : curve_files) plot << file << ": x = eps (log scale, reversed), y = M_hat\n";
  plot << "orbits.csv: x = min_abs_x (log scale), y = roof_mean; second panel y = lyap\n";
  plot << "dirac.json: x = roof_mean, y = f_eps and bound over orbits[]\n";
  write_text_file(out_dir / "plot_script.txt", plot.str());
  std::cout << "validation passed; " << names.size() << " curves written to " << out_dir.string() << "\n";
  return kExitOk;
}

int cmd_selftest(const CommonFlags& flags, const std::vector<int>& criteria) {
  const std::vector<CriterionResult> results = run_acceptance(flags.seed, criteria);
  bool all = true;
  for (const CriterionResult& r : results) {
    std::cout << format_line(r) << "\n";
    all = all && r.passed;
  }
  write_json_file(fs::path(flags.out) / "selftest.json", acceptance_report(flags.seed, results));
  return all ? kExitOk : kExitSelftest;
}

void add_common(CLI::App* cmd, CommonFlags& flags, bool needs_config) {
  auto* config = cmd->add_option("--config", flags.config, "JSON config file");
  if (needs_config) config->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", flags.out, "output directory")->capture_default_str();
  cmd->add_option("--tol", flags.tol, "solver tolerance")->capture_default_str();
  cmd->add_option("--seed", flags.seed, "seed, recorded in every output")->capture_default_str();
  cmd->add_option("--pmax", flags.pmax, "period cap");
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Ergodic optimization for suspension flows over subshifts of finite type"};
  app.require_subcommand(1);
  CommonFlags flags;
  std::vector<int> criteria;

  auto* map_cmd = app.add_subcommand("map-optimize", "maximize a one-sided potential over the shift");
  auto* flow_cmd = app.add_subcommand("flow-optimize", "maximize a flow observable through phi and the roof");
  auto* reduce_cmd = app.add_subcommand("reduce", "two-sided to one-sided reduction with orbit verification");
  auto* lorenz_cmd = app.add_subcommand("lorenz", "geometric Lorenz experiments");
  auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance suite");
  for (auto* cmd : {map_cmd, flow_cmd, reduce_cmd, lorenz_cmd}) add_common(cmd, flags, true);
  add_common(selftest_cmd, flags, false);
  selftest_cmd->add_option("--criteria", criteria, "criterion ids (default all)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    check_flags(flags);
    if (*map_cmd) return cmd_map_optimize(flags);
    if (*flow_cmd) return cmd_flow_optimize(flags);
    if (*reduce_cmd) return cmd_reduce(flags);
    if (*lorenz_cmd) return cmd_lorenz(flags);
    return cmd_selftest(flags, criteria);
  } catch (const InvalidModel& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NonMonotoneCurve& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonMonotone;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitParse;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitParse;
  }
}

}  // namespace ergopt
