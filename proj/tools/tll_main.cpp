#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tll/bounds.hpp"
#include "tll/configuration.hpp"
#include "tll/energy.hpp"
#include "tll/error.hpp"
#include "tll/json_io.hpp"
#include "tll/optimizer.hpp"
#include "tll/potential.hpp"
#include "tll/spectral.hpp"
#include "tll/threads.hpp"

namespace {

using json = nlohmann::json;
constexpr const char* kVersion = "0.1.0";

// Exit codes.
constexpr int kOk = 0;
constexpr int kFailedCheck = 1;
constexpr int kUsage = 2;

// Accepts a JSON file or a shorthand: overlap, step, power_law:<beta>.
tll::PotentialSpec load_potential(const std::string& arg) {
  if (arg == "overlap") return tll::PotentialSpec::overlap();
  if (arg == "step") return tll::PotentialSpec::step();
  if (arg.rfind("power_law:", 0) == 0) {
    const std::string tail = arg.substr(10);
    std::size_t used = 0;
    double beta = 0.0;
    try {
      beta = std::stod(tail, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tail.size())
      throw tll::Error(tll::ErrorKind::InvalidArgument, "malformed potential shorthand '" + arg + "'");
    return tll::PotentialSpec::power_law(beta);
  }
  return tll::io::potential_from_json(tll::io::read_json_file(arg));
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Attaches the run manifest. The digest covers everything except the timestamp.
void emit(const std::string& command, json params, std::optional<std::uint64_t> seed, json result) {
  json manifest = {{"command", command}, {"params", std::move(params)}, {"version", kVersion}};
  manifest["seed"] = seed ? json(*seed) : json(nullptr);
  result["manifest"] = manifest;
  result["manifest"]["digest"] = tll::io::digest(result.dump());
  result["manifest"]["timestamp"] = utc_timestamp();
  std::cout << result.dump(2) << '\n';
}

std::vector<int> parse_int_list(const std::string& text, const char* field) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || used == 0)
      throw tll::Error(tll::ErrorKind::InvalidArgument,
                       std::string("malformed field '") + field + "': '" + item + "' is not an integer");
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* field) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || used == 0)
      throw tll::Error(tll::ErrorKind::InvalidArgument,
                       std::string("malformed field '") + field + "': '" + item + "' is not a number");
    out.push_back(v);
  }
  return out;
}

tll::Configuration load_config(const std::string& path, std::optional<int> csv_n) {
  if (csv_n) {
    const tll::Domain d = tll::Domain::interval(*csv_n);
    return tll::io::load_configuration(path, &d);
  }
  return tll::io::load_configuration(path, nullptr);
}

// Interval(n) configurations are re-read on Ring(n + 1).
tll::Configuration as_ring(const tll::Configuration& config) {
  if (config.domain().is_ring()) return config;
  const auto pos = config.positions();
  return tll::Configuration::from_unsorted(tll::Domain::ring(config.domain().n() + 1),
                                           std::vector<double>(pos.begin(), pos.end()));
}

}  // namespace

int main(int argc, char** argv) {
  tll::configure_threads_from_env();

  CLI::App app{"Ground states of one-dimensional pair potentials with range one", "tll"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string potential_arg = "overlap";
  std::string config_path;
  std::optional<int> csv_n;
  std::uint64_t seed = 1;

  // construct
  auto* construct = app.add_subcommand("construct", "Tower configuration X^{n,m} with optional tall sites");
  int c_n = 0, c_m = 1;
  std::string c_tall;
  construct->add_option("--n", c_n, "Interval length")->required()->check(CLI::NonNegativeNumber);
  construct->add_option("--m", c_m, "Background height")->required()->check(CLI::PositiveNumber);
  construct->add_option("--tall-sites", c_tall, "Comma-separated sites carrying m+1 particles");
  construct->add_option("--potential", potential_arg, "Potential (file or shorthand) used for the energy");

  // energy
  auto* energy = app.add_subcommand("energy", "Total pair energy of a configuration");
  bool e_ring = false;
  std::string e_method = "cell_list";
  energy->add_option("--config", config_path, "Configuration (.json, or CSV with --n)")->required();
  energy->add_option("--potential", potential_arg, "Potential file or shorthand");
  energy->add_option("--n", csv_n, "Interval length for CSV input");
  energy->add_flag("--ring", e_ring, "Evaluate on Ring(n+1) with the periodized potential");
  energy->add_option("--method", e_method, "naive | cell_list")
      ->check(CLI::IsMember({"naive", "cell_list"}));

  // bound
  auto* bound = app.add_subcommand("bound", "Chain lower bound and closed-form ground energy");
  int b_n = 0;
  std::int64_t b_N = 0;
  bound->add_option("--n", b_n, "Interval length")->required()->check(CLI::NonNegativeNumber);
  bound->add_option("--N", b_N, "Particle count")->required()->check(CLI::PositiveNumber);
  bound->add_option("--config", config_path, "Also audit the chains of this configuration");
  bound->add_option("--potential", potential_arg, "Potential for the audit");

  // minimize
  auto* minimize = app.add_subcommand("minimize", "Anneal or brute-force the minimum and certify it");
  int o_n = 0, o_N = 0;
  bool o_brute = false;
  double o_grid = 0.25, o_tol = tll::kDefaultCertifyTolerance;
  std::string o_schedule;
  minimize->add_option("--n", o_n, "Interval length")->required()->check(CLI::NonNegativeNumber);
  minimize->add_option("--N", o_N, "Particle count")->required()->check(CLI::PositiveNumber);
  minimize->add_option("--potential", potential_arg, "Potential file or shorthand");
  minimize->add_option("--seed", seed, "Random seed");
  minimize->add_option("--schedule", o_schedule, "Annealing schedule JSON");
  minimize->add_flag("--brute-force", o_brute, "Exhaustive search over a grid");
  minimize->add_option("--grid-step", o_grid, "Grid step for --brute-force");
  minimize->add_option("--tolerance", o_tol, "Certification tolerance");

  // stability
  auto* stability = app.add_subcommand("stability", "Local stability test inside a window on a ring");
  std::string s_window;
  int s_trials = 500;
  stability->add_option("--config", config_path, "Configuration (.json, or CSV with --n)")->required();
  stability->add_option("--potential", potential_arg, "Potential file or shorthand");
  stability->add_option("--n", csv_n, "Interval length for CSV input");
  stability->add_option("--window", s_window, "a,b")->required();
  stability->add_option("--trials", s_trials, "Number of trials")->check(CLI::PositiveNumber);
  stability->add_option("--seed", seed, "Random seed");

  // degeneracy
  auto* degeneracy = app.add_subcommand("degeneracy", "Sample an Overlap-degenerate ground state on a ring");
  int d_n = 0, d_m = 1;
  std::string d_offsets;
  bool d_spread = false;
  degeneracy->add_option("--n", d_n, "Ring length minus one")->required()->check(CLI::PositiveNumber);
  degeneracy->add_option("--m", d_m, "Background height")->required()->check(CLI::PositiveNumber);
  degeneracy->add_option("--offsets", d_offsets, "Comma-separated background offsets in [0,1)");
  degeneracy->add_flag("--extra-spread", d_spread, "Add a spread group of extra particles");
  degeneracy->add_option("--seed", seed, "Random seed");

  // density-scan
  auto* density = app.add_subcommand("density-scan", "Energy per length against the closed form. CSV columns: rho,formula_energy,measured_energy,gap (12 significant digits)");
  double r_min = 1.0, r_max = 3.0, r_tol = 0.02;
  int r_steps = 9, r_repeats = 64;
  density->add_option("--rho-min", r_min, "Smallest density");
  density->add_option("--rho-max", r_max, "Largest density");
  density->add_option("--steps", r_steps, "Number of densities")->check(CLI::PositiveNumber);
  density->add_option("--repeats", r_repeats, "Profile repetitions on the ring")->check(CLI::Range(2, 100000));
  density->add_option("--potential", potential_arg, "Potential file or shorthand");
  density->add_option("--tolerance", r_tol, "Allowed |gap|");

  // spectral
  auto* spectral = app.add_subcommand("spectral", "Minimality scan of the periodic pair functional");
  int p_L = 2, p_samples = 1000, p_cutoff = 1000;
  spectral->add_option("--potential", potential_arg, "Potential file or shorthand");
  spectral->add_option("--L", p_L, "Period")->check(CLI::Range(2, 1000000));
  spectral->add_option("--samples", p_samples, "Random measures")->check(CLI::PositiveNumber);
  spectral->add_option("--seed", seed, "Random seed");
  spectral->add_option("--cutoff", p_cutoff, "Fourier mode cutoff for the lattice cross-check")
      ->check(CLI::PositiveNumber);

  // validate-potential
  auto* validate = app.add_subcommand("validate-potential", "Check the admissibility conditions on a grid");
  double v_grid = 1e-3;
  validate->add_option("--potential", potential_arg, "Potential file or shorthand");
  validate->add_option("--grid-step", v_grid, "Grid step in (0, 0.1]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (construct->parsed()) {
      const auto tall = parse_int_list(c_tall, "tall-sites");
      const auto config = tll::build_tower_config(c_n, c_m, tall);
      const auto pot = load_potential(potential_arg);
      json result = tll::io::to_json(config);
      result["N"] = config.size();
      result["energy"] = tll::total_energy(config, pot).total;
      result["ground_energy"] = tll::ground_energy(c_n, static_cast<std::int64_t>(config.size()));
      emit("construct", {{"n", c_n}, {"m", c_m}, {"tall_sites", tall}, {"potential", tll::io::to_json(pot)}},
           std::nullopt, result);
      return kOk;
    }

    if (energy->parsed()) {
      auto config = load_config(config_path, csv_n);
      const auto pot = load_potential(potential_arg);
      const auto method = e_method == "naive" ? tll::EnergyMethod::Naive : tll::EnergyMethod::CellList;
      if (e_ring) config = as_ring(config);
      const tll::EnergyReport report =
          config.domain().is_ring() ? tll::ring_energy(config, tll::periodize(pot, config.domain().length()), method)
                                    : tll::total_energy(config, pot, method);
      json result = tll::io::to_json(report);
      result["domain"] = tll::io::to_json(config.domain());
      result["N"] = config.size();
      emit("energy",
           {{"config", config_path}, {"potential", tll::io::to_json(pot)}, {"ring", e_ring}, {"method", e_method}},
           std::nullopt, result);
      return kOk;
    }

    if (bound->parsed()) {
      json result = tll::io::to_json(tll::chain_lower_bound(b_n, b_N));
      json params = {{"n", b_n}, {"N", b_N}};
      if (!config_path.empty()) {
        const auto config = load_config(config_path, b_n);
        const auto pot = load_potential(potential_arg);
        result["audit"] = tll::io::to_json(tll::chain_bound_audit(config, pot));
        params["config"] = config_path;
        params["potential"] = tll::io::to_json(pot);
      }
      emit("bound", params, std::nullopt, result);
      return kOk;
    }

    if (minimize->parsed()) {
      const auto pot = load_potential(potential_arg);
      json params = {{"n", o_n}, {"N", o_N}, {"potential", tll::io::to_json(pot)}, {"tolerance", o_tol}};
      tll::OptimizationResult opt = [&] {
        if (o_brute) {
          params["brute_force"] = true;
          params["grid_step"] = o_grid;
          return tll::brute_force_min(o_n, o_N, pot, o_grid, true);
        }
        tll::AnnealSchedule schedule;
        if (!o_schedule.empty()) schedule = tll::io::schedule_from_json(tll::io::read_json_file(o_schedule));
        params["schedule"] = tll::io::to_json(schedule);
        return tll::anneal(o_n, o_N, pot, schedule, seed);
      }();
      if (o_N >= o_n + 1) opt.certificate = tll::certify(opt, o_n, o_N, o_tol);
      emit("minimize", params, o_brute ? std::nullopt : std::optional<std::uint64_t>(seed), tll::io::to_json(opt));
      return opt.certificate && !opt.certificate->optimal() ? kFailedCheck : kOk;
    }

    if (stability->parsed()) {
      const auto config = as_ring(load_config(config_path, csv_n));
      const auto pot = load_potential(potential_arg);
      const auto w = parse_double_list(s_window, "window");
      if (w.size() != 2 || !(w[0] < w[1]))
        throw tll::Error(tll::ErrorKind::InvalidArgument, "malformed field 'window': expected a,b with a < b");
      const tll::Window window{w[0], w[1]};
      const auto report = tll::local_stability_test(config, tll::periodize(pot, config.domain().length()),
                                                    window, s_trials, seed);
      emit("stability",
           {{"config", config_path}, {"potential", tll::io::to_json(pot)}, {"window", w}, {"trials", s_trials}},
           seed, tll::io::to_json(report));
      return report.stable() ? kOk : kFailedCheck;
    }

    if (degeneracy->parsed()) {
      const auto offsets = parse_double_list(d_offsets, "offsets");
      const auto config = tll::sample_overlap_degenerate(d_n, d_m, offsets, seed, d_spread);
      const int L = config.domain().length();
      const auto pot = tll::PotentialSpec::overlap();
      const double e = tll::ring_energy(config, tll::periodize(pot, L)).total;
      const double g = tll::ground_energy(d_n, static_cast<std::int64_t>(config.size()));
      json result = tll::io::to_json(config);
      result["N"] = config.size();
      result["ring_energy"] = e;
      result["ground_energy"] = g;
      result["equal"] = std::abs(e - g) <= 1e-9;
      emit("degeneracy", {{"n", d_n}, {"m", d_m}, {"offsets", offsets}, {"extra_spread", d_spread}}, seed, result);
      return result["equal"].get<bool>() ? kOk : kFailedCheck;
    }

    if (density->parsed()) {
      const auto pot = load_potential(potential_arg);
      bool all_ok = true;
      std::cout << "rho,formula_energy,measured_energy,gap\n";
      for (int i = 0; i < r_steps; ++i) {
        const double rho = r_steps == 1 ? r_min : r_min + (r_max - r_min) * i / (r_steps - 1);
        const auto point = tll::density_point(rho, pot, r_repeats);
        if (!(std::abs(point.gap) <= r_tol)) all_ok = false;
        std::cout << tll::io::format_number(rho) << ',' << tll::io::format_number(point.formula) << ','
                  << tll::io::format_number(point.measured) << ',' << tll::io::format_number(point.gap) << '\n';
      }
      return all_ok ? kOk : kFailedCheck;
    }

    if (spectral->parsed()) {
      const auto pot = load_potential(potential_arg);
      const auto scan = tll::minimality_scan(pot, p_L, p_samples, seed);
      const auto lattice = tll::Measure::lattice(p_L);
      json result = tll::io::to_json(scan);
      result["lattice_real"] = tll::functional_real(lattice, pot);
      result["lattice_kspace"] = tll::io::to_json(tll::functional_kspace(lattice, pot, p_cutoff));
      const bool minimal = scan.min_value >= 0.5 - 1e-9;
      result["lattice_minimal"] = minimal;
      emit("spectral",
           {{"potential", tll::io::to_json(pot)}, {"L", p_L}, {"samples", p_samples}, {"cutoff", p_cutoff}}, seed,
           result);
      return minimal ? kOk : kFailedCheck;
    }

    if (validate->parsed()) {
      const auto pot = load_potential(potential_arg);
      const auto report = tll::validate_family(pot, v_grid);
      emit("validate-potential", {{"potential", tll::io::to_json(pot)}, {"grid_step", v_grid}}, std::nullopt,
           tll::io::to_json(report));
      return report.ok() ? kOk : kFailedCheck;
    }
  } catch (const tll::Error& e) {
    std::cerr << "error (" << tll::to_string(e.kind()) << "): " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error (json): " << e.what() << '\n';
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error (io): " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
