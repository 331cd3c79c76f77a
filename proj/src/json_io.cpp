#include "tll/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tll/error.hpp"

namespace tll::io {
namespace {

[[noreturn]] void malformed(const std::string& field, const std::string& why) {
  throw Error(ErrorKind::InvalidArgument, "malformed field '" + field + "': " + why);
}

const json& require(const json& j, const std::string& field) {
  if (!j.is_object()) malformed(field, "enclosing value is not an object");
  auto it = j.find(field);
  if (it == j.end()) malformed(field, "missing");
  return *it;
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) malformed(field, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) malformed(field, "expected an integer");
  return j.get<int>();
}

std::vector<std::pair<double, double>> pairs(const json& j, const std::string& field) {
  if (!j.is_array()) malformed(field, "expected an array of [x, value] pairs");
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& p = j[i];
    const std::string where = field + "[" + std::to_string(i) + "]";
    if (!p.is_array() || p.size() != 2) malformed(where, "expected a two-element array");
    out.emplace_back(number(p[0], where), number(p[1], where));
  }
  return out;
}

}  // namespace

json to_json(const PotentialSpec& spec) {
  switch (spec.kind()) {
    case PotentialKind::Overlap: return {{"kind", "overlap"}};
    case PotentialKind::Step: return {{"kind", "step"}};
    case PotentialKind::PowerLaw: return {{"kind", "power_law"}, {"beta", spec.beta()}};
    case PotentialKind::Tabulated: {
      json samples = json::array();
      for (const auto& [x, u] : spec.samples()) samples.push_back({x, u});
      return {{"kind", "tabulated"}, {"samples", samples}};
    }
  }
  return {};
}

PotentialSpec potential_from_json(const json& j) {
  const json& kind = require(j, "kind");
  if (!kind.is_string()) malformed("kind", "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "overlap") return PotentialSpec::overlap();
  if (k == "step") return PotentialSpec::step();
  if (k == "power_law") return PotentialSpec::power_law(number(require(j, "beta"), "beta"));
  if (k == "tabulated") return PotentialSpec::tabulated(pairs(require(j, "samples"), "samples"));
  malformed("kind", "unknown potential kind '" + k + "'");
}

json to_json(const Domain& domain) {
  return {{"kind", domain.is_ring() ? "ring" : "interval"}, {"n", domain.n()}};
}

Domain domain_from_json(const json& j) {
  const json& kind = require(j, "kind");
  if (!kind.is_string()) malformed("domain.kind", "expected a string");
  const int n = integer(require(j, "n"), "domain.n");
  const auto k = kind.get<std::string>();
  if (k == "interval") return Domain::interval(n);
  if (k == "ring") return Domain::ring(n + 1);
  malformed("domain.kind", "expected 'interval' or 'ring'");
}

json to_json(const Configuration& config) {
  return {{"domain", to_json(config.domain())},
          {"positions", std::vector<double>(config.positions().begin(), config.positions().end())}};
}

Configuration configuration_from_json(const json& j) {
  const Domain domain = domain_from_json(require(j, "domain"));
  const json& positions = require(j, "positions");
  if (!positions.is_array()) malformed("positions", "expected an array of numbers");
  std::vector<double> x;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    x.push_back(number(positions[i], "positions[" + std::to_string(i) + "]"));
  }
  return Configuration(domain, std::move(x));
}

Configuration configuration_from_csv(const std::string& text, const Domain& domain) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> x;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      std::size_t used = 0;
      x.push_back(std::stod(line.substr(first), &used));
    } catch (const std::exception&) {
      malformed("line " + std::to_string(line_no), "expected one coordinate");
    }
  }
  return Configuration(domain, std::move(x));
}

json to_json(const Measure& mu) {
  json atoms = json::array();
  for (const auto& [x, w] : mu.atoms()) atoms.push_back({x, w});
  return {{"L", mu.period()}, {"atoms", atoms}};
}

Measure measure_from_json(const json& j) {
  return Measure(integer(require(j, "L"), "L"), pairs(require(j, "atoms"), "atoms"));
}

AnnealSchedule schedule_from_json(const json& j) {
  AnnealSchedule s;
  if (!j.is_object()) malformed("schedule", "expected an object");
  if (j.contains("initial_temperature")) s.initial_temperature = number(j["initial_temperature"], "initial_temperature");
  if (j.contains("cooling_factor")) s.cooling_factor = number(j["cooling_factor"], "cooling_factor");
  if (j.contains("sweeps_per_temperature")) {
    s.sweeps_per_temperature = integer(j["sweeps_per_temperature"], "sweeps_per_temperature");
  }
  if (j.contains("move_scale")) s.move_scale = number(j["move_scale"], "move_scale");
  if (j.contains("restarts")) s.restarts = integer(j["restarts"], "restarts");
  if (j.contains("final_temperature")) s.final_temperature = number(j["final_temperature"], "final_temperature");
  s.validate();
  return s;
}

json to_json(const AnnealSchedule& s) {
  return {{"initial_temperature", s.initial_temperature}, {"cooling_factor", s.cooling_factor},
          {"sweeps_per_temperature", s.sweeps_per_temperature}, {"move_scale", s.move_scale},
          {"restarts", s.restarts}, {"final_temperature", s.final_temperature}};
}

json to_json(const ValidationReport& report) {
  json v = json::array();
  for (const auto& violation : report.violations) {
    v.push_back({{"invariant", violation.invariant}, {"x", violation.location}, {"u", violation.value}});
  }
  return {{"valid", report.ok()}, {"violations", v}};
}

json to_json(const EnergyReport& report) {
  return {{"total", report.total}, {"pair_count_nonzero", report.pair_count_nonzero},
          {"method", to_string(report.method)}};
}

json to_json(const BoundReport& report) {
  return {{"lower_bound", report.lower_bound}, {"ground_energy_formula", report.ground_energy_formula},
          {"pair_count", report.pair_count}, {"chain_count", report.chain_count}};
}

json to_json(const ChainAudit& audit) {
  json steps = json::array();
  json starts = json::array();
  json pair_counts = json::array();
  json potential_sums = json::array();
  json chord_sums = json::array();
  json spans = json::array();
  for (const auto& c : audit.chains) {
    steps.push_back(c.step);
    starts.push_back(c.start);
    pair_counts.push_back(c.pairs);
    potential_sums.push_back(c.potential_sum);
    chord_sums.push_back(c.chord_sum);
    spans.push_back(c.span);
  }
  return {{"m", audit.m}, {"r", audit.r}, {"energy", audit.energy}, {"retained_sum", audit.retained_sum},
          {"chord_sum", audit.chord_sum}, {"bound", audit.bound}, {"slack", audit.slack},
          {"retained_pairs", audit.retained_pairs},
          {"chains", {{"step", steps}, {"start", starts}, {"pairs", pair_counts},
                      {"potential_sum", potential_sums}, {"chord_sum", chord_sums}, {"span", spans}}}};
}

json to_json(const Certificate& c) {
  return {{"status", c.optimal() ? "optimal" : "gap"}, {"gap", c.gap}, {"lower_bound", c.lower_bound}};
}

json to_json(const TowerProfile& profile) { return profile.heights; }

json to_json(const OptimizationResult& result) {
  const auto profile = profile_of(result.best_config);
  json out = {{"best_energy", result.best_energy},
              {"certificate", result.certificate ? to_json(*result.certificate) : json(nullptr)},
              {"config", to_json(result.best_config)},
              {"profile", profile ? to_json(*profile) : json(nullptr)},
              {"iterations", result.iterations},
              {"seed", result.seed}};
  if (!result.argmin_set.empty()) {
    json all = json::array();
    for (const auto& c : result.argmin_set) {
      all.push_back(std::vector<double>(c.positions().begin(), c.positions().end()));
    }
    out["argmin_set"] = all;
  }
  return out;
}

json to_json(const StabilityReport& report) {
  return {{"baseline", report.baseline}, {"min_delta", report.min_delta}, {"stable", report.stable()},
          {"trials", report.trials}, {"window_particles", report.window_particles},
          {"violating", report.violating ? to_json(*report.violating) : json(nullptr)}};
}

json to_json(const DegenerateMember& member) {
  return {{"config", to_json(member.config)}, {"energy", member.energy}, {"spacing_ok", member.spacing_ok},
          {"background_form", member.background_form}};
}

json to_json(const UniquenessReport& report) {
  json examples = json::array();
  for (const auto& m : report.examples) examples.push_back(to_json(m));
  return {{"ground_energy", report.ground_energy}, {"trials", report.trials},
          {"distinct_found", report.distinct_found}, {"unique", report.unique()}, {"examples", examples}};
}

json to_json(const ScanReport& report) {
  return {{"min_value", report.min_value}, {"argmin", to_json(report.argmin)},
          {"lattice_value", report.lattice_value}, {"samples", report.samples}};
}

json to_json(const KSpaceResult& result) {
  return {{"value", result.value}, {"truncation_estimate", result.truncation_estimate}};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json read_json_file(const std::filesystem::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidArgument, "'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

Configuration load_configuration(const std::filesystem::path& path, const Domain* csv_domain) {
  if (path.extension() == ".csv") {
    if (csv_domain == nullptr) {
      throw Error(ErrorKind::InvalidArgument, "CSV configuration needs the domain given by --n");
    }
    return configuration_from_csv(read_file(path), *csv_domain);
  }
  return configuration_from_json(read_json_file(path));
}

std::string digest(const std::string& payload) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : payload) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

}  // namespace tll::io
