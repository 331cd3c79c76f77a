#include "tll/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "tll/bounds.hpp"
#include "tll/error.hpp"
#include "tll/kernels.hpp"
#include "tll/random.hpp"

namespace tll {
namespace {

struct Bounds1D {
  double lo;
  double hi;
  int period;  // 0 on intervals

  double place(double x) const {
    if (period > 0) {
      const double L = period;
      x = std::fmod(x, L);
      if (x < 0.0) x += L;
      if (x >= L) x = 0.0;
      return x;
    }
    return std::clamp(x, lo, hi);
  }
};

Bounds1D bounds_of(const Domain& d) {
  return d.is_ring() ? Bounds1D{0.0, static_cast<double>(d.length()), d.length()}
                     : Bounds1D{0.0, static_cast<double>(d.n()), 0};
}

double golden_section(const std::function<double(double)>& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

bool lex_less(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct ChainResult {
  std::vector<double> positions;
  double energy = std::numeric_limits<double>::infinity();
  std::int64_t iterations = 0;
};

// Moves only the particles listed in `movable`, each confined to `region`
// (taken modulo the period on rings).
struct MoveSet {
  std::vector<std::size_t> movable;
  double region_lo;
  double region_hi;

  bool admits(double v, int period) const {
    if (period <= 0) return v >= region_lo && v <= region_hi;
    return Window{region_lo, region_hi}.contains(v, period);
  }
};

ChainResult anneal_chain(std::vector<double> x, const Domain& domain, const PotentialSpec& spec,
                         const AnnealSchedule& schedule, const MoveSet& moves, std::uint64_t seed) {
  Rng rng(seed);
  const Bounds1D box = bounds_of(domain);
  const int period = box.period;
  const std::size_t count = moves.movable.size();
  ChainResult out;
  if (count == 0) {
    out.positions = x;
    out.energy = kernels::pair_sum_naive(x, spec, period).total;
    return out;
  }

  auto confine = [&](double v) {
    if (period > 0) return box.place(v);
    return std::clamp(v, moves.region_lo, moves.region_hi);
  };

  double energy = kernels::pair_sum_naive(x, spec, period).total;
  std::vector<double> best = x;
  double best_energy = energy;
  const int sweeps = schedule.sweeps_for(count);
  const double width = moves.region_hi - moves.region_lo;

  for (double T = schedule.initial_temperature; T > schedule.final_temperature;
       T *= schedule.cooling_factor) {
    const double scale = std::max(schedule.move_scale * std::sqrt(T / schedule.initial_temperature), 1e-3);
    for (int s = 0; s < sweeps; ++s) {
      ++out.iterations;
      const std::size_t i = moves.movable[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(count) - 1))];
      const double kind = uniform01(rng);
      double proposal;
      if (kind < 0.1 && count > 1) {
        // land on another movable particle, or exactly one unit away from it
        const std::size_t j = moves.movable[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(count) - 1))];
        proposal = x[j] + static_cast<double>(uniform_int(rng, -1, 1));
      } else if (kind < 0.15) {
        proposal = moves.region_lo + width * uniform01(rng);
      } else {
        proposal = x[i] + uniform(rng, -scale, scale);
      }
      proposal = confine(proposal);
      if (proposal == x[i] || !moves.admits(proposal, period)) continue;
      const double delta = kernels::particle_interaction(x, i, proposal, spec, period) -
                           kernels::particle_interaction(x, i, x[i], spec, period);
      if (delta <= 0.0 || uniform01(rng) < std::exp(-delta / T)) {
        x[i] = proposal;
        energy += delta;
        if (energy < best_energy) {
          best_energy = energy;
          best = x;
        }
      }
    }
    // resynchronize against accumulated rounding
    energy = kernels::pair_sum_naive(x, spec, period).total;
  }
  out.positions = std::move(best);
  out.energy = best_energy;
  return out;
}

// Polishes only the listed particles within [lo, hi] (intervals) or anywhere (rings).
double polish_subset(std::vector<double>& x, const Domain& domain, const PotentialSpec& spec,
                     const MoveSet& moves, int rounds) {
  const Bounds1D box = bounds_of(domain);
  const int period = box.period;
  auto confine = [&](double v) {
    if (period > 0) return box.place(v);
    return std::clamp(v, moves.region_lo, moves.region_hi);
  };
  auto in_region = [&](double v) { return moves.admits(period > 0 ? box.place(v) : v, period); };

  double bracket = 0.5;
  for (int round = 0; round < rounds; ++round) {
    bool moved = false;
    for (std::size_t i : moves.movable) {
      auto f = [&](double t) { return kernels::particle_interaction(x, i, t, spec, period); };
      const double current = f(x[i]);
      double best_t = x[i];
      double best_f = current;
      auto consider = [&](double t) {
        if (!in_region(t)) return;
        t = confine(t);
        const double v = f(t);
        if (v < best_f) {
          best_f = v;
          best_t = t;
        }
      };
      double a = x[i] - bracket;
      double b = x[i] + bracket;
      if (period == 0) {
        a = std::max(a, moves.region_lo);
        b = std::min(b, moves.region_hi);
      }
      if (b > a) consider(golden_section(f, a, b, 1e-12));
      consider(a);
      consider(b);
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (j == i) continue;
        consider(x[j]);
        consider(x[j] - 1.0);
        consider(x[j] + 1.0);
      }
      if (best_f < current) {
        x[i] = best_t;
        moved = true;
      }
    }
    if (!moved && bracket < 1e-6) break;
    bracket = std::max(bracket * 0.7, 1e-7);
  }
  return kernels::pair_sum_naive(x, spec, period).total;
}

MoveSet all_particles(std::size_t count, const Domain& domain) {
  MoveSet moves;
  moves.movable.resize(count);
  for (std::size_t i = 0; i < count; ++i) moves.movable[i] = i;
  const Bounds1D box = bounds_of(domain);
  moves.region_lo = box.lo;
  moves.region_hi = box.hi;
  return moves;
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

void AnnealSchedule::validate() const {
  const bool ok = initial_temperature > 0.0 && cooling_factor > 0.0 && cooling_factor < 1.0 &&
                  sweeps_per_temperature >= 0 && move_scale > 0.0 && restarts > 0 &&
                  final_temperature > 0.0 && final_temperature < initial_temperature;
  if (!ok) throw Error(ErrorKind::InvalidArgument, "anneal schedule: parameters out of range");
}

int AnnealSchedule::sweeps_for(std::size_t particles) const {
  return sweeps_per_temperature > 0 ? sweeps_per_temperature : 50 * static_cast<int>(particles);
}

Certificate certify(double best_energy, int n, std::int64_t N, double tolerance) {
  const double bound = chain_lower_bound(n, N).lower_bound;
  Certificate c;
  c.lower_bound = bound;
  c.gap = best_energy - bound;
  c.status = c.gap <= tolerance ? CertificateStatus::CertifiedOptimal : CertificateStatus::GapRemaining;
  return c;
}

Certificate certify(const OptimizationResult& result, int n, std::int64_t N, double tolerance) {
  return certify(result.best_energy, n, N, tolerance);
}

std::uint64_t multiset_count(std::uint64_t grid_points, std::uint64_t N, std::uint64_t cap) {
  // C(G + N - 1, N) built as a running product of exact binomials.
  if (grid_points == 0) return N == 0 ? 1 : 0;
  unsigned __int128 value = 1;
  for (std::uint64_t k = 1; k <= N; ++k) {
    value = value * (grid_points - 1 + k) / k;
    if (value > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(value);
}

OptimizationResult brute_force_min(int n, int N, const PotentialSpec& potential, double grid_step,
                                   bool collect_argmin, std::uint64_t budget) {
  if (n < 0 || N < 1) throw Error(ErrorKind::InvalidArgument, "brute_force_min: need n >= 0 and N >= 1");
  if (!(grid_step > 0.0 && grid_step <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "brute_force_min: grid_step must lie in (0, 1]");
  }
  const long per_unit = std::lround(1.0 / grid_step);
  if (std::abs(static_cast<double>(per_unit) * grid_step - 1.0) > 1e-9) {
    throw Error(ErrorKind::InvalidArgument, "brute_force_min: grid_step must divide 1");
  }
  const int G = static_cast<int>(static_cast<long>(n) * per_unit + 1);
  const std::uint64_t count = multiset_count(static_cast<std::uint64_t>(G), static_cast<std::uint64_t>(N), budget);
  if (count > budget) {
    throw Error(ErrorKind::Budget, "brute_force_min: more than " + std::to_string(budget) +
                                       " grid multisets (G = " + std::to_string(G) +
                                       ", N = " + std::to_string(N) + ")");
  }

  auto coordinate = [per_unit](int index) { return static_cast<double>(index) / static_cast<double>(per_unit); };
  std::vector<double> table(static_cast<std::size_t>(G));
  for (int d = 0; d < G; ++d) table[static_cast<std::size_t>(d)] = evaluate(potential, coordinate(d));

  std::vector<int> idx(static_cast<std::size_t>(N), 0);
  std::vector<int> best_idx;
  std::vector<std::vector<int>> argmin;
  double best = std::numeric_limits<double>::infinity();
  std::int64_t visited = 0;
  const double tie = 1e-12;

  // Depth-first over nondecreasing index sequences, in lexicographic order.
  std::function<void(int, int, double)> descend = [&](int depth, int lo, double prefix) {
    if (prefix > best + tie) return;  // all terms are nonnegative
    if (depth == N) {
      ++visited;
      if (prefix < best - tie) {
        best = prefix;
        best_idx = idx;
        argmin.clear();
        if (collect_argmin) argmin.push_back(idx);
      } else if (collect_argmin) {
        argmin.push_back(idx);
      }
      return;
    }
    for (int g = lo; g < G; ++g) {
      double added = 0.0;
      for (int l = 0; l < depth; ++l) added += table[static_cast<std::size_t>(g - idx[static_cast<std::size_t>(l)])];
      idx[static_cast<std::size_t>(depth)] = g;
      descend(depth + 1, g, prefix + added);
    }
  };
  descend(0, 0, 0.0);

  auto to_config = [&](const std::vector<int>& sequence) {
    std::vector<double> x(sequence.size());
    std::transform(sequence.begin(), sequence.end(), x.begin(), coordinate);
    return Configuration(Domain::interval(n), std::move(x));
  };

  OptimizationResult result{to_config(best_idx), best, std::nullopt, visited, 0, {}};
  result.best_energy = kernels::pair_sum_naive(result.best_config.positions(), potential, 0).total;
  for (const auto& sequence : argmin) result.argmin_set.push_back(to_config(sequence));
  if (N >= n + 1) result.certificate = certify(result.best_energy, n, N);
  return result;
}

double polish(std::vector<double>& positions, const Domain& domain, const PotentialSpec& potential,
              int rounds) {
  return polish_subset(positions, domain, potential, all_particles(positions.size(), domain), rounds);
}

OptimizationResult anneal(const Domain& domain, int N, const PotentialSpec& potential,
                          const AnnealSchedule& schedule, std::uint64_t seed) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "anneal: N must be >= 1");
  schedule.validate();
  const Bounds1D box = bounds_of(domain);
  const MoveSet moves = all_particles(static_cast<std::size_t>(N), domain);

  std::vector<ChainResult> chains(static_cast<std::size_t>(schedule.restarts));
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < schedule.restarts; ++r) {
    const std::uint64_t chain_seed = derive_seed(seed, static_cast<std::uint64_t>(r));
    Rng init(derive_seed(chain_seed, 0xC0FFEE));
    std::vector<double> x(static_cast<std::size_t>(N));
    for (double& v : x) v = box.place(uniform(init, box.lo, box.hi));
    ChainResult chain = anneal_chain(std::move(x), domain, potential, schedule, moves, chain_seed);
    chain.energy = polish_subset(chain.positions, domain, potential, moves, 60);
    chain.positions = sorted(std::move(chain.positions));
    chain.energy = kernels::pair_sum_naive(chain.positions, potential, box.period).total;
    chains[static_cast<std::size_t>(r)] = std::move(chain);
  }

  std::size_t winner = 0;
  std::int64_t iterations = 0;
  for (std::size_t r = 0; r < chains.size(); ++r) {
    iterations += chains[r].iterations;
    const double diff = chains[r].energy - chains[winner].energy;
    if (diff < -1e-12 || (std::abs(diff) <= 1e-12 && lex_less(chains[r].positions, chains[winner].positions))) {
      winner = r;
    }
  }
  OptimizationResult result{Configuration(domain, chains[winner].positions), chains[winner].energy,
                            std::nullopt, iterations, seed, {}};
  if (!domain.is_ring() && N >= domain.n() + 1) result.certificate = certify(result.best_energy, domain.n(), N);
  return result;
}

OptimizationResult anneal(int n, int N, const PotentialSpec& potential, const AnnealSchedule& schedule,
                          std::uint64_t seed) {
  return anneal(Domain::interval(n), N, potential, schedule, seed);
}

StabilityReport local_stability_test(const Configuration& config, const PeriodizedPotential& potential,
                                     Window window, int trials, std::uint64_t seed) {
  const Domain& domain = config.domain();
  if (!domain.is_ring() || domain.length() != potential.period()) {
    throw Error(ErrorKind::Domain, "local_stability_test: ring configuration with matching period required");
  }
  if (!(window.hi - window.lo >= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "local_stability_test: window length must be >= 1");
  }
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "local_stability_test: trials must be >= 1");

  const int L = potential.period();
  const Bounds1D box = bounds_of(domain);
  const std::vector<double> base(config.positions().begin(), config.positions().end());
  MoveSet moves;
  moves.region_lo = window.lo;
  moves.region_hi = window.hi;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (window.contains(base[i], L)) moves.movable.push_back(i);
  }

  StabilityReport report;
  report.trials = trials;
  report.window_particles = moves.movable.size();
  report.baseline = window_energy(config, potential, window);
  report.min_delta = std::numeric_limits<double>::infinity();
  if (moves.movable.empty()) {
    report.min_delta = 0.0;
    return report;
  }

  std::vector<double> worst;
  auto record = [&](const std::vector<double>& y) {
    const Configuration candidate = Configuration::from_unsorted(domain, y);
    const double delta = window_energy(candidate, potential, window) - report.baseline;
    if (delta < report.min_delta) {
      report.min_delta = delta;
      worst = y;
    }
  };
  const double width = std::min(window.hi - window.lo, static_cast<double>(L));

  const int count = static_cast<int>(moves.movable.size());
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    std::vector<double> y = base;
    const int k = uniform_int(rng, 1, std::min(3, count));
    std::vector<std::size_t> pool = moves.movable;
    for (int c = 0; c < k; ++c) {
      const int pick = uniform_int(rng, c, count - 1);
      std::swap(pool[static_cast<std::size_t>(c)], pool[static_cast<std::size_t>(pick)]);
      const std::size_t i = pool[static_cast<std::size_t>(c)];
      const double kind = uniform01(rng);
      double target;
      if (kind < 0.4) {
        target = window.lo + width * uniform01(rng);
      } else if (kind < 0.7) {
        // local displacement, mirrored if it would leave the window
        const double step = uniform(rng, -0.3, 0.3);
        target = box.place(y[i] + step);
        if (!window.contains(target, L)) target = box.place(y[i] - step);
      } else {
        target = y[moves.movable[static_cast<std::size_t>(uniform_int(rng, 0, count - 1))]];
      }
      target = box.place(target);
      if (window.contains(target, L)) y[i] = target;
    }
    record(y);
  }

  // Window-restricted anneal from the input configuration.
  AnnealSchedule schedule;
  schedule.restarts = 2;
  schedule.final_temperature = 1e-3;
  for (int r = 0; r < schedule.restarts; ++r) {
    const std::uint64_t chain_seed = derive_seed(seed, 1'000'000 + static_cast<std::uint64_t>(r));
    ChainResult chain = anneal_chain(base, domain, potential.base(), schedule, moves, chain_seed);
    polish_subset(chain.positions, domain, potential.base(), moves, 30);
    record(chain.positions);
  }

  if (report.min_delta < -1e-9) report.violating = Configuration::from_unsorted(domain, worst);
  return report;
}

DegenerateMember classify_degenerate(const Configuration& config, int m, double energy, double tolerance) {
  DegenerateMember member{config, energy, true, false};
  const auto x = config.positions();
  const std::size_t N = x.size();
  for (std::size_t i = 0; i + static_cast<std::size_t>(m) + 1 < N; ++i) {
    if (x[i + static_cast<std::size_t>(m) + 1] - x[i] < 1.0 - tolerance) member.spacing_ok = false;
  }

  // Strip m particles from each integer site; the rest must be mutually >= 1 apart.
  std::vector<double> rest(x.begin(), x.end());
  const int sites = config.domain().sites();
  for (int s = 0; s < sites; ++s) {
    int removed = 0;
    for (auto it = rest.begin(); it != rest.end() && removed < m;) {
      if (std::abs(*it - s) <= tolerance) {
        it = rest.erase(it);
        ++removed;
      } else {
        ++it;
      }
    }
    if (removed < m) return member;
  }
  member.background_form = true;
  for (std::size_t i = 1; i < rest.size(); ++i) {
    if (rest[i] - rest[i - 1] < 1.0 - tolerance) member.background_form = false;
  }
  return member;
}

UniquenessReport uniqueness_probe(int n, int m, int r, const PotentialSpec& potential, int trials,
                                  double epsilon, std::uint64_t seed, std::size_t max_examples) {
  if (r < 0 || r > n) throw Error(ErrorKind::InvalidArgument, "uniqueness_probe: need 0 <= r <= n");
  if (!(epsilon > 0.0 && epsilon <= 0.4)) {
    throw Error(ErrorKind::InvalidArgument, "uniqueness_probe: epsilon must lie in (0, 0.4]");
  }
  const Domain domain = Domain::interval(n);
  const std::int64_t N = static_cast<std::int64_t>(m) * (n + 1) + r;
  UniquenessReport report;
  report.ground_energy = ground_energy(n, N);
  report.trials = trials;

  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    std::vector<int> sites(static_cast<std::size_t>(n) + 1);
    for (int s = 0; s <= n; ++s) sites[static_cast<std::size_t>(s)] = s;
    for (int c = 0; c < r; ++c) std::swap(sites[static_cast<std::size_t>(c)], sites[static_cast<std::size_t>(uniform_int(rng, c, n))]);
    std::vector<int> tall(sites.begin(), sites.begin() + r);
    std::sort(tall.begin(), tall.end());

    const Configuration tower = build_tower_config(n, m, tall);
    std::vector<double> x(tower.positions().begin(), tower.positions().end());
    bool any = false;
    for (double& v : x) {
      if (uniform01(rng) < 0.5) {
        any = true;
        const double magnitude = uniform(rng, epsilon, 0.4);
        v = std::clamp(v + (uniform01(rng) < 0.5 ? -magnitude : magnitude), 0.0, static_cast<double>(n));
      }
    }
    if (!any) {
      double& v = x[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(x.size()) - 1))];
      v = std::clamp(v + uniform(rng, epsilon, 0.4), 0.0, static_cast<double>(n));
    }
    const double energy = polish(x, domain, potential);
    if (energy > report.ground_energy + 1e-9) continue;

    const Configuration found = Configuration::from_unsorted(domain, x);
    const auto profile = profile_of(found);
    const bool tower_shape = profile && std::all_of(profile->heights.begin(), profile->heights.end(),
                                                    [m](int h) { return h == m || h == m + 1; });
    if (tower_shape) continue;
    ++report.distinct_found;
    if (report.examples.size() < max_examples) {
      report.examples.push_back(classify_degenerate(found, m, energy));
    }
  }
  return report;
}

}  // namespace tll
