#include "tll/configuration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tll/error.hpp"
#include "tll/random.hpp"

namespace tll {

Domain Domain::interval(int n) {
  if (n < 0) throw Error(ErrorKind::Domain, "interval: n must be nonnegative");
  return Domain(DomainKind::Interval, n);
}

Domain Domain::ring(int length) {
  if (length < 2) throw Error(ErrorKind::Domain, "ring: length must be >= 2");
  return Domain(DomainKind::Ring, length - 1);
}

bool Domain::contains(double x) const noexcept {
  if (!std::isfinite(x) || x < 0.0) return false;
  return is_ring() ? x < static_cast<double>(length()) : x <= static_cast<double>(n_);
}

Configuration::Configuration(Domain domain, std::vector<double> positions)
    : domain_(domain), positions_(std::move(positions)) {
  if (positions_.empty()) throw Error(ErrorKind::Contract, "configuration: needs at least one particle");
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (!domain_.contains(positions_[i])) {
      throw Error(ErrorKind::Contract,
                  "configuration: position " + std::to_string(positions_[i]) + " at index " +
                      std::to_string(i) + " lies outside the domain");
    }
    if (i > 0 && positions_[i] < positions_[i - 1]) {
      throw Error(ErrorKind::Contract,
                  "configuration: positions not sorted at index " + std::to_string(i));
    }
  }
}

Configuration Configuration::from_unsorted(Domain domain, std::vector<double> positions) {
  if (domain.is_ring()) {
    const double L = domain.length();
    for (double& x : positions) {
      x = std::fmod(x, L);
      if (x < 0.0) x += L;
      if (x >= L) x = 0.0;
    }
  }
  std::sort(positions.begin(), positions.end());
  return Configuration(domain, std::move(positions));
}

int TowerProfile::total() const { return std::accumulate(heights.begin(), heights.end(), 0); }

int TowerProfile::min_height() const {
  return heights.empty() ? 0 : *std::min_element(heights.begin(), heights.end());
}

int TowerProfile::max_height() const {
  return heights.empty() ? 0 : *std::max_element(heights.begin(), heights.end());
}

bool TowerProfile::is_ground_state_shape() const {
  return !heights.empty() && min_height() >= 1 && max_height() - min_height() <= 1;
}

Decomposition decompose_N(std::int64_t N, int n) {
  if (n < 0) throw Error(ErrorKind::Domain, "decompose_N: n must be nonnegative");
  const std::int64_t sites = static_cast<std::int64_t>(n) + 1;
  if (N < sites) {
    throw Error(ErrorKind::DensityBelowOne,
                "N = " + std::to_string(N) + " < n + 1 = " + std::to_string(sites) +
                    ": density below one, tower-lattice results do not apply");
  }
  return {static_cast<int>(N / sites), static_cast<int>(N % sites)};
}

Configuration build_tower_config(int n, int m, std::span<const int> tall_sites) {
  if (n < 0) throw Error(ErrorKind::Domain, "build_tower_config: n must be nonnegative");
  if (m < 1) throw Error(ErrorKind::Domain, "build_tower_config: m must be positive");
  TowerProfile profile{std::vector<int>(static_cast<std::size_t>(n) + 1, m)};
  for (std::size_t i = 0; i < tall_sites.size(); ++i) {
    const int site = tall_sites[i];
    if (site < 0 || site > n) {
      throw Error(ErrorKind::Domain, "build_tower_config: tall site " + std::to_string(site) +
                                         " outside [0, " + std::to_string(n) + "]");
    }
    if (i > 0 && site <= tall_sites[i - 1]) {
      throw Error(ErrorKind::Domain, "build_tower_config: tall sites must be strictly increasing");
    }
    profile.heights[static_cast<std::size_t>(site)] = m + 1;
  }
  return config_from_profile(profile, DomainKind::Interval);
}

Configuration config_from_profile(const TowerProfile& profile, DomainKind kind) {
  if (profile.heights.empty()) throw Error(ErrorKind::Domain, "profile: no sites");
  std::vector<double> positions;
  positions.reserve(static_cast<std::size_t>(std::max(profile.total(), 0)));
  for (std::size_t site = 0; site < profile.heights.size(); ++site) {
    if (profile.heights[site] < 0) throw Error(ErrorKind::Domain, "profile: negative height");
    positions.insert(positions.end(), static_cast<std::size_t>(profile.heights[site]),
                     static_cast<double>(site));
  }
  const int sites = static_cast<int>(profile.heights.size());
  const Domain domain = kind == DomainKind::Ring ? Domain::ring(sites) : Domain::interval(sites - 1);
  return Configuration(domain, std::move(positions));
}

std::optional<TowerProfile> profile_of(const Configuration& config, double snap_tolerance) {
  const Domain& d = config.domain();
  TowerProfile profile{std::vector<int>(static_cast<std::size_t>(d.sites()), 0)};
  for (double x : config.positions()) {
    const double site = std::round(x);
    if (std::abs(x - site) > snap_tolerance) return std::nullopt;
    auto index = static_cast<long>(site);
    if (d.is_ring() && index == d.length()) index = 0;
    if (index < 0 || index >= d.sites()) return std::nullopt;
    ++profile.heights[static_cast<std::size_t>(index)];
  }
  return profile;
}

double density_of(const TowerProfile& profile) {
  if (profile.heights.empty()) throw Error(ErrorKind::Domain, "density_of: empty profile");
  return static_cast<double>(profile.total()) / static_cast<double>(profile.heights.size());
}

Configuration sample_overlap_degenerate(int n, int m, std::span<const double> offsets,
                                        std::uint64_t seed, bool extra_spread) {
  if (n < 1) throw Error(ErrorKind::Domain, "sample_overlap_degenerate: ring needs n >= 1");
  if (m < 1) throw Error(ErrorKind::Domain, "sample_overlap_degenerate: m must be positive");
  if (offsets.size() != static_cast<std::size_t>(m)) {
    throw Error(ErrorKind::Domain, "sample_overlap_degenerate: expected exactly m offsets");
  }
  for (std::size_t j = 0; j < offsets.size(); ++j) {
    if (!(offsets[j] >= 0.0 && offsets[j] < 1.0)) {
      throw Error(ErrorKind::Domain, "sample_overlap_degenerate: offset outside [0, 1)");
    }
    if (j > 0 && offsets[j] < offsets[j - 1]) {
      throw Error(ErrorKind::Domain, "sample_overlap_degenerate: offsets must be sorted");
    }
  }
  const int L = n + 1;
  std::vector<double> positions;
  for (int cell = 0; cell < L; ++cell) {
    for (double x : offsets) positions.push_back(cell + x);
  }
  if (extra_spread) {
    // k points on the ring with every gap (including the wraparound one) >= 1.
    Rng rng(seed);
    const int k = uniform_int(rng, 1, L);
    std::vector<double> weights(static_cast<std::size_t>(k));
    for (double& w : weights) w = -std::log1p(-uniform01(rng));
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    const double slack = static_cast<double>(L - k);
    double y = uniform(rng, 0.0, L);
    for (int i = 0; i < k; ++i) {
      positions.push_back(y);
      y += 1.0 + (sum > 0.0 ? slack * weights[static_cast<std::size_t>(i)] / sum : 0.0);
    }
  }
  return Configuration::from_unsorted(Domain::ring(L), std::move(positions));
}

}  // namespace tll
