#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tll {

enum class DomainKind { Interval, Ring };

/// Interval(n) spans [0, n]; Ring(L) spans [0, L) with L = n + 1.
class Domain {
public:
  static Domain interval(int n);
  static Domain ring(int length);

  DomainKind kind() const noexcept { return kind_; }
  bool is_ring() const noexcept { return kind_ == DomainKind::Ring; }
  /// Number of unit cells minus one: the n of [0, n], or L - 1 for a ring.
  int n() const noexcept { return n_; }
  /// Span length: n for an interval, L for a ring.
  int length() const noexcept { return is_ring() ? n_ + 1 : n_; }
  int sites() const noexcept { return n_ + 1; }
  bool contains(double x) const noexcept;

  friend bool operator==(const Domain&, const Domain&) = default;

private:
  Domain(DomainKind kind, int n) : kind_(kind), n_(n) {}
  DomainKind kind_;
  int n_;
};

/// Sorted multiset of particle coordinates on a domain. Ring coordinates are
/// stored canonically in [0, L).
class Configuration {
public:
  /// Throws a contract error if positions are unsorted, empty or outside the domain.
  Configuration(Domain domain, std::vector<double> positions);

  /// Sorts (and, on rings, wraps into [0, L)) before validating.
  static Configuration from_unsorted(Domain domain, std::vector<double> positions);

  const Domain& domain() const noexcept { return domain_; }
  std::span<const double> positions() const noexcept { return positions_; }
  std::size_t size() const noexcept { return positions_.size(); }

  friend bool operator==(const Configuration&, const Configuration&) = default;

private:
  Domain domain_;
  std::vector<double> positions_;
};

/// Occupancy m_i of each integer site.
struct TowerProfile {
  std::vector<int> heights;

  int total() const;
  int min_height() const;
  int max_height() const;
  /// All heights >= 1 and max - min <= 1.
  bool is_ground_state_shape() const;

  friend bool operator==(const TowerProfile&, const TowerProfile&) = default;
};

struct Decomposition {
  int m;
  int r;
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// N = m(n + 1) + r with m >= 1 and 0 <= r <= n. Throws DensityBelowOne if N < n + 1.
Decomposition decompose_N(std::int64_t N, int n);

/// m particles at every integer site of [0, n], m + 1 at each tall site.
Configuration build_tower_config(int n, int m, std::span<const int> tall_sites);

/// Particles stacked at integer sites per `profile`, on Interval(size - 1) or Ring(size).
Configuration config_from_profile(const TowerProfile& profile, DomainKind kind);

/// Occupancy profile if every particle lies within `snap_tolerance` of an integer site.
std::optional<TowerProfile> profile_of(const Configuration& config, double snap_tolerance = 1e-6);

double density_of(const TowerProfile& profile);

/// m particles per unit cell at the given offsets on Ring(n + 1). With
/// `extra_spread`, superposes a seeded family whose ring gaps are all >= 1.
Configuration sample_overlap_degenerate(int n, int m, std::span<const double> offsets,
                                        std::uint64_t seed, bool extra_spread = false);

}  // namespace tll
