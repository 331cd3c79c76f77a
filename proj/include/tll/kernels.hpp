#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tll/potential.hpp"

// Pair-sum kernels. The naive kernels are the serial reference; the cell
// kernels are the OpenMP path used by default. Both sum in a fixed order, so
// results do not depend on the thread count.

namespace tll::kernels {

struct PairSum {
  double total = 0.0;
  std::int64_t nonzero = 0;
};

/// All unordered pairs, u(x_i - x_j). `period` = 0 means open interval,
/// otherwise minimal-image distances on a ring of that length.
PairSum pair_sum_naive(std::span<const double> positions, const PotentialSpec& spec, int period);

/// Unit-cell bucketing of sorted positions: only same and adjacent cells
/// interact. Per-cell partials are computed in parallel and reduced serially.
PairSum pair_sum_cells(std::span<const double> sorted_positions, const PotentialSpec& spec,
                       int cells, int period);

/// Interaction of particle `i` with all others (used for single-move deltas).
double particle_interaction(std::span<const double> positions, std::size_t i, double at,
                            const PotentialSpec& spec, int period);

}  // namespace tll::kernels
