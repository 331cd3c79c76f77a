#include "tll/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "tll/error.hpp"

namespace tll::kernels {
namespace {

inline double displacement(double a, double b, int period) {
  double d = a - b;
  if (period > 0) {
    const double L = period;
    d -= L * std::round(d / L);
  }
  return d;
}

inline void accumulate(PairSum& acc, double u) {
  acc.total += u;
  if (u != 0.0) ++acc.nonzero;
}

}  // namespace

PairSum pair_sum_naive(std::span<const double> positions, const PotentialSpec& spec, int period) {
  PairSum acc;
  const std::size_t n = positions.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      accumulate(acc, evaluate(spec, displacement(positions[i], positions[j], period)));
    }
  }
  return acc;
}

PairSum pair_sum_cells(std::span<const double> sorted_positions, const PotentialSpec& spec,
                       int cells, int period) {
  if (cells < 1) throw Error(ErrorKind::Domain, "pair_sum_cells: need at least one cell");
  // begin[c] .. begin[c + 1] indexes the particles with floor(x) == c.
  std::vector<std::size_t> begin(static_cast<std::size_t>(cells) + 1, 0);
  {
    std::size_t i = 0;
    for (int c = 0; c < cells; ++c) {
      begin[static_cast<std::size_t>(c)] = i;
      while (i < sorted_positions.size() &&
             (c + 1 == cells || sorted_positions[i] < static_cast<double>(c + 1))) {
        ++i;
      }
    }
    begin[static_cast<std::size_t>(cells)] = sorted_positions.size();
  }

  std::vector<PairSum> partial(static_cast<std::size_t>(cells));
#pragma omp parallel for schedule(static)
  for (int c = 0; c < cells; ++c) {
    PairSum acc;
    const std::size_t lo = begin[static_cast<std::size_t>(c)];
    const std::size_t hi = begin[static_cast<std::size_t>(c) + 1];
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = i + 1; j < hi; ++j) {
        accumulate(acc, evaluate(spec, displacement(sorted_positions[i], sorted_positions[j], period)));
      }
    }
    int next = c + 1;
    if (period > 0) {
      next %= cells;
      // On a two-cell ring, 1 -> 0 is the same neighbour pair as 0 -> 1.
      if (next == c || (cells == 2 && c == 1)) next = -1;
    } else if (next >= cells) {
      next = -1;
    }
    if (next >= 0) {
      const std::size_t nlo = begin[static_cast<std::size_t>(next)];
      const std::size_t nhi = begin[static_cast<std::size_t>(next) + 1];
      for (std::size_t i = lo; i < hi; ++i) {
        for (std::size_t j = nlo; j < nhi; ++j) {
          accumulate(acc, evaluate(spec, displacement(sorted_positions[i], sorted_positions[j], period)));
        }
      }
    }
    partial[static_cast<std::size_t>(c)] = acc;
  }

  PairSum total;
  for (const PairSum& p : partial) {
    total.total += p.total;
    total.nonzero += p.nonzero;
  }
  return total;
}

double particle_interaction(std::span<const double> positions, std::size_t i, double at,
                            const PotentialSpec& spec, int period) {
  double sum = 0.0;
  for (std::size_t j = 0; j < positions.size(); ++j) {
    if (j != i) sum += evaluate(spec, displacement(at, positions[j], period));
  }
  return sum;
}

}  // namespace tll::kernels
