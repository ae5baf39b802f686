#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "latticeopt/lattice.hpp"

namespace latticeopt::detail {

using Rng = std::mt19937_64;

/// Uniform integer in [0, n). Plain modulo keeps the stream layout
/// independent of the standard library's distribution internals.
inline std::uint64_t rand_below(Rng& rng, std::uint64_t n) {
  return rng() % n;
}

inline double rand_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool rand_chance(Rng& rng, double p) {
  return rand_unit(rng) < p;
}

/// Inclusive integer index range of a grid axis: values are k*step for
/// k in [lo, hi].
struct GridAxis {
  long lo = 0;
  long hi = 0;
  double step = 1.0;

  static GridAxis of(double min, double max, double step) {
    GridAxis a;
    a.step = step;
    a.lo = static_cast<long>(std::ceil(min / step - 1e-9));
    a.hi = static_cast<long>(std::floor(max / step + 1e-9));
    return a;
  }

  double value(long k) const { return static_cast<double>(k) * step; }
  long count() const { return hi - lo + 1; }

  long snap_index(double v) const {
    long k = static_cast<long>(std::floor(v / step + 0.5));  // ties round up
    if (k < lo) k = lo;
    if (k > hi) k = hi;
    return k;
  }

  double random_value(Rng& rng) const {
    return value(lo + static_cast<long>(rand_below(rng, static_cast<std::uint64_t>(count()))));
  }
};

inline GridAxis enr_axis(const ParameterGrid& g) {
  return GridAxis::of(g.enr_min, g.enr_max, g.enr_step);
}

inline GridAxis gad_axis(const ParameterGrid& g) {
  return GridAxis::of(g.gad_min, g.gad_max, g.gad_step);
}

/// Uniform random grid-valid solution.
inline SolutionVector random_solution(Rng& rng, const ParameterGrid& grid) {
  const GridAxis ea = enr_axis(grid);
  const GridAxis ga = gad_axis(grid);
  SolutionVector sol;
  for (auto& e : sol.enr) e = ea.random_value(rng);
  for (auto& g : sol.gad) g = ga.random_value(rng);
  return sol;
}

/// Moves a value one grid step up or down, reflecting at the bounds.
inline double step_reflected(const GridAxis& axis, double v, bool up) {
  long k = axis.snap_index(v) + (up ? 1 : -1);
  if (k > axis.hi) k = axis.hi - (k - axis.hi);
  if (k < axis.lo) k = axis.lo + (axis.lo - k);
  if (k < axis.lo) k = axis.lo;
  if (k > axis.hi) k = axis.hi;
  return axis.value(k);
}

/// Moves a value one grid step up or down, clamping at the bounds.
inline double step_clamped(const GridAxis& axis, double v, bool up) {
  long k = axis.snap_index(v) + (up ? 1 : -1);
  if (k > axis.hi) k = axis.hi;
  if (k < axis.lo) k = axis.lo;
  return axis.value(k);
}

}  // namespace latticeopt::detail
