#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "latticeopt/errors.hpp"

namespace latticeopt {

inline constexpr int kEnrichmentCount = 11;  // fuel types 1-11
inline constexpr int kGadoliniaCount = 4;    // fuel types 8-11
inline constexpr int kSolutionSize = 15;     // serialized parameter count

/// Discrete design grid for enrichment and gadolinia values.
struct ParameterGrid {
  double enr_min = 0.1;
  double enr_max = 5.0;
  double enr_step = 0.1;
  double gad_min = 0.0;
  double gad_max = 10.0;
  double gad_step = 1.0;

  /// Throws ConfigError when min >= max or a step is non-positive.
  void validate() const;
};

/// The 15-parameter design vector: 11 pin enrichments (wt% U-235) plus the
/// gadolinia content (wt%) of the four burnable-poison pin types 8-11.
///
/// Serialized order is FUE1_enr..FUE7_enr, then (enr, gads) interleaved for
/// types 8-11.
struct SolutionVector {
  std::array<double, kEnrichmentCount> enr{};
  std::array<double, kGadoliniaCount> gad{};

  std::array<double, kSolutionSize> flat() const;
  static SolutionVector from_flat(std::span<const double, kSolutionSize> values);

  bool operator==(const SolutionVector&) const = default;
};

/// True when every value sits inside its bounds and on its grid step
/// (within 1e-9).
bool satisfies_grid(const SolutionVector& sol, const ParameterGrid& grid);

/// Comma-joined 15-value body, one decimal place per value, no tags.
std::string serialize(const SolutionVector& sol);

/// Splits a comma-separated body into numbers. Returns an empty vector when
/// any token is non-numeric or non-finite; otherwise one entry per token.
std::vector<double> parse_values(std::string_view body);

/// Clamps each of the 15 raw values to its range and rounds to the nearest
/// grid step (ties round up). Throws InvalidSolution on non-finite input.
SolutionVector snap_to_grid(std::span<const double, kSolutionSize> raw,
                            const ParameterGrid& grid);

/// One half-lattice entry plus the geometry derived from the full map.
struct LatticeCell {
  int row = 0;   // 1-based, row i has columns 1..i
  int col = 0;
  int fuel_type = 0;  // 0 = water
  int multiplicity = 1;
  bool is_edge = false;
  bool is_water_adjacent = false;

  bool is_water() const { return fuel_type == 0; }
};

/// Half-symmetric lattice geometry: the lower-triangular map of an N x N
/// assembly with per-cell mirror multiplicity, edge and water-adjacency
/// flags derived by brute-force expansion of the full grid.
class LatticeMap {
 public:
  /// Builds from triangular rows (row i holds i entries, fuel types 0-11).
  /// Throws LatticeMapError on ragged or out-of-range input.
  static LatticeMap from_rows(const std::vector<std::vector<int>>& rows);

  /// Parses the text format: N lines, line i holding i whitespace-separated
  /// integers. Blank lines are ignored.
  static LatticeMap parse(std::istream& in);
  static LatticeMap load_file(const std::string& path);

  /// The built-in 10x10 GE-14 dominant-lattice map.
  static const LatticeMap& ge14();

  int rows() const { return rows_; }
  const std::vector<LatticeCell>& cells() const { return cells_; }

  /// Multiplicity totals over all / fueled / water cells.
  int total_pin_count() const { return total_pins_; }
  int fueled_pin_count() const { return fueled_pins_; }
  int water_pin_count() const { return total_pins_ - fueled_pins_; }

  /// Full-lattice count per fuel type (index = type, 0 = water).
  const std::array<int, 12>& full_type_counts() const { return type_counts_; }

  /// Renders the map in the two-column-aligned text layout (one line per
  /// row, numbers right-aligned to width 2, single-space separated).
  std::string render() const;

 private:
  LatticeMap() = default;

  int rows_ = 0;
  std::vector<LatticeCell> cells_;
  int total_pins_ = 0;
  int fueled_pins_ = 0;
  std::array<int, 12> type_counts_{};
};

/// One cell of the mirror-expanded full lattice.
struct FullCell {
  bool water = true;
  int fuel_type = 0;
  double enr = 0.0;
  double gad = 0.0;
};

/// Mirror-expands the half map with the solution's values; cell (i,j) with
/// j <= i takes the half-map value and (j,i) mirrors it. Gadolinia is zero
/// for types 1-7. Indices are [row-1][col-1].
std::vector<std::vector<FullCell>> expand_full_lattice(const LatticeMap& map,
                                                       const SolutionVector& sol);

/// Problem definition shared by the prompt builder and the engines.
struct Problem {
  ParameterGrid grid;
  LatticeMap map = LatticeMap::ge14();
};

}  // namespace latticeopt
