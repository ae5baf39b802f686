#include "latticeopt/lattice.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rand_util.hpp"
#include "text_util.hpp"

namespace latticeopt {

namespace {

constexpr double kGridTol = 1e-9;

bool on_axis(double v, const detail::GridAxis& axis) {
  if (v < axis.value(axis.lo) - kGridTol) return false;
  if (v > axis.value(axis.hi) + kGridTol) return false;
  double k = std::floor(v / axis.step + 0.5);
  return std::abs(v - k * axis.step) <= kGridTol;
}

// Flat slot f -> (is_gad, array index). Types 8-11 interleave enr and gads.
std::pair<bool, int> flat_slot(int f) {
  if (f < 7) return {false, f};
  int j = f - 7;
  int pair = j / 2;
  if (j % 2 == 0) return {false, 7 + pair};
  return {true, pair};
}

}  // namespace

void ParameterGrid::validate() const {
  if (!(enr_min < enr_max) || !(gad_min < gad_max))
    throw ConfigError("parameter grid: min must be below max");
  if (!(enr_step > 0.0) || !(gad_step > 0.0))
    throw ConfigError("parameter grid: steps must be positive");
}

std::array<double, kSolutionSize> SolutionVector::flat() const {
  std::array<double, kSolutionSize> out{};
  for (int f = 0; f < kSolutionSize; ++f) {
    auto [is_gad, idx] = flat_slot(f);
    out[f] = is_gad ? gad[idx] : enr[idx];
  }
  return out;
}

SolutionVector SolutionVector::from_flat(std::span<const double, kSolutionSize> values) {
  SolutionVector sol;
  for (int f = 0; f < kSolutionSize; ++f) {
    auto [is_gad, idx] = flat_slot(f);
    (is_gad ? sol.gad[idx] : sol.enr[idx]) = values[f];
  }
  return sol;
}

bool satisfies_grid(const SolutionVector& sol, const ParameterGrid& grid) {
  const auto ea = detail::enr_axis(grid);
  const auto ga = detail::gad_axis(grid);
  for (double e : sol.enr) {
    if (!std::isfinite(e) || !on_axis(e, ea)) return false;
  }
  for (double g : sol.gad) {
    if (!std::isfinite(g) || !on_axis(g, ga)) return false;
  }
  return true;
}

std::string serialize(const SolutionVector& sol) {
  std::string out;
  const auto values = sol.flat();
  for (int f = 0; f < kSolutionSize; ++f) {
    if (f > 0) out += ',';
    out += detail::format_fixed(values[f], 1);
  }
  return out;
}

std::vector<double> parse_values(std::string_view body) {
  std::vector<double> out;
  for (auto token : detail::split(body, ',')) {
    auto v = detail::try_parse_double(token);
    if (!v || !std::isfinite(*v)) return {};
    out.push_back(*v);
  }
  return out;
}

SolutionVector snap_to_grid(std::span<const double, kSolutionSize> raw,
                            const ParameterGrid& grid) {
  const auto ea = detail::enr_axis(grid);
  const auto ga = detail::gad_axis(grid);
  std::array<double, kSolutionSize> snapped{};
  for (int f = 0; f < kSolutionSize; ++f) {
    if (!std::isfinite(raw[f]))
      throw InvalidSolution("snap_to_grid: non-finite value in slot " + std::to_string(f));
    const auto& axis = flat_slot(f).first ? ga : ea;
    snapped[f] = axis.value(axis.snap_index(raw[f]));
  }
  return SolutionVector::from_flat(snapped);
}

LatticeMap LatticeMap::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw LatticeMapError("lattice map: no rows");
  const int n = static_cast<int>(rows.size());
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != i + 1)
      throw LatticeMapError("lattice map: row " + std::to_string(i + 1) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(i + 1));
    for (int t : rows[i]) {
      if (t < 0 || t > 11)
        throw LatticeMapError("lattice map: fuel type " + std::to_string(t) +
                              " out of range 0-11");
    }
  }

  // Brute-force mirror expansion drives every derived property.
  std::vector<std::vector<int>> full(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      full[i][j] = rows[i][j];
      full[j][i] = rows[i][j];
    }

  auto water_at = [&](int r, int c) {
    return r >= 0 && r < n && c >= 0 && c < n && full[r][c] == 0;
  };

  LatticeMap map;
  map.rows_ = n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      LatticeCell cell;
      cell.row = i + 1;
      cell.col = j + 1;
      cell.fuel_type = rows[i][j];
      cell.multiplicity = (i == j) ? 1 : 2;
      cell.is_edge = (cell.row == n) || (cell.col == 1);
      cell.is_water_adjacent = water_at(i - 1, j) || water_at(i + 1, j) ||
                               water_at(i, j - 1) || water_at(i, j + 1);
      map.cells_.push_back(cell);
      map.total_pins_ += cell.multiplicity;
      if (!cell.is_water()) map.fueled_pins_ += cell.multiplicity;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) map.type_counts_[full[i][j]] += 1;
  return map;
}

LatticeMap LatticeMap::parse(std::istream& in) {
  std::vector<std::vector<int>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    std::vector<int> row;
    std::istringstream ls{line};
    std::string token;
    while (ls >> token) {
      auto v = detail::try_parse_double(token);
      if (!v || *v != std::floor(*v))
        throw LatticeMapError("lattice map: non-integer token '" + token + "'");
      row.push_back(static_cast<int>(*v));
    }
    rows.push_back(std::move(row));
  }
  return from_rows(rows);
}

LatticeMap LatticeMap::load_file(const std::string& path) {
  std::ifstream in{path};
  if (!in) throw IoError("cannot open lattice map file: " + path);
  return parse(in);
}

const LatticeMap& LatticeMap::ge14() {
  static const LatticeMap map = from_rows({
      {1},
      {2, 7},
      {3, 8, 5},
      {7, 4, 9, 6},
      {4, 10, 5, 11, 5},
      {4, 5, 11, 0, 0, 5},
      {7, 5, 6, 0, 0, 5, 10},
      {7, 5, 5, 5, 5, 5, 5, 5},
      {3, 6, 10, 5, 5, 5, 5, 5, 10},
      {2, 7, 6, 6, 6, 6, 6, 6, 4, 7},
  });
  return map;
}

std::string LatticeMap::render() const {
  std::string out;
  int idx = 0;
  for (int i = 1; i <= rows_; ++i) {
    std::string line;
    for (int j = 1; j <= i; ++j, ++idx) {
      if (j > 1) line += ' ';
      char buf[8];
      std::snprintf(buf, sizeof(buf), "%2d", cells_[idx].fuel_type);
      line += buf;
    }
    out.append(detail::trim(line));
    out += '\n';
  }
  return out;
}

std::vector<std::vector<FullCell>> expand_full_lattice(const LatticeMap& map,
                                                       const SolutionVector& sol) {
  const int n = map.rows();
  std::vector<std::vector<FullCell>> full(n, std::vector<FullCell>(n));
  for (const auto& cell : map.cells()) {
    FullCell fc;
    fc.fuel_type = cell.fuel_type;
    fc.water = cell.is_water();
    if (!fc.water) {
      fc.enr = sol.enr[cell.fuel_type - 1];
      fc.gad = cell.fuel_type >= 8 ? sol.gad[cell.fuel_type - 8] : 0.0;
    }
    full[cell.row - 1][cell.col - 1] = fc;
    full[cell.col - 1][cell.row - 1] = fc;
  }
  return full;
}

}  // namespace latticeopt
