#include "mfg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

namespace mfg::oracle {

namespace {

// Cells per reduction block. Fixed, so partial sums and their pairwise merge
// order never depend on the thread count.
constexpr std::ptrdiff_t kBlockCells = 1 << 15;

void check_grid(const GridSpec& grid) {
  if (!(grid.step > 0.0) || !std::isfinite(grid.step))
    fail(Errc::InvalidValue, "grid step must be positive");
  if (!(grid.padding >= 1.0))
    fail(Errc::InvalidValue, "grid padding must be at least 1");
}

double max_root(const LevelVector& C) {
  double top = 0.0;
  for (double c : C) top = std::max(top, c);
  return std::sqrt(std::max(top, 0.0));
}

// Atoms whose profile can be positive somewhere in [lo, hi].
std::pair<std::size_t, std::size_t> atom_window(const DiscreteMeasure& m, double lo,
                                                double hi, double reach) {
  const auto& x = m.positions;
  const auto first = std::lower_bound(x.begin(), x.end(), lo - reach);
  const auto last = std::upper_bound(x.begin(), x.end(), hi + reach);
  return {static_cast<std::size_t>(first - x.begin()),
          static_cast<std::size_t>(last - x.begin())};
}

// In-place pairwise merge of per-block rows, always in the same order.
void merge_blocks(std::vector<double>& rows, std::ptrdiff_t blocks, std::size_t width) {
  for (std::ptrdiff_t stride = 1; stride < blocks; stride *= 2)
    for (std::ptrdiff_t b = 0; b + stride < blocks; b += 2 * stride) {
      double* dst = rows.data() + static_cast<std::size_t>(b) * width;
      const double* src = rows.data() + static_cast<std::size_t>(b + stride) * width;
      for (std::size_t j = 0; j < width; ++j) dst[j] += src[j];
    }
}

}  // namespace

GridExtent grid_extent(const LevelVector& C, const DiscreteMeasure& m,
                       const GridSpec& grid) {
  if (C.size() != m.size()) fail(Errc::LengthMismatch, "grid_extent arguments");
  check_grid(grid);
  const double reach = max_root(C);
  return {m.positions.front() - reach - grid.padding,
          m.positions.back() + reach + grid.padding};
}

std::vector<double> grid_masses(const LevelVector& C, const DiscreteMeasure& m,
                                const GridSpec& grid) {
  const GridExtent ext = grid_extent(C, m, grid);
  const double h = grid.step;
  const std::size_t n = m.size();
  const double reach = max_root(C);
  const auto cells =
      static_cast<std::ptrdiff_t>(std::ceil((ext.hi - ext.lo) / h));
  const std::ptrdiff_t blocks = (cells + kBlockCells - 1) / kBlockCells;

  std::vector<double> partial(static_cast<std::size_t>(blocks) * n, 0.0);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::ptrdiff_t begin = b * kBlockCells;
    const std::ptrdiff_t end = std::min(cells, begin + kBlockCells);
    const auto [w0, w1] = atom_window(m, ext.lo + static_cast<double>(begin) * h,
                                      ext.lo + static_cast<double>(end) * h, reach);
    double* acc = partial.data() + static_cast<std::size_t>(b) * n;
    for (std::ptrdiff_t i = begin; i < end; ++i) {
      const double y = ext.lo + (static_cast<double>(i) + 0.5) * h;
      double best = 0.0;
      std::size_t winner = n;
      for (std::size_t j = w0; j < w1; ++j) {
        const double d = y - m.positions[j];
        const double v = C[j] - d * d;
        if (v > best) {
          best = v;
          winner = j;
        }
      }
      if (winner < n) acc[winner] += best;
    }
  }

  merge_blocks(partial, blocks, n);
  std::vector<double> masses(n);
  for (std::size_t j = 0; j < n; ++j) masses[j] = partial[j] * h;
  return masses;
}

std::vector<double> grid_masses_serial(const LevelVector& C,
                                       const DiscreteMeasure& m,
                                       const GridSpec& grid) {
  const GridExtent ext = grid_extent(C, m, grid);
  const double h = grid.step;
  const std::size_t n = m.size();
  const auto cells =
      static_cast<std::ptrdiff_t>(std::ceil((ext.hi - ext.lo) / h));

  std::vector<double> masses(n, 0.0);
  for (std::ptrdiff_t i = 0; i < cells; ++i) {
    const double y = ext.lo + (static_cast<double>(i) + 0.5) * h;
    double best = 0.0;
    std::size_t winner = n;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = y - m.positions[j];
      const double v = C[j] - d * d;
      if (v > best) {
        best = v;
        winner = j;
      }
    }
    if (winner < n) masses[winner] += h * best;
  }
  return masses;
}

std::vector<std::vector<double>> finite_difference_jacobian(const LevelVector& C,
                                                            const DiscreteMeasure& m,
                                                            double eps) {
  if (C.size() != m.size()) fail(Errc::LengthMismatch, "finite difference arguments");
  if (!(eps > 0.0)) fail(Errc::InvalidValue, "finite difference step must be positive");
  const std::size_t n = m.size();
  std::vector<std::vector<double>> J(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    LevelVector up = C, down = C;
    up[i] += eps;
    down[i] -= eps;
    const std::vector<double> mu = mass_map(up, m);
    const std::vector<double> md = mass_map(down, m);
    for (std::size_t j = 0; j < n; ++j) J[j][i] = (mu[j] - md[j]) / (2.0 * eps);
  }
  return J;
}

namespace {

struct AtomScan {
  double best = std::numeric_limits<double>::infinity();
  std::ptrdiff_t best_index = -1;
  double inside_excess = 0.0;  // max of cost - claimed over the bubble
  double outside_gap = 0.0;    // max of claimed - cost outside the bubble
};

void fold(AtomScan& into, const AtomScan& next) {
  if (next.best < into.best) {
    into.best = next.best;
    into.best_index = next.best_index;
  }
  into.inside_excess = std::max(into.inside_excess, next.inside_excess);
  into.outside_gap = std::max(into.outside_gap, next.outside_gap);
}

NashReport assemble_nash(const LevelVector& C, const std::vector<AtomScan>& scans,
                         double tolerance) {
  NashReport report;
  report.tolerance = tolerance;
  report.all_ok = true;
  report.worst_violation = 0.0;
  report.atoms.resize(scans.size());
  for (std::size_t j = 0; j < scans.size(); ++j) {
    NashAtomReport& atom = report.atoms[j];
    atom.best_value = scans[j].best;
    atom.claimed_value = C[j];
    const double drift = std::fabs(atom.best_value - atom.claimed_value);
    atom.best_matches = drift <= tolerance;
    atom.argmin_set_ok =
        scans[j].inside_excess <= tolerance && scans[j].outside_gap <= tolerance;
    atom.worst_violation =
        std::max({drift, scans[j].inside_excess, scans[j].outside_gap});
    report.all_ok = report.all_ok && atom.best_matches && atom.argmin_set_ok;
    report.worst_violation = std::max(report.worst_violation, atom.worst_violation);
  }
  return report;
}

}  // namespace

NashReport nash_check(const LevelVector& C, const DiscreteMeasure& m,
                      const GridSpec& grid) {
  if (!in_feasible_set(C, m))
    fail(Errc::NotInFeasibleSet, "equilibrium audit needs a feasible level vector");
  const GridExtent ext = grid_extent(C, m, grid);
  const double h = grid.step;
  const std::size_t n = m.size();
  const double reach = max_root(C);
  const auto points = static_cast<std::ptrdiff_t>(
                          std::ceil((ext.hi - ext.lo) / h)) +
                      1;
  const std::ptrdiff_t blocks = (points + kBlockCells - 1) / kBlockCells;

  std::vector<double> env(static_cast<std::size_t>(points));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::ptrdiff_t begin = b * kBlockCells;
    const std::ptrdiff_t end = std::min(points, begin + kBlockCells);
    const auto [w0, w1] = atom_window(m, ext.lo + static_cast<double>(begin) * h,
                                      ext.lo + static_cast<double>(end) * h, reach);
    for (std::ptrdiff_t i = begin; i < end; ++i) {
      const double y = ext.lo + static_cast<double>(i) * h;
      double best = 0.0;
      for (std::size_t j = w0; j < w1; ++j) {
        const double d = y - m.positions[j];
        best = std::max(best, C[j] - d * d);
      }
      env[static_cast<std::size_t>(i)] = best;
    }
  }

  const BubbleGeometry geo = bubble_endpoints(C, m);
  const double tolerance = 2.0 * h * (ext.hi - ext.lo);

  std::vector<AtomScan> scans(n);
  std::vector<AtomScan> block_scans(static_cast<std::size_t>(blocks));
  for (std::size_t j = 0; j < n; ++j) {
    const double xj = m.positions[j];
    const double lo_j = geo[j].alpha;
    const double hi_j = geo[j].beta;
    const double claimed = C[j];

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
      const std::ptrdiff_t begin = b * kBlockCells;
      const std::ptrdiff_t end = std::min(points, begin + kBlockCells);
      AtomScan scan;
      for (std::ptrdiff_t i = begin; i < end; ++i) {
        const double y = ext.lo + static_cast<double>(i) * h;
        const double cost = (xj - y) * (xj - y) + env[static_cast<std::size_t>(i)];
        if (cost < scan.best) {
          scan.best = cost;
          scan.best_index = i;
        }
        if (y >= lo_j && y <= hi_j)
          scan.inside_excess = std::max(scan.inside_excess, cost - claimed);
        else
          scan.outside_gap = std::max(scan.outside_gap, claimed - cost);
      }
      block_scans[static_cast<std::size_t>(b)] = scan;
    }

    for (const AtomScan& s : block_scans) fold(scans[j], s);
  }

  return assemble_nash(C, scans, tolerance);
}

NashReport nash_check_serial(const LevelVector& C, const DiscreteMeasure& m,
                             const GridSpec& grid) {
  if (!in_feasible_set(C, m))
    fail(Errc::NotInFeasibleSet, "equilibrium audit needs a feasible level vector");
  const GridExtent ext = grid_extent(C, m, grid);
  const double h = grid.step;
  const std::size_t n = m.size();
  const auto points = static_cast<std::ptrdiff_t>(
                          std::ceil((ext.hi - ext.lo) / h)) +
                      1;

  const EquilibriumDensity density = make_density(m, C);
  const double tolerance = 2.0 * h * (ext.hi - ext.lo);

  std::vector<AtomScan> scans(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double xj = m.positions[j];
    AtomScan scan;
    for (std::ptrdiff_t i = 0; i < points; ++i) {
      const double y = ext.lo + static_cast<double>(i) * h;
      const double cost = (xj - y) * (xj - y) + density.value(y);
      if (cost < scan.best) {
        scan.best = cost;
        scan.best_index = i;
      }
      if (y >= density.geometry[j].alpha && y <= density.geometry[j].beta)
        scan.inside_excess = std::max(scan.inside_excess, cost - C[j]);
      else
        scan.outside_gap = std::max(scan.outside_gap, C[j] - cost);
    }
    scans[j] = scan;
  }

  return assemble_nash(C, scans, tolerance);
}

double mass_residual(const LevelVector& C, const DiscreteMeasure& m) {
  return linf_diff(mass_map(C, m), m.weights);
}

}  // namespace mfg::oracle
