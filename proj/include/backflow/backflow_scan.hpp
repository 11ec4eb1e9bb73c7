#pragma once

// Backflow detection: sampling currents on grids, locating the z-intervals
// where the longitudinal current is negative, the two-wave nonrelativistic
// region map over (a, x), and backflow onset thresholds in the amplitude a.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "backflow/case_catalog.hpp"
#include "backflow/currents.hpp"

namespace backflow {

inline constexpr double kDefaultRegionTolerance = 1e-10;
inline constexpr std::size_t kPointsPerPeriod = 16;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] double center() const noexcept { return 0.5 * (lo + hi); }
  [[nodiscard]] double width() const noexcept { return hi - lo; }
};

/// Closed range sampled at `points` evenly spaced values including both ends.
struct AxisRange {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t points = 2;

  /// Requires lo < hi, both finite, points >= 2.
  void validate() const;
  [[nodiscard]] std::vector<double> values() const;
  [[nodiscard]] double spacing() const noexcept {
    return (hi - lo) / static_cast<double>(points - 1);
  }
};

struct ScanGrid {
  AxisRange z{-10.0, 10.0, 2001};
  double t = 0.0;
};

struct ScanOptions {
  double density_floor = kDefaultDensityFloor;
  unsigned threads = 0;  // 0 picks hardware concurrency
};

/// Samples in grid order. Rows are split across worker threads; the result
/// does not depend on the thread count.
[[nodiscard]] std::vector<CurrentSample> scan_current(const SuperpositionState& state,
                                                      const ScanGrid& grid,
                                                      const ScanOptions& options = {});

/// Intervals of [lo, hi] where f < 0, found by sign changes between `points`
/// coarse samples and bisection of each bracket to width < tol. Intervals
/// whose midpoint value is not below -tol are dropped.
[[nodiscard]] std::vector<Interval> find_negative_intervals(const std::function<double(double)>& f,
                                                            double lo, double hi, std::size_t points,
                                                            double tol);

enum class BackflowQuantity { current_z, velocity_z };

struct RegionOptions {
  BackflowQuantity quantity = BackflowQuantity::current_z;
  std::size_t coarse_points = 0;  // 0 derives kPointsPerPeriod samples per shortest period
  double density_floor = kDefaultDensityFloor;
};

struct BackflowRegion {
  std::vector<Interval> intervals;
  double tol = kDefaultRegionTolerance;
  std::size_t coarse_points = 0;
  bool resolution_too_coarse = false;  // coarse spacing exceeds half the shortest period
};

/// Shortest spatial period of rho and j: 2 pi / max |k_i - k_j|, or 0 when the
/// state has a single wavenumber and nothing oscillates.
[[nodiscard]] double shortest_period(const SuperpositionState& state);

/// Throws Error(invalid_argument) for tol <= 0 or an invalid range.
[[nodiscard]] BackflowRegion find_backflow_regions(const SuperpositionState& state, double z_lo,
                                                   double z_hi, double t,
                                                   double tol = kDefaultRegionTolerance,
                                                   const RegionOptions& options = {});

/// Smallest j_z over z at time t (one full period is searched).
[[nodiscard]] double min_current_z(const SuperpositionState& state, double t = 0.0);

/// Smallest a in the bracket where min_z j_z of build_case(base with a) turns
/// negative, by bisection to width < tol. Throws Error(no_sign_change) when
/// the bracket does not straddle the onset and Error(invalid_argument) when
/// sampling finds more than one crossing.
[[nodiscard]] double backflow_threshold(const CaseSpec& base, Interval bracket, double tol = 1e-12);

// Region map of the two-wave nonrelativistic state over (a, x).

struct Fig1Spec {
  AxisRange a{0.0, 1.0, 400};
  AxisRange x{-6.0, 6.0, 400};
  double k = 1.0;
  double phi = 0.0;
  PhysicalParams params{};
};

struct Fig1Point {
  double a = 0.0;
  double x = 0.0;
  double v = 0.0;  // NaN at a node
  double q = 0.0;  // NaN at a node
  bool mask_v = false;  // v < 0
  bool mask_q = false;  // Q > 0
  bool node = false;
};

/// Calls `row_sink` once per a-value, in order, with that row's points.
void stream_fig1(const Fig1Spec& spec, const std::function<void(std::span<const Fig1Point>)>& row_sink);

struct RegionGrid {
  std::vector<double> a_values;
  std::vector<double> x_values;
  std::vector<std::uint8_t> mask_v;  // row-major [a][x]
  std::vector<std::uint8_t> mask_q;

  [[nodiscard]] bool v_negative(std::size_t ia, std::size_t ix) const {
    return mask_v[ia * x_values.size() + ix] != 0;
  }
  [[nodiscard]] bool q_positive(std::size_t ia, std::size_t ix) const {
    return mask_q[ia * x_values.size() + ix] != 0;
  }
};

[[nodiscard]] RegionGrid fig1_grid(const Fig1Spec& spec);

}  // namespace backflow
