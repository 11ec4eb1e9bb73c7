#include "backflow/backflow_scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include <boost/math/tools/minima.hpp>

#include "backflow/error.hpp"

namespace backflow {

void AxisRange::validate() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw Error(Errc::invalid_argument, "axis range must satisfy lo < hi");
  if (points < 2) throw Error(Errc::invalid_argument, "axis resolution must be >= 2");
}

std::vector<double> AxisRange::values() const { return linspace(lo, hi, points); }

std::vector<CurrentSample> scan_current(const SuperpositionState& state, const ScanGrid& grid,
                                        const ScanOptions& options) {
  grid.z.validate();
  const std::vector<double> zs = grid.z.values();
  std::vector<CurrentSample> out(zs.size());

  unsigned workers = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, zs.size() / 256)));

  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      out[i] = sample_current(state, zs[i], grid.t, options.density_floor);
  };

  if (workers <= 1) {
    fill(0, zs.size());
    return out;
  }
  const std::size_t chunk = (zs.size() + workers - 1) / workers;
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(zs.size(), begin + chunk);
    if (begin < end) pool.emplace_back(fill, begin, end);
  }
  pool.clear();  // joins
  return out;
}

namespace {

// neg_side < 0 and pos_side >= 0 bracket the boundary.
double bisect_boundary(const std::function<double(double)>& f, double neg_side, double pos_side,
                       double tol) {
  for (int iter = 0; iter < 200 && std::abs(pos_side - neg_side) >= tol; ++iter) {
    const double mid = 0.5 * (neg_side + pos_side);
    if (mid == neg_side || mid == pos_side) break;
    if (f(mid) < 0.0)
      neg_side = mid;
    else
      pos_side = mid;
  }
  return 0.5 * (neg_side + pos_side);
}

}  // namespace

std::vector<Interval> find_negative_intervals(const std::function<double(double)>& f, double lo,
                                              double hi, std::size_t points, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
  AxisRange{lo, hi, points}.validate();
  const std::vector<double> zs = linspace(lo, hi, points);
  std::vector<double> vals(zs.size());
  std::transform(zs.begin(), zs.end(), vals.begin(), f);

  std::vector<Interval> out;
  std::size_t i = 0;
  while (i < zs.size()) {
    if (!(vals[i] < 0.0)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < zs.size() && vals[j + 1] < 0.0) ++j;
    Interval iv;
    iv.lo = i == 0 ? zs.front() : bisect_boundary(f, zs[i], zs[i - 1], tol);
    iv.hi = j + 1 == zs.size() ? zs.back() : bisect_boundary(f, zs[j], zs[j + 1], tol);
    if (iv.lo < iv.hi && f(iv.center()) < -tol) out.push_back(iv);
    i = j + 1;
  }
  return out;
}

double shortest_period(const SuperpositionState& state) {
  const double gap = state.max_wavenumber_gap();
  return gap > 0.0 ? 2.0 * std::numbers::pi / gap : 0.0;
}

BackflowRegion find_backflow_regions(const SuperpositionState& state, double z_lo, double z_hi,
                                     double t, double tol, const RegionOptions& options) {
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
  AxisRange{z_lo, z_hi, 2}.validate();

  const double period = shortest_period(state);
  BackflowRegion region;
  region.tol = tol;
  if (options.coarse_points > 0) {
    region.coarse_points = options.coarse_points;
  } else if (period > 0.0) {
    const double per = std::ceil(static_cast<double>(kPointsPerPeriod) * (z_hi - z_lo) / period);
    region.coarse_points = static_cast<std::size_t>(per) + 1;
  } else {
    region.coarse_points = kPointsPerPeriod + 1;
  }
  region.coarse_points = std::max<std::size_t>(region.coarse_points, 2);
  const double spacing = (z_hi - z_lo) / static_cast<double>(region.coarse_points - 1);
  region.resolution_too_coarse = period > 0.0 && spacing > 0.5 * period;

  const auto& params = state.params();
  std::function<double(double)> f;
  if (options.quantity == BackflowQuantity::current_z) {
    f = [&](double z) { return current(state.evaluate(z, t), params)[2]; };
  } else {
    // At a node v_z is undefined; j_z carries the same sign.
    f = [&, floor = options.density_floor](double z) {
      const Spinor4 psi = state.evaluate(z, t);
      const double rho = density(psi);
      const double jz = current(psi, params)[2];
      return rho > floor ? jz / rho : jz;
    };
  }
  region.intervals = find_negative_intervals(f, z_lo, z_hi, region.coarse_points, tol);
  return region;
}

double min_current_z(const SuperpositionState& state, double t) {
  const auto& params = state.params();
  auto jz = [&](double z) { return current(state.evaluate(z, t), params)[2]; };
  const double period = shortest_period(state);
  if (period == 0.0) return jz(0.0);

  constexpr std::size_t coarse = 64;
  const double h = period / static_cast<double>(coarse);
  std::size_t best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < coarse; ++i) {
    const double v = jz(h * static_cast<double>(i));
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double centre = h * static_cast<double>(best);
  const auto [zmin, vmin] = boost::math::tools::brent_find_minima(
      jz, centre - h, centre + h, std::numeric_limits<double>::digits);
  (void)zmin;
  return std::min(vmin, best_val);
}

double backflow_threshold(const CaseSpec& base, Interval bracket, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
  if (!(bracket.lo < bracket.hi) || bracket.lo < 0.0)
    throw Error(Errc::invalid_argument, "amplitude bracket must satisfy 0 <= lo < hi");

  auto onset = [&](double a) {
    CaseSpec s = base;
    s.a = a;
    return min_current_z(build_case(s), 0.0);
  };

  constexpr std::size_t probes = 33;
  int crossings = 0;
  double prev = onset(bracket.lo);
  const double f_lo = prev;
  const std::vector<double> as = linspace(bracket.lo, bracket.hi, probes);
  for (std::size_t i = 1; i < as.size(); ++i) {
    const double cur = onset(as[i]);
    if ((prev < 0.0) != (cur < 0.0)) ++crossings;
    prev = cur;
  }
  const double f_hi = prev;
  if (f_lo < 0.0 || !(f_hi < 0.0))
    throw Error(Errc::no_sign_change, "min_z j_z does not turn negative inside [" +
                                          std::to_string(bracket.lo) + ", " +
                                          std::to_string(bracket.hi) + "]");
  if (crossings > 1)
    throw Error(Errc::invalid_argument, "min_z j_z crosses zero more than once in the bracket");

  double pos = bracket.lo;
  double neg = bracket.hi;
  for (int iter = 0; iter < 200 && neg - pos >= tol; ++iter) {
    const double mid = 0.5 * (pos + neg);
    if (mid == pos || mid == neg) break;
    if (onset(mid) < 0.0)
      neg = mid;
    else
      pos = mid;
  }
  return 0.5 * (pos + neg);
}

void stream_fig1(const Fig1Spec& spec, const std::function<void(std::span<const Fig1Point>)>& row_sink) {
  spec.a.validate();
  spec.x.validate();
  spec.params.validate();
  const std::vector<double> xs = spec.x.values();
  std::vector<Fig1Point> row(xs.size());
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  for (double a : spec.a.values()) {
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
      Fig1Point& pt = row[ix];
      pt = Fig1Point{a, xs[ix]};
      try {
        pt.v = nr_velocity(a, spec.k, pt.x, spec.phi, spec.params);
        pt.q = quantum_potential(a, spec.k, pt.x, spec.phi, spec.params);
        pt.mask_v = pt.v < 0.0;
        pt.mask_q = pt.q > 0.0;
      } catch (const Error& e) {
        if (e.code() != Errc::node_singular) throw;
        pt.v = nan;
        pt.q = nan;
        pt.node = true;
      }
    }
    row_sink(row);
  }
}

RegionGrid fig1_grid(const Fig1Spec& spec) {
  RegionGrid grid;
  grid.a_values = spec.a.values();
  grid.x_values = spec.x.values();
  grid.mask_v.reserve(grid.a_values.size() * grid.x_values.size());
  grid.mask_q.reserve(grid.a_values.size() * grid.x_values.size());
  stream_fig1(spec, [&](std::span<const Fig1Point> row) {
    for (const auto& pt : row) {
      grid.mask_v.push_back(pt.mask_v ? 1 : 0);
      grid.mask_q.push_back(pt.mask_q ? 1 : 0);
    }
  });
  return grid;
}

}  // namespace backflow
