#pragma once

// CSV and JSON encodings of samples, regions, case reports and Fock reports.
// Doubles are written with 17 significant digits so output round-trips.

#include <iosfwd>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "backflow/backflow_scan.hpp"
#include "backflow/case_catalog.hpp"
#include "backflow/fock_toy.hpp"

namespace backflow {

[[nodiscard]] std::string format_double(double x);

/// Columns z,t,rho,jx,jy,jz,vz,flag_node; vz is nan at flagged nodes.
void write_samples_csv(std::ostream& os, std::span<const CurrentSample> samples);
[[nodiscard]] nlohmann::json samples_json(std::span<const CurrentSample> samples);

/// {axis, intervals: [[lo, hi], ...], tol}
[[nodiscard]] nlohmann::json region_json(const BackflowRegion& region, const std::string& axis = "z");

/// Columns a,x,v,Q,mask_v,mask_Q.
void write_fig1_header(std::ostream& os);
void write_fig1_row(std::ostream& os, std::span<const Fig1Point> row);

[[nodiscard]] nlohmann::json params_json(const PhysicalParams& params);

struct CaseReport {
  CaseSpec spec;
  double t = 0.0;
  CaseVerification verification;
  BackflowRegion backflow;
  Vec3 current_min{};
  Vec3 current_max{};
};

/// Verifies the closed form at t = 0 on `z`, then scans the built state at
/// time t for the sample extrema and backflow intervals.
[[nodiscard]] CaseReport make_case_report(const CaseSpec& spec, const AxisRange& z, double t,
                                          double tol = kDefaultRegionTolerance);

/// {case_id, params, fitted_scale, max_residual, backflow_intervals, ...}
[[nodiscard]] nlohmann::json case_report_json(const CaseReport& report);

/// {M, spin, K, identity_holds, max_entry_deviation, spectrum_N, spectrum_physical_current, ...}
[[nodiscard]] nlohmann::json charge_identity_json(const ChargeIdentityReport& report);

}  // namespace backflow
