#include "backflow/report_io.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

namespace backflow {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  return fmt::format("{:.17g}", x);
}

void write_samples_csv(std::ostream& os, std::span<const CurrentSample> samples) {
  os << "z,t,rho,jx,jy,jz,vz,flag_node\n";
  for (const auto& s : samples) {
    os << format_double(s.z) << ',' << format_double(s.t) << ',' << format_double(s.rho) << ','
       << format_double(s.j[0]) << ',' << format_double(s.j[1]) << ',' << format_double(s.j[2]) << ','
       << (s.v ? format_double((*s.v)[2]) : std::string("nan")) << ',' << (s.near_node() ? 1 : 0)
       << '\n';
  }
}

nlohmann::json samples_json(std::span<const CurrentSample> samples) {
  auto arr = nlohmann::json::array();
  for (const auto& s : samples) {
    arr.push_back({{"z", s.z},
                   {"t", s.t},
                   {"rho", s.rho},
                   {"jx", s.j[0]},
                   {"jy", s.j[1]},
                   {"jz", s.j[2]},
                   {"vz", s.v ? nlohmann::json((*s.v)[2]) : nlohmann::json(nullptr)},
                   {"flag_node", s.near_node()}});
  }
  return arr;
}

nlohmann::json region_json(const BackflowRegion& region, const std::string& axis) {
  auto intervals = nlohmann::json::array();
  for (const auto& iv : region.intervals) intervals.push_back({iv.lo, iv.hi});
  return {{"axis", axis},
          {"intervals", intervals},
          {"tol", region.tol},
          {"coarse_points", region.coarse_points},
          {"resolution_too_coarse", region.resolution_too_coarse}};
}

void write_fig1_header(std::ostream& os) { os << "a,x,v,Q,mask_v,mask_Q\n"; }

void write_fig1_row(std::ostream& os, std::span<const Fig1Point> row) {
  for (const auto& p : row) {
    os << format_double(p.a) << ',' << format_double(p.x) << ',' << format_double(p.v) << ','
       << format_double(p.q) << ',' << (p.mask_v ? 1 : 0) << ',' << (p.mask_q ? 1 : 0) << '\n';
  }
}

nlohmann::json params_json(const PhysicalParams& params) {
  return {{"hbar", params.hbar}, {"c", params.c}, {"mass", params.mass}};
}

CaseReport make_case_report(const CaseSpec& spec, const AxisRange& z, double t, double tol) {
  z.validate();
  CaseReport r;
  r.spec = spec;
  r.t = t;
  const std::vector<double> zs = z.values();
  r.verification = verify_case(spec, zs);

  const SuperpositionState state = build_case(spec);
  const auto samples = scan_current(state, ScanGrid{z, t});
  for (std::size_t i = 0; i < 3; ++i) {
    r.current_min[i] = samples.front().j[i];
    r.current_max[i] = samples.front().j[i];
  }
  for (const auto& s : samples)
    for (std::size_t i = 0; i < 3; ++i) {
      r.current_min[i] = std::min(r.current_min[i], s.j[i]);
      r.current_max[i] = std::max(r.current_max[i], s.j[i]);
    }
  r.backflow = find_backflow_regions(state, z.lo, z.hi, t, tol);
  return r;
}

nlohmann::json case_report_json(const CaseReport& r) {
  const auto& s = r.spec;
  nlohmann::json range;
  const char* names[] = {"jx", "jy", "jz"};
  for (std::size_t i = 0; i < 3; ++i) range[names[i]] = {r.current_min[i], r.current_max[i]};
  return {{"case_id", s.case_id},
          {"params", params_json(s.params)},
          {"a", s.a},
          {"phi", s.phi},
          {"lambda", value(s.lambda)},
          {"k", s.k},
          {"energy_sign", value(s.energy_sign)},
          {"t", r.t},
          {"fitted_scale", r.verification.fitted_scale},
          {"expected_scale", expected_scale(s.case_id)},
          {"max_residual", r.verification.max_residual},
          {"verification_passed", r.verification.passed},
          {"current_range", range},
          {"backflow_intervals", region_json(r.backflow, "z")}};
}

nlohmann::json charge_identity_json(const ChargeIdentityReport& r) {
  auto counts = [](const std::vector<EigenvalueCount>& cs) {
    auto arr = nlohmann::json::array();
    for (const auto& c : cs) arr.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
    return arr;
  };
  auto cplx = [](Complex z) { return nlohmann::json::array({z.real(), z.imag()}); };
  return {{"M", r.modes},
          {"spin", spin_value(r.spin)},
          {"K", r.K},
          {"identity_holds", r.identity_holds},
          {"max_entry_deviation", r.max_entry_deviation},
          {"proportionality", r.proportionality},
          {"vacuum_current", r.vacuum_current},
          {"coefficients",
           {{"adag_a", cplx(r.coefficients.adag_a)},
            {"adag_bdag", cplx(r.coefficients.adag_bdag)},
            {"b_a", cplx(r.coefficients.b_a)},
            {"b_bdag", cplx(r.coefficients.b_bdag)}}},
          {"spectrum_N", counts(r.spectrum_charge)},
          {"spectrum_physical_current", counts(r.spectrum_physical_current)}};
}

}  // namespace backflow
