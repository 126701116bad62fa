#include "fibwalk/export.hpp"

#include <fmt/format.h>

#include <cmath>
#include <json.hpp>
#include <ostream>

namespace fibwalk {
namespace {

using nlohmann::ordered_json;

ordered_json policy_json(const CoinPolicy& policy) {
  if (policy.kind == CoinPolicy::Kind::BasisAverage) return "basis-average";
  return ordered_json{{"left", {policy.left.real(), policy.left.imag()}},
                      {"right", {policy.right.real(), policy.right.imag()}}};
}

}  // namespace

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", value);
}

void write_diagram_csv(std::ostream& out, const PhaseDiagram& diagram) {
  const std::string kind(to_string(diagram.kind));
  const std::string term = diagram.termination_column();
  out << "theta_a,theta_b,value,status,kind,termination\n";
  for (const Cell& cell : diagram.cells) {
    out << format_real(cell.theta_a) << ',' << format_real(cell.theta_b) << ','
        << format_real(cell.value) << ',' << to_string(cell.status) << ',' << kind << ',' << term
        << '\n';
  }
}

std::string diagram_metadata_json(const PhaseDiagram& diagram) {
  ordered_json j;
  j["kind"] = std::string(to_string(diagram.kind));
  j["grid"] = {{"theta_a", {diagram.grid.theta_a.lo, diagram.grid.theta_a.hi}},
               {"theta_b", {diagram.grid.theta_b.lo, diagram.grid.theta_b.hi}},
               {"resolution", diagram.grid.resolution},
               {"ordering", "row-major, theta_b fastest, cell centers"}};
  ordered_json terms = ordered_json::array();
  for (const auto& t : diagram.terminations) terms.push_back(termination_label(t));
  j["terminations"] = terms;
  if (const auto* mcd = std::get_if<McdSweepOptions>(&diagram.options)) {
    j["options"] = {{"n_sites", mcd->n_sites},
                    {"steps", mcd->steps},
                    {"coin_policy", policy_json(mcd->policy)},
                    {"averaging", mcd->averaging == Averaging::Arithmetic ? "arithmetic" : "cesaro"},
                    {"presentation_clamp", mcd->presentation_clamp}};
  } else {
    const auto& s = std::get<SchurSweepOptions>(diagram.options);
    j["options"] = {{"cutoff", s.cutoff},
                    {"steps_per_site", s.steps_per_site},
                    {"samples", s.samples},
                    {"min_modulus", s.min_modulus},
                    {"max_refine_depth", s.max_refine_depth},
                    {"contour_radius", s.contour_radius},
                    {"rate_tolerance", s.rate_tolerance}};
  }
  std::size_t ok = 0, ambiguous = 0, error = 0;
  for (const Cell& c : diagram.cells) {
    ok += c.status == CellStatus::Ok;
    ambiguous += c.status == CellStatus::Ambiguous;
    error += c.status == CellStatus::Error;
  }
  j["cell_status_counts"] = {{"ok", ok}, {"ambiguous", ambiguous}, {"error", error}};
  j["determinism"] =
      "each cell is a pure function of its parameters; no random seeds; output is identical for "
      "any worker count";
  return j.dump(2);
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRow>& rows) {
  out << "theta_a,theta_b,energy,boundary_weight,pinning\n";
  for (const auto& r : rows) {
    out << format_real(r.theta_a) << ',' << format_real(r.theta_b) << ',' << format_real(r.energy)
        << ',' << format_real(r.boundary_weight) << ',' << r.pinning << '\n';
  }
}

void write_mcd_csv(std::ostream& out, const McdSeries& series) {
  out << "t,C\n";
  for (std::size_t t = 0; t < series.values.size(); ++t) {
    out << t << ',' << format_real(series.values[t]) << '\n';
  }
}

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace) {
  out << "phi,re_f,im_f,abs_f\n";
  for (const auto& p : trace) {
    out << format_real(p.phi) << ',' << format_real(p.f.real()) << ',' << format_real(p.f.imag())
        << ',' << format_real(std::abs(p.f)) << '\n';
  }
}

}  // namespace fibwalk
