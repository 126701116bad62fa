#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fibwalk/dynamics.hpp"
#include "fibwalk/schur.hpp"
#include "fibwalk/sweep.hpp"

namespace fibwalk {

/// 17 significant digits; "nan"/"inf"/"-inf" for non-finite values.
std::string format_real(double value);

/// theta_a,theta_b,value,status,kind,termination
void write_diagram_csv(std::ostream& out, const PhaseDiagram& diagram);

/// Grid, kind, ensemble and sweep options of a diagram as a JSON object text.
std::string diagram_metadata_json(const PhaseDiagram& diagram);

/// theta_a,theta_b,energy,boundary_weight,pinning
void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRow>& rows);

/// t,C(t)
void write_mcd_csv(std::ostream& out, const McdSeries& series);

/// phi,re_f,im_f,abs_f
void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace);

}  // namespace fibwalk
