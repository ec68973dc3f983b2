#pragma once

#include <ostream>
#include <string>

#include "vpm/solver.hpp"

namespace vpm::io {

/// Shortest round-trip decimal formatting (std::to_chars).
std::string format_double(double v);

inline constexpr const char* kTraceCsvHeader =
    "k,i_k,step_norm,residual,fejer_dist";

/// One CSV row per recorded iteration; fejer_dist is "nan" when the run had
/// no reference point.
void write_trace_csv(std::ostream& out, const RunTrace& trace);

std::string trace_csv(const RunTrace& trace);

}  // namespace vpm::io
