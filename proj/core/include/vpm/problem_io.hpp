#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "vpm/solver.hpp"

namespace vpm::io {

/// Parsed problem file: the feasibility problem plus an optional planted
/// feasible point used for Fejér diagnostics.
///
/// A hyperslab entry without 'beta' denotes the enlargement itself and
/// parses to (median hyperplane, half-width); with 'beta' it is a base set
/// like any other. For slab-only files the slab view of the enlargements is
/// kept so the ARM driver can run on the same problem.
struct ProblemDocument {
    FeasibilityProblem problem;
    std::optional<Point> feasible;
    std::optional<std::vector<Hyperslab>> slabs;
};

/// Raised on malformed problem files; message carries the location (JSON
/// line/column or set index) of the offending construct.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

ProblemDocument parse_problem(const std::string& text);
ProblemDocument load_problem(const std::string& path);

std::string serialize_problem(const ProblemDocument& doc);

/// True when every entry in the file was a hyperslab (the ARM setting).
inline bool is_slab_only(const ProblemDocument& doc) {
    return doc.slabs.has_value();
}

}  // namespace vpm::io
