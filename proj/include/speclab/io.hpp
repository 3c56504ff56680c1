#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "speclab/nearly_spherical.hpp"
#include "speclab/shape_calculus.hpp"
#include "speclab/transfer.hpp"

namespace speclab {

using Json = nlohmann::json;

/// {center, fourier: {a0, a[], b[]}, balls: [{center, radius}]}.
Json domain_to_json(const StarDomain& domain);

/// Accepts the explicit form above or a named shape:
///   {"shape": "disk", "radius": r}
///   {"shape": "unit_ellipse", "eps": e}
///   {"shape": "perturbed_disk", "k": k, "amplitude": a}
///   {"shape": "satellites", "r": r}
/// Throws InvalidConfig on anything malformed.
StarDomain domain_from_json(const Json& j);

/// "const_1" and friends from the default dictionary, or {"constant": c}.
Forcing forcing_from_json(const Json& j);

Json to_json(const StabilityReport& r);
Json to_json(const TransferData& t);
Json to_json(const TaylorFit& fit);
Json to_json(const GapCheck& g);

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace);
/// One row per (iteration, sample): iter, theta, x, y.
void write_boundary_polylines(std::ostream& os, const Point& center,
                              const std::vector<BoundaryFunction>& history, int samples = 256);

/// Round-trip-safe decimal formatting for CSV cells.
std::string format_number(double v);

}  // namespace speclab
