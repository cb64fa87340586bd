#pragma once

#include <string>

#include "qd/sweep.hpp"

namespace qd {

/// One double rendered with 12 significant decimal digits, the fixed CSV
/// number format (stable for byte-identical golden files).
std::string format_number(double v);

/// CSV body for a sweep result: a header row naming axes and observables
/// plus a trailing `reason` column, then one row per grid point in
/// row-major axis order.  Failed points render every observable as the
/// literal token NA with the reason code.  Contains no timestamps.
std::string csv_string(const SweepResult& result);

/// JSON metadata sidecar (n_sites, gamma, kT, time_mode, axes,
/// observables, version, grid shape, wall time, NA diagnostics).
std::string meta_string(const SweepResult& result);

/// Writes csv_string to `prefix`.csv and meta_string to `prefix`.meta.json.
/// I/O failures are reported with the path in the message.
void write_outputs(const SweepResult& result, const std::string& prefix);

} // namespace qd
