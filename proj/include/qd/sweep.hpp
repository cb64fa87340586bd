#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qd/model.hpp"

namespace qd {

enum class SweepKind { time_series, lambda_sweep, grid2d };

enum class TimeModeKind { at_time, asymptotic_average, window_average };

struct TimeMode {
    TimeModeKind kind = TimeModeKind::asymptotic_average;
    double t = 0.0;             // at_time
    double window_start = 500.0; // window_average
    double window_width = 100.0;
    int window_samples = 400;

    std::string to_string() const;
};

enum class Observable { discord, concurrence, mz, xx, yy, zz };

const char* observable_name(Observable o);
std::optional<Observable> observable_from_name(const std::string& name);

/// Uniform parameter axis.  Recognized names: J0, J1, h0, h1, gamma, kT, t,
/// lambda (J0 = J1 = v * h with h0 = h1 pinned), lambda1 (J1 = v * h1),
/// lambda0 (J0 = v * h0), J (J0 = J1 = v), h (h0 = h1 = v).
struct Axis {
    std::string name;
    double start = 0.0;
    double stop = 1.0;
    int count = 2;

    double value(int i) const {
        return start + (stop - start) * i / (count - 1);
    }
};

struct SweepSpec {
    SweepKind kind = SweepKind::lambda_sweep;
    QuenchParams base;
    Axis axis1;
    std::optional<Axis> axis2;
    TimeMode time_mode;
    std::vector<Observable> observables{Observable::discord};

    /// Throws std::invalid_argument on bad axis names/counts, kind/axis
    /// mismatches, or invalid base parameters.
    void validate() const;
};

/// Rectangular results in row-major axis order (axis1 outer, axis2 inner).
/// Failed points carry a reason code in `reasons` and NaN in every
/// observable column; successful points have an empty reason.
struct SweepResult {
    SweepSpec spec;
    std::vector<std::vector<double>> values; // one flat array per observable
    std::vector<std::string> reasons;        // one per grid point
    std::size_t n_points = 0;
    std::size_t na_count = 0;
    double max_trace_error = 0.0;        // |Tr(rho) - 1| over evaluated points
    double max_projected_violation = 0.0; // positivity projection magnitude
    double wall_ms = 0.0;
    std::string version;
};

/// Deterministic parallel evaluation: points are written to pre-assigned
/// slots, per-point mode sums have a fixed order, so the result is
/// bit-identical for any worker count.  threads = 0 picks the hardware
/// concurrency.
SweepResult run_sweep(const SweepSpec& spec, int threads = 0);

/// Asymptotic discord along a lambda grid: J0 = J1 = lambda * h,
/// h0 = h1 = h.
std::vector<double> lambda_curve(double gamma, double kT, double h,
                                 const std::vector<double>& lambda_grid,
                                 int n_sites = 1000);

} // namespace qd
