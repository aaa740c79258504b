#pragma once

#include <vector>

namespace fluidipa {

struct RateSegment {
    double start = 0.0;
    double inflow = 0.0;   // alpha
    double service = 0.0;  // beta

    friend bool operator==(const RateSegment&, const RateSegment&) = default;
};

/// Fluid queue driven by piecewise-constant inflow and service rates.
/// Segment i is active on [start_i, start_{i+1}); the last one runs to
/// the horizon.
struct FluidModel {
    std::vector<RateSegment> segments;
    double horizon = 1.0;
    double initial_workload = 0.0;

    /// Throws ParameterError on unordered segments, a first start other
    /// than 0, starts at or past the horizon, or negative/non-finite rates.
    void validate() const;

    friend bool operator==(const FluidModel&, const FluidModel&) = default;
};

enum class FluidMode { Empty, Full, Moving };

/// Linear piece of the workload trajectory.
struct WorkloadPiece {
    double t0 = 0.0;
    double t1 = 0.0;
    double x0 = 0.0;
    double x1 = 0.0;
    FluidMode mode = FluidMode::Moving;
};

struct FluidResult {
    double theta = 0.0;
    double loss_volume = 0.0;
    double outflow_volume = 0.0;
    double final_workload = 0.0;
    int lossy_periods = 0;
    std::vector<double> breakpoints;
    std::vector<WorkloadPiece> trajectory;
};

/// Integrates the flow equations exactly, piece by piece. Throws
/// ParameterError unless 0 < theta and initial_workload <= theta.
FluidResult simulate_fluid(const FluidModel& model, double theta);

/// IPA derivative of the loss volume with respect to the buffer size.
double fluid_ipa(const FluidResult& result);

struct FiniteDiffReport {
    double central_difference = 0.0;
    double ipa = 0.0;
    double discrepancy = 0.0;  // |central - ipa| / max(1, N)
    bool degenerate = false;   // lossy-period count changes within [theta - delta, theta + delta]
};

/// Requires 0 < delta < theta.
FiniteDiffReport finite_diff_check(const FluidModel& model, double theta, double delta);

}  // namespace fluidipa
