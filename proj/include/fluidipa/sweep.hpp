#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fluidipa/arrival_trace.hpp"
#include "fluidipa/fluid.hpp"
#include "fluidipa/fpa_oracle.hpp"
#include "fluidipa/rng.hpp"

namespace fluidipa {

struct SweepConfig {
    std::size_t cases = 1000;
    std::size_t fluid_cases = 200;
    std::uint64_t seed = 7;
    double load_min = 0.3;  // rate * s
    double load_max = 1.5;
    double service_min = 0.01;
    double service_max = 1.0;
    int capacity_min = 1;
    int capacity_max = 20;
    double arrivals_min = 100.0;  // expected arrivals, sets the horizon
    double arrivals_max = 5000.0;
    double fluid_delta = 1e-4;
    double fluid_tolerance = 1e-6;
};

/// One randomized coupled queue case.
struct SweepCase {
    std::uint64_t seed = 0;
    double arrival_rate = 0.0;
    QueueParams params;
    CoupledResult coupled;
    BoundsReport bounds;
    Lemma1Report lemma1;
};

struct FluidCase {
    std::uint64_t seed = 0;
    FluidModel model;
    double theta = 0.0;
    FiniteDiffReport report;
};

struct SweepReport {
    std::vector<SweepCase> queue_cases;
    std::vector<FluidCase> fluid_cases;
    std::size_t exactness_failures = 0;
    std::size_t error_bound_failures = 0;
    std::size_t relative_bound_failures = 0;
    std::size_t relative_bound_skipped = 0;
    std::size_t lemma1_failures = 0;
    std::size_t coupling_range_failures = 0;
    std::size_t fluid_failures = 0;
    std::size_t fluid_flagged = 0;

    bool passed() const noexcept;
};

/// Draws one queue case from the sweep ranges.
struct DrawnQueueCase {
    double arrival_rate;
    QueueParams params;
};
DrawnQueueCase draw_queue_case(const SweepConfig& config, RandomStream& rng);

/// Random piecewise-constant model: up to 20 segments, rates in [0, 3].
FluidModel random_fluid_model(RandomStream& rng);

/// Rebuilds the arrival trace of a queue case from its seed.
ArrivalTrace sweep_case_trace(const SweepConfig& config, std::uint64_t case_seed);

SweepCase run_queue_case(const SweepConfig& config, std::uint64_t case_seed);

FluidCase run_fluid_case(const SweepConfig& config, std::uint64_t case_seed);

/// Runs every case concurrently; case i uses derive_seed(seed, i) (fluid
/// cases use the stream after the queue cases).
SweepReport property_sweep(const SweepConfig& config);

}  // namespace fluidipa
