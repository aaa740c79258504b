#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fluidipa/arrival_trace.hpp"

namespace fluidipa {

/// G/D/1/k parameters. `capacity` counts every job in the system
/// (server plus waiting room).
struct QueueParams {
    int capacity = 1;
    double service_time = 1.0;
    double horizon = 1.0;

    /// Throws ParameterError unless capacity >= 1, service_time > 0, horizon > 0.
    void validate() const;

    friend bool operator==(const QueueParams&, const QueueParams&) = default;
};

enum class EventKind { Arrival, Departure, Loss };

/// One entry of the sample path. `occupancy` is x(k, t) after the event.
struct QueueEvent {
    double time = 0.0;
    EventKind kind = EventKind::Arrival;
    int occupancy = 0;

    friend bool operator==(const QueueEvent&, const QueueEvent&) = default;
};

struct BusyPeriodRecord {
    double start = 0.0;
    double end = 0.0;  // truncated at the horizon
    bool lossy = false;
    // Idle time before `start`; empty for the first busy period, which
    // counts as preceded by a long idle period.
    std::optional<double> preceding_idle;
    std::vector<double> loss_epochs;

    friend bool operator==(const BusyPeriodRecord&, const BusyPeriodRecord&) = default;
};

struct SimResult {
    QueueParams params;
    std::int64_t lost_jobs = 0;
    double loss_volume = 0.0;  // lost_jobs * service_time
    std::vector<BusyPeriodRecord> busy_periods;
    int lossy_periods = 0;
    int lossy_after_short_idle = 0;  // preceding idle < service_time
    int lossy_after_long_idle = 0;   // preceding idle >= service_time, or initial
    std::vector<QueueEvent> event_log;

    friend bool operator==(const SimResult&, const SimResult&) = default;
};

/// Runs the FIFO single-server queue with deterministic service on the
/// trace. Departures are processed before arrivals at the same epoch;
/// jobs still in the system at the horizon are abandoned.
SimResult simulate(const ArrivalTrace& trace, const QueueParams& params);

/// Discrete-path surrogate of dL/dk: -s times the number of lossy busy periods.
double ipa_derivative(const SimResult& result);

/// Surrogate derivative of F(k) = L(k) + a*k. Throws ParameterError if a < 0.
double cost_derivative(const SimResult& result, double buffer_cost);

/// Sample cost F(k) = L(k) + a*k.
double sample_cost(const SimResult& result, double buffer_cost);

}  // namespace fluidipa
