#pragma once

#include <vector>

#include "fluidipa/arrival_trace.hpp"
#include "fluidipa/queue.hpp"

namespace fluidipa {

/// Piecewise-constant value on [start, end).
template <typename T>
struct Segment {
    double start = 0.0;
    double end = 0.0;
    T value{};

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Event-by-event record of the nominal path at capacity k, enough to
/// predict x(k+1, t) - x(k, t) without simulating the k+1 system.
///
/// Type-1 events are nominal losses the k+1 system absorbs. Type-2 events
/// are arrivals into an empty nominal queue. `lag` (zeta) is in [0, s]: the
/// perturbed system finishes its current job `s - lag` seconds into each
/// nominal service period; `lag == s` means the two schedules coincide.
/// `absorbed` (psi) is 1 from a type-1 event until the next type-2 event.
struct PerturbationLog {
    int capacity = 1;
    double service_time = 1.0;
    double horizon = 1.0;
    std::vector<double> type1_epochs;
    std::vector<double> type2_epochs;
    std::vector<Segment<double>> lag_segments;
    std::vector<Segment<int>> absorbed_segments;
    std::vector<Segment<int>> delta_segments;  // predicted occupancy difference

    int type1_count() const noexcept { return static_cast<int>(type1_epochs.size()); }

    friend bool operator==(const PerturbationLog&, const PerturbationLog&) = default;
};

PerturbationLog track(const ArrivalTrace& trace, const QueueParams& params);

/// Same as above, reusing an existing nominal run on `params`.
PerturbationLog track(const SimResult& nominal);

/// Predicted x(k+1, t) - x(k, t), right-continuous. Throws ParameterError
/// for t outside [0, horizon].
int predict_delta_x(const PerturbationLog& log, double t);

}  // namespace fluidipa
