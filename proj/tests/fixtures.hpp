#pragma once

#include "fluidipa/arrival_trace.hpp"
#include "fluidipa/queue.hpp"

namespace fixtures {

// Hand-traceable traces with s = 1.
inline fluidipa::ArrivalTrace trace_a() { return {{0.0, 0.5, 2.0}, 3.0, "TRACE-A"}; }
inline fluidipa::ArrivalTrace trace_b() { return {{0.0, 0.5, 1.3, 1.8, 2.1}, 3.5, "TRACE-B"}; }
inline fluidipa::ArrivalTrace trace_c() { return {{0.0, 0.5, 1.3, 1.8}, 3.0, "TRACE-C"}; }

// TRACE-B plus an arrival at 2.5: the k = 2 run drops it while k = 1
// admits it, so L(2) - L(1) = -1 although two type-1 events occur.
inline fluidipa::ArrivalTrace trace_b_late() { return {{0.0, 0.5, 1.3, 1.8, 2.1, 2.5}, 3.5, "TRACE-B+2.5"}; }

inline fluidipa::QueueParams params_for(const fluidipa::ArrivalTrace& t, int k, double s = 1.0) {
    return {k, s, t.horizon()};
}

}  // namespace fixtures
