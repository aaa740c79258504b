#include "fluidipa/perturbation.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "fluidipa/errors.hpp"

namespace fluidipa {

namespace {

// Appends piecewise-constant values in time order, merging equal
// neighbours and dropping empty intervals.
template <typename T>
class SegmentWriter {
public:
    explicit SegmentWriter(std::vector<Segment<T>>& out) : out_(out) {}

    void fill(double from, double to, T value) {
        if (!(from < to)) return;
        if (!out_.empty() && out_.back().value == value && out_.back().end == from) {
            out_.back().end = to;
        } else {
            out_.push_back({from, to, value});
        }
    }

private:
    std::vector<Segment<T>>& out_;
};

// Step function with changes at arbitrary epochs, closed at the horizon.
template <typename T>
class StepRecorder {
public:
    StepRecorder(std::vector<Segment<T>>& out, double horizon, T initial) : out_(out), horizon_(horizon) {
        out_.push_back({0.0, horizon_, initial});
    }

    void set(double t, T value) {
        auto& last = out_.back();
        if (last.value == value) return;
        if (last.start == t) {
            last.value = value;
            if (out_.size() > 1 && out_[out_.size() - 2].value == value) {
                out_.pop_back();
                out_.back().end = horizon_;
            }
            return;
        }
        last.end = t;
        out_.push_back({t, horizon_, value});
    }

private:
    std::vector<Segment<T>>& out_;
    double horizon_;
};

}  // namespace

PerturbationLog track(const ArrivalTrace& trace, const QueueParams& params) {
    return track(simulate(trace, params));
}

PerturbationLog track(const SimResult& nominal) {
    const double s = nominal.params.service_time;
    const double horizon = nominal.params.horizon;

    PerturbationLog log;
    log.capacity = nominal.params.capacity;
    log.service_time = s;
    log.horizon = horizon;

    StepRecorder<double> lag_steps(log.lag_segments, horizon, s);
    StepRecorder<int> absorbed_steps(log.absorbed_segments, horizon, 0);
    SegmentWriter<int> delta(log.delta_segments);

    double lag = s;
    bool absorbed = false;
    bool busy = false;
    double service_start = 0.0;
    std::optional<double> last_end;  // end of the previous nominal busy period
    double cursor = 0.0;             // delta_segments cover [0, cursor)

    // During a nominal service period [tau, tau + s) the perturbed system
    // still holds one more job for the first s - lag seconds.
    auto fill_service = [&](double to) {
        const double boundary = service_start + s - lag;
        delta.fill(cursor, std::min(to, boundary), 1);
        delta.fill(std::max(cursor, boundary), to, 0);
        cursor = to;
    };
    // Same in a nominal idle gap: the extra job finishes s - lag after it began.
    auto fill_idle = [&](double to) {
        if (last_end) {
            const double boundary = *last_end + s - lag;
            delta.fill(cursor, std::min(to, boundary), 1);
            delta.fill(std::max(cursor, boundary), to, 0);
        } else {
            delta.fill(cursor, to, 0);
        }
        cursor = to;
    };

    for (const auto& event : nominal.event_log) {
        const double t = event.time;
        switch (event.kind) {
        case EventKind::Arrival:
            if (event.occupancy == 1) {
                // Type-2: the arrival opens a nominal busy period.
                fill_idle(t);
                log.type2_epochs.push_back(t);
                absorbed = false;
                absorbed_steps.set(t, 0);
                if (last_end) {
                    lag = std::min(t - *last_end + lag, s);
                    lag_steps.set(t, lag);
                }
                busy = true;
                service_start = t;
            }
            break;
        case EventKind::Loss: {
            const double remaining = s - (t - service_start);
            if (!absorbed && remaining >= 0.0 && lag > remaining) {
                // Type-1: the k+1 system admits the job the nominal one drops.
                fill_service(t);
                log.type1_epochs.push_back(t);
                absorbed = true;
                absorbed_steps.set(t, 1);
                lag = 0.0;
                lag_steps.set(t, lag);
            }
            break;
        }
        case EventKind::Departure:
            fill_service(t);
            if (event.occupancy > 0) {
                service_start = t;
            } else {
                busy = false;
                last_end = t;
            }
            break;
        }
    }
    if (busy) {
        fill_service(horizon);
    } else {
        fill_idle(horizon);
    }
    return log;
}

int predict_delta_x(const PerturbationLog& log, double t) {
    if (!(t >= 0.0 && t <= log.horizon)) {
        std::ostringstream os;
        os << "time " << t << " outside [0, " << log.horizon << "]";
        throw ParameterError(os.str());
    }
    const auto& segs = log.delta_segments;
    if (segs.empty()) return 0;
    auto it = std::upper_bound(segs.begin(), segs.end(), t,
                               [](double value, const Segment<int>& seg) { return value < seg.start; });
    if (it == segs.begin()) return 0;
    --it;
    if (t < it->end || t == log.horizon) return it->value;
    return 0;
}

}  // namespace fluidipa
