#include "fluidipa/queue.hpp"

#include <cmath>
#include <deque>
#include <sstream>

#include "fluidipa/errors.hpp"

namespace fluidipa {

void QueueParams::validate() const {
    std::ostringstream os;
    if (capacity < 1) {
        os << "capacity must be >= 1, got " << capacity;
    } else if (!(service_time > 0.0) || !std::isfinite(service_time)) {
        os << "service time must be positive and finite, got " << service_time;
    } else if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        os << "horizon must be positive and finite, got " << horizon;
    } else {
        return;
    }
    throw ParameterError(os.str());
}

SimResult simulate(const ArrivalTrace& trace, const QueueParams& params) {
    params.validate();
    if (trace.horizon() != params.horizon) {
        std::ostringstream os;
        os << "trace horizon " << trace.horizon() << " differs from queue horizon " << params.horizon;
        throw ParameterError(os.str());
    }

    const double s = params.service_time;
    const auto k = static_cast<std::size_t>(params.capacity);

    SimResult result;
    result.params = params;
    result.event_log.reserve(trace.size() * 2 + 1);

    // Scheduled departure epochs of the jobs in the system, FIFO.
    std::deque<double> departures;
    std::optional<double> last_end;
    BusyPeriodRecord current;

    auto occupancy = [&] { return static_cast<int>(departures.size()); };
    auto close_period = [&](double end) {
        current.end = end;
        current.lossy = !current.loss_epochs.empty();
        result.busy_periods.push_back(std::move(current));
        current = {};
        last_end = end;
    };
    auto depart_through = [&](double t) {
        while (!departures.empty() && departures.front() <= t) {
            const double d = departures.front();
            departures.pop_front();
            result.event_log.push_back({d, EventKind::Departure, occupancy()});
            if (departures.empty()) close_period(d);
        }
    };

    for (double t : trace.arrivals()) {
        depart_through(t);
        if (departures.empty()) {
            current.start = t;
            current.preceding_idle = last_end ? std::optional<double>(t - *last_end) : std::nullopt;
            departures.push_back(t + s);
            result.event_log.push_back({t, EventKind::Arrival, occupancy()});
        } else if (departures.size() >= k) {
            ++result.lost_jobs;
            current.loss_epochs.push_back(t);
            result.event_log.push_back({t, EventKind::Loss, occupancy()});
        } else {
            departures.push_back(departures.back() + s);
            result.event_log.push_back({t, EventKind::Arrival, occupancy()});
        }
    }
    depart_through(params.horizon);
    if (!departures.empty()) close_period(params.horizon);

    result.loss_volume = static_cast<double>(result.lost_jobs) * s;
    for (const auto& period : result.busy_periods) {
        if (!period.lossy) continue;
        ++result.lossy_periods;
        if (period.preceding_idle && *period.preceding_idle < s) {
            ++result.lossy_after_short_idle;
        } else {
            ++result.lossy_after_long_idle;
        }
    }
    return result;
}

double ipa_derivative(const SimResult& result) {
    return -result.params.service_time * static_cast<double>(result.lossy_periods);
}

double cost_derivative(const SimResult& result, double buffer_cost) {
    if (!(buffer_cost >= 0.0)) {
        std::ostringstream os;
        os << "buffer cost must be non-negative, got " << buffer_cost;
        throw ParameterError(os.str());
    }
    return ipa_derivative(result) + buffer_cost;
}

double sample_cost(const SimResult& result, double buffer_cost) {
    return result.loss_volume + buffer_cost * static_cast<double>(result.params.capacity);
}

}  // namespace fluidipa
