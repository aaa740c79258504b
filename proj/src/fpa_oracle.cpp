#include "fluidipa/fpa_oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <utility>

namespace fluidipa {

namespace {

// Occupancy after all events at each distinct epoch.
std::vector<std::pair<double, int>> occupancy_steps(const SimResult& run) {
    std::vector<std::pair<double, int>> steps;
    steps.reserve(run.event_log.size() + 1);
    steps.emplace_back(0.0, 0);
    for (const auto& e : run.event_log) {
        if (steps.back().first == e.time) {
            steps.back().second = e.occupancy;
        } else {
            steps.emplace_back(e.time, e.occupancy);
        }
    }
    return steps;
}

int occupancy_at(const std::vector<std::pair<double, int>>& steps, double t) {
    auto it = std::upper_bound(steps.begin(), steps.end(), t,
                               [](double value, const auto& step) { return value < step.first; });
    return it == steps.begin() ? 0 : std::prev(it)->second;
}

CheckOutcome pass(std::string name) { return {std::move(name), CheckStatus::Pass, {}}; }

}  // namespace

CoupledResult coupled_run(const ArrivalTrace& trace, const QueueParams& params) {
    QueueParams bigger = params;
    bigger.capacity = params.capacity + 1;
    const SimResult nominal = simulate(trace, params);
    const SimResult perturbed = simulate(trace, bigger);
    const PerturbationLog log = track(nominal);

    const double s = params.service_time;
    CoupledResult r;
    r.capacity = params.capacity;
    r.service_time = s;
    r.lost_nominal = nominal.lost_jobs;
    r.lost_perturbed = perturbed.lost_jobs;
    r.loss_nominal = nominal.loss_volume;
    r.loss_perturbed = perturbed.loss_volume;
    r.delta_loss = s * static_cast<double>(perturbed.lost_jobs - nominal.lost_jobs);
    r.lossy_periods = nominal.lossy_periods;
    r.lossy_after_short_idle = nominal.lossy_after_short_idle;
    r.lossy_after_long_idle = nominal.lossy_after_long_idle;
    r.type1_count = log.type1_count();
    r.ipa = ipa_derivative(nominal);

    // |delta_loss - ipa| = s * |N - (n(k) - n(k+1))|, kept in integers.
    const std::int64_t gap =
        static_cast<std::int64_t>(r.lossy_periods) - (nominal.lost_jobs - perturbed.lost_jobs);
    r.error = s * static_cast<double>(std::llabs(gap));
    r.bound = s * static_cast<double>(r.lossy_after_short_idle);
    if (r.lossy_periods > 0) {
        r.relative_error = static_cast<double>(std::llabs(gap)) / static_cast<double>(r.lossy_periods);
    }
    return r;
}

bool BoundsReport::passed() const noexcept {
    return exactness.status != CheckStatus::Fail && error_bound.status != CheckStatus::Fail &&
           relative_bound.status != CheckStatus::Fail;
}

BoundsReport check_bounds(const CoupledResult& r) {
    BoundsReport report{pass("exactness"), pass("error_bound"), pass("relative_bound")};
    const double s = r.service_time;

    const double predicted = s * static_cast<double>(-r.type1_count);
    if (r.delta_loss != predicted) {
        std::ostringstream os;
        os << "delta_L = " << r.delta_loss << " but -s*N_1 = " << predicted << " (N_1 = " << r.type1_count << ")";
        report.exactness = {"exactness", CheckStatus::Fail, os.str()};
    }

    if (!(r.error <= r.bound)) {
        std::ostringstream os;
        os << "E = " << r.error << " exceeds s*N_s = " << r.bound;
        report.error_bound = {"error_bound", CheckStatus::Fail, os.str()};
    }

    if (r.lossy_periods == 0 || !r.relative_error) {
        report.relative_bound = {"relative_bound", CheckStatus::Skipped, "UNDEFINED: no lossy busy period"};
    } else {
        const double ratio = static_cast<double>(r.lossy_after_short_idle) / static_cast<double>(r.lossy_periods);
        if (!(*r.relative_error <= ratio && ratio <= 1.0)) {
            std::ostringstream os;
            os << "relative error " << *r.relative_error << " vs N_s/N = " << ratio;
            report.relative_bound = {"relative_bound", CheckStatus::Fail, os.str()};
        }
    }
    return report;
}

Lemma1Report verify_lemma1(const ArrivalTrace& trace, const QueueParams& params) {
    QueueParams bigger = params;
    bigger.capacity = params.capacity + 1;
    const SimResult nominal = simulate(trace, params);
    const SimResult perturbed = simulate(trace, bigger);
    const PerturbationLog log = track(nominal);

    const auto nominal_steps = occupancy_steps(nominal);
    const auto perturbed_steps = occupancy_steps(perturbed);

    std::vector<double> epochs;
    epochs.reserve(nominal_steps.size() + perturbed_steps.size() + 2 * log.delta_segments.size() + 1);
    for (const auto& [t, x] : nominal_steps) epochs.push_back(t);
    for (const auto& [t, x] : perturbed_steps) epochs.push_back(t);
    for (const auto& seg : log.delta_segments) {
        epochs.push_back(seg.start);
        epochs.push_back(seg.end);
    }
    epochs.push_back(params.horizon);
    std::sort(epochs.begin(), epochs.end());
    epochs.erase(std::unique(epochs.begin(), epochs.end()), epochs.end());
    while (!epochs.empty() && epochs.back() > params.horizon) epochs.pop_back();

    // Intervals this short come from rounding differences between the
    // predicted breakpoints and the simulated departure epochs.
    const double sliver = 1e-9 * params.service_time + 1e-12 * params.horizon;

    Lemma1Report report;
    for (std::size_t i = 0; i + 1 < epochs.size(); ++i) {
        const double a = epochs[i];
        const double b = epochs[i + 1];
        if (b - a <= sliver) continue;
        const double mid = a + 0.5 * (b - a);
        const int actual = occupancy_at(perturbed_steps, mid) - occupancy_at(nominal_steps, mid);
        const int predicted = predict_delta_x(log, mid);
        ++report.intervals_checked;
        if ((actual < 0 || actual > 1) && report.coupling_in_range) {
            report.coupling_in_range = false;
            report.first_out_of_range = DeltaDiscrepancy{a, predicted, actual};
        }
        if (actual != predicted && report.holds) {
            report.holds = false;
            report.first_mismatch = DeltaDiscrepancy{a, predicted, actual};
        }
    }
    return report;
}

}  // namespace fluidipa
