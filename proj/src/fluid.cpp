#include "fluidipa/fluid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fluidipa/errors.hpp"

namespace fluidipa {

void FluidModel::validate() const {
    std::ostringstream os;
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        os << "horizon must be positive and finite, got " << horizon;
        throw ParameterError(os.str());
    }
    if (!(initial_workload >= 0.0) || !std::isfinite(initial_workload)) {
        os << "initial workload must be non-negative, got " << initial_workload;
        throw ParameterError(os.str());
    }
    if (segments.empty() || segments.front().start != 0.0) {
        throw ParameterError("fluid model needs a first segment starting at 0");
    }
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& seg = segments[i];
        if (i > 0 && !(segments[i - 1].start < seg.start)) {
            os << "segment " << i << " start " << seg.start << " is not after " << segments[i - 1].start;
            throw ParameterError(os.str());
        }
        if (!(seg.start < horizon)) {
            os << "segment " << i << " starts at " << seg.start << ", at or past the horizon";
            throw ParameterError(os.str());
        }
        if (!(seg.inflow >= 0.0) || !(seg.service >= 0.0) || !std::isfinite(seg.inflow) ||
            !std::isfinite(seg.service)) {
            os << "segment " << i << " has invalid rates (" << seg.inflow << ", " << seg.service << ")";
            throw ParameterError(os.str());
        }
    }
}

FluidResult simulate_fluid(const FluidModel& model, double theta) {
    model.validate();
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        std::ostringstream os;
        os << "buffer size must be positive, got " << theta;
        throw ParameterError(os.str());
    }
    if (model.initial_workload > theta) {
        std::ostringstream os;
        os << "initial workload " << model.initial_workload << " exceeds buffer size " << theta;
        throw ParameterError(os.str());
    }

    FluidResult result;
    result.theta = theta;

    double t = 0.0;
    double x = model.initial_workload;
    bool period_lossy = false;

    auto end_period = [&] {
        if (period_lossy) ++result.lossy_periods;
        period_lossy = false;
    };
    auto add_piece = [&](double t1, double x1, FluidMode mode) {
        result.breakpoints.push_back(t);
        result.trajectory.push_back({t, t1, x, x1, mode});
        t = t1;
        x = x1;
    };

    const auto& segs = model.segments;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const double end = i + 1 < segs.size() ? segs[i + 1].start : model.horizon;
        const double alpha = segs[i].inflow;
        const double beta = segs[i].service;
        const double net = alpha - beta;

        while (t < end) {
            const double span = end - t;
            if (x == 0.0 && alpha <= beta) {
                result.outflow_volume += alpha * span;
                add_piece(end, 0.0, FluidMode::Empty);
            } else if (x == theta && alpha >= beta) {
                result.loss_volume += net * span;
                result.outflow_volume += beta * span;
                if (net > 0.0) period_lossy = true;
                add_piece(end, theta, FluidMode::Full);
            } else if (net == 0.0) {
                result.outflow_volume += beta * span;
                add_piece(end, x, FluidMode::Moving);
            } else {
                const double target = net > 0.0 ? theta : 0.0;
                const double hit = t + (target - x) / net;
                if (hit < end) {
                    result.outflow_volume += beta * (hit - t);
                    add_piece(hit, target, FluidMode::Moving);
                } else {
                    const double x1 = std::clamp(x + net * span, 0.0, theta);
                    result.outflow_volume += beta * span;
                    add_piece(end, x1, FluidMode::Moving);
                }
                if (x == 0.0) end_period();
            }
        }
    }
    end_period();
    result.breakpoints.push_back(model.horizon);
    result.final_workload = x;
    return result;
}

double fluid_ipa(const FluidResult& result) { return -static_cast<double>(result.lossy_periods); }

FiniteDiffReport finite_diff_check(const FluidModel& model, double theta, double delta) {
    if (!(delta > 0.0 && delta < theta)) {
        std::ostringstream os;
        os << "perturbation " << delta << " must lie in (0, " << theta << ")";
        throw ParameterError(os.str());
    }
    const FluidResult lower = simulate_fluid(model, theta - delta);
    const FluidResult centre = simulate_fluid(model, theta);
    const FluidResult upper = simulate_fluid(model, theta + delta);

    FiniteDiffReport report;
    report.central_difference = (upper.loss_volume - lower.loss_volume) / (2.0 * delta);
    report.ipa = fluid_ipa(centre);
    report.discrepancy = std::abs(report.central_difference - report.ipa) /
                         std::max(1.0, static_cast<double>(centre.lossy_periods));
    report.degenerate =
        lower.lossy_periods != upper.lossy_periods || lower.lossy_periods != centre.lossy_periods;
    return report;
}

}  // namespace fluidipa
