#include "fluidipa/experiment.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fluidipa/csv.hpp"
#include "fluidipa/errors.hpp"
#include "fluidipa/rng.hpp"
#include "fluidipa/serialize.hpp"
#include "parallel.hpp"

namespace fluidipa {

void Workload::validate() const {
    std::ostringstream os;
    if (!(arrival_rate > 0.0) || !std::isfinite(arrival_rate)) {
        os << "arrival rate must be positive, got " << arrival_rate;
    } else if (!(service_time > 0.0) || !std::isfinite(service_time)) {
        os << "service time must be positive, got " << service_time;
    } else if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        os << "horizon must be positive, got " << horizon;
    } else {
        return;
    }
    throw ParameterError(os.str());
}

Evaluator make_queue_evaluator(const Workload& workload, double buffer_cost, std::uint64_t base_seed) {
    workload.validate();
    if (!(buffer_cost >= 0.0)) throw ParameterError("buffer cost must be non-negative");
    return [workload, buffer_cost, base_seed](int k, std::size_t i) {
        const auto trace = generate_poisson_trace(workload.arrival_rate, workload.horizon, derive_seed(base_seed, i));
        const auto result = simulate(trace, {k, workload.service_time, workload.horizon});
        return Evaluation{sample_cost(result, buffer_cost), cost_derivative(result, buffer_cost)};
    };
}

void ExperimentConfig::validate() const {
    workload.validate();
    optimizer.validate();
    if (replications < 1) throw ParameterError("replications must be >= 1");
}

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentOutcome outcome;
    outcome.records = run(config.optimizer,
                          make_queue_evaluator(config.workload, config.optimizer.buffer_cost, config.base_seed));
    const auto& last = outcome.records.back();
    outcome.final_theta = last.theta - last.displacement;
    outcome.final_k = nearest_capacity(outcome.final_theta, config.optimizer.min_capacity);

    if (config.trajectory_path) {
        std::ofstream out(*config.trajectory_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write trajectory " + config.trajectory_path->string());
        write_trajectory_csv(out, outcome.records);
        if (!out) throw std::runtime_error("write failed: " + config.trajectory_path->string());
    }
    if (config.summary_path) {
        std::ofstream out(*config.summary_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write summary " + config.summary_path->string());
        nlohmann::json summary = {
            {"final_theta", outcome.final_theta},
            {"final_k", outcome.final_k},
            {"iterations", outcome.records.size()},
            {"config", config},
        };
        out << summary.dump(2) << '\n';
        if (!out) throw std::runtime_error("write failed: " + config.summary_path->string());
    }
    return outcome;
}

MeanStat mean_stat(std::span<const double> samples) {
    MeanStat m;
    m.samples = samples.size();
    if (samples.empty()) return m;
    double sum = 0.0;
    for (double v : samples) sum += v;
    m.mean = sum / static_cast<double>(samples.size());
    if (samples.size() > 1) {
        double ss = 0.0;
        for (double v : samples) ss += (v - m.mean) * (v - m.mean);
        const double n = static_cast<double>(samples.size());
        m.std_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return m;
}

ReplicationEntry summarize_coupled(int capacity, double buffer_cost, std::span<const CoupledResult> results) {
    ReplicationEntry entry;
    entry.capacity = capacity;
    entry.replications = results.size();

    std::vector<double> cost, deriv, delta, ipa, error, ratio;
    bool any_loss = false;
    for (const auto& r : results) {
        cost.push_back(r.loss_nominal + buffer_cost * static_cast<double>(capacity));
        deriv.push_back(r.ipa + buffer_cost);
        delta.push_back(r.delta_loss);
        ipa.push_back(r.ipa);
        error.push_back(r.error);
        if (r.lossy_periods > 0) {
            ratio.push_back(static_cast<double>(r.lossy_after_short_idle) / static_cast<double>(r.lossy_periods));
        } else {
            ++entry.undefined_relative;
        }
        any_loss = any_loss || r.lost_nominal > 0 || r.lost_perturbed > 0;
    }
    entry.cost = mean_stat(cost);
    entry.cost_derivative = mean_stat(deriv);
    entry.delta_loss = mean_stat(delta);
    entry.ipa = mean_stat(ipa);
    entry.error = mean_stat(error);
    entry.short_idle_ratio = mean_stat(ratio);
    entry.degenerate = !any_loss;
    if (entry.delta_loss.mean != 0.0) {
        entry.expected_relative_error = std::abs(entry.ipa.mean - entry.delta_loss.mean) / std::abs(entry.delta_loss.mean);
    }
    return entry;
}

ReplicationEntry estimate_expected_error(int capacity, const Workload& workload, double buffer_cost,
                                         std::size_t replications, std::uint64_t base_seed) {
    workload.validate();
    if (replications < 1) throw ParameterError("replications must be >= 1");
    const QueueParams params{capacity, workload.service_time, workload.horizon};
    params.validate();

    std::vector<CoupledResult> results(replications);
    detail::parallel_for(replications, [&](std::size_t rep) {
        const auto trace = generate_poisson_trace(workload.arrival_rate, workload.horizon, derive_seed(base_seed, rep));
        results[rep] = coupled_run(trace, params);
    });
    return summarize_coupled(capacity, buffer_cost, results);
}

}  // namespace fluidipa
