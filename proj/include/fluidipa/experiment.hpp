#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "fluidipa/fpa_oracle.hpp"
#include "fluidipa/optimizer.hpp"

namespace fluidipa {

/// Poisson arrivals into the deterministic-service queue.
struct Workload {
    double arrival_rate = 90.0;
    double service_time = 0.01;
    double horizon = 20.0;

    void validate() const;

    friend bool operator==(const Workload&, const Workload&) = default;
};

/// Evaluator running one fresh Poisson path per call. The path for
/// iteration i uses derive_seed(base_seed, i).
Evaluator make_queue_evaluator(const Workload& workload, double buffer_cost, std::uint64_t base_seed);

struct ExperimentConfig {
    Workload workload;
    OptimizerConfig optimizer;
    std::size_t replications = 1;
    std::uint64_t base_seed = 1;
    std::optional<std::filesystem::path> trajectory_path;
    std::optional<std::filesystem::path> summary_path;

    void validate() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct ExperimentOutcome {
    std::vector<IterateRecord> records;
    double final_theta = 0.0;  // theta after the last update
    int final_k = 0;           // nearest_capacity(final_theta)
};

/// Runs the optimizer against a queue evaluator and writes the iterate CSV
/// and JSON summary to the configured paths (if any).
ExperimentOutcome run_experiment(const ExperimentConfig& config);

struct MeanStat {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;

    friend bool operator==(const MeanStat&, const MeanStat&) = default;
};

MeanStat mean_stat(std::span<const double> samples);

/// Replication statistics at one capacity.
struct ReplicationEntry {
    int capacity = 0;
    std::size_t replications = 0;
    MeanStat cost;             // F(k)
    MeanStat cost_derivative;  // F'_c(k)
    MeanStat delta_loss;       // L(k+1) - L(k)
    MeanStat ipa;              // -s N
    MeanStat error;            // E(k)
    MeanStat short_idle_ratio; // N_s / N over paths with N > 0
    std::size_t undefined_relative = 0;
    // |mean(ipa) - mean(delta_loss)| / |mean(delta_loss)|; empty if mean(delta_loss) == 0
    std::optional<double> expected_relative_error;
    bool degenerate = false;  // every replication was loss-free

    friend bool operator==(const ReplicationEntry&, const ReplicationEntry&) = default;
};

using ReplicationSummary = std::vector<ReplicationEntry>;

ReplicationEntry summarize_coupled(int capacity, double buffer_cost, std::span<const CoupledResult> results);

/// Coupled runs on `replications` independent traces at capacity k.
/// Replications run concurrently; the entry does not depend on scheduling.
ReplicationEntry estimate_expected_error(int capacity, const Workload& workload, double buffer_cost,
                                         std::size_t replications, std::uint64_t base_seed);

}  // namespace fluidipa
