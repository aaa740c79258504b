#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fluidipa/arrival_trace.hpp"
#include "fluidipa/perturbation.hpp"
#include "fluidipa/queue.hpp"

namespace fluidipa {

/// Paired run at capacity k and k+1 on one trace.
struct CoupledResult {
    int capacity = 1;
    double service_time = 1.0;
    std::int64_t lost_nominal = 0;
    std::int64_t lost_perturbed = 0;
    double loss_nominal = 0.0;    // L(k)
    double loss_perturbed = 0.0;  // L(k+1)
    double delta_loss = 0.0;      // L(k+1) - L(k)
    int lossy_periods = 0;
    int lossy_after_short_idle = 0;
    int lossy_after_long_idle = 0;
    int type1_count = 0;
    double ipa = 0.0;    // -s * lossy_periods
    double error = 0.0;  // |delta_loss - ipa|
    double bound = 0.0;  // s * lossy_after_short_idle
    std::optional<double> relative_error;  // error / |ipa|; empty when no lossy period

    friend bool operator==(const CoupledResult&, const CoupledResult&) = default;
};

CoupledResult coupled_run(const ArrivalTrace& trace, const QueueParams& params);

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckOutcome {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
};

struct BoundsReport {
    CheckOutcome exactness;       // delta_loss == -s * type1_count
    CheckOutcome error_bound;     // error <= s * N_s
    CheckOutcome relative_bound;  // relative_error <= N_s / N <= 1

    bool passed() const noexcept;
};

BoundsReport check_bounds(const CoupledResult& result);

struct DeltaDiscrepancy {
    double time = 0.0;
    int predicted = 0;
    int actual = 0;
};

struct Lemma1Report {
    bool holds = true;                          // prediction matches everywhere
    bool coupling_in_range = true;              // actual difference always in {0, 1}
    std::optional<DeltaDiscrepancy> first_mismatch;
    std::optional<DeltaDiscrepancy> first_out_of_range;
    std::size_t intervals_checked = 0;
};

/// Compares predict_delta_x against the simulated difference on every
/// interval between consecutive event epochs of either run.
Lemma1Report verify_lemma1(const ArrivalTrace& trace, const QueueParams& params);

}  // namespace fluidipa
