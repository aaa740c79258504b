#include "fluidipa/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "fluidipa/arrival_trace.hpp"
#include "parallel.hpp"

namespace fluidipa {

namespace {

double uniform_in(RandomStream& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

int integer_in(RandomStream& rng, int lo, int hi) {
    const auto span = static_cast<double>(hi - lo + 1);
    return lo + std::min(hi - lo, static_cast<int>(std::floor(rng.uniform() * span)));
}

}  // namespace

bool SweepReport::passed() const noexcept {
    return exactness_failures == 0 && error_bound_failures == 0 && relative_bound_failures == 0 &&
           lemma1_failures == 0 && coupling_range_failures == 0 && fluid_failures == 0;
}

DrawnQueueCase draw_queue_case(const SweepConfig& config, RandomStream& rng) {
    const double load = uniform_in(rng, config.load_min, config.load_max);
    const double s = uniform_in(rng, config.service_min, config.service_max);
    const double rate = load / s;
    const int k = integer_in(rng, config.capacity_min, config.capacity_max);
    const double expected_arrivals = uniform_in(rng, config.arrivals_min, config.arrivals_max);
    return {rate, QueueParams{k, s, expected_arrivals / rate}};
}

FluidModel random_fluid_model(RandomStream& rng) {
    FluidModel model;
    model.horizon = 10.0;
    const int n = integer_in(rng, 1, 20);
    std::vector<double> starts{0.0};
    for (int i = 1; i < n; ++i) starts.push_back(uniform_in(rng, 0.0, model.horizon));
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
    for (double start : starts) {
        const double alpha = uniform_in(rng, 0.0, 3.0);
        const double beta = uniform_in(rng, 0.0, 3.0);
        model.segments.push_back({start, alpha, beta});
    }
    return model;
}

ArrivalTrace sweep_case_trace(const SweepConfig& config, std::uint64_t case_seed) {
    RandomStream rng(case_seed);
    const auto drawn = draw_queue_case(config, rng);
    return generate_poisson_trace(drawn.arrival_rate, drawn.params.horizon, rng.next_u64());
}

SweepCase run_queue_case(const SweepConfig& config, std::uint64_t case_seed) {
    RandomStream rng(case_seed);
    const auto drawn = draw_queue_case(config, rng);
    const auto trace = sweep_case_trace(config, case_seed);

    SweepCase c;
    c.seed = case_seed;
    c.arrival_rate = drawn.arrival_rate;
    c.params = drawn.params;
    c.coupled = coupled_run(trace, drawn.params);
    c.bounds = check_bounds(c.coupled);
    c.lemma1 = verify_lemma1(trace, drawn.params);
    return c;
}

FluidCase run_fluid_case(const SweepConfig& config, std::uint64_t case_seed) {
    RandomStream rng(case_seed);
    FluidCase c;
    c.seed = case_seed;
    c.model = random_fluid_model(rng);
    c.theta = uniform_in(rng, 0.5, 5.0);
    c.report = finite_diff_check(c.model, c.theta, config.fluid_delta);
    return c;
}

SweepReport property_sweep(const SweepConfig& config) {
    SweepReport report;
    report.queue_cases.resize(config.cases);
    report.fluid_cases.resize(config.fluid_cases);

    detail::parallel_for(config.cases, [&](std::size_t i) {
        report.queue_cases[i] = run_queue_case(config, derive_seed(config.seed, i));
    });
    detail::parallel_for(config.fluid_cases, [&](std::size_t j) {
        report.fluid_cases[j] = run_fluid_case(config, derive_seed(config.seed, config.cases + j));
    });

    for (const auto& c : report.queue_cases) {
        report.exactness_failures += c.bounds.exactness.status == CheckStatus::Fail;
        report.error_bound_failures += c.bounds.error_bound.status == CheckStatus::Fail;
        report.relative_bound_failures += c.bounds.relative_bound.status == CheckStatus::Fail;
        report.relative_bound_skipped += c.bounds.relative_bound.status == CheckStatus::Skipped;
        report.lemma1_failures += !c.lemma1.holds;
        report.coupling_range_failures += !c.lemma1.coupling_in_range;
    }
    for (const auto& c : report.fluid_cases) {
        if (c.report.degenerate) {
            ++report.fluid_flagged;
        } else if (!(c.report.discrepancy <= config.fluid_tolerance)) {
            ++report.fluid_failures;
        }
    }
    return report;
}

}  // namespace fluidipa
