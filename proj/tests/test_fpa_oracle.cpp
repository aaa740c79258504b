#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "fluidipa/fpa_oracle.hpp"
#include "fluidipa/rng.hpp"
#include "fluidipa/serialize.hpp"
#include "oracle.hpp"

using namespace fluidipa;
using fixtures::params_for;

TEST(CoupledRun, TraceCBoundIsTight) {
    const auto trace = fixtures::trace_c();
    const auto r = coupled_run(trace, params_for(trace, 1));
    EXPECT_EQ(r.delta_loss, -1.0);
    EXPECT_EQ(r.type1_count, 1);
    EXPECT_EQ(r.ipa, -2.0);
    EXPECT_EQ(r.error, 1.0);
    EXPECT_EQ(r.bound, 1.0);
    ASSERT_TRUE(r.relative_error.has_value());
    EXPECT_EQ(*r.relative_error, 0.5);
    EXPECT_EQ(r.lossy_periods, 2);
    EXPECT_EQ(r.lossy_after_short_idle, 1);
}

TEST(CoupledRun, TraceBIsExact) {
    const auto trace = fixtures::trace_b();
    const auto r = coupled_run(trace, params_for(trace, 1));
    EXPECT_EQ(r.delta_loss, -2.0);
    EXPECT_EQ(r.type1_count, 2);
    EXPECT_EQ(r.ipa, -2.0);
    EXPECT_EQ(r.error, 0.0);
    EXPECT_EQ(r.bound, 1.0);
}

TEST(CoupledRun, LossFree) {
    const ArrivalTrace trace({0.0, 2.0, 4.0}, 6.0);
    for (int k : {1, 2, 5}) {
        const auto r = coupled_run(trace, {k, 1.0, 6.0});
        EXPECT_EQ(r.delta_loss, 0.0);
        EXPECT_EQ(r.error, 0.0);
        EXPECT_FALSE(r.relative_error.has_value());
    }
}

TEST(CoupledRun, DoesNotMutateTrace) {
    const auto trace = fixtures::trace_b();
    const auto copy = trace;
    coupled_run(trace, params_for(trace, 1));
    EXPECT_EQ(trace, copy);
}

TEST(CheckBounds, TraceCPasses) {
    const auto trace = fixtures::trace_c();
    const auto report = check_bounds(coupled_run(trace, params_for(trace, 1)));
    EXPECT_TRUE(report.passed());
    EXPECT_EQ(report.exactness.status, CheckStatus::Pass);
    EXPECT_EQ(report.error_bound.status, CheckStatus::Pass);
    EXPECT_EQ(report.relative_bound.status, CheckStatus::Pass);
}

TEST(CheckBounds, ReportsExactnessViolation) {
    const auto trace = fixtures::trace_c();
    auto r = coupled_run(trace, params_for(trace, 1));
    r.delta_loss = -2.0;
    const auto report = check_bounds(r);
    EXPECT_FALSE(report.passed());
    EXPECT_EQ(report.exactness.status, CheckStatus::Fail);
    EXPECT_NE(report.exactness.detail.find("-2"), std::string::npos);
}

TEST(CheckBounds, ReportsBoundViolations) {
    CoupledResult r;
    r.service_time = 1.0;
    r.lossy_periods = 2;
    r.lossy_after_short_idle = 0;
    r.type1_count = 1;
    r.delta_loss = -1.0;
    r.ipa = -2.0;
    r.error = 1.0;
    r.bound = 0.0;
    r.relative_error = 0.5;
    const auto report = check_bounds(r);
    EXPECT_EQ(report.exactness.status, CheckStatus::Pass);
    EXPECT_EQ(report.error_bound.status, CheckStatus::Fail);
    EXPECT_EQ(report.relative_bound.status, CheckStatus::Fail);
}

TEST(CheckBounds, NoLossyPeriodSkipsRelativeCheck) {
    const ArrivalTrace trace({0.0, 2.0}, 4.0);
    const auto report = check_bounds(coupled_run(trace, {1, 1.0, 4.0}));
    EXPECT_TRUE(report.passed());
    EXPECT_EQ(report.relative_bound.status, CheckStatus::Skipped);
    EXPECT_NE(report.relative_bound.detail.find("UNDEFINED"), std::string::npos);
}

TEST(CheckBounds, LateArrivalBreaksExactnessButNotTheBound) {
    const auto trace = fixtures::trace_b_late();
    const auto r = coupled_run(trace, params_for(trace, 1));
    EXPECT_EQ(r.lost_nominal, 3);
    EXPECT_EQ(r.lost_perturbed, 2);
    EXPECT_EQ(r.delta_loss, -1.0);
    EXPECT_EQ(r.type1_count, 2);
    const auto report = check_bounds(r);
    EXPECT_EQ(report.exactness.status, CheckStatus::Fail);
    EXPECT_EQ(report.error_bound.status, CheckStatus::Pass);
    EXPECT_EQ(report.relative_bound.status, CheckStatus::Pass);
}

TEST(VerifyLemma1, HandFixtures) {
    for (const auto& trace : {fixtures::trace_a(), fixtures::trace_c()}) {
        const auto report = verify_lemma1(trace, params_for(trace, 1));
        EXPECT_TRUE(report.holds) << trace.provenance();
        EXPECT_TRUE(report.coupling_in_range) << trace.provenance();
        EXPECT_GT(report.intervals_checked, 0u);
    }
    const ArrivalTrace loss_free({0.0, 2.0, 4.0}, 6.0);
    EXPECT_TRUE(verify_lemma1(loss_free, {3, 1.0, 6.0}).holds);
}

TEST(VerifyLemma1, TraceBFirstDiscrepancyAfterSecondAbsorption) {
    const auto trace = fixtures::trace_b();
    const auto report = verify_lemma1(trace, params_for(trace, 1));
    EXPECT_FALSE(report.holds);
    EXPECT_FALSE(report.coupling_in_range);
    ASSERT_TRUE(report.first_mismatch.has_value());
    EXPECT_DOUBLE_EQ(report.first_mismatch->time, 2.3);
    EXPECT_EQ(report.first_mismatch->actual, 2);
    EXPECT_EQ(report.first_mismatch->predicted, 1);
}

TEST(CoupledProperty, AgreesWithBruteForce) {
    RandomStream rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        const double s = 0.05 + rng.uniform();
        const double rate = (0.3 + 1.2 * rng.uniform()) / s;
        const double horizon = (50.0 + 400.0 * rng.uniform()) / rate;
        const int k = 1 + static_cast<int>(rng.uniform() * 10);
        const auto trace = generate_poisson_trace(rate, horizon, rng.next_u64());
        const std::vector<double> arrivals(trace.arrivals().begin(), trace.arrivals().end());
        const auto r = coupled_run(trace, {k, s, horizon});
        const auto nominal = oracle::brute_force(arrivals, k, s, horizon);
        const auto perturbed = oracle::brute_force(arrivals, k + 1, s, horizon);

        const double delta = s * (static_cast<double>(perturbed.lost.size()) - static_cast<double>(nominal.lost.size()));
        ASSERT_EQ(r.delta_loss, delta);
        const auto counts = nominal.lossy_counts(s);
        ASSERT_EQ(r.lossy_periods, counts.lossy);
        ASSERT_EQ(r.lossy_after_short_idle, counts.lossy_short);
        const long gap = static_cast<long>(perturbed.lost.size()) - static_cast<long>(nominal.lost.size()) + counts.lossy;
        EXPECT_EQ(r.error, s * static_cast<double>(std::abs(gap)));
        EXPECT_EQ(r.type1_count >= counts.lossy_long, true);
    }
}

TEST(CoupledJson, RoundTrip) {
    const auto trace = fixtures::trace_c();
    const auto r = coupled_run(trace, params_for(trace, 1));
    const nlohmann::json j = r;
    EXPECT_EQ(j.get<CoupledResult>(), r);
    EXPECT_EQ(j.at("rel_error").get<double>(), 0.5);

    const ArrivalTrace loss_free({0.0}, 2.0);
    const nlohmann::json undefined = coupled_run(loss_free, {1, 1.0, 2.0});
    EXPECT_EQ(undefined.at("rel_error"), "UNDEFINED");
    EXPECT_EQ(undefined.get<CoupledResult>(), coupled_run(loss_free, {1, 1.0, 2.0}));
}
