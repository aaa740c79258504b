#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "fixtures.hpp"
#include "fluidipa/csv.hpp"
#include "fluidipa/errors.hpp"
#include "fluidipa/serialize.hpp"

using namespace fluidipa;

TEST(FormatDouble, ShortestRoundTrip) {
    for (double v : {0.0, 0.1, 1.0 / 3.0, -2.5, 1e-300, 123456789.125, std::nextafter(1.0, 2.0)}) {
        EXPECT_EQ(std::stod(format_double(v)), v) << format_double(v);
    }
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(15.0), "15");
}

TEST(TrajectoryCsv, RoundTrip) {
    const std::vector<IterateRecord> rs{
        {1, 15.0, 15, 3.1, 0.2, 2.0},
        {2, 13.0, 13, 2.9000000000000004, -0.1 / 3.0, -0.2},
    };
    std::stringstream ss;
    write_trajectory_csv(ss, rs);
    EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), kTrajectoryHeader);
    EXPECT_EQ(read_trajectory_csv(ss), rs);
}

TEST(TrajectoryCsv, RejectsBadInput) {
    std::stringstream wrong_header("i,theta,k\n1,2,3\n");
    EXPECT_THROW(read_trajectory_csv(wrong_header), FormatError);
    std::stringstream short_row(std::string(kTrajectoryHeader) + "\n1,2,3\n");
    try {
        read_trajectory_csv(short_row);
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    std::stringstream junk(std::string(kTrajectoryHeader) + "\n1,2,x,0,0,0\n");
    EXPECT_THROW(read_trajectory_csv(junk), FormatError);
}

TEST(SweepCsv, RoundTrip) {
    const std::vector<SweepRow> rows{
        {0xFFFFFFFFFFFFFFFFull, 3, 4, 1, 3, -0.3, -0.4, 0.1, 0.1},
        {17, 1, 0, 0, 0, 0.0, -0.0, 0.0, 0.0},
    };
    std::stringstream ss;
    write_sweep_csv(ss, rows);
    EXPECT_EQ(read_sweep_csv(ss), rows);
}

TEST(SweepCsv, RowFromCase) {
    SweepConfig c;
    c.arrivals_max = 200.0;
    const auto sc = run_queue_case(c, 99);
    const auto row = to_sweep_row(sc);
    EXPECT_EQ(row.seed, 99u);
    EXPECT_EQ(row.k, sc.params.capacity);
    EXPECT_EQ(row.lossy_periods, sc.coupled.lossy_periods);
    EXPECT_EQ(row.type1_count, sc.coupled.type1_count);
    EXPECT_EQ(row.error, sc.coupled.error);
}

TEST(Json, SimResultRoundTrip) {
    const auto trace = fixtures::trace_b();
    const auto r = simulate(trace, fixtures::params_for(trace, 1));
    const nlohmann::json j = r;
    EXPECT_EQ(j.at("busy_periods").at(0).at("preceding_idle"), "INITIAL");
    EXPECT_EQ(j.get<SimResult>(), r);
}

TEST(Json, CoupledUndefinedRelative) {
    const ArrivalTrace quiet({0.0, 5.0}, 10.0);
    const auto r = coupled_run(quiet, {1, 1.0, 10.0});
    const nlohmann::json j = r;
    EXPECT_EQ(j.at("rel_error"), "UNDEFINED");
    EXPECT_EQ(j.get<CoupledResult>(), r);
}

TEST(Json, ExperimentConfigRoundTrip) {
    ExperimentConfig c;
    c.workload = {50.0, 0.02, 10.0};
    c.optimizer.theta0 = 1.0;
    c.optimizer.iterations = 7;
    c.replications = 3;
    c.base_seed = 0xDEADBEEFCAFEull;
    c.trajectory_path = "out/traj.csv";
    const nlohmann::json j = c;
    EXPECT_EQ(j.get<ExperimentConfig>(), c);
    EXPECT_EQ(j.at("optimizer").at("lambda0"), 10.0);
}

TEST(Json, ExperimentConfigDefaultsAndErrors) {
    const auto c = nlohmann::json::parse(R"({"workload": {"rate": 90, "s": 0.01, "t_f": 20}})").get<ExperimentConfig>();
    EXPECT_EQ(c.optimizer, OptimizerConfig{});
    EXPECT_THROW(nlohmann::json::parse(R"({"workload": {"rate": "fast"}})").get<ExperimentConfig>(), std::exception);
}

TEST(Json, ReplicationEntryRoundTrip) {
    ReplicationEntry e;
    e.capacity = 6;
    e.replications = 2;
    e.cost = {1.5, 0.25, 2};
    e.expected_relative_error = 0.125;
    e.undefined_relative = 1;
    const nlohmann::json j = e;
    EXPECT_EQ(j.get<ReplicationEntry>(), e);
    e.expected_relative_error.reset();
    EXPECT_EQ(nlohmann::json(e).get<ReplicationEntry>(), e);
}

TEST(Json, DumpIsStable) {
    const auto trace = fixtures::trace_c();
    const auto r = coupled_run(trace, fixtures::params_for(trace, 1));
    EXPECT_EQ(nlohmann::json(r).dump(), nlohmann::json(r).dump());
}
