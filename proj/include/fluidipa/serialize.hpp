#pragma once

// JSON mappings for the public value types (nlohmann/json ADL hooks).

#include "json.hpp"

#include "fluidipa/arrival_trace.hpp"
#include "fluidipa/experiment.hpp"
#include "fluidipa/fluid.hpp"
#include "fluidipa/fpa_oracle.hpp"
#include "fluidipa/optimizer.hpp"
#include "fluidipa/perturbation.hpp"
#include "fluidipa/queue.hpp"
#include "fluidipa/sweep.hpp"

namespace fluidipa {

void to_json(nlohmann::json& j, const QueueParams& p);
void from_json(const nlohmann::json& j, QueueParams& p);

void to_json(nlohmann::json& j, const BusyPeriodRecord& b);
void from_json(const nlohmann::json& j, BusyPeriodRecord& b);

void to_json(nlohmann::json& j, const QueueEvent& e);
void from_json(const nlohmann::json& j, QueueEvent& e);

void to_json(nlohmann::json& j, const SimResult& r);
void from_json(const nlohmann::json& j, SimResult& r);

void to_json(nlohmann::json& j, const PerturbationLog& log);

void to_json(nlohmann::json& j, const CoupledResult& r);
void from_json(const nlohmann::json& j, CoupledResult& r);

void to_json(nlohmann::json& j, const BoundsReport& r);
void to_json(nlohmann::json& j, const Lemma1Report& r);

void to_json(nlohmann::json& j, const RateSegment& s);
void from_json(const nlohmann::json& j, RateSegment& s);
void to_json(nlohmann::json& j, const FluidModel& m);
void from_json(const nlohmann::json& j, FluidModel& m);
void to_json(nlohmann::json& j, const FluidResult& r);
void to_json(nlohmann::json& j, const FiniteDiffReport& r);

void to_json(nlohmann::json& j, const OptimizerConfig& c);
void from_json(const nlohmann::json& j, OptimizerConfig& c);
void to_json(nlohmann::json& j, const Workload& w);
void from_json(const nlohmann::json& j, Workload& w);
void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

void to_json(nlohmann::json& j, const MeanStat& m);
void from_json(const nlohmann::json& j, MeanStat& m);
void to_json(nlohmann::json& j, const ReplicationEntry& e);
void from_json(const nlohmann::json& j, ReplicationEntry& e);

/// Counterexample dump: trace, parameters, coupled result and both reports.
nlohmann::json counterexample_json(const SweepCase& c, const ArrivalTrace& trace);

nlohmann::json trace_json(const ArrivalTrace& trace);

}  // namespace fluidipa
