#include "fluidipa/serialize.hpp"

#include <stdexcept>

namespace fluidipa {

using nlohmann::json;

namespace {

const char* kind_name(EventKind kind) {
    switch (kind) {
    case EventKind::Arrival: return "arrival";
    case EventKind::Departure: return "departure";
    case EventKind::Loss: return "loss";
    }
    return "?";
}

EventKind kind_from(const std::string& name) {
    if (name == "arrival") return EventKind::Arrival;
    if (name == "departure") return EventKind::Departure;
    if (name == "loss") return EventKind::Loss;
    throw std::invalid_argument("unknown event kind '" + name + "'");
}

const char* status_name(CheckStatus s) {
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
    }
    return "?";
}

json outcome_json(const CheckOutcome& c) { return {{"check", c.name}, {"status", status_name(c.status)}, {"detail", c.detail}}; }

json discrepancy_json(const std::optional<DeltaDiscrepancy>& d) {
    if (!d) return nullptr;
    return {{"t", d->time}, {"predicted", d->predicted}, {"actual", d->actual}};
}

template <typename T>
json segments_json(const std::vector<Segment<T>>& segs) {
    json out = json::array();
    for (const auto& s : segs) out.push_back({{"start", s.start}, {"end", s.end}, {"value", s.value}});
    return out;
}

}  // namespace

void to_json(json& j, const QueueParams& p) { j = {{"k", p.capacity}, {"s", p.service_time}, {"t_f", p.horizon}}; }

void from_json(const json& j, QueueParams& p) {
    j.at("k").get_to(p.capacity);
    j.at("s").get_to(p.service_time);
    j.at("t_f").get_to(p.horizon);
}

void to_json(json& j, const BusyPeriodRecord& b) {
    j = {{"start", b.start}, {"end", b.end}, {"lossy", b.lossy}, {"loss_epochs", b.loss_epochs}};
    j["preceding_idle"] = b.preceding_idle ? json(*b.preceding_idle) : json("INITIAL");
}

void from_json(const json& j, BusyPeriodRecord& b) {
    j.at("start").get_to(b.start);
    j.at("end").get_to(b.end);
    j.at("lossy").get_to(b.lossy);
    j.at("loss_epochs").get_to(b.loss_epochs);
    const auto& idle = j.at("preceding_idle");
    b.preceding_idle = idle.is_string() ? std::nullopt : std::optional<double>(idle.get<double>());
}

void to_json(json& j, const QueueEvent& e) { j = {{"t", e.time}, {"kind", kind_name(e.kind)}, {"x", e.occupancy}}; }

void from_json(const json& j, QueueEvent& e) {
    j.at("t").get_to(e.time);
    e.kind = kind_from(j.at("kind").get<std::string>());
    j.at("x").get_to(e.occupancy);
}

void to_json(json& j, const SimResult& r) {
    j = {{"params", r.params},
         {"n_lost", r.lost_jobs},
         {"loss_volume", r.loss_volume},
         {"busy_periods", r.busy_periods},
         {"N", r.lossy_periods},
         {"N_s", r.lossy_after_short_idle},
         {"N_ell", r.lossy_after_long_idle},
         {"event_log", r.event_log}};
}

void from_json(const json& j, SimResult& r) {
    j.at("params").get_to(r.params);
    j.at("n_lost").get_to(r.lost_jobs);
    j.at("loss_volume").get_to(r.loss_volume);
    j.at("busy_periods").get_to(r.busy_periods);
    j.at("N").get_to(r.lossy_periods);
    j.at("N_s").get_to(r.lossy_after_short_idle);
    j.at("N_ell").get_to(r.lossy_after_long_idle);
    j.at("event_log").get_to(r.event_log);
}

void to_json(json& j, const PerturbationLog& log) {
    j = {{"k", log.capacity},
         {"s", log.service_time},
         {"t_f", log.horizon},
         {"type1_epochs", log.type1_epochs},
         {"type2_epochs", log.type2_epochs},
         {"N_1", log.type1_count()},
         {"zeta_segments", segments_json(log.lag_segments)},
         {"psi_segments", segments_json(log.absorbed_segments)},
         {"delta_x_segments", segments_json(log.delta_segments)}};
}

void to_json(json& j, const CoupledResult& r) {
    j = {{"k", r.capacity},
         {"s", r.service_time},
         {"n_lost_k", r.lost_nominal},
         {"n_lost_k1", r.lost_perturbed},
         {"L_k", r.loss_nominal},
         {"L_k1", r.loss_perturbed},
         {"delta_L", r.delta_loss},
         {"N", r.lossy_periods},
         {"N_s", r.lossy_after_short_idle},
         {"N_ell", r.lossy_after_long_idle},
         {"N_1", r.type1_count},
         {"ipa", r.ipa},
         {"E", r.error},
         {"bound", r.bound}};
    j["rel_error"] = r.relative_error ? json(*r.relative_error) : json("UNDEFINED");
}

void from_json(const json& j, CoupledResult& r) {
    j.at("k").get_to(r.capacity);
    j.at("s").get_to(r.service_time);
    j.at("n_lost_k").get_to(r.lost_nominal);
    j.at("n_lost_k1").get_to(r.lost_perturbed);
    j.at("L_k").get_to(r.loss_nominal);
    j.at("L_k1").get_to(r.loss_perturbed);
    j.at("delta_L").get_to(r.delta_loss);
    j.at("N").get_to(r.lossy_periods);
    j.at("N_s").get_to(r.lossy_after_short_idle);
    j.at("N_ell").get_to(r.lossy_after_long_idle);
    j.at("N_1").get_to(r.type1_count);
    j.at("ipa").get_to(r.ipa);
    j.at("E").get_to(r.error);
    j.at("bound").get_to(r.bound);
    const auto& rel = j.at("rel_error");
    r.relative_error = rel.is_string() ? std::nullopt : std::optional<double>(rel.get<double>());
}

void to_json(json& j, const BoundsReport& r) {
    j = {{"passed", r.passed()},
         {"checks", {outcome_json(r.exactness), outcome_json(r.error_bound), outcome_json(r.relative_bound)}}};
}

void to_json(json& j, const Lemma1Report& r) {
    j = {{"holds", r.holds},
         {"coupling_in_range", r.coupling_in_range},
         {"intervals_checked", r.intervals_checked},
         {"first_mismatch", discrepancy_json(r.first_mismatch)},
         {"first_out_of_range", discrepancy_json(r.first_out_of_range)}};
}

void to_json(json& j, const RateSegment& s) { j = {{"start", s.start}, {"alpha", s.inflow}, {"beta", s.service}}; }

void from_json(const json& j, RateSegment& s) {
    j.at("start").get_to(s.start);
    j.at("alpha").get_to(s.inflow);
    j.at("beta").get_to(s.service);
}

void to_json(json& j, const FluidModel& m) {
    j = {{"t_f", m.horizon}, {"x0", m.initial_workload}, {"segments", m.segments}};
}

void from_json(const json& j, FluidModel& m) {
    j.at("t_f").get_to(m.horizon);
    m.initial_workload = j.value("x0", 0.0);
    j.at("segments").get_to(m.segments);
}

void to_json(json& j, const FluidResult& r) {
    json pieces = json::array();
    for (const auto& p : r.trajectory) pieces.push_back({p.t0, p.t1, p.x0, p.x1});
    j = {{"theta", r.theta},
         {"loss_volume", r.loss_volume},
         {"outflow_volume", r.outflow_volume},
         {"final_workload", r.final_workload},
         {"N", r.lossy_periods},
         {"ipa", fluid_ipa(r)},
         {"breakpoints", r.breakpoints},
         {"trajectory", pieces}};
}

void to_json(json& j, const FiniteDiffReport& r) {
    j = {{"central_difference", r.central_difference},
         {"ipa", r.ipa},
         {"discrepancy", r.discrepancy},
         {"degenerate", r.degenerate}};
}

void to_json(json& j, const OptimizerConfig& c) {
    j = {{"a", c.buffer_cost},     {"r", c.truncation},         {"lambda0", c.step_scale},
         {"p", c.step_exponent},   {"iterations", c.iterations}, {"theta0", c.theta0},
         {"k_min", c.min_capacity}};
}

void from_json(const json& j, OptimizerConfig& c) {
    const OptimizerConfig d;
    c.buffer_cost = j.value("a", d.buffer_cost);
    c.truncation = j.value("r", d.truncation);
    c.step_scale = j.value("lambda0", d.step_scale);
    c.step_exponent = j.value("p", d.step_exponent);
    c.iterations = j.value("iterations", d.iterations);
    c.theta0 = j.value("theta0", d.theta0);
    c.min_capacity = j.value("k_min", d.min_capacity);
}

void to_json(json& j, const Workload& w) { j = {{"rate", w.arrival_rate}, {"s", w.service_time}, {"t_f", w.horizon}}; }

void from_json(const json& j, Workload& w) {
    const Workload d;
    w.arrival_rate = j.value("rate", d.arrival_rate);
    w.service_time = j.value("s", d.service_time);
    w.horizon = j.value("t_f", d.horizon);
}

void to_json(json& j, const ExperimentConfig& c) {
    j = {{"workload", c.workload},
         {"optimizer", c.optimizer},
         {"replications", c.replications},
         {"base_seed", c.base_seed}};
    json outputs = json::object();
    if (c.trajectory_path) outputs["trajectory"] = c.trajectory_path->generic_string();
    if (c.summary_path) outputs["summary"] = c.summary_path->generic_string();
    j["outputs"] = outputs;
}

void from_json(const json& j, ExperimentConfig& c) {
    c = ExperimentConfig{};
    if (j.contains("workload")) j.at("workload").get_to(c.workload);
    if (j.contains("optimizer")) j.at("optimizer").get_to(c.optimizer);
    c.replications = j.value("replications", c.replications);
    c.base_seed = j.value("base_seed", c.base_seed);
    if (j.contains("outputs")) {
        const auto& out = j.at("outputs");
        if (out.contains("trajectory")) c.trajectory_path = out.at("trajectory").get<std::string>();
        if (out.contains("summary")) c.summary_path = out.at("summary").get<std::string>();
    }
}

void to_json(json& j, const MeanStat& m) { j = {{"mean", m.mean}, {"se", m.std_error}, {"n", m.samples}}; }

void from_json(const json& j, MeanStat& m) {
    j.at("mean").get_to(m.mean);
    j.at("se").get_to(m.std_error);
    j.at("n").get_to(m.samples);
}

void to_json(json& j, const ReplicationEntry& e) {
    j = {{"k", e.capacity},
         {"replications", e.replications},
         {"F", e.cost},
         {"Fc_prime", e.cost_derivative},
         {"delta_L", e.delta_loss},
         {"ipa", e.ipa},
         {"E", e.error},
         {"Ns_over_N", e.short_idle_ratio},
         {"undefined_rel_error", e.undefined_relative},
         {"degenerate", e.degenerate}};
    j["eps_hat"] = e.expected_relative_error ? json(*e.expected_relative_error) : json(nullptr);
}

void from_json(const json& j, ReplicationEntry& e) {
    j.at("k").get_to(e.capacity);
    j.at("replications").get_to(e.replications);
    j.at("F").get_to(e.cost);
    j.at("Fc_prime").get_to(e.cost_derivative);
    j.at("delta_L").get_to(e.delta_loss);
    j.at("ipa").get_to(e.ipa);
    j.at("E").get_to(e.error);
    j.at("Ns_over_N").get_to(e.short_idle_ratio);
    j.at("undefined_rel_error").get_to(e.undefined_relative);
    j.at("degenerate").get_to(e.degenerate);
    const auto& eps = j.at("eps_hat");
    e.expected_relative_error = eps.is_null() ? std::nullopt : std::optional<double>(eps.get<double>());
}

json trace_json(const ArrivalTrace& trace) {
    return {{"t_f", trace.horizon()},
            {"provenance", trace.provenance()},
            {"arrivals", std::vector<double>(trace.arrivals().begin(), trace.arrivals().end())}};
}

json counterexample_json(const SweepCase& c, const ArrivalTrace& trace) {
    return {{"seed", c.seed},
            {"rate", c.arrival_rate},
            {"params", c.params},
            {"coupled", c.coupled},
            {"bounds", c.bounds},
            {"lemma1", c.lemma1},
            {"trace", trace_json(trace)}};
}

}  // namespace fluidipa
