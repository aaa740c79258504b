// fluidipa: command-line front end for the simulator, the coupled
// finite-difference oracle, the fluid model, the optimizer and the
// randomized property sweep.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fluidipa/csv.hpp"
#include "fluidipa/errors.hpp"
#include "fluidipa/experiment.hpp"
#include "fluidipa/fluid.hpp"
#include "fluidipa/fpa_oracle.hpp"
#include "fluidipa/perturbation.hpp"
#include "fluidipa/queue.hpp"
#include "fluidipa/serialize.hpp"
#include "fluidipa/sweep.hpp"

namespace {

using nlohmann::json;
using namespace fluidipa;

struct QueueFlags {
    double rate = 90.0;
    double service = 0.01;
    int k = 6;
    double horizon = 20.0;
    std::uint64_t seed = 1;
    std::string trace_file;
    std::string out;
};

void add_queue_flags(CLI::App* cmd, QueueFlags& f) {
    cmd->add_option("--rate", f.rate, "Poisson arrival rate (jobs/s)")->capture_default_str();
    cmd->add_option("--service", f.service, "Deterministic service time s (s)")->capture_default_str();
    cmd->add_option("--k", f.k, "System capacity (server + buffer)")->capture_default_str();
    cmd->add_option("--horizon", f.horizon, "Horizon t_f (s)")->capture_default_str();
    cmd->add_option("--seed", f.seed, "Trace seed")->capture_default_str();
    cmd->add_option("--trace", f.trace_file, "Read arrivals from a file instead of generating them");
    cmd->add_option("--out", f.out, "Output path (default: stdout)");
}

ArrivalTrace make_trace(const QueueFlags& f) {
    if (!f.trace_file.empty()) return load_trace(f.trace_file, f.horizon);
    return generate_poisson_trace(f.rate, f.horizon, f.seed);
}

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

int cmd_simulate(const QueueFlags& f, bool with_events) {
    const auto trace = make_trace(f);
    const auto result = simulate(trace, {f.k, f.service, f.horizon});
    json j = result;
    if (!with_events) j.erase("event_log");
    j["ipa"] = ipa_derivative(result);
    j["arrivals"] = trace.size();
    emit(f.out, j.dump(2) + "\n");
    return 0;
}

int cmd_coupled(const QueueFlags& f) {
    const auto trace = make_trace(f);
    const QueueParams params{f.k, f.service, f.horizon};
    const auto coupled = coupled_run(trace, params);
    const auto bounds = check_bounds(coupled);
    const auto lemma = verify_lemma1(trace, params);
    json j = {{"coupled", coupled}, {"bounds", bounds}, {"lemma1", lemma}};
    if (!lemma.holds) j["perturbation_log"] = track(trace, params);
    emit(f.out, j.dump(2) + "\n");
    return bounds.passed() && lemma.holds && lemma.coupling_in_range ? 0 : 1;
}

int cmd_fluid(const std::string& config, double theta, double delta, double tolerance, const std::string& out) {
    const FluidModel model = read_json(config).get<FluidModel>();
    const auto result = simulate_fluid(model, theta);
    json j = {{"result", result}};
    int status = 0;
    if (delta > 0.0) {
        const auto check = finite_diff_check(model, theta, delta);
        j["finite_diff"] = check;
        if (!check.degenerate && !(check.discrepancy <= tolerance)) status = 1;
    }
    emit(out, j.dump(2) + "\n");
    return status;
}

int cmd_estimate(const QueueFlags& f, int k_max, double a, std::size_t reps) {
    const Workload workload{f.rate, f.service, f.horizon};
    json entries = json::array();
    for (int k = f.k; k <= std::max(f.k, k_max); ++k) {
        entries.push_back(estimate_expected_error(k, workload, a, reps, f.seed));
    }
    emit(f.out, json{{"workload", workload}, {"a", a}, {"base_seed", f.seed}, {"entries", entries}}.dump(2) + "\n");
    return 0;
}

int cmd_verify(const SweepConfig& config, const std::string& out, const std::string& report_path) {
    const auto report = property_sweep(config);

    std::vector<SweepRow> rows;
    rows.reserve(report.queue_cases.size());
    for (const auto& c : report.queue_cases) rows.push_back(to_sweep_row(c));
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    emit(out, csv.str());

    json counterexamples = json::array();
    for (const auto& c : report.queue_cases) {
        if (c.bounds.passed() && c.lemma1.holds && c.lemma1.coupling_in_range) continue;
        if (counterexamples.size() >= 20) break;
        counterexamples.push_back(counterexample_json(c, sweep_case_trace(config, c.seed)));
    }
    json fluid_failures = json::array();
    for (const auto& c : report.fluid_cases) {
        if (c.report.degenerate || c.report.discrepancy <= config.fluid_tolerance) continue;
        fluid_failures.push_back({{"seed", c.seed}, {"model", c.model}, {"theta", c.theta}, {"report", c.report}});
    }
    json summary = {{"cases", config.cases},
                    {"fluid_cases", config.fluid_cases},
                    {"seed", config.seed},
                    {"exactness_failures", report.exactness_failures},
                    {"error_bound_failures", report.error_bound_failures},
                    {"relative_bound_failures", report.relative_bound_failures},
                    {"relative_bound_skipped", report.relative_bound_skipped},
                    {"lemma1_failures", report.lemma1_failures},
                    {"coupling_range_failures", report.coupling_range_failures},
                    {"fluid_failures", report.fluid_failures},
                    {"fluid_flagged", report.fluid_flagged},
                    {"passed", report.passed()},
                    {"counterexamples", counterexamples},
                    {"fluid_counterexamples", fluid_failures}};
    if (!report_path.empty()) {
        emit(report_path, summary.dump(2) + "\n");
    } else {
        summary.erase("counterexamples");
        summary.erase("fluid_counterexamples");
        std::cerr << summary.dump(2) << '\n';
    }
    return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate IPA for finite-buffer queues: simulation, coupled oracle, fluid model, optimizer"};
    app.require_subcommand(1);

    QueueFlags sim_flags;
    bool with_events = false;
    auto* sim = app.add_subcommand("simulate", "Simulate the G/D/1/k queue and print the SimResult as JSON");
    add_queue_flags(sim, sim_flags);
    sim->add_flag("--events", with_events, "Include the full event log");

    QueueFlags coupled_flags;
    auto* coupled = app.add_subcommand("coupled", "Run capacities k and k+1 on one trace and check the error bounds");
    add_queue_flags(coupled, coupled_flags);

    std::string fluid_config;
    double theta = 3.0;
    double delta = 1e-4;
    double tolerance = 1e-6;
    std::string fluid_out;
    auto* fluid = app.add_subcommand("fluid", "Simulate a piecewise-constant fluid queue");
    fluid->add_option("--config", fluid_config, "Fluid model JSON")->required();
    fluid->add_option("--theta", theta, "Buffer size")->capture_default_str();
    fluid->add_option("--delta", delta, "Finite-difference step (0 disables the check)")->capture_default_str();
    fluid->add_option("--tolerance", tolerance, "Finite-difference tolerance")->capture_default_str();
    fluid->add_option("--out", fluid_out, "Output path (default: stdout)");

    ExperimentConfig exp;
    std::string exp_config;
    std::string traj_out;
    std::string summary_out;
    auto* opt = app.add_subcommand("optimize", "Run the stochastic-approximation optimizer; writes the iterate CSV");
    opt->add_option("--config", exp_config, "Experiment JSON (flags override it)");
    auto* o_rate = opt->add_option("--rate", exp.workload.arrival_rate, "Arrival rate")->capture_default_str();
    auto* o_service = opt->add_option("--service", exp.workload.service_time, "Service time")->capture_default_str();
    auto* o_horizon = opt->add_option("--horizon", exp.workload.horizon, "Horizon")->capture_default_str();
    auto* o_seed = opt->add_option("--seed", exp.base_seed, "Base seed")->capture_default_str();
    auto* o_theta0 = opt->add_option("--theta0", exp.optimizer.theta0, "Initial theta")->capture_default_str();
    auto* o_iters = opt->add_option("--iterations", exp.optimizer.iterations, "Iterations")->capture_default_str();
    auto* o_a = opt->add_option("--a", exp.optimizer.buffer_cost, "Cost per buffer unit")->capture_default_str();
    auto* o_r = opt->add_option("--r", exp.optimizer.truncation, "Truncation threshold")->capture_default_str();
    auto* o_reps = opt->add_option("--reps", exp.replications, "Replications (recorded in the summary)");
    opt->add_option("--out", traj_out, "Trajectory CSV path (default: stdout)");
    opt->add_option("--summary", summary_out, "Summary JSON path");

    QueueFlags est_flags;
    int k_max = 0;
    double est_a = 0.2;
    std::size_t reps = 200;
    std::string est_config;
    auto* est = app.add_subcommand("estimate", "Replication estimates of delta_L, IPA, E(k) and N_s/N");
    add_queue_flags(est, est_flags);
    est->add_option("--k-max", k_max, "Also estimate k+1..k-max");
    est->add_option("--a", est_a, "Cost per buffer unit")->capture_default_str();
    est->add_option("--reps", reps, "Replications per k")->capture_default_str();
    est->add_option("--config", est_config, "Experiment JSON supplying the workload and base seed");

    SweepConfig sweep;
    std::string sweep_out;
    std::string sweep_report;
    auto* verify = app.add_subcommand("verify", "Randomized sweep of the exactness identity, error bounds and fluid IPA");
    verify->add_option("--cases", sweep.cases, "Queue cases")->capture_default_str();
    verify->add_option("--fluid-cases", sweep.fluid_cases, "Fluid cases")->capture_default_str();
    verify->add_option("--seed", sweep.seed, "Sweep seed")->capture_default_str();
    verify->add_option("--k", sweep.capacity_max, "Largest capacity drawn")->capture_default_str();
    verify->add_option("--out", sweep_out, "Per-case CSV (default: stdout)");
    verify->add_option("--report", sweep_report, "JSON report with counterexamples");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) return cmd_simulate(sim_flags, with_events);
        if (*coupled) return cmd_coupled(coupled_flags);
        if (*fluid) return cmd_fluid(fluid_config, theta, delta, tolerance, fluid_out);
        if (*opt) {
            ExperimentConfig config = exp;
            if (!exp_config.empty()) {
                config = read_json(exp_config).get<ExperimentConfig>();
                if (o_rate->count()) config.workload.arrival_rate = exp.workload.arrival_rate;
                if (o_service->count()) config.workload.service_time = exp.workload.service_time;
                if (o_horizon->count()) config.workload.horizon = exp.workload.horizon;
                if (o_seed->count()) config.base_seed = exp.base_seed;
                if (o_theta0->count()) config.optimizer.theta0 = exp.optimizer.theta0;
                if (o_iters->count()) config.optimizer.iterations = exp.optimizer.iterations;
                if (o_a->count()) config.optimizer.buffer_cost = exp.optimizer.buffer_cost;
                if (o_r->count()) config.optimizer.truncation = exp.optimizer.truncation;
                if (o_reps->count()) config.replications = exp.replications;
            }
            if (!traj_out.empty()) config.trajectory_path = traj_out;
            if (!summary_out.empty()) config.summary_path = summary_out;
            const bool to_stdout = !config.trajectory_path;
            const auto outcome = run_experiment(config);
            if (to_stdout) write_trajectory_csv(std::cout, outcome.records);
            return 0;
        }
        if (*est) {
            if (!est_config.empty()) {
                const auto config = read_json(est_config).get<ExperimentConfig>();
                est_flags.rate = config.workload.arrival_rate;
                est_flags.service = config.workload.service_time;
                est_flags.horizon = config.workload.horizon;
                est_flags.seed = config.base_seed;
                est_a = config.optimizer.buffer_cost;
            }
            return cmd_estimate(est_flags, k_max, est_a, reps);
        }
        if (*verify) return cmd_verify(sweep, sweep_out, sweep_report);
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << '\n';
        return 2;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
