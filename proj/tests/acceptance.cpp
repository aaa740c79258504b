// Acceptance suite. Each criterion prints one PASS/FAIL line; the process
// exits 0 only when the criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fixtures.hpp"
#include "fluidipa/experiment.hpp"
#include "fluidipa/fluid.hpp"
#include "fluidipa/fpa_oracle.hpp"
#include "fluidipa/serialize.hpp"
#include "fluidipa/sweep.hpp"

namespace fs = std::filesystem;
using namespace fluidipa;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
    bool soft = false;
};

std::vector<ArrivalTrace> fixture_traces() {
    return {fixtures::trace_a(), fixtures::trace_b(), fixtures::trace_c()};
}

SweepConfig queue_sweep_config() {
    SweepConfig c;
    c.cases = 1000;
    c.fluid_cases = 0;
    c.seed = 7;
    return c;
}

Verdict criterion_1(const fs::path&) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto report = property_sweep(queue_sweep_config());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream os;
    os << report.exactness_failures << "/" << report.queue_cases.size() << " cases with delta_L != -s*N_1";
    for (const auto& c : report.queue_cases) {
        if (c.bounds.exactness.status == CheckStatus::Fail) {
            os << "; first seed " << c.seed << " (" << c.bounds.exactness.detail << ")";
            break;
        }
    }
    os << "; sweep " << secs << " s";
    return {report.exactness_failures == 0 && secs < 60.0, os.str()};
}

Verdict criterion_2(const fs::path&) {
    const auto report = property_sweep(queue_sweep_config());
    std::size_t ratio_over_one = 0;
    for (const auto& c : report.queue_cases) {
        ratio_over_one += c.coupled.lossy_periods > 0 && c.coupled.lossy_after_short_idle > c.coupled.lossy_periods;
    }
    const auto trace = fixtures::trace_c();
    const auto tc = coupled_run(trace, fixtures::params_for(trace, 1));
    const bool tight = tc.error == 1.0 && tc.bound == 1.0 && tc.relative_error && *tc.relative_error == 0.5 &&
                       tc.lossy_periods == 2 && tc.lossy_after_short_idle == 1;
    std::ostringstream os;
    os << "E<=s*N_s failures " << report.error_bound_failures << ", relative failures "
       << report.relative_bound_failures << " (" << report.relative_bound_skipped << " loss-free skipped), N_s/N>1 "
       << ratio_over_one << "; TRACE-C E=" << tc.error << " s*N_s=" << tc.bound
       << " rel=" << (tc.relative_error ? std::to_string(*tc.relative_error) : "undefined");
    return {report.error_bound_failures == 0 && report.relative_bound_failures == 0 && ratio_over_one == 0 && tight,
            os.str()};
}

Verdict criterion_3(const fs::path&) {
    const auto report = property_sweep(queue_sweep_config());
    std::size_t fixture_failures = 0;
    std::ostringstream os;
    for (const auto& trace : fixture_traces()) {
        for (int k : {1, 2, 3}) {
            const auto r = verify_lemma1(trace, fixtures::params_for(trace, k));
            if (!r.holds || !r.coupling_in_range) {
                ++fixture_failures;
                if (fixture_failures == 1 && r.first_mismatch) {
                    os << trace.provenance() << " k=" << k << " mismatch at t=" << r.first_mismatch->time
                       << " (actual " << r.first_mismatch->actual << ", predicted " << r.first_mismatch->predicted
                       << "); ";
                }
            }
        }
    }
    os << "sweep lemma failures " << report.lemma1_failures << "/" << report.queue_cases.size()
       << ", coupling outside {0,1} " << report.coupling_range_failures << ", fixture failures " << fixture_failures;
    return {report.lemma1_failures == 0 && report.coupling_range_failures == 0 && fixture_failures == 0, os.str()};
}

Verdict criterion_4(const fs::path&) {
    SweepConfig c;
    std::size_t accepted = 0, degenerate = 0, failures = 0;
    double worst = 0.0;
    for (std::size_t j = 0; accepted < 200; ++j) {
        const auto fc = run_fluid_case(c, derive_seed(c.seed, 100000 + j));
        if (fc.report.degenerate) {
            ++degenerate;
            continue;
        }
        ++accepted;
        worst = std::max(worst, fc.report.discrepancy);
        failures += !(fc.report.discrepancy <= 1e-6);
    }
    const FluidModel ramp{{{0.0, 2.0, 1.0}}, 10.0, 0.0};
    const FluidModel gap{{{0.0, 2.0, 1.0}, {4.0, 0.0, 1.0}, {6.0, 2.0, 1.0}}, 10.0, 0.0};
    const double d_ramp = fluid_ipa(simulate_fluid(ramp, 3.0));
    const double d_gap = fluid_ipa(simulate_fluid(gap, 3.0));
    std::ostringstream os;
    os << failures << "/" << accepted << " models over 1e-6 (worst " << worst << ", " << degenerate
       << " degenerate draws skipped); fixtures " << d_ramp << ", " << d_gap;
    return {failures == 0 && d_ramp == -1.0 && d_gap == -1.0, os.str()};
}

Verdict criterion_5(const fs::path&) {
    const Workload w{90.0, 0.01, 20.0};
    bool ok = true;
    std::ostringstream os;
    for (int k = 1; k <= 12; ++k) {
        const auto e = estimate_expected_error(k, w, 0.2, 200, 2024);
        const double z = e.cost_derivative.mean / e.cost_derivative.std_error;
        const bool good = k <= 6 ? z <= -2.0 : z >= 2.0;
        ok = ok && good;
        os << (k > 1 ? " " : "") << "k=" << k << ":" << e.cost_derivative.mean << "(z=" << z << ")";
    }
    return {ok, os.str()};
}

Verdict criterion_6(const fs::path&) {
    std::ostringstream os;
    bool ok = true;
    for (double theta0 : {15.0, 1.0}) {
        std::vector<double> finals;
        int in_band = 0;
        for (std::uint64_t run = 1; run <= 20; ++run) {
            ExperimentConfig c;
            c.optimizer.theta0 = theta0;
            c.base_seed = run;
            const auto out = run_experiment(c);
            finals.push_back(out.final_theta);
            in_band += out.final_k >= 5 && out.final_k <= 8;
        }
        std::sort(finals.begin(), finals.end());
        const double median = 0.5 * (finals[9] + finals[10]);
        const bool good = in_band >= 16 && median >= 5.5 && median <= 7.5;
        ok = ok && good;
        os << "theta0=" << theta0 << ": " << in_band << "/20 end with k in 5..8, median theta " << median << "; ";
    }
    return {ok, os.str()};
}

Verdict criterion_7(const fs::path&) {
    const auto e = estimate_expected_error(6, Workload{90.0, 0.01, 20.0}, 0.2, 200, 2024);
    const double bound = 1.0 - std::exp(-0.9) + 0.1;
    std::ostringstream os;
    os << "mean N_s/N " << e.short_idle_ratio.mean << " (se " << e.short_idle_ratio.std_error << ", "
       << e.short_idle_ratio.samples << " paths) vs bound " << bound;
    return {e.short_idle_ratio.mean <= bound, os.str(), true};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Verdict criterion_8(const fs::path& workdir) {
    const FluidModel model{{{0.0, 2.0, 1.0}, {4.0, 0.0, 1.0}, {6.0, 2.0, 1.0}}, 10.0, 0.0};
    std::ofstream(workdir / "model.json") << nlohmann::json(model).dump(2) << '\n';
    const std::string cli = FLUIDIPA_CLI_PATH;
    const std::string m = (workdir / "model.json").string();

    struct Case {
        std::string name;
        std::string args;
        std::vector<std::string> outputs;
    };
    const std::vector<Case> cases{
        {"simulate", "simulate --rate 90 --service 0.01 --k 6 --horizon 20 --seed 5 --events --out {}/sim.json",
         {"sim.json"}},
        {"coupled", "coupled --rate 90 --service 0.01 --k 4 --horizon 20 --seed 5 --out {}/coupled.json",
         {"coupled.json"}},
        {"fluid", "fluid --config " + m + " --theta 3 --out {}/fluid.json", {"fluid.json"}},
        {"optimize", "optimize --seed 3 --iterations 30 --out {}/traj.csv --summary {}/summary.json",
         {"traj.csv", "summary.json"}},
        {"estimate", "estimate --k 5 --k-max 7 --reps 40 --seed 9 --out {}/estimate.json", {"estimate.json"}},
        {"verify", "verify --cases 60 --fluid-cases 20 --seed 11 --out {}/sweep.csv --report {}/report.json",
         {"sweep.csv", "report.json"}},
    };

    bool ok = true;
    std::ostringstream os;
    for (const auto& c : cases) {
        std::vector<std::string> first;
        bool same = true;
        for (int pass = 0; pass < 2; ++pass) {
            const fs::path dir = workdir / c.name;
            fs::remove_all(dir);
            fs::create_directories(dir);
            std::string args = c.args;
            for (auto pos = args.find("{}"); pos != std::string::npos; pos = args.find("{}")) {
                args.replace(pos, 2, dir.string());
            }
            const std::string cmd = "\"" + cli + "\" " + args + " 2>/dev/null";
            [[maybe_unused]] const int rc = std::system(cmd.c_str());
            for (std::size_t i = 0; i < c.outputs.size(); ++i) {
                const auto path = dir / c.outputs[i];
                const std::string bytes = fs::exists(path) ? slurp(path) : std::string();
                if (bytes.empty()) same = false;
                if (pass == 0) {
                    first.push_back(bytes);
                } else if (bytes != first[i]) {
                    same = false;
                }
            }
        }
        ok = ok && same;
        os << c.name << (same ? " identical" : " DIFFERS") << "; ";
    }
    return {ok, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int criterion = 0;
    std::string workdir = "acceptance_work";
    app.add_option("--criterion", criterion, "Criterion number (1-8)")->required()->check(CLI::Range(1, 8));
    app.add_option("--workdir", workdir, "Scratch directory");
    CLI11_PARSE(app, argc, argv);

    const std::map<int, std::pair<std::string, std::function<Verdict(const fs::path&)>>> table{
        {1, {"exact finite difference equals -s*N_1 over 1000 cases", criterion_1}},
        {2, {"error and relative error bounds over 1000 cases, tight on TRACE-C", criterion_2}},
        {3, {"perturbation tracking predicts the coupled difference", criterion_3}},
        {4, {"fluid IPA matches finite differences", criterion_4}},
        {5, {"sign structure of the mean surrogate derivative", criterion_5}},
        {6, {"optimizer convergence from theta0=15 and theta0=1", criterion_6}},
        {7, {"soft bound on mean N_s/N at k=6", criterion_7}},
        {8, {"CLI outputs are byte-identical across reruns", criterion_8}},
    };

    fs::create_directories(workdir);
    const auto& [name, fn] = table.at(criterion);
    Verdict v;
    try {
        v = fn(workdir);
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const char* tag = v.pass ? "PASS" : (v.soft ? "FLAG" : "FAIL");
    std::cout << tag << " criterion " << criterion << ": " << name << " | " << v.detail << std::endl;
    return v.pass || v.soft ? 0 : 1;
}
