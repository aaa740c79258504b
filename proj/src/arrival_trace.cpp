#include "fluidipa/arrival_trace.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "fluidipa/errors.hpp"
#include "fluidipa/rng.hpp"

namespace fluidipa {

namespace {

std::string describe_horizon(double horizon) {
    std::ostringstream os;
    os << "horizon must be positive and finite, got " << horizon;
    return os.str();
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

ArrivalTrace::ArrivalTrace(std::vector<double> arrivals, double horizon, std::string provenance)
    : arrivals_(std::move(arrivals)), horizon_(horizon), provenance_(std::move(provenance)) {
    if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) throw ParameterError(describe_horizon(horizon_));
    for (std::size_t i = 0; i < arrivals_.size(); ++i) {
        const double t = arrivals_[i];
        if (!(t >= 0.0 && t <= horizon_)) {
            std::ostringstream os;
            os << "arrival " << i << " at " << t << " outside [0, " << horizon_ << "]";
            throw ParameterError(os.str());
        }
        if (i > 0 && !(arrivals_[i - 1] < t)) {
            std::ostringstream os;
            os << "arrival " << i << " at " << t << " does not follow " << arrivals_[i - 1];
            throw ParameterError(os.str());
        }
    }
}

ArrivalTrace generate_poisson_trace(double rate, double horizon, std::uint64_t seed) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        std::ostringstream os;
        os << "arrival rate must be positive and finite, got " << rate;
        throw ParameterError(os.str());
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ParameterError(describe_horizon(horizon));

    RandomStream rng(seed);
    std::vector<double> arrivals;
    arrivals.reserve(static_cast<std::size_t>(rate * horizon * 1.1) + 16);
    double t = 0.0;
    for (;;) {
        t += rng.exponential(rate);
        if (t > horizon) break;
        // A zero increment cannot happen for t > 0 unless the variate is
        // below half an ulp of t; such a draw is skipped.
        if (!arrivals.empty() && !(arrivals.back() < t)) continue;
        arrivals.push_back(t);
    }
    std::ostringstream provenance;
    provenance << "poisson(rate=" << rate << ", seed=" << seed << ", mt19937_64/splitmix64)";
    return ArrivalTrace(std::move(arrivals), horizon, provenance.str());
}

ArrivalTrace load_trace(const std::filesystem::path& path, double horizon) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open trace file " + path.string(), 0);
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ParameterError(describe_horizon(horizon));

    std::vector<double> arrivals;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto field = trim(line);
        if (field.empty()) continue;

        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        const auto where = path.string() + ":" + std::to_string(line_no) + ": ";
        if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) {
            throw FormatError(where + "not a decimal epoch: '" + std::string(field) + "'", line_no);
        }
        if (value < 0.0 || value > horizon) {
            throw FormatError(where + "epoch " + std::string(field) + " outside [0, horizon]", line_no);
        }
        if (!arrivals.empty() && !(arrivals.back() < value)) {
            throw FormatError(where + "epoch " + std::string(field) + " is not strictly increasing", line_no);
        }
        arrivals.push_back(value);
    }
    return ArrivalTrace(std::move(arrivals), horizon, "file:" + path.string());
}

void save_trace(const ArrivalTrace& trace, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write trace file " + path.string(), 0);
    char buf[64];
    for (double t : trace.arrivals()) {
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, t);
        out.write(buf, ptr - buf);
        out.put('\n');
    }
}

}  // namespace fluidipa
