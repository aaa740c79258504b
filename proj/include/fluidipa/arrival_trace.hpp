#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace fluidipa {

/// Arrival epochs shared by every run driven from the same sample path
/// (common random numbers). Epochs are strictly increasing and lie in
/// [0, horizon].
class ArrivalTrace {
public:
    /// Throws ParameterError if the epochs violate the invariants.
    ArrivalTrace(std::vector<double> arrivals, double horizon, std::string provenance = "inline");

    std::span<const double> arrivals() const noexcept { return arrivals_; }
    double horizon() const noexcept { return horizon_; }
    const std::string& provenance() const noexcept { return provenance_; }
    std::size_t size() const noexcept { return arrivals_.size(); }
    bool empty() const noexcept { return arrivals_.empty(); }

    friend bool operator==(const ArrivalTrace&, const ArrivalTrace&) = default;

private:
    std::vector<double> arrivals_;
    double horizon_;
    std::string provenance_;
};

/// Poisson arrivals on [0, horizon] with i.i.d. exponential interarrivals.
ArrivalTrace generate_poisson_trace(double rate, double horizon, std::uint64_t seed);

/// Reads one decimal epoch per line. Blank lines are ignored. Throws
/// FormatError naming the offending line on parse, range or ordering
/// violations.
ArrivalTrace load_trace(const std::filesystem::path& path, double horizon);

/// Writes the trace in the format read by load_trace (shortest
/// round-trip decimal representation).
void save_trace(const ArrivalTrace& trace, const std::filesystem::path& path);

}  // namespace fluidipa
