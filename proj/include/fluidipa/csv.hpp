#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fluidipa/optimizer.hpp"
#include "fluidipa/sweep.hpp"

namespace fluidipa {

// Doubles are written in shortest round-trip form, so parsing recovers
// the exact values.
std::string format_double(double value);

inline constexpr const char* kTrajectoryHeader = "i,theta,k,F,Fc_prime,d";
inline constexpr const char* kSweepHeader = "seed,k,N,N_s,N_1,delta_L,ipa,E,bound";

void write_trajectory_csv(std::ostream& out, const std::vector<IterateRecord>& records);
std::vector<IterateRecord> read_trajectory_csv(std::istream& in);

struct SweepRow {
    std::uint64_t seed = 0;
    int k = 0;
    int lossy_periods = 0;
    int lossy_after_short_idle = 0;
    int type1_count = 0;
    double delta_loss = 0.0;
    double ipa = 0.0;
    double error = 0.0;
    double bound = 0.0;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

SweepRow to_sweep_row(const SweepCase& c);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

}  // namespace fluidipa
