#include "fluidipa/rng.hpp"

#include <cmath>

namespace fluidipa {

double RandomStream::exponential(double rate) {
    // 1 - U lies in (0, 1], so the logarithm is finite.
    return -std::log1p(-uniform()) / rate;
}

}  // namespace fluidipa
