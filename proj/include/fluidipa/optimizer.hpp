#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fluidipa {

struct OptimizerConfig {
    double buffer_cost = 0.2;     // a
    double truncation = 2.5;      // r
    double step_scale = 10.0;     // lambda_0
    double step_exponent = 0.6;   // p, in (0.5, 1]
    std::size_t iterations = 100;
    double theta0 = 15.0;
    int min_capacity = 1;

    void validate() const;

    friend bool operator==(const OptimizerConfig&, const OptimizerConfig&) = default;
};

/// Sample cost F(k) and surrogate derivative F'_c(k) from one path.
struct Evaluation {
    double cost = 0.0;
    double derivative = 0.0;
};

/// Called with (capacity, iteration index); must observe a fresh path.
using Evaluator = std::function<Evaluation(int, std::size_t)>;

struct IterateRecord {
    std::size_t i = 0;
    double theta = 0.0;
    int k = 0;
    double cost = 0.0;
    double derivative = 0.0;
    double displacement = 0.0;

    friend bool operator==(const IterateRecord&, const IterateRecord&) = default;
};

struct StepOutcome {
    IterateRecord record;
    double next_theta = 0.0;
};

/// lambda_i = lambda_0 / i^p. Throws ParameterError for i == 0.
double step_size(std::size_t i, const OptimizerConfig& config);

/// Displacement lambda*F', clipped to r*sign(F') when |lambda*F'| > r.
double truncate_displacement(double lambda, double derivative, double truncation);

/// Closest integer to theta, halves rounded up, clamped below at min_capacity.
int nearest_capacity(double theta, int min_capacity);

StepOutcome step(double theta, const Evaluator& evaluator, std::size_t i, const OptimizerConfig& config);

std::vector<IterateRecord> run(const OptimizerConfig& config, const Evaluator& evaluator);

}  // namespace fluidipa
