#include "fluidipa/optimizer.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fluidipa/errors.hpp"

namespace fluidipa {

void OptimizerConfig::validate() const {
    std::ostringstream os;
    if (!(buffer_cost >= 0.0)) {
        os << "buffer cost must be non-negative, got " << buffer_cost;
    } else if (!(truncation > 0.0)) {
        os << "truncation threshold must be positive, got " << truncation;
    } else if (!(step_scale > 0.0)) {
        os << "step-size scale must be positive, got " << step_scale;
    } else if (!(step_exponent > 0.5 && step_exponent <= 1.0)) {
        os << "step-size exponent must lie in (0.5, 1], got " << step_exponent;
    } else if (iterations < 1) {
        os << "iterations must be >= 1";
    } else if (!std::isfinite(theta0)) {
        os << "initial parameter must be finite, got " << theta0;
    } else if (min_capacity < 1) {
        os << "minimum capacity must be >= 1, got " << min_capacity;
    } else {
        return;
    }
    throw ParameterError(os.str());
}

double step_size(std::size_t i, const OptimizerConfig& config) {
    if (i == 0) throw ParameterError("step-size index starts at 1");
    return config.step_scale / std::pow(static_cast<double>(i), config.step_exponent);
}

double truncate_displacement(double lambda, double derivative, double truncation) {
    if (!(truncation > 0.0)) throw ParameterError("truncation threshold must be positive");
    const double raw = lambda * derivative;
    if (std::abs(raw) <= truncation) return raw;
    return derivative > 0.0 ? truncation : (derivative < 0.0 ? -truncation : 0.0);
}

int nearest_capacity(double theta, int min_capacity) {
    const double rounded = std::floor(theta + 0.5);
    if (rounded <= static_cast<double>(min_capacity)) return min_capacity;
    return static_cast<int>(rounded);
}

StepOutcome step(double theta, const Evaluator& evaluator, std::size_t i, const OptimizerConfig& config) {
    const int k = nearest_capacity(theta, config.min_capacity);
    Evaluation eval;
    try {
        eval = evaluator(k, i);
    } catch (const std::exception& e) {
        std::ostringstream os;
        os << "iteration " << i << " (theta=" << theta << ", k=" << k << "): " << e.what();
        throw std::runtime_error(os.str());
    }
    const double d = truncate_displacement(step_size(i, config), eval.derivative, config.truncation);
    return {{i, theta, k, eval.cost, eval.derivative, d}, theta - d};
}

std::vector<IterateRecord> run(const OptimizerConfig& config, const Evaluator& evaluator) {
    config.validate();
    std::vector<IterateRecord> records;
    records.reserve(config.iterations);
    double theta = config.theta0;
    for (std::size_t i = 1; i <= config.iterations; ++i) {
        auto outcome = step(theta, evaluator, i, config);
        records.push_back(outcome.record);
        theta = outcome.next_theta;
    }
    return records;
}

}  // namespace fluidipa
