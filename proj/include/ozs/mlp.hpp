#pragma once

#include "ozs/patterns.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ozs {

struct MlpConfig {
    std::size_t input_dim = 4;
    std::size_t hidden = 8;
    double learning_rate = 0.05;
    std::size_t epochs = 200;
    std::uint64_t seed = 0;

    void validate() const;
};

/// m-h-1 feed-forward network, tanh hidden units, linear output.
struct MlpModel {
    std::vector<double> w1; // hidden x input_dim, row-major
    std::vector<double> b1; // hidden
    std::vector<double> w2; // hidden
    double b2 = 0.0;
    MlpConfig config;
    std::size_t trained_epochs = 0;
};

MlpModel mlp_init(const MlpConfig& config); // seeded uniform [-1/sqrt(m), 1/sqrt(m)]

double mlp_forward(const MlpModel& model, std::span<const double> x);

// Gradient of the single-sample squared error 0.5*(yhat - t)^2, flattened as
// [w1, b1, w2, b2]; shared by the trainer and the finite-difference tests.
std::vector<double> mlp_gradient(const MlpModel& model, std::span<const double> x, double t);
std::size_t mlp_param_count(const MlpConfig& config);
std::vector<double> mlp_get_params(const MlpModel& model);
void mlp_set_params(MlpModel& model, std::span<const double> params);

/// Per-sample SGD with a seeded shuffle per epoch; returns the epoch
/// snapshot with the best validation correlation (final model when the
/// validation split is empty or constant).
MlpModel mlp_fit(const PatternSet& patterns, const MlpConfig& config);

} // namespace ozs
