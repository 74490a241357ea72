#pragma once

#include "ozs/patterns.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ozs {

struct BelConfig {
    double alpha = 0.2;   // amygdala learning rate, > 0
    double beta = 0.1;    // orbitofrontal learning rate, > 0
    double gamma = 0.001; // amygdala decay rate, in [0, 1)
    std::size_t epochs = 100;
    std::uint64_t seed = 0;
    std::size_t input_dim = 4;

    void validate() const;
};

struct BelForward {
    double e;  // prediction, e = ea - eo
    double ea; // amygdala output
    double eo; // orbitofrontal output
};

/// Brain-emotional-learning predictor. The amygdala path carries one weight
/// per input plus a threshold-unit weight on max(p); the orbitofrontal path
/// carries one corrective weight per input.
struct BelModel {
    std::vector<double> v; // length input_dim + 1, last entry = threshold unit
    std::vector<double> w; // length input_dim
    BelConfig config;
    std::size_t trained_epochs = 0;
};

BelModel bel_init(const BelConfig& config); // zero weights

BelForward bel_forward(const BelModel& model, std::span<const double> p);

/// One update:
///   v_j += -gamma*v_j + alpha * max(t - ea, 0) * p_j   (threshold unit: p_j -> max(p))
///   w_j += beta * (e - t) * p_j
/// with ea and e taken from the pre-update weights.
void bel_train_step(BelModel& model, std::span<const double> p, double t);

/// Epoch loop over the training split in a seeded shuffled order; returns
/// the epoch snapshot with the best validation correlation (the final model
/// when validation is empty or its correlation is undefined).
BelModel bel_fit(const PatternSet& patterns, const BelConfig& config);

} // namespace ozs
