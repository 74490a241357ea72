#pragma once

#include "ozs/patterns.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ozs {

struct AnfisConfig {
    std::size_t input_dim = 4;
    std::size_t mfs_per_input = 2;
    double learning_rate = 0.1;
    std::size_t epochs = 300;
    std::uint64_t seed = 0;
    bool zero_order = false;     // keep consequents constant-only
    std::size_t rule_cap = 4096; // mfs_per_input ^ input_dim must not exceed this

    void validate() const;
    std::size_t rule_count() const;
};

struct Gaussian {
    double center = 0.0;
    double width = 1.0; // sigma, kept > 0
};

/// Sugeno fuzzy system: Gaussian premises on a full rule grid, affine
/// consequents, trained by batch gradient descent on mean squared error.
struct AnfisModel {
    std::vector<std::vector<Gaussian>> premise;   // [input][mf]
    std::vector<std::vector<double>> consequent;  // [rule][input_dim + 1], last = bias
    AnfisConfig config;
    std::size_t trained_epochs = 0;
    std::uint64_t underflow_count = 0; // samples whose total firing was floored

    // mf index used by rule `rule` for input `input` (mixed-radix digit)
    std::size_t mf_index(std::size_t rule, std::size_t input) const;
};

constexpr double kAnfisSumFloor = 1e-300;
constexpr double kAnfisMinWidth = 1e-6;

struct AnfisForward {
    double output = 0.0;
    std::vector<double> firing;     // layer 2
    std::vector<double> normalized; // layer 3, sums to 1
    std::vector<double> rule_output; // layer 4 inputs z_r
    bool underflowed = false;
};

AnfisModel anfis_init_grid(const PatternSet& patterns, const AnfisConfig& config);

AnfisForward anfis_forward_detail(const AnfisModel& model, std::span<const double> x);
double anfis_forward(const AnfisModel& model, std::span<const double> x);

// Flat parameter view (premise centers/widths, then consequents); used by
// the finite-difference checks and the trainer.
std::size_t anfis_param_count(const AnfisModel& model);
std::vector<double> anfis_get_params(const AnfisModel& model);
void anfis_set_params(AnfisModel& model, std::span<const double> params);

double anfis_loss(const AnfisModel& model,
                  std::span<const std::vector<double>> inputs,
                  std::span<const double> targets);
std::vector<double> anfis_loss_gradient(const AnfisModel& model,
                                        std::span<const std::vector<double>> inputs,
                                        std::span<const double> targets);

AnfisModel anfis_fit(const PatternSet& patterns, const AnfisConfig& config,
                     std::vector<double>* mse_trace = nullptr);

} // namespace ozs
