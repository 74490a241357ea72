#pragma once

#include "ozs/anfis.hpp"
#include "ozs/bel.hpp"
#include "ozs/mlp.hpp"
#include "ozs/patterns.hpp"

#include <filesystem>
#include <string>
#include <variant>

namespace ozs {

/// A trained predictor plus everything needed to run it on raw series
/// values: the windowing mode and the normalization captured at training
/// time. Serialized as a single JSON document.
struct TrainedModel {
    std::variant<BelModel, AnfisModel, MlpModel> model;
    PatternMode mode = PatternMode::lagged_o3;
    std::size_t lag = 4;
    Normalization norm;

    std::string kind() const;
    std::size_t input_dim() const;

    double predict_norm(std::span<const double> x) const;

    /// Raw-unit window in, raw-unit prediction out.
    double predict_raw(std::span<const double> raw_window) const;

    /// Online adaptation on the raw-unit (window, truth) pair; only valid
    /// for BEL models.
    void adapt_raw(std::span<const double> raw_window, double raw_truth);

    std::string to_json_string() const;
    static TrainedModel from_json_string(const std::string& text);

    void save(const std::filesystem::path& path) const;
    static TrainedModel load(const std::filesystem::path& path);
};

} // namespace ozs
