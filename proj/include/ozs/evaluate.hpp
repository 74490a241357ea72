#pragma once

#include "ozs/model_io.hpp"
#include "ozs/patterns.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ozs {

struct SplitEval {
    std::size_t count = 0;
    std::optional<double> cor; // Pearson correlation, absent when undefined
    std::string cor_error;     // reason when cor is absent
    double rmse = 0.0;
    double mae = 0.0;
    std::vector<double> predicted; // denormalized units
    std::vector<double> actual;
    std::vector<Date> dates;
};

struct ModelEval {
    std::string name;
    std::string error; // non-empty when training failed
    std::map<std::string, SplitEval> splits;
};

struct EvalReport {
    std::string fingerprint;
    std::vector<ModelEval> models;
    std::vector<std::string> ranking; // by test-split correlation, best first
};

/// Metrics per split in raw (denormalized) units.
ModelEval evaluate_model(const TrainedModel& model, const PatternSet& patterns,
                         const std::string& name);

struct CompareConfigs {
    BelConfig bel;
    AnfisConfig anfis;
    MlpConfig mlp;
};

struct CompareResult {
    EvalReport report;
    std::map<std::string, TrainedModel> models; // successfully trained only
};

/// Trains all three predictors on the same patterns and assembles the
/// ranked report. A training failure yields a flagged entry instead of
/// aborting the run.
CompareResult compare(const PatternSet& patterns, const CompareConfigs& configs);

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& text);

/// FNV-1a hash of a canonical configuration string, hex encoded.
std::string config_fingerprint(const std::string& canonical);

} // namespace ozs
