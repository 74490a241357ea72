#pragma once

#include "ozs/series.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ozs {

enum class PatternMode { lagged_o3, sensors };
enum class Split { train, validation, test };

PatternMode pattern_mode_from_string(const std::string& name);
const char* to_string(PatternMode m);
const char* to_string(Split s);
Split split_from_string(const std::string& name);

struct ChannelNorm {
    double min = 0.0;
    double max = 1.0;
    bool degenerate = false; // constant channel, unit-range fallback used

    double range() const { return degenerate ? 1.0 : max - min; }
    double forward(double x) const { return (x - min) / range(); }
    double inverse(double y) const { return y * range() + min; }
};

struct Normalization {
    bool applied = false;
    std::vector<ChannelNorm> inputs; // one per input column
    ChannelNorm target;
};

/// Supervised (input, target) pairs with split assignments. Inputs are
/// sliding windows (lagged_o3) or same-day sensor triples (sensors); the
/// target is always the next day's o3.
struct PatternSet {
    std::size_t input_dim = 0;
    PatternMode mode = PatternMode::lagged_o3;
    std::size_t lag = 0; // window length for lagged_o3, 1 for sensors
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;
    std::vector<Split> splits;       // empty until assign_splits
    std::vector<Date> target_dates;  // date of each target value
    Normalization norm;

    std::size_t size() const { return inputs.size(); }
    std::vector<std::size_t> indices_of(Split s) const;
    bool has_splits() const { return !splits.empty(); }
};

constexpr std::array<double, 3> kDefaultFractions{0.70, 0.15, 0.15};

PatternSet make_patterns(const Series& series, std::size_t lag, PatternMode mode);

/// Seeded random permutation partitioned as train/validation/test; the
/// rounding remainder goes to train.
PatternSet assign_splits(PatternSet patterns, std::array<double, 3> fractions,
                         std::uint64_t seed);

/// Min-max scale inputs and target to [0,1] with parameters computed from
/// the train split only; parameters are stored for the inverse transform.
PatternSet normalize(PatternSet patterns);

std::string patterns_to_json(const PatternSet& p);
PatternSet patterns_from_json(const std::string& text);

} // namespace ozs
