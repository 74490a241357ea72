#include "ozs/patterns.hpp"

#include "ozs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <json.hpp>

namespace ozs {

PatternMode pattern_mode_from_string(const std::string& name) {
    if (name == "lagged_o3" || name == "lagged") return PatternMode::lagged_o3;
    if (name == "sensors") return PatternMode::sensors;
    throw ConfigError("unknown pattern mode '" + name + "'");
}

const char* to_string(PatternMode m) {
    return m == PatternMode::lagged_o3 ? "lagged_o3" : "sensors";
}

const char* to_string(Split s) {
    switch (s) {
        case Split::train: return "train";
        case Split::validation: return "validation";
        default: return "test";
    }
}

Split split_from_string(const std::string& name) {
    if (name == "train") return Split::train;
    if (name == "validation") return Split::validation;
    if (name == "test") return Split::test;
    throw ParseError("unknown split label '" + name + "'");
}

std::vector<std::size_t> PatternSet::indices_of(Split s) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < splits.size(); ++i)
        if (splits[i] == s) out.push_back(i);
    return out;
}

PatternSet make_patterns(const Series& series, std::size_t lag, PatternMode mode) {
    series.validate();
    PatternSet p;
    p.mode = mode;
    const std::size_t n = series.size();

    if (mode == PatternMode::lagged_o3) {
        if (lag < 1) throw ConfigError("lag must be >= 1");
        if (n < lag + 1)
            throw InsufficientDataError("series of length " + std::to_string(n) +
                                        " too short for lag " + std::to_string(lag));
        p.lag = lag;
        p.input_dim = lag;
        for (std::size_t t = lag - 1; t + 1 < n; ++t) {
            // window o3[t-lag+1 .. t] predicts o3[t+1]
            p.inputs.emplace_back(series.o3.begin() + long(t + 1 - lag),
                                  series.o3.begin() + long(t + 1));
            p.targets.push_back(series.o3[t + 1]);
            p.target_dates.push_back(series.dates[t + 1]);
        }
    } else {
        if (!series.has_sensors())
            throw MissingChannelError("sensors mode requires uv and tsr columns");
        if (n < 2) throw InsufficientDataError("sensors mode needs at least 2 days");
        p.lag = 1;
        p.input_dim = 3;
        for (std::size_t t = 0; t + 1 < n; ++t) {
            p.inputs.push_back({series.uv[t], series.tsr[t], series.o3[t]});
            p.targets.push_back(series.o3[t + 1]);
            p.target_dates.push_back(series.dates[t + 1]);
        }
    }
    return p;
}

PatternSet assign_splits(PatternSet p, std::array<double, 3> fractions,
                         std::uint64_t seed) {
    double total = fractions[0] + fractions[1] + fractions[2];
    if (std::fabs(total - 1.0) > 1e-9)
        throw ConfigError("split fractions must sum to 1");
    const std::size_t n = p.size();
    if (n < 3) throw InsufficientDataError("need at least 3 patterns to split");

    // Nearest-count rounding with halves going to train, which keeps every
    // split within one sample of its exact share.
    auto share = [n](double f) {
        double x = f * double(n) - 0.5;
        return std::size_t(std::max(0.0, std::ceil(x)));
    };
    const std::size_t n_val = share(fractions[1]);
    const std::size_t n_test = share(fractions[2]);
    if (n_val + n_test >= n) throw InsufficientDataError("too few patterns to split");
    const std::size_t n_train = n - n_val - n_test;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    p.splits.assign(n, Split::train);
    for (std::size_t i = n_train; i < n_train + n_val; ++i)
        p.splits[order[i]] = Split::validation;
    for (std::size_t i = n_train + n_val; i < n; ++i)
        p.splits[order[i]] = Split::test;
    return p;
}

PatternSet normalize(PatternSet p) {
    if (!p.has_splits()) throw ConfigError("normalize requires split assignments");
    if (p.norm.applied) return p;

    auto train = p.indices_of(Split::train);
    if (train.empty()) throw ConfigError("empty training split");

    auto fit_channel = [&](auto&& value_at) {
        ChannelNorm c;
        c.min = c.max = value_at(train[0]);
        for (std::size_t idx : train) {
            c.min = std::min(c.min, value_at(idx));
            c.max = std::max(c.max, value_at(idx));
        }
        c.degenerate = !(c.max > c.min);
        return c;
    };

    p.norm.inputs.resize(p.input_dim);
    for (std::size_t col = 0; col < p.input_dim; ++col)
        p.norm.inputs[col] = fit_channel([&](std::size_t i) { return p.inputs[i][col]; });
    p.norm.target = fit_channel([&](std::size_t i) { return p.targets[i]; });

    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t col = 0; col < p.input_dim; ++col)
            p.inputs[i][col] = p.norm.inputs[col].forward(p.inputs[i][col]);
        p.targets[i] = p.norm.target.forward(p.targets[i]);
    }
    p.norm.applied = true;
    return p;
}

namespace {

nlohmann::json norm_to_json(const Normalization& n) {
    nlohmann::json j;
    j["applied"] = n.applied;
    j["inputs"] = nlohmann::json::array();
    for (const auto& c : n.inputs)
        j["inputs"].push_back({{"min", c.min}, {"max", c.max}, {"degenerate", c.degenerate}});
    j["target"] = {{"min", n.target.min}, {"max", n.target.max},
                   {"degenerate", n.target.degenerate}};
    return j;
}

ChannelNorm channel_from_json(const nlohmann::json& j) {
    ChannelNorm c;
    c.min = j.at("min").get<double>();
    c.max = j.at("max").get<double>();
    c.degenerate = j.at("degenerate").get<bool>();
    return c;
}

Normalization norm_from_json(const nlohmann::json& j) {
    Normalization n;
    n.applied = j.at("applied").get<bool>();
    for (const auto& c : j.at("inputs")) n.inputs.push_back(channel_from_json(c));
    n.target = channel_from_json(j.at("target"));
    return n;
}

} // namespace

std::string patterns_to_json(const PatternSet& p) {
    nlohmann::json j;
    j["mode"] = to_string(p.mode);
    j["lag"] = p.lag;
    j["input_dim"] = p.input_dim;
    j["inputs"] = p.inputs;
    j["targets"] = p.targets;
    nlohmann::json labels = nlohmann::json::array();
    for (Split s : p.splits) labels.push_back(to_string(s));
    j["splits"] = labels;
    nlohmann::json dates = nlohmann::json::array();
    for (Date d : p.target_dates) dates.push_back(format_date(d));
    j["target_dates"] = dates;
    j["normalization"] = norm_to_json(p.norm);
    return j.dump(2);
}

PatternSet patterns_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad pattern JSON: ") + e.what());
    }
    try {
        PatternSet p;
        p.mode = pattern_mode_from_string(j.at("mode").get<std::string>());
        p.lag = j.at("lag").get<std::size_t>();
        p.input_dim = j.at("input_dim").get<std::size_t>();
        p.inputs = j.at("inputs").get<std::vector<std::vector<double>>>();
        p.targets = j.at("targets").get<std::vector<double>>();
        for (const auto& s : j.at("splits"))
            p.splits.push_back(split_from_string(s.get<std::string>()));
        for (const auto& d : j.at("target_dates"))
            p.target_dates.push_back(parse_date(d.get<std::string>()));
        p.norm = norm_from_json(j.at("normalization"));
        if (p.inputs.size() != p.targets.size() ||
            (!p.splits.empty() && p.splits.size() != p.targets.size()))
            throw ParseError("pattern JSON: inconsistent array lengths");
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad pattern JSON: ") + e.what());
    }
}

} // namespace ozs
