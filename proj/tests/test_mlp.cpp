#include "ozs/errors.hpp"
#include "ozs/metrics.hpp"
#include "ozs/mlp.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ozs;

namespace {

PatternSet train_patterns(std::vector<std::vector<double>> inputs,
                          std::vector<double> targets) {
    PatternSet p;
    p.input_dim = inputs[0].size();
    p.lag = p.input_dim;
    p.inputs = std::move(inputs);
    p.targets = std::move(targets);
    p.splits.assign(p.inputs.size(), Split::train);
    p.target_dates.assign(p.inputs.size(), parse_date("2020-01-01"));
    return p;
}

// independent plain-loop forward pass
double forward_oracle(const MlpModel& m, std::span<const double> x) {
    double y = m.b2;
    for (std::size_t j = 0; j < m.config.hidden; ++j) {
        double net = m.b1[j];
        for (std::size_t i = 0; i < m.config.input_dim; ++i)
            net += m.w1[j * m.config.input_dim + i] * x[i];
        y += m.w2[j] * std::tanh(net);
    }
    return y;
}

} // namespace

TEST_CASE("zero network outputs zero") {
    MlpModel m;
    m.config = {.input_dim = 3, .hidden = 2};
    m.w1.assign(6, 0.0);
    m.b1.assign(2, 0.0);
    m.w2.assign(2, 0.0);
    CHECK(mlp_forward(m, std::vector<double>{1, 2, 3}) == 0.0);
}

TEST_CASE("output bias passes through a dead hidden layer") {
    MlpModel m;
    m.config = {.input_dim = 2, .hidden = 1};
    m.w1.assign(2, 0.0);
    m.b1.assign(1, 0.0);
    m.w2 = {1.0};
    m.b2 = 0.37;
    CHECK(mlp_forward(m, std::vector<double>{5, -2}) == doctest::Approx(0.37));
}

TEST_CASE("forward matches an independent implementation") {
    MlpModel m = mlp_init({.input_dim = 4, .hidden = 5, .seed = 123});
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x{u(rng), u(rng), u(rng), u(rng)};
        CHECK(mlp_forward(m, x) == doctest::Approx(forward_oracle(m, x)).epsilon(1e-12));
    }
}

TEST_CASE("forward is bounded by the output layer weights") {
    MlpModel m = mlp_init({.input_dim = 3, .hidden = 7, .seed = 5});
    double bound = std::fabs(m.b2);
    for (double w : m.w2) bound += std::fabs(w);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int trial = 0; trial < 100; ++trial)
        CHECK(std::fabs(mlp_forward(m, std::vector<double>{u(rng), u(rng), u(rng)})) <=
              bound + 1e-12);
}

TEST_CASE("backprop matches central finite differences") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        MlpModel m = mlp_init({.input_dim = 3, .hidden = 4, .seed = rng()});
        std::vector<double> x{u(rng), u(rng), u(rng)};
        double t = u(rng);

        auto analytic = mlp_gradient(m, x, t);
        auto fd = oracle::finite_difference_gradient(
            [&] {
                double e = mlp_forward(m, x) - t;
                return 0.5 * e * e;
            },
            [&] { return mlp_get_params(m); },
            [&](const std::vector<double>& p) { mlp_set_params(m, p); });
        REQUIRE(analytic.size() == fd.size());
        for (std::size_t k = 0; k < fd.size(); ++k)
            CHECK(oracle::rel_error(analytic[k], fd[k]) <= 1e-5);
    }
}

TEST_CASE("fit learns a linear dependence") {
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;
    for (int i = 0; i < 200; ++i) {
        inputs.push_back({u(rng), u(rng)});
        targets.push_back(0.5 * inputs.back()[0]);
    }
    PatternSet p = train_patterns(inputs, targets);
    MlpModel m = mlp_fit(p, {.input_dim = 2, .hidden = 2, .seed = 1});
    double mse = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double e = mlp_forward(m, p.inputs[i]) - p.targets[i];
        mse += e * e;
    }
    mse /= double(p.size());
    CHECK(mse <= 1e-3);
}

TEST_CASE("zero epochs returns the seeded initial model") {
    PatternSet p = train_patterns({{0.1, 0.2}, {0.3, 0.4}, {0.5, 0.6}}, {1, 2, 3});
    MlpConfig c{.input_dim = 2, .hidden = 3, .epochs = 0, .seed = 77};
    MlpModel fitted = mlp_fit(p, c);
    MlpModel fresh = mlp_init(c);
    CHECK(fitted.w1 == fresh.w1);
    CHECK(fitted.b1 == fresh.b1);
    CHECK(fitted.w2 == fresh.w2);
    CHECK(fitted.b2 == fresh.b2);
}

TEST_CASE("fit is deterministic") {
    Series s = synth_series(SynthKind::seasonal_ar, 300, 21, 0.1);
    PatternSet p = normalize(assign_splits(make_patterns(s, 4, PatternMode::lagged_o3),
                                           kDefaultFractions, 21));
    MlpModel a = mlp_fit(p, {.input_dim = 4, .epochs = 15, .seed = 3});
    MlpModel b = mlp_fit(p, {.input_dim = 4, .epochs = 15, .seed = 3});
    CHECK(a.w1 == b.w1);
    CHECK(a.b2 == b.b2);
}

TEST_CASE("fit predicts a noiseless sine with high correlation") {
    Series s = synth_series(SynthKind::seasonal_ar, 800, 2, 0.0);
    PatternSet p = normalize(assign_splits(make_patterns(s, 4, PatternMode::lagged_o3),
                                           kDefaultFractions, 2));
    MlpModel m = mlp_fit(p, {.input_dim = 4, .seed = 2});
    auto test = p.indices_of(Split::test);
    std::vector<double> pred, actual;
    for (std::size_t i : test) {
        pred.push_back(mlp_forward(m, p.inputs[i]));
        actual.push_back(p.targets[i]);
    }
    CHECK(pearson(pred, actual) >= 0.95);
}

TEST_CASE("contract violations are rejected") {
    MlpModel m = mlp_init({.input_dim = 2, .hidden = 2, .seed = 0});
    CHECK_THROWS_AS((void)mlp_forward(m, std::vector<double>{1.0}), ContractError);
    CHECK_THROWS_AS(mlp_init({.input_dim = 0}), ConfigError);
    CHECK_THROWS_AS(mlp_init({.input_dim = 2, .hidden = 0}), ConfigError);
}
