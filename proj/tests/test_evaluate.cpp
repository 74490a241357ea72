#include "ozs/errors.hpp"
#include "ozs/evaluate.hpp"
#include "ozs/metrics.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace ozs;

namespace {

PatternSet benchmark_patterns(std::size_t length = 600, std::uint64_t seed = 7,
                              double noise = 0.05) {
    Series s = synth_series(SynthKind::seasonal_ar, length, seed, noise);
    return normalize(assign_splits(make_patterns(s, 4, PatternMode::lagged_o3),
                                   kDefaultFractions, seed));
}

// identity predictor: returns the last window element
TrainedModel identity_model(const PatternSet& p) {
    BelModel b;
    b.config.input_dim = p.input_dim;
    b.v.assign(p.input_dim + 1, 0.0);
    b.v[p.input_dim - 1] = 1.0;
    b.w.assign(p.input_dim, 0.0);
    TrainedModel t;
    t.model = std::move(b);
    t.mode = p.mode;
    t.lag = p.lag;
    t.norm = p.norm;
    return t;
}

} // namespace

TEST_CASE("evaluate_model reports denormalized persistence metrics") {
    PatternSet p = benchmark_patterns(400, 3, 0.05);
    ModelEval eval = evaluate_model(identity_model(p), p, "persist");
    CHECK(eval.name == "persist");
    CHECK(eval.error.empty());
    REQUIRE(eval.splits.count("train") == 1);
    REQUIRE(eval.splits.count("validation") == 1);
    REQUIRE(eval.splits.count("test") == 1);

    std::size_t total = 0;
    for (const auto& [label, se] : eval.splits) total += se.count;
    CHECK(total == p.size());

    // persistence on a smooth series is strongly correlated, and the
    // reported values must be back in raw units (hundreds, not [0,1])
    const SplitEval& test = eval.splits.at("test");
    REQUIRE(test.cor.has_value());
    CHECK(*test.cor > 0.8);
    double lo = *std::min_element(test.actual.begin(), test.actual.end());
    CHECK(lo > 10.0);
    CHECK(test.rmse == doctest::Approx(rmse(test.predicted, test.actual)));
    CHECK(test.rmse >= test.mae);
}

TEST_CASE("evaluate_model flags an undefined correlation instead of throwing") {
    PatternSet p;
    p.input_dim = 1;
    p.lag = 1;
    p.inputs = {{0.5}, {0.5}, {0.5}, {0.5}};
    p.targets = {1.0, 2.0, 1.0, 2.0};
    p.splits = {Split::train, Split::train, Split::validation, Split::test};
    p.target_dates.assign(4, parse_date("2020-06-01"));
    ModelEval eval = evaluate_model(identity_model(p), p, "flat");
    const SplitEval& train = eval.splits.at("train");
    CHECK_FALSE(train.cor.has_value());
    CHECK_FALSE(train.cor_error.empty());
    const SplitEval& test = eval.splits.at("test");
    CHECK_FALSE(test.cor.has_value()); // single sample
}

TEST_CASE("evaluate_model enforces its contracts") {
    PatternSet p = benchmark_patterns(300, 1, 0.05);
    TrainedModel wrong = identity_model(p);
    std::get<BelModel>(wrong.model).config.input_dim = 3;
    std::get<BelModel>(wrong.model).v.resize(4);
    std::get<BelModel>(wrong.model).w.resize(3);
    CHECK_THROWS_AS(evaluate_model(wrong, p, "x"), ContractError);

    PatternSet unsplit = make_patterns(synth_series(SynthKind::seasonal_ar, 300, 1, 0.05),
                                       4, PatternMode::lagged_o3);
    CHECK_THROWS_AS(evaluate_model(identity_model(p), unsplit, "x"), ConfigError);
}

TEST_CASE("compare trains and ranks all three predictors") {
    PatternSet p = benchmark_patterns();
    CompareResult r = compare(p, {.bel = {.epochs = 40},
                                  .anfis = {.epochs = 100},
                                  .mlp = {.epochs = 60}});
    REQUIRE(r.report.models.size() == 3);
    for (const auto& m : r.report.models) CHECK(m.error.empty());
    CHECK(r.models.size() == 3);
    REQUIRE(r.report.ranking.size() == 3);

    // ranking is sorted by test correlation, best first
    auto test_cor = [&](const std::string& name) {
        for (const auto& m : r.report.models)
            if (m.name == name) return *m.splits.at("test").cor;
        FAIL("model missing from report");
        return 0.0;
    };
    CHECK(test_cor(r.report.ranking[0]) >= test_cor(r.report.ranking[1]));
    CHECK(test_cor(r.report.ranking[1]) >= test_cor(r.report.ranking[2]));
}

TEST_CASE("compare is deterministic") {
    PatternSet p = benchmark_patterns(400, 11, 0.1);
    CompareConfigs c{.bel = {.epochs = 20}, .anfis = {.epochs = 40}, .mlp = {.epochs = 30}};
    CompareResult a = compare(p, c);
    CompareResult b = compare(p, c);
    CHECK(report_to_json(a.report) == report_to_json(b.report));
}

TEST_CASE("a failing model is flagged without aborting the run") {
    PatternSet p = benchmark_patterns(300, 5, 0.05);
    // a huge MLP learning rate reliably diverges
    CompareResult r = compare(p, {.bel = {.epochs = 10},
                                  .anfis = {.epochs = 10},
                                  .mlp = {.learning_rate = 1e6, .epochs = 50}});
    REQUIRE(r.report.models.size() == 3);
    const ModelEval* mlp = nullptr;
    for (const auto& m : r.report.models)
        if (m.name == "mlp") mlp = &m;
    REQUIRE(mlp != nullptr);
    CHECK_FALSE(mlp->error.empty());
    CHECK(r.models.count("mlp") == 0);
    CHECK(r.models.count("bel") == 1);
    // the diverged model is excluded from the ranking
    CHECK(std::find(r.report.ranking.begin(), r.report.ranking.end(), "mlp") ==
          r.report.ranking.end());
    CHECK(r.report.ranking.size() == 2);
}

TEST_CASE("report JSON round trip") {
    PatternSet p = benchmark_patterns(300, 9, 0.05);
    CompareResult r = compare(p, {.bel = {.epochs = 10},
                                  .anfis = {.epochs = 10},
                                  .mlp = {.epochs = 10}});
    r.report.fingerprint = config_fingerprint("demo");
    std::string text = report_to_json(r.report);
    EvalReport back = report_from_json(text);
    CHECK(report_to_json(back) == text);
    CHECK(back.fingerprint == r.report.fingerprint);
    CHECK(back.ranking == r.report.ranking);

    CHECK_THROWS_AS(report_from_json("not json"), ParseError);
    CHECK_THROWS_AS(report_from_json("{}"), ParseError);
}

TEST_CASE("config fingerprint is stable and input-sensitive") {
    CHECK(config_fingerprint("") == "cbf29ce484222325"); // FNV-1a offset basis
    CHECK(config_fingerprint("a") == config_fingerprint("a"));
    CHECK(config_fingerprint("a") != config_fingerprint("b"));
    CHECK(config_fingerprint("abc").size() == 16);
}
