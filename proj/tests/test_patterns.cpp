#include "ozs/errors.hpp"
#include "ozs/patterns.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace ozs;

namespace {

Series ramp_series(std::size_t n) {
    Series s;
    for (std::size_t i = 0; i < n; ++i) {
        s.dates.push_back(parse_date("2020-01-01") + std::chrono::days{long(i)});
        s.o3.push_back(double(i + 1));
    }
    return s;
}

} // namespace

TEST_CASE("lagged windows are enumerable by hand") {
    PatternSet p = make_patterns(ramp_series(6), 4, PatternMode::lagged_o3);
    REQUIRE(p.size() == 2);
    CHECK(p.inputs[0] == std::vector<double>{1, 2, 3, 4});
    CHECK(p.targets[0] == 5);
    CHECK(p.inputs[1] == std::vector<double>{2, 3, 4, 5});
    CHECK(p.targets[1] == 6);
    CHECK(format_date(p.target_dates[0]) == "2020-01-05");
}

TEST_CASE("sensors mode builds one pattern from two days") {
    Series s = ramp_series(2);
    s.uv = {7, 8};
    s.tsr = {70, 80};
    PatternSet p = make_patterns(s, 1, PatternMode::sensors);
    REQUIRE(p.size() == 1);
    CHECK(p.inputs[0] == std::vector<double>{7, 70, 1});
    CHECK(p.targets[0] == 2);
}

TEST_CASE("sensors mode requires the sensor channels") {
    CHECK_THROWS_AS(make_patterns(ramp_series(10), 1, PatternMode::sensors),
                    MissingChannelError);
}

TEST_CASE("too-short series is rejected") {
    CHECK_THROWS_AS(make_patterns(ramp_series(4), 4, PatternMode::lagged_o3),
                    InsufficientDataError);
}

TEST_CASE("no target leakage into lagged inputs") {
    // values equal their day index, so any window element >= target value
    // would expose a future read
    PatternSet p = make_patterns(ramp_series(50), 4, PatternMode::lagged_o3);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (double x : p.inputs[i]) CHECK(x < p.targets[i]);
}

TEST_CASE("assign_splits honors the 70/15/15 proportions") {
    PatternSet p = make_patterns(ramp_series(104), 4, PatternMode::lagged_o3);
    REQUIRE(p.size() == 100);
    p = assign_splits(std::move(p), kDefaultFractions, 3);
    CHECK(p.indices_of(Split::train).size() == 70);
    CHECK(p.indices_of(Split::validation).size() == 15);
    CHECK(p.indices_of(Split::test).size() == 15);
}

TEST_CASE("ten patterns split 8/1/1") {
    PatternSet p = make_patterns(ramp_series(14), 4, PatternMode::lagged_o3);
    REQUIRE(p.size() == 10);
    p = assign_splits(std::move(p), kDefaultFractions, 1);
    CHECK(p.indices_of(Split::train).size() == 8);
    CHECK(p.indices_of(Split::validation).size() == 1);
    CHECK(p.indices_of(Split::test).size() == 1);
}

TEST_CASE("splits are deterministic and partition the indices") {
    PatternSet base = make_patterns(ramp_series(60), 4, PatternMode::lagged_o3);
    PatternSet a = assign_splits(base, kDefaultFractions, 99);
    PatternSet b = assign_splits(base, kDefaultFractions, 99);
    CHECK(a.splits == b.splits);

    std::set<std::size_t> seen;
    for (Split s : {Split::train, Split::validation, Split::test})
        for (std::size_t i : a.indices_of(s)) CHECK(seen.insert(i).second);
    CHECK(seen.size() == a.size());
}

TEST_CASE("bad fractions and tiny sets are rejected") {
    PatternSet p = make_patterns(ramp_series(10), 4, PatternMode::lagged_o3);
    CHECK_THROWS_AS(assign_splits(p, {0.5, 0.2, 0.2}, 0), ConfigError);
    PatternSet two = make_patterns(ramp_series(6), 4, PatternMode::lagged_o3);
    CHECK_THROWS_AS(assign_splits(two, kDefaultFractions, 0), InsufficientDataError);
}

TEST_CASE("normalization uses train statistics only") {
    PatternSet p = make_patterns(ramp_series(104), 4, PatternMode::lagged_o3);
    p = assign_splits(std::move(p), kDefaultFractions, 7);

    // expected per-column min/max over the raw train split
    auto train = p.indices_of(Split::train);
    std::vector<double> lo(p.input_dim, 1e300), hi(p.input_dim, -1e300);
    double tlo = 1e300, thi = -1e300;
    for (std::size_t i : train) {
        for (std::size_t c = 0; c < p.input_dim; ++c) {
            lo[c] = std::min(lo[c], p.inputs[i][c]);
            hi[c] = std::max(hi[c], p.inputs[i][c]);
        }
        tlo = std::min(tlo, p.targets[i]);
        thi = std::max(thi, p.targets[i]);
    }

    PatternSet n = normalize(p);
    REQUIRE(n.norm.applied);
    for (std::size_t c = 0; c < p.input_dim; ++c) {
        CHECK(n.norm.inputs[c].min == lo[c]);
        CHECK(n.norm.inputs[c].max == hi[c]);
    }
    CHECK(n.norm.target.min == tlo);
    CHECK(n.norm.target.max == thi);

    // inverse identity
    for (std::size_t i = 0; i < n.size(); ++i)
        CHECK(n.norm.target.inverse(n.targets[i]) ==
              doctest::Approx(p.targets[i]).epsilon(1e-12));
}

TEST_CASE("midpoint of a [10,20] train range maps to 0.5") {
    ChannelNorm c{10.0, 20.0, false};
    CHECK(c.forward(15.0) == doctest::Approx(0.5));
    CHECK(c.inverse(0.5) == doctest::Approx(15.0));
}

TEST_CASE("constant channel falls back to unit range") {
    Series s;
    for (std::size_t i = 0; i < 20; ++i) {
        s.dates.push_back(parse_date("2020-01-01") + std::chrono::days{long(i)});
        s.o3.push_back(5.0);
    }
    PatternSet p = make_patterns(s, 4, PatternMode::lagged_o3);
    p = assign_splits(std::move(p), kDefaultFractions, 0);
    p = normalize(std::move(p));
    CHECK(p.norm.target.degenerate);
    for (double t : p.targets) CHECK(t == 0.0);
}

TEST_CASE("pattern JSON round trip") {
    PatternSet p = make_patterns(ramp_series(30), 4, PatternMode::lagged_o3);
    p = assign_splits(std::move(p), kDefaultFractions, 5);
    p = normalize(std::move(p));
    PatternSet q = patterns_from_json(patterns_to_json(p));
    CHECK(q.inputs == p.inputs);
    CHECK(q.targets == p.targets);
    CHECK(q.splits == p.splits);
    CHECK(q.norm.target.min == p.norm.target.min);
    CHECK(q.target_dates == p.target_dates);
}
