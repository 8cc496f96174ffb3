#include <catch2/catch_amalgamated.hpp>

#include <limits>
#include <random>
#include <vector>

#include "riskcast/series.hpp"

using namespace riskcast;
using Catch::Approx;

TEST_CASE("compute_losses squared and absolute error", "[series]") {
    const LossSeries perfect =
        compute_losses({1, 2}, {1, 2}, ScoringRule::squared_error, "m");
    CHECK(perfect.values == std::vector<double>{0, 0});

    const LossSeries sq = compute_losses({3, 0}, {1, 2}, ScoringRule::squared_error, "m");
    CHECK(sq.values == std::vector<double>{4, 4});

    const LossSeries ab = compute_losses({3, 0}, {1, 2}, ScoringRule::absolute_error, "m");
    CHECK(ab.values == std::vector<double>{2, 2});
}

TEST_CASE("compute_losses rejects bad input", "[series]") {
    CHECK_THROWS_AS(compute_losses({1, 2}, {1}, ScoringRule::squared_error), AlignmentError);
    CHECK_THROWS_AS(compute_losses({}, {}, ScoringRule::squared_error), ValidationError);
    CHECK_THROWS_AS(
        compute_losses({std::numeric_limits<double>::quiet_NaN()}, {1}, ScoringRule::squared_error),
        ValidationError);
    CHECK_THROWS_AS(compute_losses({1}, {1}, ScoringRule::external), ValidationError);
}

TEST_CASE("return_series forms benchmark-minus-model gains", "[series]") {
    const LossSeries bench{"b", ScoringRule::squared_error, {4, 4}, {}};
    const LossSeries same{"m", ScoringRule::squared_error, {4, 4}, {}};
    CHECK(return_series(bench, same).values == std::vector<double>{0, 0});

    const LossSeries b2{"b", ScoringRule::squared_error, {4, 1}, {}};
    const LossSeries m2{"m", ScoringRule::squared_error, {1, 3}, {}};
    const ReturnSeries r = return_series(b2, m2);
    CHECK(r.values == std::vector<double>{3, -2});
    CHECK(r.model_id == "m");
    CHECK(r.benchmark_id == "b");

    const LossSeries b3{"b", ScoringRule::squared_error, {2, 2, 2}, {}};
    const LossSeries m3{"m", ScoringRule::squared_error, {1, 1, 1}, {}};
    const ReturnSeries r3 = return_series(b3, m3);
    CHECK(r3.values == std::vector<double>{1, 1, 1});
    CHECK(mean_return(r3) == 1.0);
}

TEST_CASE("return_series rejects misaligned series", "[series]") {
    const LossSeries bench{"b", ScoringRule::squared_error, {1, 2}, {}};
    CHECK_THROWS_AS(
        return_series(bench, LossSeries{"m", ScoringRule::squared_error, {1}, {}}),
        AlignmentError);
    CHECK_THROWS_AS(
        return_series(bench, LossSeries{"m", ScoringRule::absolute_error, {1, 2}, {}}),
        ValidationError);
    CHECK_THROWS_AS(
        return_series(LossSeries{"b", ScoringRule::squared_error, {1, 2}, {"q1", "q2"}},
                      LossSeries{"m", ScoringRule::squared_error, {1, 2}, {"q1", "q3"}}),
        AlignmentError);
}

TEST_CASE("negative losses rejected for nonnegative rules only", "[series]") {
    CHECK_THROWS_AS(
        validate_loss_series(LossSeries{"m", ScoringRule::squared_error, {-1.0}, {}}),
        ValidationError);
    CHECK_NOTHROW(validate_loss_series(LossSeries{"m", ScoringRule::external, {-5.0}, {}}));
}

TEST_CASE("mean_return examples", "[series]") {
    const auto make = [](std::vector<double> v) {
        return ReturnSeries{"m", "b", ScoringRule::squared_error, std::move(v)};
    };
    CHECK(mean_return(make({1, 1, 1})) == 1.0);
    CHECK(mean_return(make({3, -2})) == 0.5);
    CHECK(mean_return(make({0, 0, 0, 0})) == 0.0);
}

TEST_CASE("antisymmetry and self-comparison properties", "[series]") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t T = 1 + gen() % 40;
        LossSeries a{"a", ScoringRule::external, {}, {}};
        LossSeries b{"b", ScoringRule::external, {}, {}};
        for (std::size_t t = 0; t < T; ++t) {
            a.values.push_back(u(gen));
            b.values.push_back(u(gen));
        }
        const ReturnSeries ab = return_series(a, b);
        const ReturnSeries ba = return_series(b, a);
        for (std::size_t t = 0; t < T; ++t) CHECK(ab.values[t] == -ba.values[t]);
    }

    // Identical forecasts give identical losses, hence the zero series.
    const std::vector<double> actuals = {1.5, -2.0, 0.25};
    const std::vector<double> forecasts = {0.5, 1.0, 0.0};
    const LossSeries la = compute_losses(actuals, forecasts, ScoringRule::squared_error, "a");
    const LossSeries lb = compute_losses(actuals, forecasts, ScoringRule::squared_error, "b");
    for (double v : return_series(la, lb).values) CHECK(v == 0.0);
}

TEST_CASE("squared-error gains are bounded by benchmark losses", "[series]") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    LossSeries bench{"b", ScoringRule::squared_error, {}, {}};
    LossSeries model{"m", ScoringRule::squared_error, {}, {}};
    for (int t = 0; t < 100; ++t) {
        bench.values.push_back(u(gen));
        model.values.push_back(u(gen));
    }
    const ReturnSeries r = return_series(bench, model);
    for (std::size_t t = 0; t < r.values.size(); ++t) CHECK(r.values[t] <= bench.values[t]);
}
