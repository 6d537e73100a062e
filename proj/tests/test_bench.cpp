#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "ftpinn/bench/accuracy.hpp"
#include "ftpinn/bench/report.hpp"
#include "ftpinn/bench/timing.hpp"
#include "ftpinn/errors.hpp"
#include "support/draws.hpp"

using namespace ftpinn;
using namespace ftpinn::bench;

TEST(Grid, OnePointPerAxisIsTheCentre) {
    const auto g = evaluation_grid(1);
    ASSERT_EQ(g.cols(), 1);
    for (int k = 0; k < 4; ++k) {
        EXPECT_EQ(g(k, 0), 0.5);
    }
}

TEST(Grid, TwoPerAxisEnumeratesThirds) {
    const auto g = evaluation_grid(2);
    ASSERT_EQ(g.cols(), 16);
    std::set<std::vector<double>> unique;
    for (Eigen::Index c = 0; c < g.cols(); ++c) {
        for (int k = 0; k < 4; ++k) {
            EXPECT_TRUE(g(k, c) == 1.0 / 3.0 || g(k, c) == 2.0 / 3.0);
        }
        unique.insert({g(0, c), g(1, c), g(2, c), g(3, c)});
    }
    EXPECT_EQ(unique.size(), 16u);
}

TEST(Grid, EighteenPerAxis) {
    const auto g = evaluation_grid(18);
    EXPECT_EQ(g.cols(), 104976);
    EXPECT_DOUBLE_EQ(g(3, 0), 1.0 / 19.0);
    EXPECT_DOUBLE_EQ(g(0, g.cols() - 1), 18.0 / 19.0);
    EXPECT_THROW(evaluation_grid(0), DomainError);
}

TEST(Summary, MedianMeanMax) {
    const auto s = summarize("S", {4.0, 1.0, 3.0, 2.0});
    EXPECT_EQ(s.median, 2.5);
    EXPECT_EQ(s.mean, 2.5);
    EXPECT_EQ(s.max, 4.0);
    EXPECT_EQ(s.count, 4u);
    EXPECT_EQ(summarize("S", {5.0, 1.0, 3.0}).median, 3.0);
    EXPECT_EQ(summarize("S", {}).count, 0u);
}

TEST(Summary, RelativeErrorDefinition) {
    EXPECT_EQ(relative_error_percent(1.5, 1.0), 50.0);
    EXPECT_EQ(relative_error_percent(0.0, 0.0), 0.0);
    EXPECT_EQ(relative_error_percent(-2.0, -1.0), 100.0);
}

TEST(Accuracy, OracleAgainstItselfIsExactlyZero) {
    const auto params = support::synthetic_parameters();
    const auto report = accuracy_report(oracle_predictor(params), params, {}, evaluation_grid(3));
    ASSERT_EQ(report.stats.size(), 4u);
    for (const auto& s : report.stats) {
        EXPECT_EQ(s.max, 0.0) << s.quantity;
        EXPECT_GT(s.count, 0u);
    }
    EXPECT_EQ(report.stats[0].quantity, "S");
    EXPECT_EQ(report.stats[1].count, 81u * 100u);
    EXPECT_TRUE(report.excluded.empty());
}

TEST(Accuracy, ConstructedPerturbationGivesExactPercent) {
    const auto params = support::synthetic_parameters();
    const auto oracle = oracle_predictor(params);
    const SitePredictor perturbed = [&](std::span<const kinetics::ReactionConditions> c) {
        auto s = oracle(c);
        for (double& v : s) {
            v *= 1.01;
        }
        return s;
    };
    const auto report = accuracy_report(perturbed, params, {}, evaluation_grid(3));
    EXPECT_NEAR(report.stats[0].mean, 1.0, 1e-12);
    EXPECT_NEAR(report.stats[0].median, 1.0, 1e-12);
    EXPECT_NEAR(report.stats[0].max, 1.0, 1e-12);
    EXPECT_GT(report.stats[2].median, 0.0);
}

TEST(Accuracy, OracleFailuresAreExcludedAndCounted) {
    auto params = support::synthetic_parameters();
    // Zero hydrogen pressure at the first point leaves cS undefined.
    pinn::PointBatch grid = evaluation_grid(2);
    grid(1, 0) = 0.0;
    const auto report = accuracy_report(oracle_predictor(params), params, {}, grid);
    EXPECT_EQ(report.excluded, std::vector<std::size_t>{0});
    EXPECT_EQ(report.stats[0].count, 15u);
    EXPECT_EQ(report.points.size(), 15u);
}

TEST(Timing, MedianOfMeans) {
    EXPECT_EQ(median_of_means({1, 1, 2, 2, 9, 9}, 3), 2.0);
    EXPECT_EQ(median_of_means({1, 2, 3, 4}, 1), 2.5);
    EXPECT_THROW(median_of_means({}, 1), DomainError);
}

TEST(Timing, SolverAgainstItselfIsExactlyOne) {
    TimingConfig cfg;
    cfg.batch_sizes = {1, 100};
    cfg.solver_sample = 50;
    cfg.repetitions = 5;
    cfg.groups = 5;
    const auto report = solver_timing_sweep(support::synthetic_parameters(), {}, cfg);
    ASSERT_EQ(report.records.size(), 2u);
    for (const auto& r : report.records) {
        EXPECT_EQ(r.speedup, 1.0);
        EXPECT_EQ(r.backend, "solver");
        EXPECT_GT(r.seconds_per_batch, 0.0);
    }
}

TEST(Timing, SurrogateSweepRecordsEveryBatchSize) {
    auto model = pinn::make_model({16, 16});
    pinn::init_weights(model, 1);
    TimingConfig cfg;
    cfg.batch_sizes = {1, 64};
    cfg.solver_sample = 20;
    cfg.repetitions = 5;
    const auto report = timing_sweep(pinn::Surrogate(model), support::synthetic_parameters(), cfg);
    ASSERT_EQ(report.records.size(), 2u);
    for (const auto& r : report.records) {
        EXPECT_EQ(r.speedup, r.baseline_seconds / r.seconds_per_batch);
        EXPECT_EQ(r.baseline_seconds, static_cast<double>(r.batch_size) * report.t_conv);
    }
}

TEST(Timing, DoublingRepetitionsIsStable) {
    auto model = pinn::make_model({128, 128});
    pinn::init_weights(model, 1);
    const pinn::Surrogate surrogate(model);
    TimingConfig cfg;
    cfg.batch_sizes = {1000};
    cfg.solver_sample = 200;
    cfg.repetitions = 30;
    const auto once = timing_sweep(surrogate, support::synthetic_parameters(), cfg);
    cfg.repetitions = 60;
    const auto twice = timing_sweep(surrogate, support::synthetic_parameters(), cfg);
    const double a = once.records[0].seconds_per_batch;
    const double b = twice.records[0].seconds_per_batch;
    EXPECT_LT(std::abs(b - a) / a, 0.2) << a << " vs " << b;
}

TEST(Timing, ConfigValidation) {
    TimingConfig cfg;
    cfg.batch_sizes = {0};
    EXPECT_THROW(cfg.validate(), DomainError);
    cfg.batch_sizes = {1};
    cfg.groups = cfg.repetitions + 1;
    EXPECT_THROW(cfg.validate(), DomainError);
}

namespace {

BenchReport sample_report() {
    BenchReport r;
    r.metadata.hardware = "test CPU";
    r.metadata.precision = "double";
    r.metadata.threads = 2;
    r.metadata.grid_points_per_axis = 3;
    r.metadata.evaluated_points = 81;
    r.errors = {{"S", 0.1, 0.05, 0.9, 81}, {"alpha", 0.2, 0.1, 1.5, 8100}};
    r.t_conv = 2.5e-6;
    r.timing = {{"surrogate", 1, 1e-6, 30, 2.5e-6, 2.5}, {"surrogate", 100, 3e-5, 30, 2.5e-4, 8.333333333333334}};
    return r;
}

}  // namespace

TEST(Report, JsonRoundTrip) {
    const auto r = sample_report();
    EXPECT_EQ(parse_report_json(to_json(r)), r);
}

TEST(Report, EmptyTimingIsValid) {
    auto r = sample_report();
    r.timing.clear();
    r.t_conv.reset();
    const auto back = parse_report_json(to_json(r));
    EXPECT_TRUE(back.timing.empty());
    EXPECT_FALSE(back.t_conv.has_value());
}

TEST(Report, JsonFieldOrderIsFixed) {
    const auto text = to_json(sample_report());
    EXPECT_LT(text.find("schema_version"), text.find("metadata"));
    EXPECT_LT(text.find("metadata"), text.find("errors"));
    EXPECT_LT(text.find("errors"), text.find("timing"));
    EXPECT_EQ(text, to_json(sample_report()));
}

TEST(Report, CsvHasOneRowPerQuantityAndBatchSize) {
    std::ostringstream out;
    write_csv(out, sample_report());
    std::istringstream in(out.str());
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
    }
    EXPECT_EQ(rows, 1 + 2 + 2);
}

TEST(Report, UnwritablePathNamesThePath) {
    try {
        write_report(sample_report(), "/nonexistent_dir/report.json", ReportFormat::Json);
        FAIL() << "expected Error";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("/nonexistent_dir/report.json"), std::string::npos);
    }
}

TEST(Report, PointDumpHeader) {
    std::ostringstream out;
    write_point_dump(out, {{{0.5, 0.5, 0.5, 0.5}, 0.2, 0.21, 5.0}});
    EXPECT_EQ(out.str(), "x_pCO,x_pH2,x_pH2O,x_T,S_true,S_pred,error_pct\n0.5,0.5,0.5,0.5,0.2,0.21,5\n");
}
