#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "ftpinn/conditions_io.hpp"
#include "ftpinn/errors.hpp"
#include "ftpinn/solver.hpp"
#include "oracles/reference_values.hpp"
#include "support/draws.hpp"

using namespace ftpinn;
using namespace ftpinn::kinetics;
using namespace ftpinn::solver;

namespace {
const ReactionConditions kFig2{1.0, 1.0, 0.5, 493.15};
}

TEST(Solver, MatchesOracleAtFig2Point) {
    const auto sol = solve_site_balance(support::synthetic_parameters(), kFig2, {});
    // rhs decreases in S, so the residual slope is at most -1 and a residual
    // of at most 1e-12 bounds the root error by 1e-12.
    EXPECT_NEAR(sol.site_fraction, oracle::kFig2SiteFraction, 1e-12);
    EXPECT_LE(std::abs(sol.residual), 1e-12);
    EXPECT_EQ(sol.profile.alphas.size(), 100u);
}

TEST(Solver, ClosedFormWithoutOlefinTermination) {
    std::mt19937_64 rng(3);
    for (int draw = 0; draw < 100; ++draw) {
        auto p = support::random_parameters(rng);
        p.k8E.prefactor = 0.0;
        p.k80.prefactor = 0.0;
        const auto cond = support::random_conditions(rng);
        const auto rc = evaluate_rate_constants(p, cond.temperature);
        const auto c = site_coefficients(rc, cond);
        const double growth = rc.k3 * rc.K1 * cond.p_co;
        const double a = growth / (growth + rc.k7 * std::sqrt(rc.K2 * cond.p_h2));
        const double expected = 1.0 / (c.c0 + c.cS * alpha_one(rc, cond) / (1.0 - a));
        const auto sol = solve_site_balance(p, cond, {});
        EXPECT_NEAR(sol.site_fraction, expected, 1e-10 * expected);
    }
}

TEST(Solver, ZeroCarbonMonoxideShortcut) {
    const auto p = support::synthetic_parameters();
    const ReactionConditions cond{0.0, 2.0, 0.3, 480.0};
    const auto sol = solve_site_balance(p, cond, {});
    const auto rc = evaluate_rate_constants(p, cond.temperature);
    EXPECT_EQ(sol.site_fraction, 1.0 / site_coefficients(rc, cond).c0);
    EXPECT_EQ(sol.iterations, 0);
    EXPECT_EQ(sol.residual, 0.0);
}

TEST(Solver, ToleranceAndBisectionAgreementOverRandomConditions) {
    const auto p = support::synthetic_parameters();
    const auto conditions = support::random_condition_set(2000, 17);
    for (const auto& cond : conditions) {
        const auto sol = solve_site_balance(p, cond, {});
        const auto rc = evaluate_rate_constants(p, cond.temperature);
        EXPECT_LE(std::abs(site_balance_rhs(rc, cond, sol.site_fraction) - sol.site_fraction), 1e-12);
        const double reference = support::bisect_site_fraction(rc, cond);
        EXPECT_NEAR(sol.site_fraction, reference, 1e-10 * reference);
        EXPECT_GT(sol.site_fraction, 0.0);
        EXPECT_LE(sol.site_fraction, 1.0 / site_coefficients(rc, cond).c0);
    }
}

TEST(Solver, BracketValidityOverRandomDraws) {
    std::mt19937_64 rng(23);
    for (int draw = 0; draw < 200; ++draw) {
        const auto p = support::random_parameters(rng);
        const auto cond = support::random_conditions(rng);
        const auto rc = evaluate_rate_constants(p, cond.temperature);
        EXPECT_GT(site_balance_residual(rc, cond, SolveConfig{}.bracket_floor), 0.0);
        EXPECT_LT(site_balance_residual(rc, cond, 1.0 / site_coefficients(rc, cond).c0), 0.0);
    }
}

TEST(Solver, SmallSiteFractionsAreRelativelyAccurate) {
    // Little hydrogen and much water push S far below the absolute tolerance.
    const auto p = support::synthetic_parameters();
    for (const double p_h2 : {1e-3, 1e-5, 1e-7}) {
        const ReactionConditions cond{3.0, p_h2, 1.0, 500.0};
        const auto rc = evaluate_rate_constants(p, cond.temperature);
        const auto sol = solve_site_balance(rc, cond, {});
        const double reference = support::bisect_site_fraction(rc, cond);
        EXPECT_LT(sol.site_fraction, 1e-3);
        EXPECT_NEAR(sol.site_fraction, reference, 1e-10 * reference) << p_h2;
        EXPECT_LE(std::abs(sol.residual), 1e-12 * sol.site_fraction);
    }
}

TEST(Solver, ExhaustedBudgetCarriesBestIterate) {
    SolveConfig cfg;
    cfg.max_iter = 1;
    cfg.abs_tol = 1e-300;
    try {
        solve_site_balance(support::synthetic_parameters(), kFig2, cfg);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_GT(e.best_site_fraction(), 0.0);
        EXPECT_TRUE(std::isfinite(e.best_residual()));
    }
}

TEST(Solver, ConfigValidation) {
    EXPECT_THROW((SolveConfig{0.0, 200, 1e-16}.validate()), DomainError);
    EXPECT_THROW((SolveConfig{1e-12, 0, 1e-16}.validate()), DomainError);
    EXPECT_THROW((SolveConfig{1e-12, 200, 1.0}.validate()), DomainError);
    EXPECT_THROW((SolveConfig{1e-12, 200, 1e-16, 0.0}.validate()), DomainError);
    EXPECT_NO_THROW(SolveConfig{}.validate());
}

TEST(SolveBatch, SinglePointEqualsSingleSolve) {
    const auto p = support::synthetic_parameters();
    const std::vector<ReactionConditions> one{kFig2};
    const auto batch = solve_batch(p, one, {});
    ASSERT_TRUE(batch.all_succeeded());
    const auto single = solve_site_balance(p, kFig2, {});
    EXPECT_EQ(batch.points[0].solution->site_fraction, single.site_fraction);
    EXPECT_EQ(batch.points[0].solution->profile.alphas, single.profile.alphas);
}

TEST(SolveBatch, DuplicatesAreBitIdentical) {
    const auto p = support::synthetic_parameters();
    const std::vector<ReactionConditions> rows{kFig2, {2.0, 3.0, 0.1, 500.0}, kFig2};
    const auto batch = solve_batch(p, rows, {});
    EXPECT_EQ(batch.points[0].solution->site_fraction, batch.points[2].solution->site_fraction);
    EXPECT_EQ(batch.points[0].solution->residual, batch.points[2].solution->residual);
}

TEST(SolveBatch, MatchesSequentialLoopAtAnyConcurrency) {
    const auto p = support::synthetic_parameters();
    const auto conditions = support::random_condition_set(10000, 99);
    std::vector<double> sequential;
    for (const auto& cond : conditions) {
        sequential.push_back(solve_site_balance(p, cond, {}).site_fraction);
    }
    for (unsigned threads : {1u, 3u, 8u}) {
        const auto batch = solve_batch(p, conditions, {}, threads);
        ASSERT_TRUE(batch.all_succeeded());
        for (std::size_t i = 0; i < conditions.size(); ++i) {
            ASSERT_EQ(batch.points[i].solution->site_fraction, sequential[i]) << "row " << i;
        }
    }
}

TEST(SolveBatch, CollectsPerPointFailures) {
    const auto p = support::synthetic_parameters();
    const std::vector<ReactionConditions> rows{kFig2, {1.0, 0.0, 0.1, 500.0}, kFig2};
    const auto batch = solve_batch(p, rows, {});
    EXPECT_EQ(batch.failed_indices(), std::vector<std::size_t>{1});
    EXPECT_FALSE(batch.points[1].error.empty());
    EXPECT_TRUE(batch.points[2].solution.has_value());
}

TEST(SolveBatch, EmptyInputIsRejected) {
    EXPECT_THROW(solve_batch(support::synthetic_parameters(), {}, {}), DomainError);
}

TEST(ConditionsIo, RoundTripAndSolutionColumns) {
    const std::vector<ReactionConditions> rows{kFig2, {0.0, 2.0, 0.0, 480.0}};
    std::stringstream buffer;
    write_conditions(buffer, rows);
    const auto parsed = read_conditions(buffer);
    EXPECT_EQ(parsed, rows);

    const auto p = support::synthetic_parameters();
    const auto batch = solve_batch(p, rows, {});
    std::ostringstream out;
    const std::vector<int> carbon{1, 100};
    write_solutions(out, rows, p, batch, carbon);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header,
              "p_CO_MPa,p_H2_MPa,p_H2O_MPa,T_K,S,residual,iterations,R_paraffin_C1,R_olefin_C1,"
              "R_paraffin_C100,R_olefin_C100");
}

TEST(ConditionsIo, MalformedRowNamesLineNumber) {
    std::istringstream in("p_CO_MPa,p_H2_MPa,p_H2O_MPa,T_K\n1,1,0.5,493.15\n1,abc,0.5,493.15\n");
    try {
        read_conditions(in);
        FAIL() << "expected FormatError";
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(ConditionsIo, WrongHeaderIsRejected) {
    std::istringstream in("pco,ph2,ph2o,T\n1,1,0.5,493.15\n");
    EXPECT_THROW(read_conditions(in), FormatError);
}
