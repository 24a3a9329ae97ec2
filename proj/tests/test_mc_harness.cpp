#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "bucb/mc_harness.hpp"
#include "oracle/brute_force_oracle.hpp"
#include "test_support.hpp"

using namespace bucb;

TEST(ScaledLoss, Examples) {
    std::vector<std::size_t> c{60, 40};
    EXPECT_DOUBLE_EQ(scaled_loss(c, std::vector<double>{1.75, -1.75}, 100), 1.4);
    EXPECT_EQ(scaled_loss(c, std::vector<double>{2, 2}, 100), 0.0);
    std::vector<std::size_t> c3{50, 30, 20};
    EXPECT_DOUBLE_EQ(scaled_loss(c3, std::vector<double>{1, 0, -1}, 100), 0.7);
}

TEST(ScaledLoss, BestArmNeedNotComeFirst) {
    std::vector<std::size_t> c{40, 60};
    EXPECT_DOUBLE_EQ(scaled_loss(c, std::vector<double>{-1.75, 1.75}, 100), 1.4);
}

TEST(ScaledLoss, InputErrors) {
    std::vector<std::size_t> c{60, 40};
    EXPECT_THROW(scaled_loss(c, std::vector<double>{1, 0, -1}, 100), InputError);
    EXPECT_THROW(scaled_loss(c, std::vector<double>{1, 0}, 99), InputError);
}

TEST(UnscaleLoss, Examples) {
    EXPECT_EQ(unscale_loss(0.0, 3.0, 17), 0.0);
    EXPECT_DOUBLE_EQ(unscale_loss(0.75, 1.0, 100), 7.5);
    EXPECT_DOUBLE_EQ(unscale_loss(1.4, 0.25, 400), 14.0);
    EXPECT_THROW(unscale_loss(1.0, 0.0, 10), ConfigError);
}

TEST(RunEpisode, NoiseFreeHandTrace) {
    // after round-robin both estimates equal the true means; greedy keeps arm 1
    ThetaParams theta{0, 1, {5, -5}};
    auto grid = BatchGrid::from_batches(2, 1, 3);
    auto cfg = policy_for(0.0, theta, grid);
    ZeroStreams z;
    auto out = run_episode_with(theta, grid, cfg, z);
    EXPECT_EQ(out.final_counts, (std::vector<std::size_t>{2, 1}));
    EXPECT_DOUBLE_EQ(out.scaled_loss, 10.0 / 3.0);
}

TEST(RunEpisode, DeterministicForSeed) {
    ThetaParams theta{1, 2, {1.75, -1.75}};
    auto grid = BatchGrid::from_batches(2, 4, 250);
    auto cfg = policy_for(1.0 / 3.0, theta, grid);
    EXPECT_EQ(run_episode(theta, grid, cfg, 9), run_episode(theta, grid, cfg, 9));
}

TEST(RunEpisode, RejectsMismatchedPolicy) {
    ThetaParams theta{0, 1, {1, -1}};
    auto grid = BatchGrid::from_batches(2, 1, 10);
    PolicyConfig cfg{0.3, 2, 2, 1};
    EXPECT_THROW(run_episode(theta, grid, cfg, 1), ConfigError);
}

TEST(ReplicationLosses, NonnegativeAndBounded) {
    ThetaParams theta{0, 1, {0.8, -0.3, -2.0}};
    auto grid = BatchGrid::from_batches(3, 1, 60);
    auto cfg = policy_for(1.0 / 3.0, theta, grid);
    const double cap = 2.8 * 59.0 / 60.0;
    for (double x : replicate_losses(theta, grid, cfg, 3000, 4, 1)) {
        ASSERT_GE(x, 0.0);
        ASSERT_LE(x, cap + 1e-12);
    }
}

TEST(EstimateLoss, ZeroGapIsExactlyZero) {
    for (double a : {0.0, 1.0 / 3.0, 2.0}) {
        for (std::size_t K : {3u, 50u}) {
            ThetaParams theta{3, 0.5, {0.7, 0.7}};
            auto grid = BatchGrid::from_batches(2, 2, K);
            auto est = estimate_loss(theta, grid, policy_for(a, theta, grid), 200, 17, 1);
            EXPECT_EQ(est.mean, 0.0);
            EXPECT_EQ(est.std_error, 0.0);
            EXPECT_EQ(est.reps, 200u);
        }
    }
}

TEST(EstimateLoss, ConfigEcho) {
    ThetaParams theta{0, 1, {1, -1}};
    auto grid = BatchGrid::from_batches(2, 5, 40);
    auto est = estimate_loss(theta, grid, policy_for(0.25, theta, grid), 10, 77, 1);
    EXPECT_EQ(est.config.a, 0.25);
    EXPECT_EQ(est.config.J, 2u);
    EXPECT_EQ(est.config.M, 5u);
    EXPECT_EQ(est.config.K, 40u);
    EXPECT_EQ(est.config.N, 200u);
    EXPECT_EQ(est.config.d, theta.d);
    EXPECT_EQ(est.config.master_seed, 77u);
    EXPECT_GT(est.std_error, 0.0);
}

TEST(EstimateLoss, NeedsTwoReplications) {
    ThetaParams theta{0, 1, {1, -1}};
    auto grid = BatchGrid::from_batches(2, 1, 10);
    EXPECT_THROW(estimate_loss(theta, grid, policy_for(0.3, theta, grid), 1, 1), ConfigError);
}

TEST(EstimateLoss, BitwiseIdenticalAcrossWorkerCounts) {
    ThetaParams theta{0, 1, {1.75, -1.75}};
    auto grid = BatchGrid::from_batches(2, 1, 200);
    auto cfg = policy_for(1.0 / 3.0, theta, grid);
    auto one = estimate_loss(theta, grid, cfg, 1000, 5, 1);
    for (std::size_t w : {4u, 16u}) {
        auto many = estimate_loss(theta, grid, cfg, 1000, 5, w);
        EXPECT_EQ(std::bit_cast<std::uint64_t>(one.mean), std::bit_cast<std::uint64_t>(many.mean));
        EXPECT_EQ(std::bit_cast<std::uint64_t>(one.std_error), std::bit_cast<std::uint64_t>(many.std_error));
    }
}

TEST(EstimateLoss, StandardErrorShrinksWithReplications) {
    ThetaParams theta{0, 1, {1.75, -1.75}};
    auto grid = BatchGrid::from_batches(2, 1, 100);
    auto cfg = policy_for(1.0 / 3.0, theta, grid);
    auto small = estimate_loss(theta, grid, cfg, 4000, 8);
    auto large = estimate_loss(theta, grid, cfg, 8000, 9);
    EXPECT_NEAR(small.std_error / large.std_error, std::sqrt(2.0), 0.15 * std::sqrt(2.0));
}

TEST(EstimateLoss, ScaleFreeAcrossBaselineAndVariance) {
    // the loss law depends on (d, a, K) only; estimates at different (m, D)
    // on the same seeds coincide up to rounding
    auto grid = BatchGrid::from_batches(2, 3, 80);
    ThetaParams a{0, 1, {1.5, -1.5}};
    ThetaParams b{-4, 9, {1.5, -1.5}};
    auto ea = estimate_loss(a, grid, policy_for(1.0 / 3.0, a, grid), 500, 3, 1);
    auto eb = estimate_loss(b, grid, policy_for(1.0 / 3.0, b, grid), 500, 3, 1);
    EXPECT_NEAR(ea.mean, eb.mean, 1e-12);
}

TEST(EstimateLoss, AgreesWithBruteForceOracleAtSmallScale) {
    ThetaParams theta{0, 1, {1.75, -1.75}};
    auto grid = BatchGrid::from_batches(2, 1, 30);
    auto est = estimate_loss(theta, grid, policy_for(1.0 / 3.0, theta, grid), 20000, 21);
    auto ref = oracle::brute_force_scaled_loss(1.0 / 3.0, theta.d, 30, 200000, 5);
    const double combined = std::hypot(est.std_error, ref.stderr_);
    EXPECT_LE(std::fabs(est.mean - ref.mean), 3 * combined) << est.mean << " vs " << ref.mean;
}
