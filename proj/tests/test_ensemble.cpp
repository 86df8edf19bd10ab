#include <cmath>

#include <gtest/gtest.h>

#include "fflm/ensemble.hpp"
#include "fflm/report.hpp"

using namespace fflm;

TEST(Ensemble, Iterate) {
    const auto e3 = iterate_ensemble(3, 1);
    ASSERT_EQ(e3.size(), 8u);
    EXPECT_EQ(e3.front().poly(), Poly::from_signed(3, {1, 2, 0, 1}));
    EXPECT_EQ(iterate_ensemble(5, 1).size(), 40u);
    EXPECT_EQ(iterate_ensemble(5, 1, 4), iterate_ensemble(5, 1, 1));
}

TEST(Ensemble, Budget) {
    EXPECT_THROW(check_budget(13, 4, false), BudgetError);
    EXPECT_NO_THROW(check_budget(13, 4, true));
    EXPECT_NO_THROW(check_budget(5, 3, false));
}

TEST(Ensemble, ParallelMapFailure) {
    try {
        parallel_map<int>(100, 4, [](std::size_t i) -> int {
            if (i == 37) throw std::runtime_error("boom");
            return static_cast<int>(i);
        });
        FAIL();
    } catch (const EnsembleError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("item 37"), std::string::npos);
        EXPECT_NE(msg.find("boom"), std::string::npos);
        EXPECT_NE(msg.find("of 100"), std::string::npos);
    }
    EXPECT_TRUE(parallel_map<int>(0, 8, [](std::size_t) { return 1; }).empty());
}

TEST(Ensemble, MomentConjectureSide) {
    const auto e = compute_ensemble(3, 1);
    const auto m = moment_sweep(e, 2, false);
    EXPECT_NEAR(m.rows[0].conjecture, 16.0, 1e-12);
    const auto w = moment_sweep(e, 1, true);
    EXPECT_NEAR(w.rows[0].conjecture, 54.0, 1e-12);
    long double s = 0;
    for (const auto& L : e.L) s += central_value(L);
    EXPECT_NEAR(m.rows[0].empirical, static_cast<double>(s), 1e-12);
    EXPECT_NEAR(w.rows[0].empirical, 3 * static_cast<double>(s), 1e-11);
}

TEST(Ensemble, WeightedFirstMomentBand) {
    const auto e = compute_ensemble(5, 3);
    const double r = moment_sweep(e, 1, true).rows[0].ratio;
    EXPECT_GT(r, 0.8);
    EXPECT_LT(r, 1.2);
}

TEST(Ensemble, Orthogonality) {
    for (u32 q : {3u, 5u})
        for (int g = 1; g <= 2; ++g) {
            const auto ps = iterate_ensemble(q, g);
            for (int d = 0; d <= 1; ++d)
                for (const auto& h : enumerate_monic(q, d)) {
                    const auto s = orthogonality_stats(h * h, ps, g);
                    EXPECT_EQ(s.average, 1.0);
                }
        }
    const auto ps = iterate_ensemble(3, 1);
    const auto t = orthogonality_stats(Poly::t(3), ps, 1);
    EXPECT_LE(std::abs(t.average), 1.0);
    EXPECT_NEAR(t.normalized, std::abs(t.average) * std::pow(3.0, 1.5), 1e-12);
}

TEST(Ensemble, RatioSweep) {
    const auto e = compute_ensemble(3, 2);
    const auto same = ratio_sweep(e, 0.12, 0.12);
    EXPECT_EQ(same.skipped, 0u);
    EXPECT_DOUBLE_EQ(same.empirical, static_cast<double>(e.size()));
    EXPECT_NEAR(same.ratio, 1.0, 1e-12);
    const auto r = ratio_sweep(e, 0.1, 0.2);
    EXPECT_TRUE(std::isfinite(r.ratio));
}

TEST(Ensemble, RatioTrend) {
    double prev = 1e9;
    for (int g = 1; g <= 3; ++g) {
        const auto r = ratio_sweep(compute_ensemble(3, g), 0.15, 0.15);
        const double dev = std::abs(r.ratio - 1.0);
        EXPECT_LE(dev, prev + 1e-12);
        prev = dev;
    }
}

TEST(Ensemble, DlogSweep) {
    const auto row = dlog_sweep(compute_ensemble(5, 3), 0.2);
    EXPECT_NEAR(row.empirical / row.predicted, 1.0, 0.05);
}

TEST(Ensemble, OneLevel) {
    const auto e = compute_ensemble(3, 1);
    const auto zs = ensemble_zeros(e);
    EXPECT_EQ(one_level_empirical(zs, CosineTest{{1.0}}), 16.0);
    const auto d = density_histogram(e, zs, 8);
    std::size_t mass = 0;
    for (const auto& b : d.bins) mass += b.count;
    EXPECT_EQ(mass, 16u);
    EXPECT_EQ(d.total_zeros, 16u);
    EXPECT_DOUBLE_EQ(d.bins.front().lo, -1.0);
    EXPECT_DOUBLE_EQ(d.bins.back().hi, 1.0);
}

TEST(Ensemble, DeterministicAcrossWorkers) {
    std::string ref;
    for (int w : {1, 4, 8}) {
        const auto e = compute_ensemble(3, 2, w);
        const auto zs = ensemble_zeros(e, w);
        const std::string s = moments_report(moment_sweep(e, 3, false)).csv() +
                              density_report(density_histogram(e, zs, 16)).json() +
                              ratios_report(3, 2, {ratio_sweep(e, 0.1, 0.2)}).csv();
        if (ref.empty()) ref = s;
        EXPECT_EQ(s, ref) << "workers=" << w;
    }
}
