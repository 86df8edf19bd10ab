#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fflm/ensemble.hpp"
#include "fflm/lfunction.hpp"
#include "fflm/zeta.hpp"

using namespace fflm;

namespace {
const PrimePoly& p3() {
    static const auto p = PrimePoly::certify(Poly::from_signed(3, {1, -1, 0, 1}));
    return p;
}
}  // namespace

TEST(LFunction, CoefficientsExample) {
    const auto L = l_coefficients(p3());
    EXPECT_EQ(L.g, 1);
    EXPECT_EQ(L.a, (std::vector<i64>{1, 3, 3}));
    EXPECT_EQ(l_coefficients_direct(p3()), L.a);
    for (const auto& p : iterate_ensemble(3, 1)) {
        const auto a = l_coefficients(p).a;
        EXPECT_EQ(a[0], 1);
        EXPECT_EQ(a[2], 3);
    }
}

TEST(LFunction, RejectsEvenDegree) {
    EXPECT_THROW(l_coefficients(PrimePoly::certify(Poly::from_signed(3, {1, 0, 1}))), AlgebraError);
}

TEST(LFunction, Evaluation) {
    const auto L = l_coefficients(p3());
    EXPECT_NEAR(central_value(L), 2.0 + std::sqrt(3.0), 1e-12);
    EXPECT_EQ(l_eval(L, cplx(0, 0)), cplx(1, 0));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (const auto& p : iterate_ensemble(5, 2)) {
        const auto Lp = l_coefficients(p);
        const cplx s(0.5 + 0.3 * U(rng), 2.0 * U(rng));
        EXPECT_LT(std::abs(l_at_s(Lp, s) - l_eval_afe(Lp, s)), 1e-12 * std::max(1.0, std::abs(l_at_s(Lp, s))));
    }
}

TEST(LFunction, Violations) {
    EXPECT_EQ(lpolynomial_violation(3, 1, {1, 3, 3}), "");
    EXPECT_NE(lpolynomial_violation(3, 1, {2, 3, 6}), "");
    EXPECT_NE(lpolynomial_violation(3, 1, {1, 3, 4}), "");
    EXPECT_NE(lpolynomial_violation(3, 1, {1, 4, 3}), "");  // |a_1| > 2 sqrt(3)
    EXPECT_NE(lpolynomial_violation(3, 1, {1, 3}), "");
}

TEST(LFunction, ZerosExample) {
    const auto z = zeros(l_coefficients(p3()));
    ASSERT_EQ(z.thetas.size(), 2u);
    EXPECT_NEAR(z.thetas[0], -5 * std::numbers::pi / 6, 1e-12);
    EXPECT_NEAR(z.thetas[1], 5 * std::numbers::pi / 6, 1e-12);
    const auto tau = scaled_ordinates(z, 3, 1);
    EXPECT_NEAR(tau[1], -5.0 / 6.0, 1e-12);
}

TEST(LFunction, ZeroInvariants) {
    for (u32 q : {3u, 5u})
        for (int g = 1; g <= 2; ++g)
            for (const auto& p : iterate_ensemble(q, g)) {
                const auto L = l_coefficients(p);
                const auto z = zeros(L);
                ASSERT_EQ(static_cast<int>(z.thetas.size()), 2 * g);
                for (std::size_t i = 0; i < z.thetas.size(); ++i) {
                    EXPECT_NEAR(z.thetas[i], -z.thetas[z.thetas.size() - 1 - i], 1e-9);
                    const auto u = polish_root(L, zero_point(q, z.thetas[i]));
                    EXPECT_LT(std::abs(std::abs(u) * std::sqrt(static_cast<double>(q)) - 1.0), 1e-9);
                }
                for (double t : scaled_ordinates(z, q, g)) EXPECT_LE(std::abs(t), g + 1e-12);
            }
}

TEST(LFunction, DoubleZeroCountedTwice) {
    // (1 + 3u^2)^2: double zeros at theta = +-pi/2
    LPolynomial L;
    L.q = 3;
    L.g = 2;
    L.a = {1, 0, 6, 0, 9};
    const auto z = zeros(L);
    ASSERT_EQ(z.thetas.size(), 4u);
    EXPECT_NEAR(z.thetas[0], -std::numbers::pi / 2, 1e-6);
    EXPECT_NEAR(z.thetas[1], -std::numbers::pi / 2, 1e-6);
    EXPECT_NEAR(z.thetas[3], std::numbers::pi / 2, 1e-6);
}

TEST(LFunction, XFactorIdentities) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int i = 0; i < 20; ++i) {
        const cplx s(U(rng), U(rng));
        const int g = 1 + i % 4;
        EXPECT_LT(std::abs(xfactor_P(3, g, s) * xfactor_P(3, g, 1.0 - s) - 1.0), 1e-12);
        EXPECT_LT(std::abs(std::sqrt(xfactor_P(3, g, s)) - 1.0 / std::sqrt(xfactor_P(3, g, 1.0 - s))), 1e-12);
    }
    EXPECT_DOUBLE_EQ(xfactor(5, 0.5), 1.0);
    EXPECT_DOUBLE_EQ(xfactor_P(5, 3, 0.5), 1.0);
    EXPECT_NEAR(xfactor_P(3, 2, 0.3) * xfactor_P(3, 2, 0.7), 1.0, 1e-14);
}

TEST(LFunction, ZeroCountOverEnsemble) {
    const auto e = compute_ensemble(3, 2);
    std::size_t total = 0;
    for (const auto& z : ensemble_zeros(e)) total += z.thetas.size();
    EXPECT_EQ(total, 4 * count_primes(3, 5));
}
