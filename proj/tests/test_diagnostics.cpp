#include <gtest/gtest.h>

#include <cmath>

#include "geoflow/diagnostics.hpp"
#include "geoflow/diffeo.hpp"
#include "geoflow/lagrangian_solver.hpp"
#include "trig_oracle.hpp"

using namespace geoflow;
using oracle::Trig;

namespace {

TEST(MinSlope, Examples) {
    const Grid g(256);
    EXPECT_EQ(min_slope(PeriodicField::constant(g, 3.0)), 0.0);
    EXPECT_NEAR(min_slope(Trig::cos(1).sample(g)), -1.0, 1e-13);

    // dense sampling of u_x = -cos x - sin 2x
    const Trig u = Trig::sin(1, -1.0) + Trig::cos(2, 0.5);
    const Trig ux = oracle::d(u);
    double dense = INFINITY;
    for (int i = 0; i < 1 << 20; ++i) dense = std::min(dense, ux(kTwoPi * i / (1 << 20)));
    // the grid minimum is within the second-order node offset of the true minimum
    EXPECT_NEAR(min_slope(u.sample(Grid(4096))), dense, 1e-6);
    EXPECT_GE(min_slope(u.sample(g)), dense - 1e-12);
}

TEST(MinSlope, RotationInvariant) {
    const Grid g(64);
    const Trig u = Trig::sin(1) + Trig::cos(3, 0.2);
    const int shift = 5;
    const auto rotated = PeriodicField::sample(g, [&](double x) { return u(x + g.node(shift)); });
    EXPECT_NEAR(min_slope(rotated), min_slope(u.sample(g)), 1e-12);
}

TEST(MinJacobian, Examples) {
    const Grid g(64);
    EXPECT_EQ(min_jacobian(DiffeoMap::identity(g)), 1.0);
    EXPECT_NEAR(min_jacobian(DiffeoMap(Trig::sin(1, 0.3).sample(g))), 0.7, 1e-10);
}

TEST(AprioriResidual, StationaryRunIsZero) {
    DiagRow a, b;
    a.t = 0.0;
    b.t = 0.1;
    a.m_l2 = b.m_l2 = 1.3;
    a.min_ux = b.min_ux = 0.0;
    EXPECT_EQ(apriori_residual(a, b), 0.0);
}

TEST(AprioriResidual, Formula) {
    DiagRow a, b;
    a.t = 1.0;
    b.t = 1.5;
    a.m_l2 = 2.0;
    b.m_l2 = 3.0;
    a.min_ux = -0.5;
    EXPECT_DOUBLE_EQ(apriori_residual(a, b), (9.0 - 4.0) / 0.5 + 3.0 * -0.5 * 4.0);
}

TEST(AprioriResidual, NonAdjacentRowsThrow) {
    DiagRow a, b;
    a.t = 1.0;
    b.t = 1.0;
    EXPECT_THROW(apriori_residual(a, b), Error);
}

TEST(AprioriResidual, BoundedOnSingleModeRun) {
    SolverConfig cfg;
    cfg.symbol = SymbolSpec::bessel(2.0);
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    const auto tr = integrate_euler(Trig::cos(1).sample(Grid(256)), cfg);
    for (const auto& r : tr.rows)
        if (!std::isnan(r.apriori_residual)) EXPECT_LE(r.apriori_residual, 1e-3);
}

TEST(KatoPonce, DegenerateInputs) {
    const Grid g(64);
    const auto v = (Trig::cos(2) + Trig::sin(5)).sample(g);
    for (double s : {1.6, 2.0, 2.5}) {
        EXPECT_EQ(kato_ponce_ratio(PeriodicField::constant(g, 1.5), v, s), 0.0);
        EXPECT_EQ(kato_ponce_ratio(PeriodicField::zeros(g), PeriodicField::zeros(g), s), 0.0);
    }
}

TEST(KatoPonce, FamilyIsFiniteAndGridStable) {
    for (double s : {1.6, 2.0, 2.5}) {
        double mx[2] = {0.0, 0.0};
        for (int gi = 0; gi < 2; ++gi) {
            const Grid g(gi ? 512 : 256);
            for (int j = 1; j <= 8; ++j)
                for (int k = 1; k <= 8; ++k) {
                    const double r = kato_ponce_ratio(Trig::sin(j).sample(g), Trig::cos(k).sample(g), s);
                    ASSERT_TRUE(std::isfinite(r));
                    mx[gi] = std::max(mx[gi], r);
                }
        }
        EXPECT_LT(std::abs(mx[1] - mx[0]) / mx[0], 0.2);
    }
}

TEST(BesselPotential, IsTheMultiplier) {
    const Grid g(64);
    EXPECT_LT(oracle::max_diff(bessel_potential(Trig::cos(3).sample(g), 2.0), Trig::cos(3, 10.0)), 1e-12 * 10.0);
}

TEST(ChainRuleResidual, Examples) {
    const Grid g(128);
    const auto u = (Trig::cos(1) + Trig::sin(2, 0.3)).sample(g);
    EXPECT_LT(chain_rule_residual(u, u, DiffeoMap::identity(g)), 1e-10);
    const auto rot = DiffeoMap::rotation(g, 0.8);
    EXPECT_LT(chain_rule_residual(u, compose(u, rot), rot), 1e-10);
}

TEST(RunStatus, StringsRoundTrip) {
    for (auto s : {RunStatus::completed, RunStatus::stopped_min_slope, RunStatus::stopped_jacobian_floor,
                   RunStatus::stopped_norm_ceiling, RunStatus::stopped_overflow}) {
        EXPECT_EQ(parse_status(to_string(s)), s);
        EXPECT_EQ(is_blow_up(s), s != RunStatus::completed);
    }
    EXPECT_EQ(to_string(RunStatus::stopped_min_slope), "stopped:min_slope");
    EXPECT_THROW(parse_status("broken"), Error);
}

}  // namespace
