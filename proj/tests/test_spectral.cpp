#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "geoflow/spectral.hpp"
#include "trig_oracle.hpp"

using namespace geoflow;
using oracle::Trig;

namespace {

double l2(const PeriodicField& u) { return sobolev_norm(u, 0.0); }

TEST(Grid, RejectsOddOrTinySizes) {
    EXPECT_THROW(Grid(7), ConfigError);
    EXPECT_THROW(Grid(6), ConfigError);
    EXPECT_NO_THROW(Grid(8));
}

TEST(Grid, ModeIndexRoundTrip) {
    const Grid g(16);
    for (int k = -8; k < 8; ++k) EXPECT_EQ(g.mode_of(g.index_of(k)), k);
    EXPECT_EQ(g.max_resolved_mode(), 7);
    EXPECT_EQ(g.dealias_cutoff(), 5);
}

TEST(PeriodicField, RejectsNonFiniteValues) {
    EXPECT_THROW(PeriodicField(Grid(8), std::vector<double>(8, NAN)), NumericalOverflow);
}

TEST(PeriodicField, GridMismatchThrows) {
    auto a = PeriodicField::zeros(Grid(8));
    const auto b = PeriodicField::zeros(Grid(16));
    EXPECT_THROW(a += b, Error);
}

TEST(Analyze, ConstantField) {
    const auto c = analyze(PeriodicField::constant(Grid(32), 1.0));
    EXPECT_NEAR(c[0].real(), 1.0, 1e-15);
    for (int k = -16; k < 16; ++k)
        if (k) EXPECT_LT(std::abs(c[k]), 1e-15);
}

TEST(Analyze, CosineHasHalfCoefficients) {
    const Grid g(32);
    const auto c = analyze(Trig::cos(1).sample(g));
    EXPECT_NEAR(std::abs(c[1] - 0.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c[-1] - 0.5), 0.0, 1e-15);
    for (int k = -16; k < 16; ++k)
        if (std::abs(k) != 1) EXPECT_LT(std::abs(c[k]), 1e-15);
}

TEST(Analyze, RoundTripRandomBandLimited) {
    std::mt19937_64 rng(1);
    const Grid g(128);
    for (int i = 0; i < 10; ++i) {
        const auto u = oracle::random_trig(rng, 40).sample(g);
        EXPECT_LE(l2(synthesize(analyze(u)) - u), 1e-12 * l2(u));
    }
}

TEST(Synthesize, Examples) {
    const Grid g(32);
    Spectrum c = Spectrum::zeros(g);
    c.set(0, 3.0);
    EXPECT_LT((synthesize(c) - PeriodicField::constant(g, 3.0)).max_abs(), 1e-15);

    Spectrum d = Spectrum::zeros(g);
    d.set(2, 0.5);
    d.set(-2, 0.5);
    EXPECT_LT(oracle::max_diff(synthesize(d), Trig::cos(2)), 1e-15);
}

TEST(Synthesize, AnalyzeOfSynthesizeIsIdentity) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> normal;
    const Grid g(64);
    Spectrum c = Spectrum::zeros(g);
    c.set(0, normal(rng));
    for (int k = 1; k < 32; ++k) {
        const Complex z(normal(rng), normal(rng));
        c.set(k, z);
        c.set(-k, std::conj(z));
    }
    c.set(-32, normal(rng));
    const auto back = analyze(synthesize(c));
    for (int k = -32; k < 32; ++k) EXPECT_LT(std::abs(back[k] - c[k]), 1e-12);
}

TEST(Synthesize, NonHermitianSpectrumThrows) {
    Spectrum c = Spectrum::zeros(Grid(16));
    c.set(1, Complex(0.0, 1.0));
    EXPECT_THROW(synthesize(c), Error);
}

TEST(ApplySymbol, Examples) {
    const Grid g(64);
    EXPECT_LT(oracle::max_diff(apply_symbol(SymbolSpec::bessel(1.0), Trig::cos(1).sample(g)), Trig::cos(1, 2.0)),
              1e-12);
    EXPECT_LT(oracle::max_diff(apply_symbol(SymbolSpec::derivative(), Trig::sin(3).sample(g)), Trig::cos(3, 3.0)),
              1e-12);
    EXPECT_LT(oracle::max_diff(apply_symbol(SymbolSpec::clm(), (Trig::cos(1) + Trig::cos(2)).sample(g)),
                               Trig::cos(1) + Trig::cos(2, 2.0)),
              1e-13);
}

TEST(ApplySymbol, MatchesModeArithmeticOnRandomFields) {
    std::mt19937_64 rng(3);
    const Grid g(128);
    for (double s : {0.5, 1.0, 1.75}) {
        const auto t = oracle::random_trig(rng, 30);
        const auto expect = oracle::mult(t, oracle::bessel(s));
        EXPECT_LT(oracle::max_diff(apply_symbol(SymbolSpec::bessel(s), t.sample(g)), expect),
                  1e-11 * std::pow(1.0 + 900.0, s));
    }
}

TEST(ApplySymbol, EigenfunctionLawOnPureModes) {
    const Grid g(256);
    for (const auto& a : {SymbolSpec::bessel(0.5), SymbolSpec::bessel(2.0), SymbolSpec::helmholtz_power(3),
                          SymbolSpec::clm(), SymbolSpec::identity(), SymbolSpec::derivative(), SymbolSpec::hilbert()}) {
        for (int k = -g.max_resolved_mode(); k <= g.max_resolved_mode(); ++k) {
            Spectrum e = Spectrum::zeros(g);
            e.set(k, 1.0);
            const auto out = apply_symbol(a, e);
            const Complex expect = a(k);
            for (int n = -128; n < 128; ++n) {
                const Complex want = n == k ? expect : Complex(0.0);
                EXPECT_LE(std::abs(out[n] - want), 1e-12 * std::max(1.0, std::abs(expect))) << a.name() << " k=" << k;
            }
        }
    }
}

TEST(ApplySymbol, NyquistModeIsDropped) {
    const Grid g(16);
    const auto nyq = PeriodicField::sample(g, [](double x) { return std::cos(8 * x); });
    EXPECT_LT(apply_symbol(SymbolSpec::identity(), nyq).max_abs(), 1e-14);
}

TEST(SymbolSpec, ClosedFormsAndFlags) {
    EXPECT_DOUBLE_EQ(SymbolSpec::bessel(1.5)(2).real(), std::pow(5.0, 1.5));
    EXPECT_DOUBLE_EQ(SymbolSpec::bessel(1.5).order(), 3.0);
    EXPECT_DOUBLE_EQ(SymbolSpec::helmholtz_power(2)(3).real(), 100.0);
    EXPECT_DOUBLE_EQ(SymbolSpec::clm()(-4).real(), 4.0);
    EXPECT_EQ(SymbolSpec::derivative()(3), Complex(0.0, 3.0));
    EXPECT_EQ(SymbolSpec::hilbert()(-2), Complex(0.0, 1.0));
    EXPECT_EQ(SymbolSpec::clm().invertible_on(), Invertibility::mean_zero_only);
    EXPECT_TRUE(SymbolSpec::bessel(1).is_symmetric());
    EXPECT_FALSE(SymbolSpec::derivative().is_symmetric());
}

TEST(SymbolSpec, CustomTableMustCoverModes) {
    const auto a = SymbolSpec::custom({1.0, 2.0, 3.0}, 1.0, Invertibility::all_modes);
    EXPECT_DOUBLE_EQ(a(-2).real(), 3.0);
    EXPECT_THROW(a(3), Error);
    EXPECT_THROW(apply_symbol(a, PeriodicField::zeros(Grid(16))), Error);
}

TEST(SymbolSpec, OrderCertificate) {
    const Grid g(256);
    for (double s : {0.5, 1.0, 1.75, 2.0}) {
        EXPECT_NEAR(order_constant(SymbolSpec::bessel(s), g), 1.0, 1e-12);
        EXPECT_NEAR(inverse_order_constant(SymbolSpec::bessel(s), g), 1.0, 1e-12);
    }
    // |k| / (1 + k^2)^{1/2} is maximal at the largest resolved mode
    const double k = g.max_resolved_mode();
    EXPECT_NEAR(order_constant(SymbolSpec::clm(), g), k / std::sqrt(1.0 + k * k), 1e-12);
    EXPECT_NEAR(order_constant(SymbolSpec::hilbert(), g), 1.0, 1e-12);
}

TEST(SolveSymbol, Examples) {
    const Grid g(64);
    EXPECT_LT(oracle::max_diff(solve_symbol(SymbolSpec::bessel(1.0), Trig::cos(1, 2.0).sample(g)), Trig::cos(1)),
              1e-14);
    std::mt19937_64 rng(4);
    const auto u = oracle::random_trig(rng, 20).sample(g);
    EXPECT_LT((solve_symbol(SymbolSpec::identity(), u) - u).max_abs(), 1e-14);
    // a moderately conditioned case meets 1e-12 in both directions
    const auto v = oracle::random_trig(rng, 20).sample(g);
    EXPECT_LE(l2(apply_symbol(SymbolSpec::bessel(1.0), solve_symbol(SymbolSpec::bessel(1.0), v)) - v), 1e-12 * l2(v));
}

TEST(SolveSymbol, TwoSidedInverseOnDeclaredDomain) {
    std::mt19937_64 rng(5);
    const Grid g(128);
    for (const auto& a : {SymbolSpec::bessel(1.0), SymbolSpec::bessel(2.0), SymbolSpec::clm(),
                          SymbolSpec::helmholtz_power(2)}) {
        // sample rounding is amplified by up to the condition number of a on the resolved modes
        double amax = 0.0, amin = INFINITY;
        for (int k = 0; k <= g.max_resolved_mode(); ++k) {
            if (std::abs(a(k)) == 0.0) continue;
            amax = std::max(amax, std::abs(a(k)));
            amin = std::min(amin, std::abs(a(k)));
        }
        const double tol = std::max(1e-12, 16.0 * 2.2e-16 * amax / amin);
        for (int i = 0; i < 5; ++i) {
            const bool mz = a.invertible_on() == Invertibility::mean_zero_only;
            const auto u = oracle::random_trig(rng, 40, mz).sample(g);
            EXPECT_LE(l2(solve_symbol(a, apply_symbol(a, u)) - u), 1e-11 * l2(u)) << a.name();
            EXPECT_LE(l2(apply_symbol(a, solve_symbol(a, u)) - u), tol * l2(u)) << a.name();
            if (mz) EXPECT_LT(std::abs(mean(solve_symbol(a, u))), 1e-14);
        }
    }
}

TEST(SolveSymbol, ZeroModeNotInvertible) {
    const Grid g(32);
    EXPECT_THROW(solve_symbol(SymbolSpec::clm(), PeriodicField::constant(g, 1.0)), Error);
}

TEST(SobolevNorm, Examples) {
    const Grid g(64);
    EXPECT_EQ(sobolev_norm(PeriodicField::zeros(g), 1.0), 0.0);
    const auto c = Trig::cos(1).sample(g);
    // oracle: (1/2pi) integral of cos^2 = 1/2
    EXPECT_NEAR(sobolev_norm(c, 0.0), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(sobolev_norm(c, 2.0), std::sqrt(2.0), 1e-14);
    EXPECT_THROW(sobolev_norm(c, -1.0), Error);
}

TEST(SobolevNorm, ParsevalAndMonotoneInQ) {
    std::mt19937_64 rng(6);
    const Grid g(128);
    for (int i = 0; i < 10; ++i) {
        const auto u = oracle::random_trig(rng, 40).sample(g);
        double trap = 0.0;
        for (double v : u.values()) trap += v * v;
        trap /= g.size();
        const double n0 = sobolev_norm(u, 0.0);
        EXPECT_LE(std::abs(n0 * n0 - trap), 1e-10 * n0 * n0);
        double prev = 0.0;
        for (double q : {0.0, 0.5, 1.0, 2.0, 3.5}) {
            const double n = sobolev_norm(u, q);
            EXPECT_GE(n, prev);
            prev = n;
        }
    }
}

TEST(EnergyNorm, Examples) {
    const Grid g(64);
    EXPECT_EQ(energy_norm(PeriodicField::zeros(g), SymbolSpec::bessel(1.0)), 0.0);
    const auto c = Trig::cos(1).sample(g);
    // oracle: trapezoid quadrature of (Au) u over the circle
    const auto au = apply_symbol(SymbolSpec::bessel(1.0), c);
    double quad = 0.0;
    for (int j = 0; j < g.size(); ++j) quad += au[j] * c[j] * g.spacing();
    EXPECT_NEAR(energy_norm(c, SymbolSpec::bessel(1.0)), std::sqrt(quad), 1e-13);
    EXPECT_NEAR(energy_norm(c, SymbolSpec::bessel(1.0)), std::sqrt(2.0 * M_PI), 1e-13);
    EXPECT_NEAR(energy_norm(c, SymbolSpec::identity()), std::sqrt(M_PI), 1e-13);
    EXPECT_THROW(energy_norm(c, SymbolSpec::derivative()), Error);
}

TEST(Multiplier, MatchesFreeFunctions) {
    std::mt19937_64 rng(7);
    const Grid g(64);
    const auto u = oracle::random_trig(rng, 20).sample(g);
    const Multiplier m(SymbolSpec::bessel(1.5), g);
    EXPECT_LT((m.apply(u) - apply_symbol(SymbolSpec::bessel(1.5), u)).max_abs(), 1e-12);
    EXPECT_LT((m.solve(u) - solve_symbol(SymbolSpec::bessel(1.5), u)).max_abs(), 1e-12);
}

TEST(Derivative, MatchesOracle) {
    std::mt19937_64 rng(8);
    const Grid g(128);
    const auto t = oracle::random_trig(rng, 40);
    EXPECT_LT(oracle::max_diff(derivative(t.sample(g)), oracle::d(t)), 1e-12);
}

TEST(Mean, IsTrapezoidAverage) {
    const Grid g(32);
    EXPECT_NEAR(mean((Trig::constant(2.5) + Trig::sin(3)).sample(g)), 2.5, 1e-15);
}

}  // namespace
