#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "geoflow/mollifier.hpp"
#include "trig_oracle.hpp"

using namespace geoflow;
using oracle::Trig;

namespace {

// rho_eps(z) evaluated from the profile, z in (-pi, pi]
double rho(const BumpKernel& k, double z) {
    return k.profile_scale() * bump_profile(z / k.epsilon()) / k.epsilon();
}

double rho_prime(const BumpKernel& k, double z) {
    const double e = k.epsilon();
    return k.profile_scale() * bump_profile_derivative(z / e) / (e * e);
}

TEST(BumpProfile, ShapeAndDerivative) {
    EXPECT_NEAR(bump_profile(0.0), std::exp(-1.0), 1e-16);
    EXPECT_EQ(bump_profile(0.5), 0.0);
    EXPECT_EQ(bump_profile(-0.7), 0.0);
    EXPECT_DOUBLE_EQ(bump_profile(0.2), bump_profile(-0.2));
    for (double y : {-0.4, -0.1, 0.05, 0.3}) {
        const double h = 1e-6;
        const double fd = (bump_profile(y + h) - bump_profile(y - h)) / (2 * h);
        EXPECT_NEAR(bump_profile_derivative(y), fd, 1e-8);
    }
}

TEST(BumpKernel, ContractAtEpsOne) {
    const Grid g(256);
    const auto k = bump_kernel(1.0, g);
    double w = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        const double v = k.samples()[j];
        w += v * g.spacing();
        EXPECT_GE(v, 0.0);
        EXPECT_EQ(v, k.samples()[(g.size() - j) % g.size()]);
        const double d = std::min(g.node(j), kTwoPi - g.node(j));
        if (d >= 0.5) EXPECT_EQ(v, 0.0);
    }
    EXPECT_NEAR(w, 1.0, 1e-14);
}

TEST(BumpKernel, PeakScalesInverselyWithEpsilon) {
    const Grid g(256);
    const double p1 = bump_kernel(1.0, g).samples()[0];
    const double p4 = bump_kernel(0.25, g).samples()[0];
    // oracle: direct evaluation of (1/eps) rho(0 / eps) with the continuous normalization
    double z = 0.0;
    const int m = 200000;
    for (int i = 0; i < m; ++i) z += bump_profile(-0.5 + (i + 0.5) / m) / m;
    // the kernels carry unit grid weight, which departs from the continuous
    // normalization by the trapezoid error of the bump (about 10 nodes at eps = 1/4)
    EXPECT_NEAR(p1, bump_profile(0.0) / z, 1e-5 * p1);
    EXPECT_NEAR(p4 / p1, 4.0, 0.04);

    // resolved grids recover the exact scaling law
    const Grid fine(4096);
    EXPECT_NEAR(bump_kernel(0.25, fine).samples()[0] / bump_kernel(1.0, fine).samples()[0], 4.0, 1e-8);
}

TEST(BumpKernel, Errors) {
    EXPECT_THROW(bump_kernel(0.1, Grid(64)), Error);
    EXPECT_THROW(bump_kernel(0.0, Grid(256)), Error);
    EXPECT_THROW(bump_kernel(1.5, Grid(256)), Error);
    try {
        bump_kernel(0.1, Grid(64));
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("kernel unresolved"), std::string::npos);
    }
}

TEST(Mollify, ConstantIsFixed) {
    const Grid g(128);
    const auto c = PeriodicField::constant(g, 2.5);
    EXPECT_LT((mollify(c, bump_kernel(0.5, g)) - c).max_abs(), 1e-14);
}

TEST(Mollify, MatchesDirectConvolutionQuadrature) {
    const Grid g(256);
    const auto k = bump_kernel(0.5, g);
    const auto u = Trig::cos(5).sample(g);
    const auto ju = mollify(u, k);
    for (int i = 0; i < g.size(); i += 7) {
        double acc = 0.0;
        for (int j = 0; j < g.size(); ++j)
            acc += rho(k, std::remainder(g.node(i) - g.node(j), kTwoPi)) * u[j] * g.spacing();
        EXPECT_NEAR(ju[i], acc, 1e-13);
    }
    // cos 5x stays a pure mode; its amplitude factor is at most 1 in magnitude
    const double factor = 2.0 * analyze(ju)[5].real();
    EXPECT_LE(std::abs(factor), 1.0);
    EXPECT_LT(oracle::max_diff(ju, Trig::cos(5, factor)), 1e-13);
}

TEST(Mollify, GridMismatchThrows) {
    EXPECT_THROW(mollify(PeriodicField::zeros(Grid(128)), bump_kernel(0.5, Grid(256))), Error);
}

TEST(Mollify, ConvergesInHqAsEpsilonShrinks) {
    const Grid g(1024);
    const auto u = (Trig::cos(1) + Trig::sin(4, 0.5) + Trig::cos(7, 0.1)).sample(g);
    for (double q : {0.0, 1.0, 3.0}) {
        double prev = INFINITY;
        for (int p = 1; p <= 5; ++p) {
            const double err = sobolev_norm(mollify(u, bump_kernel(std::ldexp(1.0, -p), g)) - u, q);
            EXPECT_LT(err, prev) << "q=" << q << " p=" << p;
            prev = err;
        }
    }
}

TEST(Mollify, CommutesWithDerivativeAndIsSymmetric) {
    std::mt19937_64 rng(9);
    const Grid g(512);
    for (double eps : {1.0, 0.25, 1.0 / 32}) {
        const auto k = bump_kernel(eps, g);
        const auto u = oracle::random_trig(rng, 60).sample(g);
        const auto w = oracle::random_trig(rng, 60).sample(g);
        EXPECT_LT((derivative(mollify(u, k)) - mollify(derivative(u), k)).max_abs(), 1e-10);
        double lhs = 0.0, rhs = 0.0;
        const auto ju = mollify(u, k), jw = mollify(w, k);
        for (int j = 0; j < g.size(); ++j) {
            lhs += ju[j] * w[j];
            rhs += u[j] * jw[j];
        }
        EXPECT_NEAR(lhs * g.spacing(), rhs * g.spacing(), 1e-10);
    }
}

TEST(Mollify, UniformNormBound) {
    std::mt19937_64 rng(10);
    const Grid g(1024);
    const auto u = oracle::random_trig(rng, 100).sample(g);
    for (int p = 0; p <= 5; ++p) {
        const auto ju = mollify(u, bump_kernel(std::ldexp(1.0, -p), g));
        for (double q : {0.0, 1.0, 2.0, 3.0}) EXPECT_LE(sobolev_norm(ju, q), (1 + 1e-8) * sobolev_norm(u, q));
    }
}

TEST(Commutator, VanishesForConstants) {
    const Grid g(256);
    const auto k = bump_kernel(0.25, g);
    const auto m = (Trig::cos(3) + Trig::sin(1)).sample(g);
    EXPECT_LT(mollifier_commutator(PeriodicField::constant(g, 1.7), m, k).max_abs(), 1e-13);
    EXPECT_LT(mollifier_commutator(m, PeriodicField::constant(g, -2.0), k).max_abs(), 1e-13);
    EXPECT_EQ(commutator_ratio(PeriodicField::constant(g, 1.0), m, k), 0.0);
}

double kernel_form_error(int n, double eps) {
    // K(m)(x) = -rho * (u_x m)(x) - integral of rho'(x - y) (u(x) - u(y)) m(y) dy
    const Grid g(n);
    const auto k = bump_kernel(eps, g);
    const Trig ut = Trig::sin(1) + Trig::cos(2, 0.3);
    const Trig mt = Trig::cos(3) + Trig::sin(5, 0.2);
    const auto u = ut.sample(g), m = mt.sample(g);
    const auto ux = oracle::d(ut).sample(g);
    const auto kern = mollifier_commutator(u, m, k);
    double worst = 0.0;
    for (int i = 0; i < g.size(); i += g.size() / 64) {
        double acc = 0.0;
        for (int j = 0; j < g.size(); ++j) {
            const double z = std::remainder(g.node(i) - g.node(j), kTwoPi);
            acc -= rho(k, z) * ux[j] * m[j];
            acc -= rho_prime(k, z) * (u[i] - u[j]) * m[j];
        }
        worst = std::max(worst, std::abs(acc * g.spacing() - kern[i]));
    }
    return worst;
}

TEST(Commutator, MatchesKernelFormQuadrature) {
    // the quadrature of rho' converges super-algebraically once the bump spans enough nodes
    EXPECT_LT(kernel_form_error(2048, 1.0), 1e-11);
    EXPECT_LT(kernel_form_error(4096, 0.25), 1e-7);
    EXPECT_LT(kernel_form_error(4096, 0.25), kernel_form_error(2048, 0.25));
}

TEST(Commutator, RatioBoundedUniformlyInEpsilon) {
    const Grid g(1024);
    const auto u = Trig::sin(1).sample(g);
    const auto m = Trig::cos(3).sample(g);
    const double base = commutator_ratio(u, m, bump_kernel(1.0, g));
    EXPECT_GT(base, 0.0);
    for (int p = 1; p <= 5; ++p) EXPECT_LE(commutator_ratio(u, m, bump_kernel(std::ldexp(1.0, -p), g)), 2.0 * base);
}

}  // namespace
