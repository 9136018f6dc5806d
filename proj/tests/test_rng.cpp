#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "support/oracles.hpp"
#include "tradestat/rng.hpp"

using namespace tradestat;

TEST_CASE("identical seeds give identical streams") {
    Rng a(12345), b(12345);
    for (int i = 0; i < 1000; ++i)
        REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds and different substreams diverge") {
    Rng a(1), b(2);
    int same = 0;
    for (int i = 0; i < 100; ++i)
        same += a.next_u64() == b.next_u64();
    CHECK(same == 0);

    Rng s0 = Rng::stream(7, 0);
    Rng s1 = Rng::stream(7, 1);
    same = 0;
    for (int i = 0; i < 100; ++i)
        same += s0.next_u64() == s1.next_u64();
    CHECK(same == 0);
}

TEST_CASE("next_double stays in [0,1) and looks uniform") {
    Rng rng(99);
    const int n = 200000;
    std::vector<double> u(n);
    for (double& x : u) {
        x = rng.next_double();
        REQUIRE(x >= 0.0);
        REQUIRE(x < 1.0);
    }
    CHECK(std::abs(test_oracles::mean(u) - 0.5) < 0.005);
    CHECK(std::abs(test_oracles::variance(u) - 1.0 / 12.0) < 0.002);
    const double ks = test_oracles::ks_distance(u, [](double x) { return x; });
    CHECK(ks < 0.01);
}

TEST_CASE("normal() has mean 0, variance 1, and symmetric tails") {
    Rng rng(7);
    const int n = 200000;
    std::vector<double> z(n);
    for (double& x : z)
        x = rng.normal();
    CHECK(std::abs(test_oracles::mean(z)) < 0.01);
    CHECK(std::abs(test_oracles::variance(z) - 1.0) < 0.02);
    int beyond_2 = 0;
    for (double x : z)
        beyond_2 += std::abs(x) > 2.0;
    // P(|Z| > 2) = 4.55%.
    CHECK(std::abs(static_cast<double>(beyond_2) / n - 0.0455) < 0.005);
}

TEST_CASE("variate transforms match their distribution moments") {
    Rng rng(2024);
    const int n = 200000;

    std::vector<double> expo(n), logn(n), wei(n), gam(n), gam_small(n);
    for (int i = 0; i < n; ++i) {
        expo[i] = sample_exponential(rng, 2.0);
        logn[i] = sample_lognormal(rng, 1.0, 0.5);
        wei[i] = sample_weibull(rng, 2.0, 3.0);
        gam[i] = sample_gamma(rng, 3.0, 2.0);
        gam_small[i] = sample_gamma(rng, 0.5, 1.0);
    }
    // Exponential(rate 2): mean 1/2, var 1/4.
    CHECK(std::abs(test_oracles::mean(expo) - 0.5) < 0.01);
    CHECK(std::abs(test_oracles::variance(expo) - 0.25) < 0.01);
    // Lognormal(1, 0.5): mean exp(mu + sigma^2/2).
    CHECK(std::abs(test_oracles::mean(logn) - std::exp(1.125)) < 0.05);
    // Weibull(shape 2, scale 3): mean = 3 Gamma(1.5) = 3 sqrt(pi)/2.
    CHECK(std::abs(test_oracles::mean(wei) - 1.5 * std::sqrt(M_PI)) < 0.02);
    // Gamma(shape 3, rate 2): mean 1.5, var 0.75.
    CHECK(std::abs(test_oracles::mean(gam) - 1.5) < 0.02);
    CHECK(std::abs(test_oracles::variance(gam) - 0.75) < 0.02);
    // Boosted branch, shape < 1: mean 0.5, var 0.5.
    CHECK(std::abs(test_oracles::mean(gam_small) - 0.5) < 0.02);
    CHECK(std::abs(test_oracles::variance(gam_small) - 0.5) < 0.03);
}

TEST_CASE("pareto sampler matches its exact CDF") {
    Rng rng(5);
    const int n = 200000;
    std::vector<double> x(n);
    for (double& v : x) {
        v = sample_pareto(rng, 1.5, 2.0);
        REQUIRE(v >= 2.0);
    }
    const double ks = test_oracles::ks_distance(
        x, [](double v) { return 1.0 - std::pow(2.0 / v, 1.5); });
    CHECK(ks < 0.01);
}

TEST_CASE("samplers reject invalid parameters") {
    Rng rng(1);
    CHECK_THROWS_AS(sample_exponential(rng, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_gamma(rng, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_pareto(rng, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_weibull(rng, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_lognormal(rng, 0.0, 0.0), std::invalid_argument);
}
