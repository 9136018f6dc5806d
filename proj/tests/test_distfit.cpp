#include <doctest.h>

#include <cmath>
#include <vector>

#include "support/oracles.hpp"
#include "tradestat/distfit.hpp"
#include "tradestat/errors.hpp"
#include "tradestat/rng.hpp"

using namespace tradestat;

namespace {

// Draws n values from `family` with the given parameters, fixed seed.
Sample draw_sample(Family family, const std::map<std::string, double>& params,
                   std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> values(n);
    for (double& x : values) {
        switch (family) {
        case Family::exponential:
            x = sample_exponential(rng, params.at("rate"));
            break;
        case Family::lognormal:
            x = sample_lognormal(rng, params.at("mu"), params.at("sigma"));
            break;
        case Family::gamma:
            x = sample_gamma(rng, params.at("shape"), params.at("rate"));
            break;
        case Family::pareto:
            x = sample_pareto(rng, params.at("alpha"), params.at("beta"));
            break;
        case Family::weibull:
            x = sample_weibull(rng, params.at("shape"), params.at("scale"));
            break;
        }
    }
    return Sample(std::move(values));
}

} // namespace

TEST_CASE("Sample validates values and caches sufficient statistics") {
    const Sample s(std::vector<double>{0.5, 1.0, 2.0});
    CHECK(s.size() == 3);
    CHECK(s.sum() == doctest::Approx(3.5).epsilon(1e-15));
    CHECK(s.min() == 0.5);
    CHECK(s.max() == 2.0);
    CHECK(s.sum_log() ==
          doctest::Approx(std::log(0.5) + std::log(2.0)).scale(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(Sample(std::vector<double>{}), DataError);
    CHECK_THROWS_AS(Sample(std::vector<double>{1.0, 0.0}), DataError);
    CHECK_THROWS_AS(Sample(std::vector<double>{1.0, -2.0}), DataError);
    CHECK_THROWS_AS(Sample(std::vector<double>{1.0, std::nan("")}), DataError);
    CHECK_THROWS_AS(Sample(std::vector<double>{1.0, INFINITY}), DataError);
}

TEST_CASE("exponential fit: rate = 1/mean") {
    const FitResult r = fit_exponential(Sample(std::vector<double>{1.0, 2.0, 3.0}));
    CHECK(r.params.at("rate") == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.ll_max == doctest::Approx(-5.0794415416798362).epsilon(1e-12));
    CHECK(r.k == 1);

    const FitResult single = fit_exponential(Sample(std::vector<double>{4.0}));
    CHECK(single.params.at("rate") == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(single.ll_max == doctest::Approx(-2.3862943611198908).epsilon(1e-12));
}

TEST_CASE("lognormal fit: log-moment estimates") {
    const double e1 = std::exp(1.0);
    const FitResult r =
        fit_lognormal(Sample(std::vector<double>{e1, e1, std::exp(3.0)}));
    CHECK(r.params.at("mu") == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
    CHECK(r.params.at("sigma") == doctest::Approx(0.94280904158206336).epsilon(1e-13));
    CHECK(r.ll_max == doctest::Approx(-9.0801410461294427).epsilon(1e-11));

    CHECK_THROWS_AS(fit_lognormal(Sample(std::vector<double>{2.0, 2.0, 2.0})), DataError);
}

TEST_CASE("gamma fit: shape equation root and closed-form rate") {
    const Sample s(std::vector<double>{0.5, 1.0, 2.0});
    const FitResult r = fit_gamma(s);
    CHECK(r.params.at("shape") == doctest::Approx(3.4012005878998477).epsilon(1e-10));
    CHECK(r.params.at("rate") == doctest::Approx(2.9153147896284408).epsilon(1e-10));
    CHECK(r.ll_max == doctest::Approx(-2.5668116086152954).epsilon(1e-11));
    // The estimating equation residual at the returned shape is solver-clean.
    CHECK(std::abs(gamma_shape_equation(r.params.at("shape"), s)) < 1e-12);

    CHECK_THROWS_AS(fit_gamma(Sample(std::vector<double>{3.0, 3.0})), DataError);
}

TEST_CASE("pareto fit: beta = min, alpha from log spread") {
    const FitResult unit =
        fit_pareto(Sample(std::vector<double>{1.0, std::exp(1.0), std::exp(2.0)}));
    CHECK(unit.params.at("beta") == 1.0);
    CHECK(unit.params.at("alpha") == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(unit.ll_max == doctest::Approx(-6.0).epsilon(1e-13));

    const FitResult dyadic = fit_pareto(Sample(std::vector<double>{2.0, 4.0, 8.0}));
    CHECK(dyadic.params.at("beta") == 2.0);
    CHECK(dyadic.params.at("alpha") == doctest::Approx(1.4426950408889634).epsilon(1e-14));
    CHECK(dyadic.ll_max == doctest::Approx(-6.0593443216146783).epsilon(1e-12));

    CHECK_THROWS_AS(fit_pareto(Sample(std::vector<double>{5.0, 5.0})), DataError);
}

TEST_CASE("pareto log-likelihood legacy term differs by n*(alpha - ln alpha)") {
    const Sample s(std::vector<double>{2.0, 4.0, 8.0});
    const double alpha = 1.4426950408889634;
    const double corrected = pareto_log_likelihood(alpha, 2.0, s);
    const double legacy = pareto_log_likelihood(alpha, 2.0, s, true);
    CHECK(legacy - corrected ==
          doctest::Approx(3.0 * (alpha - std::log(alpha))).epsilon(1e-12));
    // Same argmax either way: the two forms differ by a monotone reparam of
    // the leading term only; check the derivative sign pattern numerically.
    const double h = 1e-6;
    const double d_corr = pareto_log_likelihood(alpha + h, 2.0, s) -
                          pareto_log_likelihood(alpha - h, 2.0, s);
    CHECK(std::abs(d_corr) < 1e-9); // corrected form is stationary at the MLE
}

TEST_CASE("weibull fit: shape equation root and scale back-substitution") {
    const Sample s(std::vector<double>{1.0, 2.0, 3.0});
    const FitResult r = fit_weibull(s);
    CHECK(r.params.at("shape") == doctest::Approx(2.73857317359596).epsilon(1e-10));
    CHECK(r.params.at("scale") == doctest::Approx(2.2585862462440258).epsilon(1e-10));
    CHECK(r.ll_max == doctest::Approx(-3.5562515401121004).epsilon(1e-11));
    CHECK(std::abs(weibull_shape_equation(r.params.at("shape"), s)) < 1e-12);

    CHECK_THROWS_AS(fit_weibull(Sample(std::vector<double>{7.0, 7.0})), DataError);
}

TEST_CASE("ll_max equals an independent pointwise log-density sum") {
    const Sample s = draw_sample(Family::gamma, {{"shape", 2.0}, {"rate", 1.5}}, 5000, 99);
    for (Family family : {Family::exponential, Family::gamma, Family::lognormal,
                          Family::pareto, Family::weibull}) {
        const FitResult r = fit(family, s);
        const double recomputed = log_density_sum(family, r.params, s);
        CHECK(std::abs(recomputed - r.ll_max) <= 1e-9 * std::abs(r.ll_max));
    }
}

TEST_CASE("fitted parameters are local maxima of the likelihood") {
    const Sample s =
        draw_sample(Family::weibull, {{"shape", 1.3}, {"scale", 0.8}}, 4000, 1234);
    for (Family family : {Family::exponential, Family::gamma, Family::lognormal,
                          Family::pareto, Family::weibull}) {
        const FitResult r = fit(family, s);
        for (const auto& [name, value] : r.params) {
            for (double factor : {0.99, 1.01}) {
                if (family == Family::pareto && name == "beta" && factor < 1.0)
                    continue; // moving beta below min keeps ll increasing; MLE is the boundary
                auto perturbed = r.params;
                perturbed[name] = value * factor;
                const double ll = log_density_sum(family, perturbed, s);
                CHECK(ll < r.ll_max + 1e-9 * std::abs(r.ll_max));
            }
        }
    }
}

TEST_CASE("pareto beta is a boundary maximum: any smaller beta lowers the likelihood") {
    const Sample s = draw_sample(Family::pareto, {{"alpha", 1.1}, {"beta", 2.0}}, 2000, 7);
    const FitResult r = fit_pareto(s);
    auto smaller = r.params;
    smaller["beta"] = r.params.at("beta") * 0.99;
    CHECK(log_density_sum(Family::pareto, smaller, s) < r.ll_max);
    auto larger = r.params;
    larger["beta"] = r.params.at("beta") * 1.01;
    // beta above the minimum puts the smallest point out of support.
    CHECK(log_density_sum(Family::pareto, larger, s) ==
          -std::numeric_limits<double>::infinity());
}

TEST_CASE("parameter recovery smoke test at n = 20000") {
    struct Case {
        Family family;
        std::map<std::string, double> params;
    };
    const Case cases[] = {
        {Family::exponential, {{"rate", 2.5}}},
        {Family::lognormal, {{"mu", -0.4}, {"sigma", 0.9}}},
        {Family::gamma, {{"shape", 2.2}, {"rate", 3.0}}},
        {Family::pareto, {{"alpha", 0.82}, {"beta", 1.86e-4}}},
        {Family::weibull, {{"shape", 1.4}, {"scale", 2.0}}},
    };
    for (const Case& c : cases) {
        const Sample s = draw_sample(c.family, c.params, 20000, 555);
        const FitResult r = fit(c.family, s);
        for (const auto& [name, truth] : c.params) {
            const double got = r.params.at(name);
            // 4% at n = 2e4; the tight 2% bound runs at n = 1e5 in the
            // acceptance suite.
            CHECK(std::abs(got - truth) <= 0.04 * std::abs(truth));
        }
    }
}

TEST_CASE("family names round-trip and order lexicographically") {
    const Family families[] = {Family::exponential, Family::gamma, Family::lognormal,
                               Family::pareto, Family::weibull};
    std::string prev;
    for (Family f : families) {
        const std::string name{family_name(f)};
        CHECK(family_from_name(name) == f);
        CHECK(prev < name);
        prev = name;
    }
    CHECK_THROWS_AS(family_from_name("cauchy"), std::invalid_argument);
}
