#ifndef TRADESTAT_SIMULATION_HPP
#define TRADESTAT_SIMULATION_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tradestat/distfit.hpp"

namespace tradestat {

// Monte Carlo model of a country's trade strength: a latent "diplomatic
// distance" T with density proportional to T^(-theta) on [t_min, t_max],
// a drift speed v ~ N(0, 1/(2 p^2)), and a GDP G from a truncated Pareto
// ensemble. Strength is g = G/T and its rate f = -(G/T^2) v. The point of
// the module is to check that the simulated tails of g and |f| are Pareto
// with survival exponents 1 - theta and (1 - theta)/2.
struct SimConfig {
    double theta = 0.5;     // power of the diplomatic-distance density, >= 0
    double p = 1.0;         // velocity scale; Var(v) = 1/(2 p^2)
    double t_min = 1.0;     // distance truncation, 0 < t_min < t_max
    double t_max = 1e6;
    double gdp_alpha = 0.135; // Pareto exponent of the GDP ensemble
    double gdp_min = 1e9;     // USD; gdp_min == gdp_max degenerates to fixed G
    double gdp_max = 1e11;
    std::size_t n_samples = 1000000;
    std::uint64_t seed = 20040;

    // Throws ConfigError when bounds are unordered or non-positive.
    void validate() const;

    // Flat `key = value` lines ('#' comments) or a JSON object; keys are the
    // field names above. Unknown keys are ConfigErrors.
    static SimConfig from_file(const std::filesystem::path& path);

    nlohmann::json to_json() const;
};

struct TailEstimate {
    double alpha_hat = 0.0;
    double stderr_alpha = 0.0; // alpha_hat / sqrt(k_tail)
    std::size_t k_tail = 0;    // order statistics used
};

struct SimOutcome {
    SimConfig config;
    std::vector<double> g_values; // strength per sample
    std::vector<double> f_values; // signed rate per sample
    TailEstimate g_tail;
    TailEstimate f_tail; // measured on |f|, zeros excluded
    double predicted_alpha_g = 0.0; // 1 - theta
    double predicted_alpha_f = 0.0; // (1 - theta) / 2
    std::size_t g_top_discarded = 0; // values dropped near the g = G/t_min cap
    std::size_t f_top_discarded = 0;
    std::size_t f_zero_count = 0;
    double tail_fraction = 0.0;
    double top_discard = 0.0;

    nlohmann::json to_json() const; // summary only; samples go to CSV
};

// Inverse CDF of density ~ x^(-theta) truncated to [x_min, x_max];
// theta == 1 takes the logarithmic branch.
double truncated_power_quantile(double u, double theta, double x_min, double x_max);

// Inverse CDF of Pareto(alpha, x_min) truncated to [x_min, x_max].
double pareto_truncated_quantile(double u, double alpha, double x_min, double x_max);

struct StateDraw {
    double t = 0.0; // diplomatic distance
    double v = 0.0; // drift speed
};

// n_samples independent (T, v) pairs, deterministic in cfg.seed. The index
// space is cut into fixed-size partitions with per-partition substreams, so
// the draw at index i never depends on how earlier indices were scheduled.
std::vector<StateDraw> sample_diplomatic_state(const SimConfig& cfg);

// g = G/T, f = -(G/T^2) v. Throws std::invalid_argument for T <= 0.
std::pair<double, double> map_to_strength(double gdp, double t, double v);

// Truncated-Pareto GDP draws; requires 0 < g_min < g_max strictly.
std::vector<double> sample_gdp_pareto(double alpha, double g_min, double g_max,
                                      std::size_t n, std::uint64_t seed);

// E[G^s] under the truncated Pareto:
//   alpha/(s-alpha) * (g_max^(s-alpha) - g_min^(s-alpha))
//                   / (g_min^(-alpha) - g_max^(-alpha)),
// with the logarithmic limit branch when s == alpha.
double truncated_power_mean(double s, double alpha, double g_min, double g_max);

// Hill estimator over the largest tail_fraction of the sample;
// stderr = alpha_hat / sqrt(k). Throws DataError when fewer than 100 tail
// points remain or the tail is constant.
TailEstimate estimate_tail_exponent(const Sample& sample, double tail_fraction);

// Full experiment: per sample draw G, then (T, v), map to (g, f); Hill-fit
// the upper tails of g and |f| after discarding the top `top_discard`
// fraction (the pileup against the g = G/t_min cap is not power-law).
SimOutcome run_tail_experiment(const SimConfig& cfg, double tail_fraction = 0.1,
                               double top_discard = 0.001);

} // namespace tradestat

#endif
