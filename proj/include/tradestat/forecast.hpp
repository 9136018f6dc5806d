#ifndef TRADESTAT_FORECAST_HPP
#define TRADESTAT_FORECAST_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tradestat/dataset.hpp"

namespace tradestat {

// Year-indexed GDP growth fractions starting the year after base_year.
// Forecasts multiply the base trade by the GDP ratio and by exp(sum of
// growth fractions over (base_year, target]); simple sums, not log(1+r).
struct GrowthPath {
    int base_year = 0;
    std::vector<std::pair<int, double>> rates; // (year, fraction/yr)

    // Years must be strictly increasing and contiguous from base_year + 1.
    // Throws std::invalid_argument otherwise.
    void validate() const;
};

// Sum of growth fractions for years base_year+1 .. target_year (times one
// year, so dimensionless). Empty sum (target == base) is 0. Throws
// std::invalid_argument when target < base, DataError when a year in the
// range has no rate.
double growth_integral(const GrowthPath& path, int target_year);

// F(t) = F0 * (G(t)/G0) * exp(growth_integral(growth, t)).
// gdp_path must contain the target year; g0 must be positive.
double forecast_trade(double f0, double g0, const std::map<int, double>& gdp_path,
                      const GrowthPath& growth, int target_year);

// Z-scores the values (population convention), keeping years. Throws
// DataError for fewer than 2 points or a constant series.
std::vector<std::pair<int, double>> normalize_series(
    const std::vector<std::pair<int, double>>& series);

struct ForecastRow {
    int year = 0;
    double trade = 0.0;      // forecast USD
    double normalized = 0.0; // z-score within the emitted window
};

struct ForecastSeries {
    std::vector<ForecastRow> rows;
};

struct BacktestResult {
    ForecastSeries forecast;
    std::vector<std::pair<int, double>> observed_normalized;
    double rmse = 0.0; // between normalized forecast and normalized observed
};

// Forecasts a country's trade over [base_year, end_year] from its observed
// GDP levels and growth, then compares against the observed trade series,
// both z-scored. Needs every year of the window present in the panel with
// growth data, and a window of at least 2 years.
BacktestResult backtest(const CountryPanel& panel, const std::string& country_code,
                        int base_year, int end_year);

} // namespace tradestat

#endif
