#include "tradestat/forecast.hpp"

#include <cmath>
#include <stdexcept>

#include "tradestat/errors.hpp"

namespace tradestat {

void GrowthPath::validate() const {
    for (std::size_t i = 0; i < rates.size(); ++i) {
        const int expected = base_year + 1 + static_cast<int>(i);
        if (rates[i].first != expected)
            throw std::invalid_argument(
                "growth path years must be contiguous from base_year+1; expected " +
                std::to_string(expected) + ", got " + std::to_string(rates[i].first));
    }
}

double growth_integral(const GrowthPath& path, int target_year) {
    if (target_year < path.base_year)
        throw std::invalid_argument("growth_integral: target year " +
                                    std::to_string(target_year) + " precedes base year " +
                                    std::to_string(path.base_year));
    path.validate();
    double total = 0.0;
    for (int year = path.base_year + 1; year <= target_year; ++year) {
        const std::size_t idx = static_cast<std::size_t>(year - path.base_year - 1);
        if (idx >= path.rates.size())
            throw DataError("growth_integral: no growth rate for year " + std::to_string(year));
        total += path.rates[idx].second;
    }
    return total;
}

double forecast_trade(double f0, double g0, const std::map<int, double>& gdp_path,
                      const GrowthPath& growth, int target_year) {
    if (!(g0 > 0.0))
        throw std::invalid_argument("forecast_trade: base GDP must be > 0");
    auto it = gdp_path.find(target_year);
    if (it == gdp_path.end())
        throw DataError("forecast_trade: GDP path has no entry for year " +
                        std::to_string(target_year));
    return f0 * (it->second / g0) * std::exp(growth_integral(growth, target_year));
}

std::vector<std::pair<int, double>> normalize_series(
    const std::vector<std::pair<int, double>>& series) {
    std::vector<double> values;
    values.reserve(series.size());
    for (const auto& [year, value] : series)
        values.push_back(value);
    const std::vector<double> normalized = zscore_normalize(values);
    std::vector<std::pair<int, double>> out;
    out.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i)
        out.emplace_back(series[i].first, normalized[i]);
    return out;
}

BacktestResult backtest(const CountryPanel& panel, const std::string& country_code,
                        int base_year, int end_year) {
    if (end_year <= base_year)
        throw DataError("backtest: window must span at least 2 years to normalize");

    std::map<int, const PanelRow*> by_year;
    for (const PanelRow& row : panel.rows)
        if (row.country_code == country_code)
            by_year.emplace(row.year, &row);
    if (by_year.empty())
        throw DataError("backtest: no panel rows for country " + country_code);

    std::map<int, double> gdp_path;
    GrowthPath growth;
    growth.base_year = base_year;
    std::vector<std::pair<int, double>> observed;
    for (int year = base_year; year <= end_year; ++year) {
        auto it = by_year.find(year);
        if (it == by_year.end())
            throw DataError("backtest: " + country_code + " has no panel row for year " +
                            std::to_string(year));
        const PanelRow& row = *it->second;
        gdp_path[year] = row.gdp;
        observed.emplace_back(year, row.trade_total);
        if (year > base_year) {
            if (!row.gdp_growth)
                throw DataError("backtest: " + country_code + " is missing growth for year " +
                                std::to_string(year));
            growth.rates.emplace_back(year, *row.gdp_growth);
        }
    }

    const double f0 = by_year.at(base_year)->trade_total;
    const double g0 = by_year.at(base_year)->gdp;
    std::vector<std::pair<int, double>> forecast_values;
    for (int year = base_year; year <= end_year; ++year)
        forecast_values.emplace_back(year,
                                     forecast_trade(f0, g0, gdp_path, growth, year));

    const auto forecast_norm = normalize_series(forecast_values);
    BacktestResult result;
    result.observed_normalized = normalize_series(observed);
    for (std::size_t i = 0; i < forecast_values.size(); ++i)
        result.forecast.rows.push_back(
            {forecast_values[i].first, forecast_values[i].second, forecast_norm[i].second});

    long double acc = 0.0L;
    for (std::size_t i = 0; i < forecast_norm.size(); ++i) {
        const double d = forecast_norm[i].second - result.observed_normalized[i].second;
        acc += static_cast<long double>(d) * d;
    }
    result.rmse = std::sqrt(static_cast<double>(acc / forecast_norm.size()));
    return result;
}

} // namespace tradestat
