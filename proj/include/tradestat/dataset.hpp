#ifndef TRADESTAT_DATASET_HPP
#define TRADESTAT_DATASET_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tradestat/diagnostics.hpp"

namespace tradestat {

struct TradeRecord {
    std::string country_code; // 3-letter code
    int year = 0;
    double trade_total = 0.0; // USD, exports + imports against the world
};

struct GdpRecord {
    std::string country_code;
    int year = 0;
    double gdp = 0.0; // USD
    // Fraction per year (0.04 == 4%). Absent when the source row left the
    // growth cell empty; such countries drop out of rate analyses only.
    std::optional<double> gdp_growth;
};

struct PanelRow {
    std::string country_code;
    int year = 0;
    double trade_total = 0.0;
    double gdp = 0.0;
    std::optional<double> gdp_growth;
    double strength = 0.0; // g = trade_total / gdp
    std::optional<double> strength_rate; // f = g * gdp_growth, absent with growth
};

struct CountryPanel {
    std::vector<PanelRow> rows;
};

// Reads `country_code,year,trade_total_usd`. Rows with missing or
// non-positive trade are skipped and counted on the diagnostics stream
// (event "trade_row_skipped"). Duplicate (country, year) is a hard error.
std::vector<TradeRecord> load_trade_table(const std::filesystem::path& path,
                                          Diagnostics* diag = nullptr);

// Reads `country_code,year,gdp_usd,gdp_growth_pct`. Growth is converted
// percent -> fraction; an empty growth cell yields a record without growth.
// Rows with gdp <= 0 are skipped and counted (event "gdp_row_skipped").
// Duplicate (country, year) is a hard error.
std::vector<GdpRecord> load_gdp_table(const std::filesystem::path& path,
                                      Diagnostics* diag = nullptr);

// Inner join on (country, year) computing strength and strength rate.
// Unmatched keys from either side are reported on the diagnostics stream
// (events "unmatched_trade_key" / "unmatched_gdp_key"). Empty result is a
// DataError.
CountryPanel join_panel(const std::vector<TradeRecord>& trade,
                        const std::vector<GdpRecord>& gdp,
                        Diagnostics* diag = nullptr);

// Centers to mean 0 and scales to standard deviation 1, population
// convention (divisor n). Throws DataError for fewer than 2 values or zero
// variance.
std::vector<double> zscore_normalize(const std::vector<double>& values);

} // namespace tradestat

#endif
