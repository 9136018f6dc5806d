#ifndef TRADESTAT_STRENGTH_HPP
#define TRADESTAT_STRENGTH_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "tradestat/dataset.hpp"

namespace tradestat {

// One year's worth of trade-strength values g = trade/GDP, fit-ready
// (all positive by construction, ingestion filters non-positive trade).
struct StrengthSample {
    int year = 0;
    std::vector<std::string> country_codes;
    std::vector<double> values; // index-aligned with country_codes
};

// One year's strength-rate magnitudes |f| = |g * growth| with the signs kept
// separately: Pareto-type fits need positive support, but the sign of f
// (growing vs shrinking trade) is still worth reporting.
struct RateSample {
    int year = 0;
    std::vector<std::string> country_codes;
    std::vector<double> magnitudes;
    std::vector<int> signs; // +1 or -1, aligned with magnitudes
    std::size_t zero_count = 0;           // exact-zero growth, excluded
    std::size_t missing_growth_count = 0; // growth absent, excluded
};

// Throws DataError when the panel has no rows for the year.
StrengthSample compute_strength(const CountryPanel& panel, int year);

// Rows with missing growth are dropped (counted); exact zeros of f are
// excluded (counted) because log-likelihoods diverge at 0. Negative-growth
// countries contribute |f| with sign -1 by default; pass
// include_negative_growth = false to restrict to growing countries.
// Throws DataError when nothing usable remains.
RateSample compute_strength_rate(const CountryPanel& panel, int year,
                                 bool include_negative_growth = true);

// Writes a two-column file (country_code, value), the on-disk shape shared
// by the per-year g and f sample files.
void write_sample_csv(const std::filesystem::path& path,
                      const std::vector<std::string>& country_codes,
                      const std::vector<double>& values);

// Reads the same two-column shape back (also accepts a bare single `value`
// column for externally produced samples).
struct NamedSample {
    std::vector<std::string> country_codes; // empty when input had no codes
    std::vector<double> values;
    std::vector<std::size_t> lines; // 1-based source line per value
};
NamedSample read_sample_csv(const std::filesystem::path& path);

} // namespace tradestat

#endif
