#include "tradestat/strength.hpp"

#include <cmath>

#include "tradestat/csv.hpp"
#include "tradestat/errors.hpp"

namespace tradestat {

StrengthSample compute_strength(const CountryPanel& panel, int year) {
    StrengthSample sample;
    sample.year = year;
    for (const PanelRow& row : panel.rows) {
        if (row.year != year)
            continue;
        sample.country_codes.push_back(row.country_code);
        sample.values.push_back(row.strength);
    }
    if (sample.values.empty())
        throw DataError("compute_strength: no panel rows for year " + std::to_string(year));
    return sample;
}

RateSample compute_strength_rate(const CountryPanel& panel, int year,
                                 bool include_negative_growth) {
    RateSample sample;
    sample.year = year;
    bool saw_year = false;
    for (const PanelRow& row : panel.rows) {
        if (row.year != year)
            continue;
        saw_year = true;
        if (!row.strength_rate) {
            ++sample.missing_growth_count;
            continue;
        }
        const double f = *row.strength_rate;
        if (f == 0.0) {
            ++sample.zero_count;
            continue;
        }
        if (f < 0.0 && !include_negative_growth)
            continue;
        sample.country_codes.push_back(row.country_code);
        sample.magnitudes.push_back(std::abs(f));
        sample.signs.push_back(f > 0.0 ? 1 : -1);
    }
    if (!saw_year)
        throw DataError("compute_strength_rate: no panel rows for year " + std::to_string(year));
    if (sample.magnitudes.empty())
        throw DataError("compute_strength_rate: no usable rows for year " +
                        std::to_string(year) + " (all zero, missing, or filtered)");
    return sample;
}

void write_sample_csv(const std::filesystem::path& path,
                      const std::vector<std::string>& country_codes,
                      const std::vector<double>& values) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        rows.push_back({country_codes.at(i), format_double(values[i])});
    write_csv(path, {"country_code", "value"}, rows);
}

NamedSample read_sample_csv(const std::filesystem::path& path) {
    CsvTable table = read_csv(path);
    NamedSample sample;
    auto value_col = table.column("value");
    if (!value_col)
        throw DataError(path.string() + ": missing required column 'value'");
    auto code_col = table.column("country_code");
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const std::size_t line = table.line_numbers[i];
        sample.values.push_back(
            parse_double_field(table.rows[i][*value_col], "value", line, path));
        sample.lines.push_back(line);
        if (code_col)
            sample.country_codes.push_back(table.rows[i][*code_col]);
    }
    if (sample.values.empty())
        throw DataError(path.string() + ": no data rows");
    return sample;
}

} // namespace tradestat
