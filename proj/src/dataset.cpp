#include "tradestat/dataset.hpp"

#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "tradestat/csv.hpp"
#include "tradestat/errors.hpp"

namespace tradestat {

namespace {

using Key = std::pair<std::string, int>;

std::string key_string(const Key& k) {
    return k.first + "/" + std::to_string(k.second);
}

void check_duplicate(std::set<Key>& seen, const Key& key, const std::filesystem::path& source) {
    if (!seen.insert(key).second)
        throw DataError(source.string() + ": duplicate (country, year) key " + key_string(key));
}

} // namespace

std::vector<TradeRecord> load_trade_table(const std::filesystem::path& path, Diagnostics* diag) {
    CsvTable table = read_csv(path);
    const std::size_t c_code = table.require_column("country_code", path);
    const std::size_t c_year = table.require_column("year", path);
    const std::size_t c_trade = table.require_column("trade_total_usd", path);

    std::vector<TradeRecord> records;
    std::set<Key> seen;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::size_t line = table.line_numbers[i];
        TradeRecord rec;
        rec.country_code = row[c_code];
        rec.year = static_cast<int>(parse_long_field(row[c_year], "year", line, path));
        check_duplicate(seen, {rec.country_code, rec.year}, path);
        if (row[c_trade].empty()) {
            ++skipped;
            if (diag)
                diag->emit({{"event", "trade_row_skipped"},
                            {"reason", "missing trade_total"},
                            {"country_code", rec.country_code},
                            {"year", rec.year},
                            {"line", line}});
            continue;
        }
        rec.trade_total = parse_double_field(row[c_trade], "trade_total_usd", line, path);
        if (!(rec.trade_total > 0.0) || !std::isfinite(rec.trade_total)) {
            ++skipped;
            if (diag)
                diag->emit({{"event", "trade_row_skipped"},
                            {"reason", "non-positive trade_total"},
                            {"country_code", rec.country_code},
                            {"year", rec.year},
                            {"line", line}});
            continue;
        }
        records.push_back(std::move(rec));
    }
    if (diag)
        diag->emit({{"event", "trade_load_summary"},
                    {"file", path.string()},
                    {"loaded", records.size()},
                    {"skipped", skipped}});
    return records;
}

std::vector<GdpRecord> load_gdp_table(const std::filesystem::path& path, Diagnostics* diag) {
    CsvTable table = read_csv(path);
    const std::size_t c_code = table.require_column("country_code", path);
    const std::size_t c_year = table.require_column("year", path);
    const std::size_t c_gdp = table.require_column("gdp_usd", path);
    const std::size_t c_growth = table.require_column("gdp_growth_pct", path);

    std::vector<GdpRecord> records;
    std::set<Key> seen;
    std::size_t skipped = 0;
    std::size_t missing_growth = 0;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::size_t line = table.line_numbers[i];
        GdpRecord rec;
        rec.country_code = row[c_code];
        rec.year = static_cast<int>(parse_long_field(row[c_year], "year", line, path));
        check_duplicate(seen, {rec.country_code, rec.year}, path);
        if (row[c_gdp].empty()) {
            ++skipped;
            if (diag)
                diag->emit({{"event", "gdp_row_skipped"},
                            {"reason", "missing gdp"},
                            {"country_code", rec.country_code},
                            {"year", rec.year},
                            {"line", line}});
            continue;
        }
        rec.gdp = parse_double_field(row[c_gdp], "gdp_usd", line, path);
        if (!(rec.gdp > 0.0) || !std::isfinite(rec.gdp)) {
            ++skipped;
            if (diag)
                diag->emit({{"event", "gdp_row_skipped"},
                            {"reason", "non-positive gdp"},
                            {"country_code", rec.country_code},
                            {"year", rec.year},
                            {"line", line}});
            continue;
        }
        if (row[c_growth].empty()) {
            ++missing_growth;
            if (diag)
                diag->emit({{"event", "gdp_growth_missing"},
                            {"country_code", rec.country_code},
                            {"year", rec.year},
                            {"line", line}});
        } else {
            // Source files carry percent; everything downstream is a fraction.
            rec.gdp_growth =
                parse_double_field(row[c_growth], "gdp_growth_pct", line, path) / 100.0;
        }
        records.push_back(std::move(rec));
    }
    if (diag)
        diag->emit({{"event", "gdp_load_summary"},
                    {"file", path.string()},
                    {"loaded", records.size()},
                    {"skipped", skipped},
                    {"missing_growth", missing_growth}});
    return records;
}

CountryPanel join_panel(const std::vector<TradeRecord>& trade,
                        const std::vector<GdpRecord>& gdp, Diagnostics* diag) {
    std::map<Key, const GdpRecord*> gdp_index;
    for (const GdpRecord& g : gdp)
        gdp_index.emplace(Key{g.country_code, g.year}, &g);

    CountryPanel panel;
    std::set<Key> matched;
    for (const TradeRecord& t : trade) {
        const Key key{t.country_code, t.year};
        auto it = gdp_index.find(key);
        if (it == gdp_index.end()) {
            if (diag)
                diag->emit({{"event", "unmatched_trade_key"},
                            {"country_code", t.country_code},
                            {"year", t.year}});
            continue;
        }
        matched.insert(key);
        const GdpRecord& g = *it->second;
        PanelRow row;
        row.country_code = t.country_code;
        row.year = t.year;
        row.trade_total = t.trade_total;
        row.gdp = g.gdp;
        row.gdp_growth = g.gdp_growth;
        row.strength = t.trade_total / g.gdp;
        if (g.gdp_growth)
            row.strength_rate = row.strength * *g.gdp_growth;
        panel.rows.push_back(std::move(row));
    }
    if (diag) {
        for (const GdpRecord& g : gdp) {
            if (!matched.count({g.country_code, g.year}))
                diag->emit({{"event", "unmatched_gdp_key"},
                            {"country_code", g.country_code},
                            {"year", g.year}});
        }
    }
    if (panel.rows.empty())
        throw DataError("join produced no rows: no (country, year) pair present in both tables");
    return panel;
}

std::vector<double> zscore_normalize(const std::vector<double>& values) {
    if (values.size() < 2)
        throw DataError("zscore_normalize: need at least 2 values");
    const double n = static_cast<double>(values.size());
    long double acc = 0.0L;
    for (double v : values)
        acc += v;
    const double mean = static_cast<double>(acc / n);
    long double var_acc = 0.0L;
    for (double v : values)
        var_acc += static_cast<long double>(v - mean) * (v - mean);
    const double sd = std::sqrt(static_cast<double>(var_acc) / n);
    if (!(sd > 0.0))
        throw DataError("zscore_normalize: zero variance (constant input)");
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values)
        out.push_back((v - mean) / sd);
    return out;
}

} // namespace tradestat
