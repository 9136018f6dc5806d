// Shared synthetic fixtures: temp directories, canonical CSV writers, and
// the panel generators used by strength/fit/cluster/forecast tests.
#ifndef TRADESTAT_TESTS_FIXTURES_HPP
#define TRADESTAT_TESTS_FIXTURES_HPP

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "tradestat/csv.hpp"
#include "tradestat/dataset.hpp"
#include "tradestat/rng.hpp"

namespace test_fixtures {

namespace fs = std::filesystem;

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        const auto base = fs::temp_directory_path();
        path_ = base / ("tradestat_test_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }
    fs::path file(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

inline void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct PanelCountry {
    std::string code;
    int year = 0;
    double trade = 0.0;
    double gdp = 0.0;
    bool has_growth = true;
    double growth_fraction = 0.0; // written to CSV as percent
};

inline void write_panel_csvs(const std::vector<PanelCountry>& rows,
                             const fs::path& trade_csv, const fs::path& gdp_csv) {
    std::vector<std::vector<std::string>> trade_rows, gdp_rows;
    for (const PanelCountry& c : rows) {
        trade_rows.push_back(
            {c.code, std::to_string(c.year), tradestat::format_double(c.trade)});
        gdp_rows.push_back({c.code, std::to_string(c.year),
                            tradestat::format_double(c.gdp),
                            c.has_growth ? tradestat::format_double(c.growth_fraction * 100.0)
                                         : ""});
    }
    tradestat::write_csv(trade_csv, {"country_code", "year", "trade_total_usd"}, trade_rows);
    tradestat::write_csv(gdp_csv, {"country_code", "year", "gdp_usd", "gdp_growth_pct"},
                         gdp_rows);
}

// Deterministic 3-letter codes AAA, AAB, ... skipping the handful of codes
// some fixtures pin explicitly.
inline std::string synth_code(int i) {
    std::string code = "AAA";
    code[2] = static_cast<char>('A' + i % 26);
    code[1] = static_cast<char>('A' + (i / 26) % 26);
    code[0] = static_cast<char>('A' + (i / 676) % 26);
    return code;
}

// A one-year panel shaped like the published 2004 extract: 253 countries,
// strength values Pareto-like with minimum pinned to 1.86e-4, and growth
// arranged so the smallest |f| is 1.29e-6 (held by the same country).
inline std::vector<PanelCountry> panel_2004_like(std::uint64_t seed = 20040) {
    constexpr int kYear = 2004;
    constexpr int kCountries = 253;
    constexpr double kMinStrength = 1.86e-4;
    constexpr double kMinRate = 1.29e-6;
    tradestat::Rng rng(seed);
    std::vector<PanelCountry> rows;
    rows.reserve(kCountries);
    for (int i = 0; i < kCountries; ++i) {
        PanelCountry c;
        c.code = synth_code(i);
        c.year = kYear;
        double g;
        if (i == 0) {
            g = kMinStrength; // pins both the sample minimum and min |f|
            c.growth_fraction = kMinRate / kMinStrength;
        } else {
            g = tradestat::sample_pareto(rng, 0.82, kMinStrength * 1.0001);
            // |f| = g * |growth| >= g * 0.01 > kMinRate, so country 0 keeps
            // the minimum rate; mix in negative growth for sign coverage.
            const double magnitude = rng.uniform(0.01, 0.06);
            c.growth_fraction = (i % 7 == 3) ? -magnitude : magnitude;
        }
        c.gdp = 1e9 * (1.0 + static_cast<double>(i));
        c.trade = g * c.gdp;
        rows.push_back(c);
    }
    return rows;
}

// Cluster-fixture geometry: two big overlapping-ish bulks, a 3-point
// outlier cloud high in strength, and a 2-point cloud far out in GDP
// (labelled USA/CHN). After per-coordinate z-scoring the elbow of the
// inertia curve sits at k = 4 and the USA/CHN pair isolates.
struct ClusterFixture {
    std::vector<PanelCountry> rows;
    std::vector<std::string> gdp_outlier_codes; // {"CHN", "USA"}
};

inline ClusterFixture cluster_panel_2004(std::uint64_t seed = 42) {
    constexpr int kYear = 2004;
    tradestat::Rng rng(seed);
    ClusterFixture fx;
    int next_code = 0;
    auto add_cloud = [&](int count, double cx, double cy, double sigma,
                         const std::vector<std::string>& pinned_codes) {
        for (int i = 0; i < count; ++i) {
            const double x = cx + sigma * rng.normal();
            const double y = cy + sigma * rng.normal();
            PanelCountry c;
            c.code = static_cast<std::size_t>(i) < pinned_codes.size()
                         ? pinned_codes[i]
                         : synth_code(next_code++);
            c.year = kYear;
            c.gdp = 2e12 + 1e12 * x;  // affine map; z-scoring undoes it
            const double strength = 0.5 + 0.3 * y;
            c.trade = strength * c.gdp;
            c.growth_fraction = 0.02;
            fx.rows.push_back(c);
        }
    };
    add_cloud(120, -0.5, -0.35, 0.22, {});
    add_cloud(115, 0.55, 0.3, 0.28, {});
    add_cloud(3, 0.2, 8.0, 0.25, {});
    add_cloud(2, 8.0, 0.3, 0.2, {"CHN", "USA"});
    fx.gdp_outlier_codes = {"CHN", "USA"};
    return fx;
}

// Multi-year single-country panel that satisfies the forecasting relation
// exactly: GDP grows as exp(rho * t) while the recorded growth rate is a
// constant r, and trade is constructed with the same double arithmetic the
// forecaster uses, so a backtest reproduces it bit-for-bit. Pass an r whose
// percent round trip is exact (r*100 and the division back both
// representable, e.g. 0.03125), otherwise the loader's percent->fraction
// conversion introduces an off-by-one-ulp growth rate.
inline std::vector<PanelCountry> model_consistent_panel(const std::string& code,
                                                        int base_year, int years,
                                                        double gdp0, double trade0,
                                                        double rho, double r) {
    std::vector<PanelCountry> rows;
    for (int i = 0; i < years; ++i) {
        PanelCountry c;
        c.code = code;
        c.year = base_year + i;
        c.gdp = gdp0 * std::exp(rho * static_cast<double>(i));
        // Same ascending accumulation order the forecaster uses.
        double growth_sum = 0.0;
        for (int j = 1; j <= i; ++j)
            growth_sum += r;
        c.trade = trade0 * (c.gdp / gdp0) * std::exp(growth_sum);
        c.growth_fraction = r;
        rows.push_back(c);
    }
    return rows;
}

// Round-trips fixture rows through the CSV loaders and the join, so tests
// see the same percent conversion and skip rules the CLI sees.
inline tradestat::CountryPanel load_panel(const std::vector<PanelCountry>& rows) {
    TempDir dir;
    const fs::path trade_csv = dir.file("trade.csv");
    const fs::path gdp_csv = dir.file("gdp.csv");
    write_panel_csvs(rows, trade_csv, gdp_csv);
    return tradestat::join_panel(tradestat::load_trade_table(trade_csv),
                                 tradestat::load_gdp_table(gdp_csv));
}

} // namespace test_fixtures

#endif
