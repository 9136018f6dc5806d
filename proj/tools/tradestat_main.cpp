// tradestat: compute trade-strength samples from trade/GDP panels, fit and
// select among five positive-support distributions, Monte Carlo check the
// predicted Pareto tails, forecast trade from GDP growth, and cluster
// countries in (GDP, strength) space. Every command records a RunManifest
// so the exact run can be replayed bit-for-bit.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tradestat/cluster.hpp"
#include "tradestat/csv.hpp"
#include "tradestat/dataset.hpp"
#include "tradestat/errors.hpp"
#include "tradestat/forecast.hpp"
#include "tradestat/model_selection.hpp"
#include "tradestat/simulation.hpp"
#include "tradestat/strength.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tradestat;

namespace {

constexpr const char* kToolVersion = "0.1.0";

void write_json_file(const fs::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot open file for writing: " + path.string());
    out << j.dump(2) << '\n';
}

json read_json_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open file: " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw DataError(path.string() + ": invalid JSON: " + e.what());
    }
}

// The manifest captures everything needed to reproduce a run: the command,
// absolute input paths, all parameters, the seed, and the produced files
// (relative to the manifest's directory).
void write_manifest(const fs::path& out_dir, const std::string& command,
                    const json& inputs, const json& parameters, std::uint64_t seed,
                    const std::vector<std::string>& outputs) {
    json m;
    m["command"] = command;
    m["tool_version"] = kToolVersion;
    m["inputs"] = inputs;
    m["parameters"] = parameters;
    m["seed"] = seed;
    m["outputs"] = outputs;
    write_json_file(out_dir / ("manifest_" + command + ".json"), m);
}

fs::path absolute_path(const fs::path& p) {
    return fs::absolute(p).lexically_normal();
}

// ---------------------------------------------------------------- strength

struct StrengthArgs {
    std::string trade_csv;
    std::string gdp_csv;
    int year = 0;
    std::optional<double> min_value;
    bool exclude_negative_growth = false;
};

void run_strength(const StrengthArgs& args, const fs::path& out_dir) {
    Diagnostics diag;
    const auto trade = load_trade_table(args.trade_csv, &diag);
    const auto gdp = load_gdp_table(args.gdp_csv, &diag);
    const CountryPanel panel = join_panel(trade, gdp, &diag);

    StrengthSample g = compute_strength(panel, args.year);
    RateSample f = compute_strength_rate(panel, args.year, !args.exclude_negative_growth);

    std::size_t g_filtered = 0, f_filtered = 0;
    if (args.min_value) {
        const double cut = *args.min_value;
        auto filter = [&](std::vector<std::string>& codes, std::vector<double>& values,
                          std::vector<int>* signs, std::size_t& removed) {
            std::vector<std::string> keep_codes;
            std::vector<double> keep_values;
            std::vector<int> keep_signs;
            for (std::size_t i = 0; i < values.size(); ++i) {
                if (values[i] < cut) {
                    ++removed;
                    continue;
                }
                keep_codes.push_back(codes[i]);
                keep_values.push_back(values[i]);
                if (signs)
                    keep_signs.push_back((*signs)[i]);
            }
            codes = std::move(keep_codes);
            values = std::move(keep_values);
            if (signs)
                *signs = std::move(keep_signs);
        };
        filter(g.country_codes, g.values, nullptr, g_filtered);
        filter(f.country_codes, f.magnitudes, &f.signs, f_filtered);
        diag.emit({{"event", "min_value_filter"},
                   {"threshold", cut},
                   {"g_removed", g_filtered},
                   {"f_removed", f_filtered}});
        if (g.values.empty() || f.magnitudes.empty())
            throw DataError("--min-value " + format_double(cut) + " removed every value");
    }

    const std::string g_name = "g_" + std::to_string(args.year) + ".csv";
    const std::string f_name = "f_" + std::to_string(args.year) + ".csv";
    const std::string summary_name = "strength_summary_" + std::to_string(args.year) + ".json";
    const std::string diag_name = "diagnostics_strength_" + std::to_string(args.year) + ".jsonl";
    write_sample_csv(out_dir / g_name, g.country_codes, g.values);
    write_sample_csv(out_dir / f_name, f.country_codes, f.magnitudes);

    std::size_t positive = 0;
    for (int s : f.signs)
        if (s > 0)
            ++positive;
    json summary;
    summary["year"] = args.year;
    summary["g_count"] = g.values.size();
    summary["f_count"] = f.magnitudes.size();
    summary["f_positive_sign_count"] = positive;
    summary["f_negative_sign_count"] = f.magnitudes.size() - positive;
    summary["f_zero_excluded"] = f.zero_count;
    summary["f_missing_growth_excluded"] = f.missing_growth_count;
    summary["g_min_value_filtered"] = g_filtered;
    summary["f_min_value_filtered"] = f_filtered;
    json signs = json::object();
    for (std::size_t i = 0; i < f.country_codes.size(); ++i)
        signs[f.country_codes[i]] = f.signs[i];
    summary["f_signs"] = signs;
    write_json_file(out_dir / summary_name, summary);

    {
        std::ofstream diag_out(out_dir / diag_name, std::ios::binary);
        diag.write_jsonl(diag_out);
    }

    json params;
    params["year"] = args.year;
    if (args.min_value)
        params["min_value"] = *args.min_value;
    else
        params["min_value"] = nullptr;
    params["exclude_negative_growth"] = args.exclude_negative_growth;
    write_manifest(out_dir, "strength",
                   {{"trade_csv", absolute_path(args.trade_csv).string()},
                    {"gdp_csv", absolute_path(args.gdp_csv).string()}},
                   params, 0, {g_name, f_name, summary_name, diag_name});
    std::cout << "wrote " << g_name << " (" << g.values.size() << " values), " << f_name
              << " (" << f.magnitudes.size() << " values)\n";
}

// --------------------------------------------------------------------- fit

struct FitArgs {
    std::string sample_csv;
    std::string format = "csv";
};

void run_fit(const FitArgs& args, const fs::path& out_dir) {
    const NamedSample named = read_sample_csv(args.sample_csv);
    for (std::size_t i = 0; i < named.values.size(); ++i) {
        if (!(named.values[i] > 0.0))
            throw DataError(args.sample_csv + ":" + std::to_string(named.lines[i]) +
                            ": sample values must be positive, got " +
                            format_double(named.values[i]));
    }
    const Sample sample(named.values);
    const SelectionReport report = select_model(sample);

    std::vector<std::string> outputs;
    const std::string json_name = "selection.json";
    write_json_file(out_dir / json_name, to_json(report));
    outputs.push_back(json_name);

    if (args.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const ModelScore& s : report.scores)
            rows.push_back({std::string(family_name(s.family)), std::to_string(s.k),
                            format_double(s.ll_max), format_double(s.aic),
                            s.aicc ? format_double(*s.aicc) : "", format_double(s.bic)});
        const std::string csv_name = "selection.csv";
        write_csv(out_dir / csv_name, {"family", "k", "ll_max", "aic", "aicc", "bic"}, rows);
        outputs.push_back(csv_name);
    }

    // Plot data: empirical CDF vs the fitted Pareto CDF rescaled to the
    // observed range, when a Pareto fit exists.
    for (std::size_t i = 0; i < report.fits.size(); ++i) {
        if (report.fits[i].family != Family::pareto)
            continue;
        const double alpha = report.fits[i].params.at("alpha");
        const double beta = report.fits[i].params.at("beta");
        std::vector<double> sorted = sample.values();
        std::sort(sorted.begin(), sorted.end());
        const double g_max = sorted.back();
        std::vector<std::vector<std::string>> rows;
        if (g_max > beta) {
            for (std::size_t j = 0; j < sorted.size(); ++j) {
                const double ecdf =
                    static_cast<double>(j + 1) / static_cast<double>(sorted.size());
                rows.push_back({format_double(sorted[j]), format_double(ecdf),
                                format_double(scaled_pareto_cdf(sorted[j], alpha, beta, g_max))});
            }
            const std::string cdf_name = "cdf_comparison.csv";
            write_csv(out_dir / cdf_name, {"value", "empirical_cdf", "scaled_pareto_cdf"},
                      rows);
            outputs.push_back(cdf_name);
        }
        break;
    }

    write_manifest(out_dir, "fit",
                   {{"sample_csv", absolute_path(args.sample_csv).string()}},
                   {{"format", args.format}}, 0, outputs);
    std::cout << "n=" << report.n << " winner_aic=" << family_name(report.winner_aic)
              << " winner_bic=" << family_name(report.winner_bic) << '\n';
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string config_file; // empty = defaults
    SimConfig overrides;     // merged on top of the file/defaults
    bool has_theta = false, has_p = false, has_t_min = false, has_t_max = false;
    bool has_gdp_alpha = false, has_gdp_min = false, has_gdp_max = false;
    bool has_n_samples = false, has_seed = false;
    double tail_fraction = 0.1;
    double top_discard = 0.001;
    bool samples_csv = false;
};

SimConfig resolve_sim_config(const SimulateArgs& args) {
    SimConfig cfg;
    if (!args.config_file.empty())
        cfg = SimConfig::from_file(args.config_file);
    if (args.has_theta) cfg.theta = args.overrides.theta;
    if (args.has_p) cfg.p = args.overrides.p;
    if (args.has_t_min) cfg.t_min = args.overrides.t_min;
    if (args.has_t_max) cfg.t_max = args.overrides.t_max;
    if (args.has_gdp_alpha) cfg.gdp_alpha = args.overrides.gdp_alpha;
    if (args.has_gdp_min) cfg.gdp_min = args.overrides.gdp_min;
    if (args.has_gdp_max) cfg.gdp_max = args.overrides.gdp_max;
    if (args.has_n_samples) cfg.n_samples = args.overrides.n_samples;
    if (args.has_seed) cfg.seed = args.overrides.seed;
    cfg.validate();
    return cfg;
}

void run_simulate(const SimulateArgs& args, const fs::path& out_dir) {
    const SimConfig cfg = resolve_sim_config(args);
    const SimOutcome outcome = run_tail_experiment(cfg, args.tail_fraction, args.top_discard);

    std::vector<std::string> outputs;
    const std::string outcome_name = "sim_outcome.json";
    write_json_file(out_dir / outcome_name, outcome.to_json());
    outputs.push_back(outcome_name);
    if (args.samples_csv) {
        std::vector<std::vector<std::string>> rows;
        rows.reserve(outcome.g_values.size());
        for (std::size_t i = 0; i < outcome.g_values.size(); ++i)
            rows.push_back({format_double(outcome.g_values[i]),
                            format_double(outcome.f_values[i])});
        const std::string samples_name = "sim_samples.csv";
        write_csv(out_dir / samples_name, {"g", "f"}, rows);
        outputs.push_back(samples_name);
    }

    json inputs = json::object();
    if (!args.config_file.empty())
        inputs["config_file"] = absolute_path(args.config_file).string();
    json params;
    params["config"] = cfg.to_json();
    params["tail_fraction"] = args.tail_fraction;
    params["top_discard"] = args.top_discard;
    params["samples_csv"] = args.samples_csv;
    write_manifest(out_dir, "simulate", inputs, params, cfg.seed, outputs);
    std::cout << "alpha_g=" << outcome.g_tail.alpha_hat << " (predicted "
              << outcome.predicted_alpha_g << "), alpha_f=" << outcome.f_tail.alpha_hat
              << " (predicted " << outcome.predicted_alpha_f << ")\n";
}

// ---------------------------------------------------------------- forecast

struct ForecastArgs {
    std::string trade_csv;
    std::string gdp_csv;
    std::string future_csv; // optional extra GDP/growth rows
    std::string country;
    int base_year = 0;
    int target_year = 0;
};

void run_forecast(const ForecastArgs& args, const fs::path& out_dir) {
    if (args.target_year < args.base_year)
        throw ConfigError("--target-year must be >= --base-year");
    Diagnostics diag;
    const auto trade = load_trade_table(args.trade_csv, &diag);
    const auto gdp = load_gdp_table(args.gdp_csv, &diag);
    const CountryPanel panel = join_panel(trade, gdp, &diag);

    // GDP level and growth per year: observed rows first, then optional
    // user-supplied future rows (same schema as the GDP table).
    std::map<int, double> gdp_path;
    std::map<int, double> growth_by_year;
    for (const PanelRow& row : panel.rows) {
        if (row.country_code != args.country)
            continue;
        gdp_path[row.year] = row.gdp;
        if (row.gdp_growth)
            growth_by_year[row.year] = *row.gdp_growth;
    }
    if (gdp_path.empty())
        throw DataError("forecast: no panel rows for country " + args.country);
    if (!args.future_csv.empty()) {
        for (const GdpRecord& rec : load_gdp_table(args.future_csv, &diag)) {
            if (rec.country_code != args.country)
                continue;
            gdp_path[rec.year] = rec.gdp;
            if (rec.gdp_growth)
                growth_by_year[rec.year] = *rec.gdp_growth;
        }
    }

    auto base_it = gdp_path.find(args.base_year);
    if (base_it == gdp_path.end())
        throw DataError("forecast: no GDP for " + args.country + " in base year " +
                        std::to_string(args.base_year));
    double f0 = 0.0;
    bool have_f0 = false;
    for (const PanelRow& row : panel.rows) {
        if (row.country_code == args.country && row.year == args.base_year) {
            f0 = row.trade_total;
            have_f0 = true;
            break;
        }
    }
    if (!have_f0)
        throw DataError("forecast: no observed trade for " + args.country +
                        " in base year " + std::to_string(args.base_year));

    GrowthPath growth;
    growth.base_year = args.base_year;
    for (int year = args.base_year + 1; year <= args.target_year; ++year) {
        auto it = growth_by_year.find(year);
        if (it == growth_by_year.end())
            throw DataError("forecast: missing growth rate for year " + std::to_string(year) +
                            " (supply it via --future)");
        growth.rates.emplace_back(year, it->second);
    }

    std::vector<std::pair<int, double>> series;
    for (int year = args.base_year; year <= args.target_year; ++year) {
        if (!gdp_path.count(year))
            throw DataError("forecast: missing GDP level for year " + std::to_string(year) +
                            " (supply it via --future)");
        series.emplace_back(year, forecast_trade(f0, base_it->second, gdp_path, growth, year));
    }

    std::vector<std::vector<std::string>> rows;
    if (series.size() >= 2) {
        const auto normalized = normalize_series(series);
        for (std::size_t i = 0; i < series.size(); ++i)
            rows.push_back({std::to_string(series[i].first), format_double(series[i].second),
                            format_double(normalized[i].second)});
    } else {
        // Single-point window: a z-score needs at least two points.
        rows.push_back({std::to_string(series[0].first), format_double(series[0].second), ""});
    }
    const std::string csv_name = "forecast_" + args.country + ".csv";
    write_csv(out_dir / csv_name, {"year", "forecast_usd", "normalized"}, rows);

    json inputs = {{"trade_csv", absolute_path(args.trade_csv).string()},
                   {"gdp_csv", absolute_path(args.gdp_csv).string()}};
    if (!args.future_csv.empty())
        inputs["future_csv"] = absolute_path(args.future_csv).string();
    write_manifest(out_dir, "forecast", inputs,
                   {{"country", args.country},
                    {"base_year", args.base_year},
                    {"target_year", args.target_year}},
                   0, {csv_name});
    std::cout << "wrote " << csv_name << " (" << rows.size() << " years), forecast "
              << format_double(series.back().second) << " in " << args.target_year << '\n';
}

// ----------------------------------------------------------------- cluster

struct ClusterArgs {
    std::string trade_csv;
    std::string gdp_csv;
    int year = 0;
    std::optional<int> k;
    bool auto_k = false;
    int k_max = 10;
    int restarts = 10;
    std::uint64_t seed = 1;
};

void run_cluster(const ClusterArgs& args, const fs::path& out_dir) {
    if (!args.k && !args.auto_k)
        throw ConfigError("cluster: pass --k <int> or --auto-k");
    if (args.k && args.auto_k)
        throw ConfigError("cluster: --k and --auto-k are mutually exclusive");
    Diagnostics diag;
    const auto trade = load_trade_table(args.trade_csv, &diag);
    const auto gdp = load_gdp_table(args.gdp_csv, &diag);
    const CountryPanel panel = join_panel(trade, gdp, &diag);
    const ClusterInput input = make_cluster_input(panel, args.year);

    const int n = static_cast<int>(input.points.size());
    const int k_max = std::min(args.k_max, n);
    const auto curve = inertia_curve(input, k_max, args.seed, args.restarts);
    int chosen_k;
    if (args.auto_k)
        chosen_k = choose_k_elbow(curve);
    else
        chosen_k = *args.k;
    const ClusterResult result = kmeans_best(input, chosen_k, args.seed, args.restarts);

    const std::string assign_name = "assignments_" + std::to_string(args.year) + ".csv";
    const std::string curve_name = "inertia_curve_" + std::to_string(args.year) + ".csv";
    const std::string summary_name = "cluster_summary_" + std::to_string(args.year) + ".json";

    std::vector<std::vector<std::string>> assign_rows;
    for (std::size_t i = 0; i < result.country_order.size(); ++i)
        assign_rows.push_back(
            {result.country_order[i], std::to_string(result.assignments[i])});
    write_csv(out_dir / assign_name, {"country_code", "cluster_id"}, assign_rows);

    std::vector<std::vector<std::string>> curve_rows;
    for (const auto& [k, inertia] : curve)
        curve_rows.push_back({std::to_string(k), format_double(inertia)});
    write_csv(out_dir / curve_name, {"k", "inertia"}, curve_rows);

    json summary;
    summary["year"] = args.year;
    summary["n_countries"] = n;
    summary["chosen_k"] = chosen_k;
    summary["auto_k"] = args.auto_k;
    summary["inertia"] = result.inertia;
    summary["iterations"] = result.iterations;
    summary["converged"] = result.converged;
    summary["seed"] = args.seed;
    json centroids = json::array();
    std::vector<std::size_t> sizes(chosen_k, 0);
    for (int a : result.assignments)
        ++sizes[a];
    for (int c = 0; c < chosen_k; ++c)
        centroids.push_back({{"cluster_id", c},
                             {"gdp_z", result.centroids[c][0]},
                             {"strength_z", result.centroids[c][1]},
                             {"size", sizes[c]}});
    summary["clusters"] = centroids;
    write_json_file(out_dir / summary_name, summary);

    json params;
    params["year"] = args.year;
    if (args.k)
        params["k"] = *args.k;
    params["auto_k"] = args.auto_k;
    params["chosen_k"] = chosen_k;
    params["k_max"] = args.k_max;
    params["restarts"] = args.restarts;
    write_manifest(out_dir, "cluster",
                   {{"trade_csv", absolute_path(args.trade_csv).string()},
                    {"gdp_csv", absolute_path(args.gdp_csv).string()}},
                   params, args.seed, {assign_name, curve_name, summary_name});
    std::cout << "k=" << chosen_k << (args.auto_k ? " (elbow)" : "")
              << " inertia=" << result.inertia << '\n';
}

// ------------------------------------------------------------------ replay

void run_replay(const fs::path& manifest_path, std::optional<fs::path> out_dir_override) {
    const json m = read_json_file(manifest_path);
    for (const char* field : {"command", "inputs", "parameters", "outputs"})
        if (!m.contains(field))
            throw DataError(manifest_path.string() + ": manifest missing field '" +
                            std::string(field) + "'");
    const fs::path out_dir =
        out_dir_override ? *out_dir_override : manifest_path.parent_path();
    const std::string command = m["command"].get<std::string>();
    const json& inputs = m["inputs"];
    const json& params = m["parameters"];

    if (command == "strength") {
        StrengthArgs args;
        args.trade_csv = inputs.at("trade_csv").get<std::string>();
        args.gdp_csv = inputs.at("gdp_csv").get<std::string>();
        args.year = params.at("year").get<int>();
        if (!params.at("min_value").is_null())
            args.min_value = params.at("min_value").get<double>();
        args.exclude_negative_growth = params.at("exclude_negative_growth").get<bool>();
        run_strength(args, out_dir);
    } else if (command == "fit") {
        FitArgs args;
        args.sample_csv = inputs.at("sample_csv").get<std::string>();
        args.format = params.at("format").get<std::string>();
        run_fit(args, out_dir);
    } else if (command == "simulate") {
        SimulateArgs args;
        const json& cfg = params.at("config");
        args.overrides.theta = cfg.at("theta").get<double>();
        args.overrides.p = cfg.at("p").get<double>();
        args.overrides.t_min = cfg.at("t_min").get<double>();
        args.overrides.t_max = cfg.at("t_max").get<double>();
        args.overrides.gdp_alpha = cfg.at("gdp_alpha").get<double>();
        args.overrides.gdp_min = cfg.at("gdp_min").get<double>();
        args.overrides.gdp_max = cfg.at("gdp_max").get<double>();
        args.overrides.n_samples = cfg.at("n_samples").get<std::size_t>();
        args.overrides.seed = cfg.at("seed").get<std::uint64_t>();
        args.has_theta = args.has_p = args.has_t_min = args.has_t_max = true;
        args.has_gdp_alpha = args.has_gdp_min = args.has_gdp_max = true;
        args.has_n_samples = args.has_seed = true;
        args.tail_fraction = params.at("tail_fraction").get<double>();
        args.top_discard = params.at("top_discard").get<double>();
        args.samples_csv = params.at("samples_csv").get<bool>();
        run_simulate(args, out_dir);
    } else if (command == "forecast") {
        ForecastArgs args;
        args.trade_csv = inputs.at("trade_csv").get<std::string>();
        args.gdp_csv = inputs.at("gdp_csv").get<std::string>();
        if (inputs.contains("future_csv"))
            args.future_csv = inputs.at("future_csv").get<std::string>();
        args.country = params.at("country").get<std::string>();
        args.base_year = params.at("base_year").get<int>();
        args.target_year = params.at("target_year").get<int>();
        run_forecast(args, out_dir);
    } else if (command == "cluster") {
        ClusterArgs args;
        args.trade_csv = inputs.at("trade_csv").get<std::string>();
        args.gdp_csv = inputs.at("gdp_csv").get<std::string>();
        args.year = params.at("year").get<int>();
        if (params.contains("k"))
            args.k = params.at("k").get<int>();
        args.auto_k = params.at("auto_k").get<bool>();
        args.k_max = params.at("k_max").get<int>();
        args.restarts = params.at("restarts").get<int>();
        args.seed = m.at("seed").get<std::uint64_t>();
        run_cluster(args, out_dir);
    } else {
        throw DataError("replay: unknown command '" + command + "' in manifest");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"trade strength statistics toolkit"};
    app.require_subcommand(1);

    std::string out_dir = ".";
    app.add_option("--out-dir", out_dir, "Directory for all output files")
        ->capture_default_str();

    // strength
    StrengthArgs strength_args;
    double strength_min_value = 0.0;
    auto* cmd_strength = app.add_subcommand(
        "strength", "Compute per-country g = trade/GDP and f = g*growth for one year");
    cmd_strength->add_option("--trade", strength_args.trade_csv, "Trade CSV")->required();
    cmd_strength->add_option("--gdp", strength_args.gdp_csv, "GDP CSV")->required();
    cmd_strength->add_option("--year", strength_args.year, "Year to extract")->required();
    auto* min_value_opt = cmd_strength->add_option(
        "--min-value", strength_min_value, "Drop sample values below this threshold");
    cmd_strength->add_flag("--exclude-negative-growth", strength_args.exclude_negative_growth,
                           "Drop countries with shrinking GDP from the f sample");

    // fit
    FitArgs fit_args;
    auto* cmd_fit = app.add_subcommand(
        "fit", "Fit five distributions to a positive sample and rank by AIC/BIC");
    cmd_fit->add_option("--sample", fit_args.sample_csv, "Sample CSV (country_code,value or value)")
        ->required();
    cmd_fit->add_option("--format", fit_args.format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    // simulate
    SimulateArgs sim_args;
    auto* cmd_simulate = app.add_subcommand(
        "simulate", "Monte Carlo tail experiment for strength and its rate");
    cmd_simulate->add_option("--config", sim_args.config_file,
                             "Config file (key = value lines or JSON)");
    auto* o_theta = cmd_simulate->add_option("--theta", sim_args.overrides.theta);
    auto* o_p = cmd_simulate->add_option("--p", sim_args.overrides.p);
    auto* o_tmin = cmd_simulate->add_option("--t-min", sim_args.overrides.t_min);
    auto* o_tmax = cmd_simulate->add_option("--t-max", sim_args.overrides.t_max);
    auto* o_galpha = cmd_simulate->add_option("--gdp-alpha", sim_args.overrides.gdp_alpha);
    auto* o_gmin = cmd_simulate->add_option("--gdp-min", sim_args.overrides.gdp_min);
    auto* o_gmax = cmd_simulate->add_option("--gdp-max", sim_args.overrides.gdp_max);
    auto* o_n = cmd_simulate->add_option("--n-samples", sim_args.overrides.n_samples);
    auto* o_seed = cmd_simulate->add_option("--seed", sim_args.overrides.seed,
                                            "Seed for all randomness in this run");
    cmd_simulate->add_option("--tail-fraction", sim_args.tail_fraction)
        ->capture_default_str();
    cmd_simulate->add_option("--top-discard", sim_args.top_discard)->capture_default_str();
    cmd_simulate->add_flag("--samples-csv", sim_args.samples_csv,
                           "Also dump raw (g, f) samples to CSV");

    // forecast
    ForecastArgs forecast_args;
    auto* cmd_forecast = app.add_subcommand(
        "forecast", "Forecast a country's total trade from GDP level and growth");
    cmd_forecast->add_option("--trade", forecast_args.trade_csv, "Trade CSV")->required();
    cmd_forecast->add_option("--gdp", forecast_args.gdp_csv, "GDP CSV")->required();
    cmd_forecast->add_option("--future", forecast_args.future_csv,
                             "Extra GDP/growth rows for future years (GDP CSV schema)");
    cmd_forecast->add_option("--country", forecast_args.country, "Country code")->required();
    cmd_forecast->add_option("--base-year", forecast_args.base_year)->required();
    cmd_forecast->add_option("--target-year", forecast_args.target_year)->required();

    // cluster
    ClusterArgs cluster_args;
    int cluster_k = 0;
    auto* cmd_cluster = app.add_subcommand(
        "cluster", "K-means over normalized (GDP, strength) for one year");
    cmd_cluster->add_option("--trade", cluster_args.trade_csv, "Trade CSV")->required();
    cmd_cluster->add_option("--gdp", cluster_args.gdp_csv, "GDP CSV")->required();
    cmd_cluster->add_option("--year", cluster_args.year, "Year to cluster")->required();
    auto* k_opt = cmd_cluster->add_option("--k", cluster_k, "Cluster count");
    cmd_cluster->add_flag("--auto-k", cluster_args.auto_k, "Choose k by the elbow rule");
    cmd_cluster->add_option("--k-max", cluster_args.k_max, "Largest k for the inertia curve")
        ->capture_default_str();
    cmd_cluster->add_option("--restarts", cluster_args.restarts)->capture_default_str();
    cmd_cluster->add_option("--seed", cluster_args.seed, "Seed for all randomness in this run")
        ->capture_default_str();

    // replay
    std::string replay_manifest;
    std::string replay_out_dir;
    auto* cmd_replay = app.add_subcommand("replay", "Re-run a recorded manifest");
    cmd_replay->add_option("manifest", replay_manifest, "Path to a manifest JSON")->required();
    cmd_replay->add_option("--out-dir", replay_out_dir,
                           "Write outputs here instead of next to the manifest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // bad flags are configuration errors
    }

    try {
        const fs::path out(out_dir);
        if (!out.empty())
            fs::create_directories(out);
        if (cmd_strength->parsed()) {
            if (min_value_opt->count())
                strength_args.min_value = strength_min_value;
            run_strength(strength_args, out);
        } else if (cmd_fit->parsed()) {
            run_fit(fit_args, out);
        } else if (cmd_simulate->parsed()) {
            sim_args.has_theta = o_theta->count() > 0;
            sim_args.has_p = o_p->count() > 0;
            sim_args.has_t_min = o_tmin->count() > 0;
            sim_args.has_t_max = o_tmax->count() > 0;
            sim_args.has_gdp_alpha = o_galpha->count() > 0;
            sim_args.has_gdp_min = o_gmin->count() > 0;
            sim_args.has_gdp_max = o_gmax->count() > 0;
            sim_args.has_n_samples = o_n->count() > 0;
            sim_args.has_seed = o_seed->count() > 0;
            run_simulate(sim_args, out);
        } else if (cmd_forecast->parsed()) {
            run_forecast(forecast_args, out);
        } else if (cmd_cluster->parsed()) {
            if (k_opt->count())
                cluster_args.k = cluster_k;
            run_cluster(cluster_args, out);
        } else if (cmd_replay->parsed()) {
            std::optional<fs::path> override_dir;
            if (!replay_out_dir.empty()) {
                override_dir = fs::path(replay_out_dir);
                fs::create_directories(*override_dir);
            }
            run_replay(replay_manifest, override_dir);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
