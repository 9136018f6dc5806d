#include "tradestat/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tradestat/errors.hpp"
#include "tradestat/rng.hpp"

namespace tradestat {

namespace {

// Partition width for substream seeding; results are a pure function of the
// sample index regardless of execution order.
constexpr std::size_t kPartition = 1u << 16;

double parse_number(const std::string& text, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos != text.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse value '" + text + "'");
    }
}

void assign_config_key(SimConfig& cfg, const std::string& key, double value) {
    if (key == "theta") cfg.theta = value;
    else if (key == "p") cfg.p = value;
    else if (key == "t_min") cfg.t_min = value;
    else if (key == "t_max") cfg.t_max = value;
    else if (key == "gdp_alpha") cfg.gdp_alpha = value;
    else if (key == "gdp_min") cfg.gdp_min = value;
    else if (key == "gdp_max") cfg.gdp_max = value;
    else if (key == "n_samples") cfg.n_samples = static_cast<std::size_t>(value);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(value);
    else throw ConfigError("unknown config key '" + key + "'");
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

void SimConfig::validate() const {
    if (!(theta >= 0.0))
        throw ConfigError("theta must be >= 0");
    if (!(p > 0.0))
        throw ConfigError("p must be > 0");
    if (!(t_min > 0.0) || !(t_max > t_min))
        throw ConfigError("need 0 < t_min < t_max");
    if (!(gdp_alpha > 0.0))
        throw ConfigError("gdp_alpha must be > 0");
    // gdp_min == gdp_max is allowed: the GDP ensemble degenerates to a point.
    if (!(gdp_min > 0.0) || !(gdp_max >= gdp_min))
        throw ConfigError("need 0 < gdp_min <= gdp_max");
    if (n_samples == 0)
        throw ConfigError("n_samples must be positive");
}

SimConfig SimConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    SimConfig cfg;
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(path.string() + ": invalid JSON: " + e.what());
        }
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!it.value().is_number())
                throw ConfigError("config key '" + it.key() + "' must be numeric");
            assign_config_key(cfg, it.key(), it.value().get<double>());
        }
    } else {
        std::istringstream lines(text);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(lines, line)) {
            ++line_no;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                                  ": expected 'key = value'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            assign_config_key(cfg, key, parse_number(value, key));
        }
    }
    cfg.validate();
    return cfg;
}

nlohmann::json SimConfig::to_json() const {
    return {{"theta", theta},       {"p", p},
            {"t_min", t_min},       {"t_max", t_max},
            {"gdp_alpha", gdp_alpha}, {"gdp_min", gdp_min},
            {"gdp_max", gdp_max},   {"n_samples", n_samples},
            {"seed", seed}};
}

double truncated_power_quantile(double u, double theta, double x_min, double x_max) {
    if (!(x_min > 0.0) || !(x_max > x_min))
        throw std::invalid_argument("truncated_power_quantile: need 0 < x_min < x_max");
    if (!(u >= 0.0) || u > 1.0)
        throw std::invalid_argument("truncated_power_quantile: u must be in [0, 1]");
    if (theta == 1.0)
        return x_min * std::exp(u * std::log(x_max / x_min));
    const double e = 1.0 - theta;
    const double lo = std::pow(x_min, e);
    const double hi = std::pow(x_max, e);
    return std::pow(lo + u * (hi - lo), 1.0 / e);
}

double pareto_truncated_quantile(double u, double alpha, double x_min, double x_max) {
    if (!(alpha > 0.0) || !(x_min > 0.0) || !(x_max > x_min))
        throw std::invalid_argument("pareto_truncated_quantile: invalid bounds");
    if (!(u >= 0.0) || u > 1.0)
        throw std::invalid_argument("pareto_truncated_quantile: u must be in [0, 1]");
    const double ratio_pow = std::pow(x_min / x_max, alpha);
    return x_min * std::pow(1.0 - u * (1.0 - ratio_pow), -1.0 / alpha);
}

std::vector<StateDraw> sample_diplomatic_state(const SimConfig& cfg) {
    cfg.validate();
    std::vector<StateDraw> draws(cfg.n_samples);
    const double v_scale = 1.0 / (cfg.p * std::sqrt(2.0));
    for (std::size_t base = 0; base < cfg.n_samples; base += kPartition) {
        Rng rng = Rng::stream(cfg.seed, base / kPartition);
        const std::size_t end = std::min(base + kPartition, cfg.n_samples);
        for (std::size_t i = base; i < end; ++i) {
            draws[i].t = truncated_power_quantile(rng.next_double(), cfg.theta,
                                                  cfg.t_min, cfg.t_max);
            draws[i].v = v_scale * rng.normal();
        }
    }
    return draws;
}

std::pair<double, double> map_to_strength(double gdp, double t, double v) {
    if (!(t > 0.0))
        throw std::invalid_argument("map_to_strength: diplomatic distance must be > 0");
    const double g = gdp / t;
    const double f = -(gdp / (t * t)) * v;
    return {g, f};
}

std::vector<double> sample_gdp_pareto(double alpha, double g_min, double g_max,
                                      std::size_t n, std::uint64_t seed) {
    if (!(alpha > 0.0) || !(g_min > 0.0) || !(g_max > g_min))
        throw std::invalid_argument("sample_gdp_pareto: invalid bounds");
    std::vector<double> out(n);
    for (std::size_t base = 0; base < n; base += kPartition) {
        Rng rng = Rng::stream(seed, base / kPartition);
        const std::size_t end = std::min(base + kPartition, n);
        for (std::size_t i = base; i < end; ++i)
            out[i] = pareto_truncated_quantile(rng.next_double(), alpha, g_min, g_max);
    }
    return out;
}

double truncated_power_mean(double s, double alpha, double g_min, double g_max) {
    if (!(alpha > 0.0) || !(g_min > 0.0) || !(g_max > g_min))
        throw std::invalid_argument("truncated_power_mean: invalid bounds");
    const double den = std::pow(g_min, -alpha) - std::pow(g_max, -alpha);
    if (std::abs(s - alpha) < 1e-12 * std::max({1.0, std::abs(s), std::abs(alpha)}))
        return alpha * std::log(g_max / g_min) / den;
    const double e = s - alpha;
    return alpha / e * (std::pow(g_max, e) - std::pow(g_min, e)) / den;
}

TailEstimate estimate_tail_exponent(const Sample& sample, double tail_fraction) {
    if (!(tail_fraction > 0.0) || tail_fraction > 1.0)
        throw std::invalid_argument("estimate_tail_exponent: tail_fraction must be in (0, 1]");
    const std::size_t n = sample.size();
    std::size_t k = static_cast<std::size_t>(static_cast<double>(n) * tail_fraction);
    if (k >= n)
        k = n - 1; // need one point below the threshold
    if (k < 100)
        throw DataError("estimate_tail_exponent: too few tail points (" + std::to_string(k) +
                        ", need >= 100)");
    std::vector<double> sorted = sample.values();
    std::sort(sorted.begin(), sorted.end());
    const double threshold = sorted[n - k - 1];
    long double acc = 0.0L;
    for (std::size_t i = n - k; i < n; ++i)
        acc += std::log(sorted[i] / threshold);
    const double mean_excess = static_cast<double>(acc) / static_cast<double>(k);
    if (!(mean_excess > 0.0))
        throw DataError("estimate_tail_exponent: constant tail, Hill estimate undefined");
    TailEstimate est;
    est.k_tail = k;
    est.alpha_hat = 1.0 / mean_excess;
    est.stderr_alpha = est.alpha_hat / std::sqrt(static_cast<double>(k));
    return est;
}

namespace {

// Drops the top `discard` fraction of values (they pile up against the
// g = G/t_min cap and are not part of the power-law region), then Hill-fits.
TailEstimate discard_and_estimate(std::vector<double> values, double tail_fraction,
                                  double discard, std::size_t* discarded) {
    std::sort(values.begin(), values.end());
    const std::size_t m =
        static_cast<std::size_t>(static_cast<double>(values.size()) * discard);
    if (m > 0)
        values.resize(values.size() - m);
    *discarded = m;
    return estimate_tail_exponent(Sample(std::move(values)), tail_fraction);
}

} // namespace

SimOutcome run_tail_experiment(const SimConfig& cfg, double tail_fraction,
                               double top_discard) {
    cfg.validate();
    if (!(top_discard >= 0.0) || top_discard >= 1.0)
        throw std::invalid_argument("run_tail_experiment: top_discard must be in [0, 1)");

    SimOutcome out;
    out.config = cfg;
    out.tail_fraction = tail_fraction;
    out.top_discard = top_discard;
    out.predicted_alpha_g = 1.0 - cfg.theta;
    out.predicted_alpha_f = (1.0 - cfg.theta) / 2.0;
    out.g_values.resize(cfg.n_samples);
    out.f_values.resize(cfg.n_samples);

    const bool fixed_gdp = cfg.gdp_min == cfg.gdp_max;
    const double v_scale = 1.0 / (cfg.p * std::sqrt(2.0));
    for (std::size_t base = 0; base < cfg.n_samples; base += kPartition) {
        Rng rng = Rng::stream(cfg.seed, base / kPartition);
        const std::size_t end = std::min(base + kPartition, cfg.n_samples);
        for (std::size_t i = base; i < end; ++i) {
            const double gdp =
                fixed_gdp ? cfg.gdp_min
                          : pareto_truncated_quantile(rng.next_double(), cfg.gdp_alpha,
                                                      cfg.gdp_min, cfg.gdp_max);
            const double t = truncated_power_quantile(rng.next_double(), cfg.theta,
                                                      cfg.t_min, cfg.t_max);
            const double v = v_scale * rng.normal();
            const auto [g, f] = map_to_strength(gdp, t, v);
            out.g_values[i] = g;
            out.f_values[i] = f;
        }
    }

    out.g_tail = discard_and_estimate(out.g_values, tail_fraction, top_discard,
                                      &out.g_top_discarded);
    std::vector<double> f_abs;
    f_abs.reserve(cfg.n_samples);
    for (double f : out.f_values) {
        if (f == 0.0)
            ++out.f_zero_count;
        else
            f_abs.push_back(std::abs(f));
    }
    out.f_tail = discard_and_estimate(std::move(f_abs), tail_fraction, top_discard,
                                      &out.f_top_discarded);
    return out;
}

nlohmann::json SimOutcome::to_json() const {
    auto tail_json = [](const TailEstimate& t) {
        return nlohmann::json{{"alpha_hat", t.alpha_hat},
                              {"stderr", t.stderr_alpha},
                              {"k_tail", t.k_tail}};
    };
    return {{"config", config.to_json()},
            {"g_tail", tail_json(g_tail)},
            {"f_tail", tail_json(f_tail)},
            {"predicted_alpha_g", predicted_alpha_g},
            {"predicted_alpha_f", predicted_alpha_f},
            {"g_top_discarded", g_top_discarded},
            {"f_top_discarded", f_top_discarded},
            {"f_zero_count", f_zero_count},
            {"tail_fraction", tail_fraction},
            {"top_discard", top_discard},
            {"n_samples", g_values.size()}};
}

} // namespace tradestat
