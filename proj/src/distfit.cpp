#include "tradestat/distfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tradestat/errors.hpp"
#include "tradestat/special_functions.hpp"

namespace tradestat {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;

// Bisection on a strictly decreasing function until the bracket collapses,
// then a few Newton steps to polish. Keeps the iterate with the smallest
// |f| seen, so a Newton overshoot can never return a worse root.
template <typename F, typename DF>
double solve_decreasing_root(F f, DF df, double lo, double hi, const char* what) {
    double flo = f(lo);
    double fhi = f(hi);
    if (!(flo > 0.0) || !(fhi < 0.0))
        throw DataError(std::string(what) + ": root not bracketed on [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
    const double lo0 = lo, hi0 = hi;
    double best_x = lo, best_f = std::abs(flo);
    auto consider = [&](double x, double fx) {
        if (std::abs(fx) < best_f) {
            best_f = std::abs(fx);
            best_x = x;
        }
    };
    consider(hi, fhi);
    for (int iter = 0; iter < 200 && hi - lo > std::numeric_limits<double>::epsilon() * lo;
         ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        const double fmid = f(mid);
        consider(mid, fmid);
        if (fmid > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double x = best_x;
    for (int iter = 0; iter < 8; ++iter) {
        const double slope = df(x);
        if (!(slope < 0.0))
            break;
        double next = x - f(x) / slope;
        next = std::clamp(next, lo0, hi0);
        if (next == x)
            break;
        consider(next, f(next));
        x = next;
    }
    return best_x;
}

// sum(x^b * ln x) / sum(x^b), computed in shifted-exponent form so that
// large b (up to the 1e3 bracket edge) cannot overflow.
double weighted_mean_log(double b, const Sample& sample) {
    const double m = b * sample.max_log();
    long double wsum = 0.0L, wlsum = 0.0L;
    for (double x : sample.values()) {
        const double lx = std::log(x);
        const long double w = std::exp(b * lx - m);
        wsum += w;
        wlsum += w * lx;
    }
    return static_cast<double>(wlsum / wsum);
}

// Weighted population variance of ln x under the same x^b weights;
// this is the (negated, minus 1/b^2) analytic slope of the Weibull
// shape equation.
double weighted_var_log(double b, const Sample& sample) {
    const double m = b * sample.max_log();
    const double center = weighted_mean_log(b, sample);
    long double wsum = 0.0L, acc = 0.0L;
    for (double x : sample.values()) {
        const double lx = std::log(x);
        const long double w = std::exp(b * lx - m);
        wsum += w;
        acc += w * (lx - center) * (lx - center);
    }
    return static_cast<double>(acc / wsum);
}

} // namespace

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty())
        throw DataError("sample is empty");
    long double sum = 0.0L, sum_log = 0.0L;
    min_ = values_[0];
    max_ = values_[0];
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double x = values_[i];
        if (!std::isfinite(x) || x <= 0.0)
            throw DataError("sample value at index " + std::to_string(i) +
                            " is not finite and positive: " + std::to_string(x));
        sum += x;
        sum_log += std::log(x);
        min_ = std::min(min_, x);
        max_ = std::max(max_, x);
    }
    sum_ = static_cast<double>(sum);
    sum_log_ = static_cast<double>(sum_log);
    max_log_ = std::log(max_);
}

std::string_view family_name(Family family) {
    switch (family) {
    case Family::exponential: return "exponential";
    case Family::gamma: return "gamma";
    case Family::lognormal: return "lognormal";
    case Family::pareto: return "pareto";
    case Family::weibull: return "weibull";
    }
    throw std::invalid_argument("family_name: unknown family");
}

Family family_from_name(std::string_view name) {
    if (name == "exponential") return Family::exponential;
    if (name == "gamma") return Family::gamma;
    if (name == "lognormal") return Family::lognormal;
    if (name == "pareto") return Family::pareto;
    if (name == "weibull") return Family::weibull;
    throw std::invalid_argument("family_from_name: unknown family '" + std::string(name) + "'");
}

FitResult fit_exponential(const Sample& sample) {
    const double n = static_cast<double>(sample.size());
    const double rate = n / sample.sum();
    FitResult r;
    r.family = Family::exponential;
    r.params = {{"rate", rate}};
    r.k = 1;
    r.ll_max = n * std::log(rate) - rate * sample.sum();
    return r;
}

FitResult fit_lognormal(const Sample& sample) {
    const double n = static_cast<double>(sample.size());
    const double mu = sample.mean_log();
    long double acc = 0.0L;
    for (double x : sample.values()) {
        const double d = std::log(x) - mu;
        acc += static_cast<long double>(d) * d;
    }
    const double var = static_cast<double>(acc) / n; // population variance of ln x
    if (!(var > 0.0))
        throw DataError("lognormal fit degenerate: all log-values equal");
    const double sigma = std::sqrt(var);
    FitResult r;
    r.family = Family::lognormal;
    r.params = {{"mu", mu}, {"sigma", sigma}};
    r.k = 2;
    r.ll_max = -sample.sum_log() - n * std::log(sigma) - 0.5 * n * kLogTwoPi - 0.5 * n;
    return r;
}

double gamma_shape_equation(double shape, const Sample& sample) {
    return std::log(shape) - digamma(shape) - (std::log(sample.mean()) - sample.mean_log());
}

FitResult fit_gamma(const Sample& sample) {
    const double n = static_cast<double>(sample.size());
    const double gap = std::log(sample.mean()) - sample.mean_log(); // Jensen gap, > 0 unless constant
    if (!(gap > 0.0))
        throw DataError("gamma fit degenerate: all values equal");
    auto f = [&](double a) { return gamma_shape_equation(a, sample); };
    auto df = [&](double a) {
        const double h = std::max(std::abs(a) * 1e-7, 1e-10);
        return (f(a + h) - f(a - h)) / (2.0 * h);
    };
    const double shape = solve_decreasing_root(f, df, 1e-6, 1e6, "gamma shape");
    const double rate = n * shape / sample.sum(); // = shape / mean
    FitResult r;
    r.family = Family::gamma;
    r.params = {{"shape", shape}, {"rate", rate}};
    r.k = 2;
    r.ll_max = n * shape * std::log(rate) - n * log_gamma(shape) +
               (shape - 1.0) * sample.sum_log() - rate * sample.sum();
    return r;
}

double pareto_log_likelihood(double alpha, double beta, const Sample& sample,
                             bool legacy_linear_alpha_term) {
    const double n = static_cast<double>(sample.size());
    const double lead = legacy_linear_alpha_term ? n * alpha : n * std::log(alpha);
    return lead + n * alpha * std::log(beta) - (alpha + 1.0) * sample.sum_log();
}

FitResult fit_pareto(const Sample& sample) {
    const double n = static_cast<double>(sample.size());
    const double beta = sample.min();
    const double log_spread = sample.sum_log() - n * std::log(beta); // sum ln(x / min)
    if (!(log_spread > 0.0))
        throw DataError("pareto fit degenerate: all values equal");
    const double alpha = n / log_spread;
    FitResult r;
    r.family = Family::pareto;
    r.params = {{"alpha", alpha}, {"beta", beta}};
    r.k = 2;
    r.ll_max = pareto_log_likelihood(alpha, beta, sample);
    return r;
}

double weibull_shape_equation(double shape, const Sample& sample) {
    return 1.0 / shape - weighted_mean_log(shape, sample) + sample.mean_log();
}

FitResult fit_weibull(const Sample& sample) {
    const double n = static_cast<double>(sample.size());
    if (!(sample.max() > sample.min()))
        throw DataError("weibull fit degenerate: all values equal");
    auto h = [&](double b) { return weibull_shape_equation(b, sample); };
    auto dh = [&](double b) { return -1.0 / (b * b) - weighted_var_log(b, sample); };
    const double shape = solve_decreasing_root(h, dh, 1e-3, 1e3, "weibull shape");
    // mean(x^shape) in shifted form: ln scale = max_log + ln(sum w / n) / shape.
    const double m = shape * sample.max_log();
    long double wsum = 0.0L;
    for (double x : sample.values())
        wsum += std::exp(shape * std::log(x) - m);
    const double log_scale =
        sample.max_log() + std::log(static_cast<double>(wsum) / n) / shape;
    const double scale = std::exp(log_scale);
    long double tail = 0.0L; // sum (x / scale)^shape, equals n at the MLE
    for (double x : sample.values())
        tail += std::exp(shape * (std::log(x) - log_scale));
    FitResult r;
    r.family = Family::weibull;
    r.params = {{"shape", shape}, {"scale", scale}};
    r.k = 2;
    r.ll_max = n * std::log(shape) - n * shape * log_scale +
               (shape - 1.0) * sample.sum_log() - static_cast<double>(tail);
    return r;
}

FitResult fit(Family family, const Sample& sample) {
    switch (family) {
    case Family::exponential: return fit_exponential(sample);
    case Family::gamma: return fit_gamma(sample);
    case Family::lognormal: return fit_lognormal(sample);
    case Family::pareto: return fit_pareto(sample);
    case Family::weibull: return fit_weibull(sample);
    }
    throw std::invalid_argument("fit: unknown family");
}

double log_density(Family family, const std::map<std::string, double>& params, double x) {
    const double neg_inf = -std::numeric_limits<double>::infinity();
    if (!(x > 0.0))
        return neg_inf;
    switch (family) {
    case Family::exponential: {
        const double rate = params.at("rate");
        return std::log(rate) - rate * x;
    }
    case Family::lognormal: {
        const double mu = params.at("mu");
        const double sigma = params.at("sigma");
        const double lx = std::log(x);
        const double z = (lx - mu) / sigma;
        return -lx - std::log(sigma) - 0.5 * kLogTwoPi - 0.5 * z * z;
    }
    case Family::gamma: {
        const double shape = params.at("shape");
        const double rate = params.at("rate");
        return shape * std::log(rate) - log_gamma(shape) + (shape - 1.0) * std::log(x) -
               rate * x;
    }
    case Family::pareto: {
        const double alpha = params.at("alpha");
        const double beta = params.at("beta");
        if (x < beta)
            return neg_inf;
        return std::log(alpha) + alpha * std::log(beta) - (alpha + 1.0) * std::log(x);
    }
    case Family::weibull: {
        const double shape = params.at("shape");
        const double scale = params.at("scale");
        const double lx = std::log(x);
        const double ls = std::log(scale);
        return std::log(shape) - shape * ls + (shape - 1.0) * lx -
               std::exp(shape * (lx - ls));
    }
    }
    throw std::invalid_argument("log_density: unknown family");
}

double log_density_sum(Family family, const std::map<std::string, double>& params,
                       const Sample& sample) {
    long double acc = 0.0L;
    for (double x : sample.values())
        acc += log_density(family, params, x);
    return static_cast<double>(acc);
}

} // namespace tradestat
