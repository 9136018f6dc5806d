#ifndef TRADESTAT_DISTFIT_HPP
#define TRADESTAT_DISTFIT_HPP

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tradestat {

// Immutable positive sample with the sufficient statistics every fitter
// needs (sum, log-sum, min, max) computed once at construction.
class Sample {
public:
    // Throws DataError if empty or if any value is not finite and > 0.
    explicit Sample(std::vector<double> values);

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double sum() const { return sum_; }
    double sum_log() const { return sum_log_; }
    double mean() const { return sum_ / static_cast<double>(values_.size()); }
    double mean_log() const { return sum_log_ / static_cast<double>(values_.size()); }
    double min() const { return min_; }
    double max() const { return max_; }
    double max_log() const { return max_log_; }

private:
    std::vector<double> values_;
    double sum_ = 0.0;
    double sum_log_ = 0.0;
    double min_ = 0.0;
    double max_ = 0.0;
    double max_log_ = 0.0;
};

enum class Family { exponential, lognormal, gamma, pareto, weibull };

// Lexicographic order of these names doubles as the deterministic
// tie-breaking order in model selection.
std::string_view family_name(Family family);
Family family_from_name(std::string_view name);

struct FitResult {
    Family family;
    // Parameter names: exponential {rate}; lognormal {mu, sigma};
    // gamma {shape, rate}; pareto {alpha, beta}; weibull {shape, scale}.
    std::map<std::string, double> params;
    double ll_max = 0.0; // log-likelihood at the fitted parameters
    int k = 0;           // number of free parameters
};

// Closed-form or solver-based maximum likelihood fits. All throw DataError
// when the sample degenerates (e.g. all values equal where a spread is
// required) or when a solver cannot bracket its root.
FitResult fit_exponential(const Sample& sample);
FitResult fit_lognormal(const Sample& sample);
FitResult fit_gamma(const Sample& sample);
FitResult fit_pareto(const Sample& sample);
FitResult fit_weibull(const Sample& sample);
FitResult fit(Family family, const Sample& sample);

// Estimating equations whose roots are the gamma/Weibull shape MLEs.
// Exposed so callers can verify solver quality: at the fitted shape the
// returned residual is ~1e-15.
//   gamma:   ln(shape) - digamma(shape) - (ln(mean x) - mean(ln x))
//   weibull: 1/shape - sum(x^shape ln x)/sum(x^shape) + mean(ln x)
double gamma_shape_equation(double shape, const Sample& sample);
double weibull_shape_equation(double shape, const Sample& sample);

// Per-point log density, independent of the fitting code paths, so tests can
// recompute ll_max by direct summation. Out-of-support x yields -infinity.
double log_density(Family family, const std::map<std::string, double>& params, double x);
double log_density_sum(Family family, const std::map<std::string, double>& params,
                       const Sample& sample);

// Pareto log-likelihood at (alpha, beta). The default uses the corrected
// leading term n*ln(alpha). Setting legacy_linear_alpha_term replaces it
// with n*alpha, a variant kept selectable for comparison against older
// published tables that used that form; it changes reported ll/AIC/BIC
// values but never the argmax in alpha.
double pareto_log_likelihood(double alpha, double beta, const Sample& sample,
                             bool legacy_linear_alpha_term = false);

} // namespace tradestat

#endif
