#ifndef TRADESTAT_MODEL_SELECTION_HPP
#define TRADESTAT_MODEL_SELECTION_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tradestat/distfit.hpp"

namespace tradestat {

struct ModelScore {
    Family family;
    int k = 0;
    double ll_max = 0.0;
    double aic = 0.0;
    // Small-sample corrected AIC; absent when n <= k + 1 (correction blows up).
    std::optional<double> aicc;
    double bic = 0.0;
};

// aic = 2k - 2 ll, bic = k ln(n) - 2 ll, aicc = aic + 2k(k+1)/(n-k-1).
ModelScore score_fit(const FitResult& fit, std::size_t n);

struct FitFailure {
    Family family;
    std::string reason;
};

struct SelectionReport {
    std::size_t n = 0;
    std::vector<FitResult> fits;    // index-aligned with scores
    std::vector<ModelScore> scores; // in family-name order
    std::vector<FitFailure> failures;
    Family winner_aic = Family::exponential;
    Family winner_bic = Family::exponential;
};

// Fits all five families to the sample, scores each, and picks the winners
// by smallest criterion value. Ties break toward fewer parameters, then
// lexicographic family name. Families whose fit fails (degenerate sample,
// unbracketed solver) are recorded in `failures` and excluded from the
// ranking; if every family fails a DataError propagates.
SelectionReport select_model(const Sample& sample);

// CDF of a Pareto(alpha, beta) truncated to [beta, g_max]:
//   [1 - (beta/g)^alpha] / [1 - (beta/g_max)^alpha].
// Precondition: 0 < beta <= g <= g_max, alpha > 0; throws
// std::invalid_argument otherwise.
double scaled_pareto_cdf(double g, double alpha, double beta, double g_max);

nlohmann::json to_json(const SelectionReport& report);

} // namespace tradestat

#endif
