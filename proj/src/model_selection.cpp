#include "tradestat/model_selection.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

#include "tradestat/errors.hpp"

namespace tradestat {

ModelScore score_fit(const FitResult& fit, std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("score_fit: n must be positive");
    const double nd = static_cast<double>(n);
    ModelScore s;
    s.family = fit.family;
    s.k = fit.k;
    s.ll_max = fit.ll_max;
    s.aic = 2.0 * fit.k - 2.0 * fit.ll_max;
    s.bic = fit.k * std::log(nd) - 2.0 * fit.ll_max;
    if (n > static_cast<std::size_t>(fit.k) + 1)
        s.aicc = s.aic + 2.0 * fit.k * (fit.k + 1.0) / (nd - fit.k - 1.0);
    return s;
}

SelectionReport select_model(const Sample& sample) {
    static const Family kFamilies[] = {Family::exponential, Family::gamma,
                                       Family::lognormal, Family::pareto, Family::weibull};
    SelectionReport report;
    report.n = sample.size();
    for (Family family : kFamilies) {
        try {
            FitResult f = fit(family, sample);
            report.scores.push_back(score_fit(f, sample.size()));
            report.fits.push_back(std::move(f));
        } catch (const DataError& e) {
            report.failures.push_back({family, e.what()});
        }
    }
    if (report.scores.empty())
        throw DataError("model selection: every family failed to fit");

    auto pick = [&](auto criterion) {
        const ModelScore* best = &report.scores.front();
        for (const ModelScore& s : report.scores) {
            auto key = std::make_tuple(criterion(s), s.k, family_name(s.family));
            auto best_key = std::make_tuple(criterion(*best), best->k, family_name(best->family));
            if (key < best_key)
                best = &s;
        }
        return best->family;
    };
    report.winner_aic = pick([](const ModelScore& s) { return s.aic; });
    report.winner_bic = pick([](const ModelScore& s) { return s.bic; });
    return report;
}

double scaled_pareto_cdf(double g, double alpha, double beta, double g_max) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !(g_max > beta))
        throw std::invalid_argument("scaled_pareto_cdf: need alpha > 0, 0 < beta < g_max");
    if (!(g >= beta) || !(g <= g_max))
        throw std::invalid_argument("scaled_pareto_cdf: g outside [beta, g_max]");
    const double num = 1.0 - std::pow(beta / g, alpha);
    const double den = 1.0 - std::pow(beta / g_max, alpha);
    return num / den;
}

nlohmann::json to_json(const SelectionReport& report) {
    nlohmann::json j;
    j["n"] = report.n;
    j["models"] = nlohmann::json::array();
    for (std::size_t i = 0; i < report.scores.size(); ++i) {
        const ModelScore& s = report.scores[i];
        nlohmann::json m;
        m["family"] = std::string(family_name(s.family));
        m["k"] = s.k;
        m["ll_max"] = s.ll_max;
        m["aic"] = s.aic;
        if (s.aicc)
            m["aicc"] = *s.aicc;
        else
            m["aicc"] = nullptr;
        m["bic"] = s.bic;
        m["params"] = report.fits[i].params;
        j["models"].push_back(std::move(m));
    }
    j["failures"] = nlohmann::json::array();
    for (const FitFailure& f : report.failures)
        j["failures"].push_back({{"family", std::string(family_name(f.family))},
                                 {"reason", f.reason}});
    j["winner_aic"] = std::string(family_name(report.winner_aic));
    j["winner_bic"] = std::string(family_name(report.winner_bic));
    return j;
}

} // namespace tradestat
