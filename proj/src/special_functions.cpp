#include "tradestat/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace tradestat {

double digamma(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::invalid_argument("digamma: x must be finite and > 0");

    // Recurse upward so the asymptotic series is evaluated at x >= 8.
    double shift = 0.0;
    while (x < 8.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }

    // psi(x) ~ ln x - 1/(2x) - 1/(12x^2) + 1/(120x^4) - 1/(252x^6)
    //          + 1/(240x^8) - 1/(132x^10) + 691/(32760x^12) - 1/(12x^14)
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = inv2 * (1.0 / 12.0 -
                    inv2 * (1.0 / 120.0 -
                    inv2 * (1.0 / 252.0 -
                    inv2 * (1.0 / 240.0 -
                    inv2 * (1.0 / 132.0 -
                    inv2 * (691.0 / 32760.0 -
                    inv2 * (1.0 / 12.0)))))));
    return shift + std::log(x) - 0.5 * inv - series;
}

double log_gamma(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::invalid_argument("log_gamma: x must be finite and > 0");

    // Lanczos coefficients for g = 7, n = 9.
    static const double coeff[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    const double half_log_two_pi = 0.91893853320467274178;

    if (x < 0.5) {
        // Reflection: ln Gamma(x) = ln(pi / sin(pi x)) - ln Gamma(1 - x).
        return std::log(M_PI / std::sin(M_PI * x)) - log_gamma(1.0 - x);
    }

    const double z = x - 1.0;
    double acc = coeff[0];
    for (int i = 1; i < 9; ++i)
        acc += coeff[i] / (z + i);
    const double t = z + 7.5; // z + g + 0.5
    return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(acc);
}

} // namespace tradestat
