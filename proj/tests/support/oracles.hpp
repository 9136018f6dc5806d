// Independent reference implementations used only by tests, so that library
// results are checked against a second route, not against themselves.
#ifndef TRADESTAT_TESTS_ORACLES_HPP
#define TRADESTAT_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace test_oracles {

// Adaptive Simpson quadrature with absolute/relative refinement.
inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double fa, double fm, double fb, double whole,
                                   double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 60) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole,
                                std::max(tol, std::abs(whole) * tol), depth);
}

// Two-sided Kolmogorov-Smirnov distance between a sample and a CDF.
inline double ks_distance(std::vector<double> sample,
                          const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double c = cdf(sample[i]);
        d = std::max(d, std::abs(c - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - c));
    }
    return d;
}

inline double mean(const std::vector<double>& v) {
    long double acc = 0.0L;
    for (double x : v)
        acc += x;
    return static_cast<double>(acc / static_cast<long double>(v.size()));
}

inline double variance(const std::vector<double>& v) {
    const double m = mean(v);
    long double acc = 0.0L;
    for (double x : v)
        acc += static_cast<long double>(x - m) * (x - m);
    return static_cast<double>(acc / static_cast<long double>(v.size()));
}

inline double correlation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("correlation: size mismatch");
    const double ma = mean(a);
    const double mb = mean(b);
    long double cov = 0.0L, va = 0.0L, vb = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cov += static_cast<long double>(a[i] - ma) * (b[i] - mb);
        va += static_cast<long double>(a[i] - ma) * (a[i] - ma);
        vb += static_cast<long double>(b[i] - mb) * (b[i] - mb);
    }
    return static_cast<double>(cov / std::sqrt(va * vb));
}

} // namespace test_oracles

#endif
