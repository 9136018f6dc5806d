#include "tradestat/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "tradestat/errors.hpp"
#include "tradestat/rng.hpp"

namespace tradestat {

namespace {

using Point = std::array<double, 2>;

double sq_dist(const Point& a, const Point& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    return dx * dx + dy * dy;
}

struct CanonicalPoints {
    std::vector<std::string> codes;
    std::vector<Point> coords;
};

CanonicalPoints canonicalize(const ClusterInput& input) {
    if (input.points.empty())
        throw DataError("kmeans: empty input");
    std::vector<std::size_t> order(input.points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return input.points[a].country_code < input.points[b].country_code;
    });
    CanonicalPoints cp;
    cp.codes.reserve(order.size());
    cp.coords.reserve(order.size());
    for (std::size_t idx : order) {
        const ClusterPoint& p = input.points[idx];
        if (!cp.codes.empty() && cp.codes.back() == p.country_code)
            throw DataError("kmeans: duplicate country code " + p.country_code);
        cp.codes.push_back(p.country_code);
        cp.coords.push_back({p.x, p.y});
    }
    return cp;
}

std::vector<Point> kmeanspp_init(const std::vector<Point>& pts, int k, Rng& rng) {
    const std::size_t n = pts.size();
    std::vector<Point> centroids;
    centroids.reserve(k);
    std::size_t first = static_cast<std::size_t>(rng.next_double() * static_cast<double>(n));
    if (first >= n)
        first = n - 1;
    centroids.push_back(pts[first]);
    std::vector<double> d2(n);
    while (static_cast<int>(centroids.size()) < k) {
        long double total = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const Point& c : centroids)
                best = std::min(best, sq_dist(pts[i], c));
            d2[i] = best;
            total += best;
        }
        std::size_t chosen;
        if (total <= 0.0L) {
            // Every point coincides with a centroid; fall back to uniform.
            chosen = static_cast<std::size_t>(rng.next_double() * static_cast<double>(n));
            if (chosen >= n)
                chosen = n - 1;
        } else {
            const long double target = rng.next_double() * total;
            long double acc = 0.0L;
            chosen = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= target) {
                    chosen = i;
                    break;
                }
            }
        }
        centroids.push_back(pts[chosen]);
    }
    return centroids;
}

struct LloydState {
    std::vector<int> assignments;
    std::vector<Point> centroids;
    double inertia = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;
};

std::vector<int> assign_nearest(const std::vector<Point>& pts,
                                const std::vector<Point>& centroids) {
    std::vector<int> assign(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        int best = 0;
        double best_d = sq_dist(pts[i], centroids[0]);
        for (std::size_t c = 1; c < centroids.size(); ++c) {
            const double d = sq_dist(pts[i], centroids[c]);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(c);
            }
        }
        assign[i] = best;
    }
    return assign;
}

double total_inertia(const std::vector<Point>& pts, const std::vector<int>& assign,
                     const std::vector<Point>& centroids) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < pts.size(); ++i)
        acc += sq_dist(pts[i], centroids[assign[i]]);
    return static_cast<double>(acc);
}

// Re-seeds any empty cluster at the point farthest from its assigned
// centroid, then reassigns. Moving an unused centroid leaves the inertia
// unchanged, and the reassignment can only lower it, so monotone descent
// survives the repair.
void repair_empty_clusters(const std::vector<Point>& pts, std::vector<int>& assign,
                           std::vector<Point>& centroids) {
    for (;;) {
        std::vector<std::size_t> counts(centroids.size(), 0);
        for (int a : assign)
            ++counts[a];
        std::size_t empty = counts.size();
        for (std::size_t c = 0; c < counts.size(); ++c) {
            if (counts[c] == 0) {
                empty = c;
                break;
            }
        }
        if (empty == counts.size())
            return;
        std::size_t farthest = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double d = sq_dist(pts[i], centroids[assign[i]]);
            if (d > far_d) {
                far_d = d;
                farthest = i;
            }
        }
        if (far_d <= 0.0)
            return; // every point already sits on a centroid; nothing to move
        centroids[empty] = pts[farthest];
        assign = assign_nearest(pts, centroids);
    }
}

LloydState lloyd(const std::vector<Point>& pts, std::vector<Point> centroids,
                 int max_iter) {
    LloydState state;
    state.centroids = std::move(centroids);
    const int k = static_cast<int>(state.centroids.size());
    std::vector<int> prev;
    for (int iter = 0; iter < max_iter; ++iter) {
        std::vector<int> assign = assign_nearest(pts, state.centroids);
        repair_empty_clusters(pts, assign, state.centroids);
        state.iterations = iter + 1;
        state.history.push_back(total_inertia(pts, assign, state.centroids));
        if (!prev.empty() && assign == prev) {
            state.converged = true;
            state.assignments = std::move(assign);
            break;
        }
        prev = assign;
        state.assignments = std::move(assign);
        // Update step: each centroid moves to the mean of its members.
        std::vector<Point> sums(k, {0.0, 0.0});
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            sums[state.assignments[i]][0] += pts[i][0];
            sums[state.assignments[i]][1] += pts[i][1];
            ++counts[state.assignments[i]];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0)
                state.centroids[c] = {sums[c][0] / counts[c], sums[c][1] / counts[c]};
        }
    }
    if (!state.converged) {
        // max_iter exit: the update step already moved the centroids, so
        // refresh assignments to keep (assignments, centroids, inertia)
        // mutually consistent in the returned state.
        state.assignments = assign_nearest(pts, state.centroids);
        repair_empty_clusters(pts, state.assignments, state.centroids);
        state.history.push_back(total_inertia(pts, state.assignments, state.centroids));
    }
    state.inertia = state.history.back();
    return state;
}

// Relabels clusters by descending size, then centroid lexicographic order.
void canonicalize_labels(LloydState& state) {
    const int k = static_cast<int>(state.centroids.size());
    std::vector<std::size_t> counts(k, 0);
    for (int a : state.assignments)
        ++counts[a];
    std::vector<int> old_labels(k);
    std::iota(old_labels.begin(), old_labels.end(), 0);
    std::sort(old_labels.begin(), old_labels.end(), [&](int a, int b) {
        if (counts[a] != counts[b])
            return counts[a] > counts[b];
        return state.centroids[a] < state.centroids[b];
    });
    std::vector<int> relabel(k);
    for (int new_label = 0; new_label < k; ++new_label)
        relabel[old_labels[new_label]] = new_label;
    std::vector<Point> new_centroids(k);
    for (int old_label = 0; old_label < k; ++old_label)
        new_centroids[relabel[old_label]] = state.centroids[old_label];
    state.centroids = std::move(new_centroids);
    for (int& a : state.assignments)
        a = relabel[a];
}

ClusterResult finish(const CanonicalPoints& cp, LloydState state, int k,
                     std::uint64_t seed) {
    canonicalize_labels(state);
    ClusterResult result;
    result.k = k;
    result.country_order = cp.codes;
    result.assignments = std::move(state.assignments);
    result.centroids = std::move(state.centroids);
    result.inertia = state.inertia;
    result.iterations = state.iterations;
    result.converged = state.converged;
    result.seed = seed;
    result.inertia_history = std::move(state.history);
    return result;
}

} // namespace

ClusterInput make_cluster_input(const CountryPanel& panel, int year) {
    std::vector<std::string> codes;
    std::vector<double> gdp, strength;
    for (const PanelRow& row : panel.rows) {
        if (row.year != year)
            continue;
        codes.push_back(row.country_code);
        gdp.push_back(row.gdp);
        strength.push_back(row.strength);
    }
    if (codes.empty())
        throw DataError("make_cluster_input: no panel rows for year " + std::to_string(year));
    const std::vector<double> gdp_z = zscore_normalize(gdp);
    const std::vector<double> strength_z = zscore_normalize(strength);
    ClusterInput input;
    input.points.reserve(codes.size());
    for (std::size_t i = 0; i < codes.size(); ++i)
        input.points.push_back({codes[i], gdp_z[i], strength_z[i]});
    return input;
}

std::map<std::string, int> ClusterResult::assignment_map() const {
    std::map<std::string, int> m;
    for (std::size_t i = 0; i < country_order.size(); ++i)
        m.emplace(country_order[i], assignments[i]);
    return m;
}

ClusterResult kmeans_fit(const ClusterInput& input, int k, std::uint64_t seed,
                         int max_iter) {
    const CanonicalPoints cp = canonicalize(input);
    if (k < 1 || static_cast<std::size_t>(k) > cp.coords.size())
        throw DataError("kmeans_fit: k must be in [1, n], got k=" + std::to_string(k) +
                        " with n=" + std::to_string(cp.coords.size()));
    Rng rng(seed);
    LloydState state = lloyd(cp.coords, kmeanspp_init(cp.coords, k, rng), max_iter);
    return finish(cp, std::move(state), k, seed);
}

ClusterResult kmeans_best(const ClusterInput& input, int k, std::uint64_t seed,
                          int restarts, int max_iter) {
    if (restarts < 1)
        throw std::invalid_argument("kmeans_best: restarts must be >= 1");
    SplitMix64 sm(seed);
    ClusterResult best;
    bool have_best = false;
    for (int r = 0; r < restarts; ++r) {
        ClusterResult run = kmeans_fit(input, k, sm.next(), max_iter);
        if (!have_best || run.inertia < best.inertia) {
            best = std::move(run);
            have_best = true;
        }
    }
    best.seed = seed;
    return best;
}

std::vector<std::pair<int, double>> inertia_curve(const ClusterInput& input, int k_max,
                                                  std::uint64_t seed, int restarts,
                                                  int max_iter) {
    const CanonicalPoints cp = canonicalize(input);
    if (k_max < 1 || static_cast<std::size_t>(k_max) > cp.coords.size())
        throw DataError("inertia_curve: k_max must be in [1, n]");
    std::vector<std::pair<int, double>> curve;
    ClusterResult prev;
    for (int k = 1; k <= k_max; ++k) {
        ClusterResult best = kmeans_best(input, k, seed + static_cast<std::uint64_t>(k),
                                         restarts, max_iter);
        if (k > 1 && best.inertia > prev.inertia) {
            // Restart fallback: grow the (k-1)-solution by one centroid at
            // its farthest point; Lloyd from there cannot end above the
            // (k-1) inertia.
            std::vector<Point> centroids(prev.centroids.begin(), prev.centroids.end());
            std::size_t farthest = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < cp.coords.size(); ++i) {
                const double d = sq_dist(cp.coords[i], centroids[prev.assignments[i]]);
                if (d > far_d) {
                    far_d = d;
                    farthest = i;
                }
            }
            centroids.push_back(cp.coords[farthest]);
            LloydState state = lloyd(cp.coords, std::move(centroids), max_iter);
            if (state.inertia < best.inertia)
                best = finish(cp, std::move(state), k, seed + static_cast<std::uint64_t>(k));
        }
        curve.emplace_back(k, best.inertia);
        prev = std::move(best);
    }
    return curve;
}

int choose_k_elbow(const std::vector<std::pair<int, double>>& curve) {
    if (curve.size() < 3)
        throw DataError("choose_k_elbow: need at least 3 curve points");
    int best_k = curve[1].first;
    double best_d2 = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
        const double d2 = curve[i - 1].second - 2.0 * curve[i].second + curve[i + 1].second;
        if (d2 > best_d2) {
            best_d2 = d2;
            best_k = curve[i].first;
        }
    }
    return best_k;
}

} // namespace tradestat
