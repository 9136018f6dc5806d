#ifndef TRADESTAT_CLUSTER_HPP
#define TRADESTAT_CLUSTER_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tradestat/dataset.hpp"

namespace tradestat {

struct ClusterPoint {
    std::string country_code;
    double x = 0.0; // normalized GDP
    double y = 0.0; // normalized strength
};

struct ClusterInput {
    std::vector<ClusterPoint> points;
};

// Builds the clustering feature space for one year: z-scored GDP against
// z-scored strength, one point per country.
ClusterInput make_cluster_input(const CountryPanel& panel, int year);

struct ClusterResult {
    int k = 0;
    // Points in canonical order (sorted by country code); assignments and
    // all centroid-relative data refer to this order.
    std::vector<std::string> country_order;
    std::vector<int> assignments; // cluster id per point, in [0, k)
    std::vector<std::array<double, 2>> centroids;
    double inertia = 0.0; // sum of squared distances to assigned centroids
    int iterations = 0;   // Lloyd iterations executed
    bool converged = false;
    std::uint64_t seed = 0;
    // Inertia recorded after each assignment step; non-increasing.
    std::vector<double> inertia_history;

    std::map<std::string, int> assignment_map() const;
};

// One K-means run: k-means++ seeding (driven by `seed`, over the canonical
// point order so input permutations cannot change the result), then Lloyd
// iterations until assignments stop changing or max_iter. Empty clusters are
// repaired by re-seeding at the farthest point. Cluster labels are
// canonicalized by descending size, then centroid lexicographic order.
// Throws DataError for an empty input, k < 1, k > n, or duplicate codes.
ClusterResult kmeans_fit(const ClusterInput& input, int k, std::uint64_t seed,
                         int max_iter = 100);

// Best of `restarts` independently seeded runs (ties keep the earliest).
ClusterResult kmeans_best(const ClusterInput& input, int k, std::uint64_t seed,
                          int restarts = 10, int max_iter = 100);

// Best inertia per k in [1, k_max]. Non-increasing in k by construction:
// whenever the restarts for k lose to the k-1 result, a (k-1)-solution
// augmented with a centroid at the farthest point is used as a fallback
// start, which can only improve on the k-1 inertia.
std::vector<std::pair<int, double>> inertia_curve(const ClusterInput& input, int k_max,
                                                  std::uint64_t seed, int restarts = 10,
                                                  int max_iter = 100);

// Elbow rule: the k maximizing the discrete second difference
// I(k-1) - 2 I(k) + I(k+1); ties go to the smallest interior k.
// Requires at least 3 curve points.
int choose_k_elbow(const std::vector<std::pair<int, double>>& curve);

} // namespace tradestat

#endif
