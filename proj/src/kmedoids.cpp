#include "ceda/kmedoids.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ceda {

namespace {

std::vector<double> pairwise_distances(const Matrix& z) {
    const int n = static_cast<int>(z.rows());
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dist = (z.row(i) - z.row(j)).norm();
            d[static_cast<std::size_t>(i) * n + j] = dist;
            d[static_cast<std::size_t>(j) * n + i] = dist;
        }
    }
    return d;
}

// Swaps only run when they improve by more than this; protects the SWAP
// loop from oscillating on rounding noise.
constexpr double kImprovementEps = 1e-12;

}  // namespace

int default_cluster_count(int n) {
    const int k = std::max(2, static_cast<int>(std::lround(std::sqrt(n / 2.0))));
    return std::min(k, n);
}

double cluster_cost(const Matrix& z, const std::vector<int>& medoid_indices) {
    const int n = static_cast<int>(z.rows());
    require(!medoid_indices.empty(), "cluster_cost: empty medoid set");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const int m : medoid_indices) {
        require(m >= 0 && m < n, "cluster_cost: medoid index out of range");
        require(!seen[static_cast<std::size_t>(m)], "cluster_cost: duplicate medoid index");
        seen[static_cast<std::size_t>(m)] = true;
    }
    double cost = 0.0;
    for (int j = 0; j < n; ++j) {
        double best = std::numeric_limits<double>::infinity();
        for (const int m : medoid_indices) {
            best = std::min(best, (z.row(j) - z.row(m)).norm());
        }
        cost += best;
    }
    return cost;
}

Clustering kmedoids_fit(const Matrix& z, int k, std::uint64_t /*seed*/, int max_swaps) {
    const int n = static_cast<int>(z.rows());
    require(k >= 1, "kmedoids_fit: k must be >= 1");
    require(k <= n, "kmedoids_fit: k=" + std::to_string(k) + " exceeds sample count " +
                        std::to_string(n));
    require_finite(z, "kmedoids_fit input");
    if (max_swaps <= 0) {
        max_swaps = 10 * n;
    }

    const std::vector<double> dist = pairwise_distances(z);
    const auto d = [&](int i, int j) { return dist[static_cast<std::size_t>(i) * n + j]; };

    std::vector<int> medoids;
    medoids.reserve(static_cast<std::size_t>(k));
    std::vector<bool> is_medoid(static_cast<std::size_t>(n), false);

    // BUILD: first medoid minimizes the total distance to all points; each
    // following medoid maximizes the cost reduction. All ties -> lowest index.
    {
        int best = 0;
        double best_total = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            double total = 0.0;
            for (int j = 0; j < n; ++j) {
                total += d(i, j);
            }
            if (total < best_total) {
                best_total = total;
                best = i;
            }
        }
        medoids.push_back(best);
        is_medoid[static_cast<std::size_t>(best)] = true;
    }

    std::vector<double> nearest(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        nearest[static_cast<std::size_t>(j)] = d(j, medoids[0]);
    }

    while (static_cast<int>(medoids.size()) < k) {
        int best = -1;
        double best_gain = -std::numeric_limits<double>::infinity();
        for (int h = 0; h < n; ++h) {
            if (is_medoid[static_cast<std::size_t>(h)]) {
                continue;
            }
            double gain = 0.0;
            for (int j = 0; j < n; ++j) {
                const double improvement = nearest[static_cast<std::size_t>(j)] - d(j, h);
                if (improvement > 0.0) {
                    gain += improvement;
                }
            }
            if (gain > best_gain) {
                best_gain = gain;
                best = h;
            }
        }
        medoids.push_back(best);
        is_medoid[static_cast<std::size_t>(best)] = true;
        for (int j = 0; j < n; ++j) {
            nearest[static_cast<std::size_t>(j)] =
                std::min(nearest[static_cast<std::size_t>(j)], d(j, best));
        }
    }

    // SWAP: best-improvement local search. For each candidate h the swap
    // deltas of all k slots come from one pass over the points (the
    // removal-independent part is shared, the slot-dependent part is
    // accumulated per nearest slot), which keeps a sweep at O(n^2).
    std::vector<double> nearest1(static_cast<std::size_t>(n));
    std::vector<double> nearest2(static_cast<std::size_t>(n));
    std::vector<int> slot1(static_cast<std::size_t>(n));
    std::vector<double> slot_correction(static_cast<std::size_t>(k));

    const auto recompute_nearest = [&]() {
        for (int j = 0; j < n; ++j) {
            double d1 = std::numeric_limits<double>::infinity();
            double d2 = std::numeric_limits<double>::infinity();
            int s1 = -1;
            for (int s = 0; s < k; ++s) {
                const double dd = d(j, medoids[static_cast<std::size_t>(s)]);
                if (dd < d1) {
                    d2 = d1;
                    d1 = dd;
                    s1 = s;
                } else if (dd < d2) {
                    d2 = dd;
                }
            }
            nearest1[static_cast<std::size_t>(j)] = d1;
            nearest2[static_cast<std::size_t>(j)] = d2;
            slot1[static_cast<std::size_t>(j)] = s1;
        }
    };

    int swaps = 0;
    while (swaps < max_swaps && k < n) {
        recompute_nearest();

        double best_delta = -kImprovementEps;  // candidates must beat this
        int best_h = -1;
        int best_slot = -1;
        for (int h = 0; h < n; ++h) {
            if (is_medoid[static_cast<std::size_t>(h)]) {
                continue;
            }
            double shared = 0.0;
            std::fill(slot_correction.begin(), slot_correction.end(), 0.0);
            for (int j = 0; j < n; ++j) {
                const double d_jh = d(j, h);
                const double d1 = nearest1[static_cast<std::size_t>(j)];
                const double base = std::min(d_jh - d1, 0.0);
                shared += base;
                slot_correction[static_cast<std::size_t>(slot1[static_cast<std::size_t>(j)])] +=
                    (std::min(d_jh, nearest2[static_cast<std::size_t>(j)]) - d1) - base;
            }
            for (int s = 0; s < k; ++s) {
                const double delta = shared + slot_correction[static_cast<std::size_t>(s)];
                if (delta < best_delta) {  // strict: ties keep the lowest (h, s)
                    best_delta = delta;
                    best_h = h;
                    best_slot = s;
                }
            }
        }
        if (best_h < 0) {
            break;
        }
        is_medoid[static_cast<std::size_t>(medoids[static_cast<std::size_t>(best_slot)])] = false;
        medoids[static_cast<std::size_t>(best_slot)] = best_h;
        is_medoid[static_cast<std::size_t>(best_h)] = true;
        ++swaps;
    }

    Clustering result;
    result.k = k;
    result.medoid_indices = medoids;
    result.assignments.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        int best_slot = 0;
        double best_dist = d(j, medoids[0]);
        for (int s = 1; s < k; ++s) {
            const double dd = d(j, medoids[static_cast<std::size_t>(s)]);
            if (dd < best_dist) {
                best_dist = dd;
                best_slot = s;
            }
        }
        result.assignments[static_cast<std::size_t>(j)] = best_slot;
    }
    // A medoid always owns its cluster, even if another medoid coincides
    // with it at distance zero.
    for (int s = 0; s < k; ++s) {
        result.assignments[static_cast<std::size_t>(medoids[static_cast<std::size_t>(s)])] = s;
    }
    result.total_cost = cluster_cost(z, medoids);
    return result;
}

}  // namespace ceda
