#pragma once

#include <cstdint>
#include <vector>

#include "ceda/types.hpp"

namespace ceda {

/// K-Medoids result. Medoids are actual sample indices; every sample is
/// assigned to its nearest medoid (lowest cluster id on ties, medoids
/// always to their own cluster) and the fit is locally optimal under
/// single medoid/non-medoid swaps.
struct Clustering {
    int k = 0;
    std::vector<int> medoid_indices;  // k distinct sample indices, slot order
    std::vector<int> assignments;     // per sample, in [0, k)
    double total_cost = 0.0;          // sum of Euclidean distances to own medoid
};

/// PAM: greedy BUILD initialization followed by best-improvement SWAP
/// until no single swap decreases the cost, or `max_swaps` swaps were
/// applied (default 10*n when 0). Deterministic: BUILD is seedless and all
/// ties break toward the lowest index; `seed` is reserved for a future
/// random-restart mode and is currently unused.
Clustering kmedoids_fit(const Matrix& z, int k, std::uint64_t seed = 0, int max_swaps = 0);

/// Cost of a candidate medoid set: each point contributes its Euclidean
/// distance to the nearest listed medoid. Indices must be distinct and in
/// range.
double cluster_cost(const Matrix& z, const std::vector<int>& medoid_indices);

/// Default cluster-count heuristic: max(2, round(sqrt(n/2))), capped at n.
int default_cluster_count(int n);

}  // namespace ceda
