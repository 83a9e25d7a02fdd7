#pragma once

#include <vector>

#include "ceda/kmedoids.hpp"
#include "ceda/types.hpp"

namespace ceda {

/// Gaussian similarity between source and target cluster medoids:
/// S(p,q) = exp(-||m_p - m_q||^2 / tau), entries in (0, 1].
struct SimilarityMatrix {
    Matrix values;  // K_s x K_t
    double tau = 1.0;
};

/// For every target cluster q, the source cluster pi[q] with the highest
/// similarity (lowest index on ties). Many-to-one is allowed.
struct ClusterMatching {
    std::vector<int> pi;  // length K_t, values in [0, K_s)
};

struct CorrespondencePair {
    int source_index;
    int target_index;
    double weight;
};

/// Sample-level cross-domain pairs restricted to matched cluster pairs,
/// sorted by (target_index, source_index).
struct CorrespondenceSet {
    std::vector<CorrespondencePair> pairs;
};

/// tau <= 0 selects the median heuristic: tau = median of all squared
/// medoid distances, falling back to 1 when that median is 0.
SimilarityMatrix similarity_matrix(const Clustering& source_clustering,
                                   const Clustering& target_clustering,
                                   const Matrix& z_s, const Matrix& z_t,
                                   double tau = 0.0);

ClusterMatching match_clusters(const SimilarityMatrix& similarity);

/// Pairs every target sample in cluster q with its `per_target_neighbors`
/// nearest source samples inside the matched source cluster pi(q)
/// (Euclidean; lowest source index on ties). Pair weight is the cluster
/// similarity S(pi(q), q) when `weighted` is set, else 1.
CorrespondenceSet build_correspondences(const ClusterMatching& matching,
                                        const Clustering& source_clustering,
                                        const Clustering& target_clustering,
                                        const Matrix& z_s, const Matrix& z_t,
                                        const SimilarityMatrix& similarity,
                                        int per_target_neighbors = 1,
                                        bool weighted = true);

}  // namespace ceda
