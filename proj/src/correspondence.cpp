#include "ceda/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ceda {

namespace {

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) {
        return values[n / 2];
    }
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

SimilarityMatrix similarity_matrix(const Clustering& source_clustering,
                                   const Clustering& target_clustering, const Matrix& z_s,
                                   const Matrix& z_t, double tau) {
    require(source_clustering.k >= 1 && target_clustering.k >= 1,
            "similarity_matrix: empty clustering");
    require(z_s.cols() == z_t.cols(), "similarity_matrix: dimension mismatch");

    const int k_s = source_clustering.k;
    const int k_t = target_clustering.k;
    Matrix sq_dist(k_s, k_t);
    std::vector<double> all;
    all.reserve(static_cast<std::size_t>(k_s) * k_t);
    for (int p = 0; p < k_s; ++p) {
        for (int q = 0; q < k_t; ++q) {
            const double dd = (z_s.row(source_clustering.medoid_indices[p]) -
                               z_t.row(target_clustering.medoid_indices[q]))
                                  .squaredNorm();
            sq_dist(p, q) = dd;
            all.push_back(dd);
        }
    }

    SimilarityMatrix result;
    if (tau > 0.0) {
        result.tau = tau;
    } else if (tau == 0.0) {
        const double med = median_of(std::move(all));
        result.tau = med > 0.0 ? med : 1.0;
    } else {
        throw std::invalid_argument("similarity_matrix: tau must be positive (or 0 for auto)");
    }
    result.values = (-sq_dist / result.tau).array().exp();
    return result;
}

ClusterMatching match_clusters(const SimilarityMatrix& similarity) {
    require(similarity.values.size() > 0, "match_clusters: empty similarity matrix");
    ClusterMatching matching;
    matching.pi.resize(static_cast<std::size_t>(similarity.values.cols()));
    for (int q = 0; q < similarity.values.cols(); ++q) {
        int best = 0;
        double best_value = similarity.values(0, q);
        for (int p = 1; p < similarity.values.rows(); ++p) {
            if (similarity.values(p, q) > best_value) {
                best_value = similarity.values(p, q);
                best = p;
            }
        }
        matching.pi[static_cast<std::size_t>(q)] = best;
    }
    return matching;
}

CorrespondenceSet build_correspondences(const ClusterMatching& matching,
                                        const Clustering& source_clustering,
                                        const Clustering& target_clustering, const Matrix& z_s,
                                        const Matrix& z_t, const SimilarityMatrix& similarity,
                                        int per_target_neighbors, bool weighted) {
    require(per_target_neighbors >= 1, "build_correspondences: per_target_neighbors must be >= 1");
    require(static_cast<int>(matching.pi.size()) == target_clustering.k,
            "build_correspondences: matching inconsistent with target clustering");
    require(z_s.cols() == z_t.cols(), "build_correspondences: dimension mismatch");

    // Source sample indices per cluster, ascending (so nearest-neighbor
    // ties resolve to the lowest source index).
    std::vector<std::vector<int>> members(static_cast<std::size_t>(source_clustering.k));
    for (int i = 0; i < static_cast<int>(source_clustering.assignments.size()); ++i) {
        members[static_cast<std::size_t>(source_clustering.assignments[i])].push_back(i);
    }
    for (const auto& m : members) {
        require(!m.empty(), "build_correspondences: matched source cluster is empty");
    }

    CorrespondenceSet omega;
    omega.pairs.reserve(target_clustering.assignments.size() *
                        static_cast<std::size_t>(per_target_neighbors));

    std::vector<std::pair<double, int>> candidates;
    for (int j = 0; j < static_cast<int>(target_clustering.assignments.size()); ++j) {
        const int q = target_clustering.assignments[static_cast<std::size_t>(j)];
        const int p = matching.pi[static_cast<std::size_t>(q)];
        const double weight = weighted ? similarity.values(p, q) : 1.0;

        const auto& pool = members[static_cast<std::size_t>(p)];
        candidates.clear();
        candidates.reserve(pool.size());
        for (const int i : pool) {
            candidates.emplace_back((z_t.row(j) - z_s.row(i)).squaredNorm(), i);
        }
        const std::size_t take =
            std::min<std::size_t>(static_cast<std::size_t>(per_target_neighbors),
                                  candidates.size());
        std::partial_sort(candidates.begin(), candidates.begin() + static_cast<long>(take),
                          candidates.end());  // (distance, index): ties -> lowest index

        std::vector<int> chosen;
        chosen.reserve(take);
        for (std::size_t t = 0; t < take; ++t) {
            chosen.push_back(candidates[t].second);
        }
        std::sort(chosen.begin(), chosen.end());  // (j, i) ordering within each j
        for (const int i : chosen) {
            omega.pairs.push_back({i, j, weight});
        }
    }
    require(!omega.pairs.empty(), "build_correspondences: produced no pairs");
    return omega;
}

}  // namespace ceda
