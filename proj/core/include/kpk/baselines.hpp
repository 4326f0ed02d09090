#ifndef KPK_BASELINES_HPP
#define KPK_BASELINES_HPP

#include <cstdint>

#include "kpk/cluster.hpp"
#include "kpk/kernel.hpp"
#include "kpk/types.hpp"

namespace kpk {

struct KernelKmeansOptions {
    int k = 2;
    InitStrategy init = InitStrategy::random_points;
    std::uint64_t seed = 0;
    int max_iter = 500;
};

// Lloyd-style kernel k-means with unit observation weights. Starts from the
// same seed points as run_kpk for a given seed; `objective_trace` holds
// sum_i min_j D(i,j) for each assignment step.
ClusterResult kernel_kmeans(const GramMatrix& gram, const KernelKmeansOptions& options);

// Power k-means with explicit Euclidean centroids. For the same options it
// follows the trajectory of run_kpk on the linear-kernel gram matrix.
ClusterResult power_kmeans(const Matrix& data, const KpkOptions& options);

// Centroids of the last power_kmeans iteration are not part of ClusterResult;
// this reconstructs them from the final weights.
Matrix explicit_centroids(const Matrix& data, const WeightMatrix& weights);

}  // namespace kpk

#endif  // KPK_BASELINES_HPP
