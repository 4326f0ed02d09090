#ifndef KPK_MULTI_KERNEL_HPP
#define KPK_MULTI_KERNEL_HPP

#include <span>
#include <vector>

#include "kpk/cluster.hpp"
#include "kpk/kernel.hpp"

namespace kpk {

struct MultiKernelResult : ClusterResult {
    KernelWeights alpha;
    // alpha_trace[m] is the weight vector used during iteration m.
    std::vector<std::vector<double>> alpha_trace;
};

struct MkpkOptions {
    int k = 2;
    double lambda = 1.0;
    AnnealSchedule schedule{};
    InitStrategy init = InitStrategy::random_points;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    int max_iter = 500;
};

// One distance matrix per kernel, all sharing the centroid weights.
std::vector<DistanceMatrix> per_kernel_distances(std::span<const GramMatrix> grams,
                                                 const WeightMatrix& weights);

// sum_l alpha_l D_l
DistanceMatrix combined_distances(std::span<const DistanceMatrix> distances, const KernelWeights& alpha);

WeightMatrix update_weights_multi(std::span<const DistanceMatrix> distances, const KernelWeights& alpha,
                                  double s);

// Per-kernel aggregate loss L_l = sum_ij w_ij D_l(i,j).
std::vector<double> kernel_losses(std::span<const DistanceMatrix> distances, const WeightMatrix& weights);

// alpha_l proportional to exp(-L_l / lambda). `weights` must be the
// unnormalised MM weights of the current iterate.
KernelWeights update_alpha(std::span<const DistanceMatrix> distances, const WeightMatrix& weights,
                           double lambda);

// Softmax of -losses / lambda with max subtraction.
KernelWeights softmax_weights(std::span<const double> losses, double lambda);

// sum_i M_s(combined row i) + lambda sum_l alpha_l log alpha_l, with 0 log 0 = 0.
double penalized_objective(std::span<const DistanceMatrix> distances, const KernelWeights& alpha, double s,
                           double lambda);

double entropy_term(const KernelWeights& alpha);

// Multi-kernel power k-means. The grams are expected to be normalised.
MultiKernelResult run_mkpk(std::span<const GramMatrix> grams, const MkpkOptions& options);

}  // namespace kpk

#endif  // KPK_MULTI_KERNEL_HPP
