#ifndef KPK_CLUSTER_HPP
#define KPK_CLUSTER_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "kpk/kernel.hpp"
#include "kpk/types.hpp"

namespace kpk {

using Rng = std::mt19937_64;

enum class InitStrategy {
    random_points,  // k distinct indices, uniformly without replacement
    kernel_kpp,     // k-means++ on feature-space distances
};

// s_m = s0 * eta^m, advanced once every `period` iterations and frozen once
// |s| reaches s_cap.
struct AnnealSchedule {
    double s0 = -1.0;
    double eta = 1.04;
    int period = 5;
    double s_cap = 1e5;

    void validate() const;

    // Exponent after `updates` multiplicative steps, clamped at -s_cap.
    double after(int updates) const;

    // A schedule that never moves s away from s0.
    static AnnealSchedule fixed(double s);

    bool operator==(const AnnealSchedule&) const = default;
};

// Tracks the annealed exponent and the stopping rule shared by every power
// k-means style loop. Convergence is only assessed once s has stopped moving
// (eta == 1, or |s| has reached s_cap): the run has then converged when the
// relative objective change between two consecutive iterations drops below
// tol. Before that the loop keeps annealing, because at mild exponents the
// weights can sit on a near-uniform plateau where the objective barely moves.
class AnnealingState {
public:
    AnnealingState(const AnnealSchedule& schedule, double tol);

    double s() const { return s_; }

    // Records the objective of the current iteration; true when converged.
    bool record(double objective);

    // Closes the current iteration, multiplying s by eta when due.
    void finish_iteration();

private:
    AnnealSchedule schedule_;
    double tol_;
    double s_;
    int iteration_ = 0;
    int updates_ = 0;
    bool have_previous_ = false;
    double previous_objective_ = 0.0;
    double previous_s_ = 0.0;
};

struct ClusterResult {
    Labels labels;
    WeightMatrix weights;
    std::vector<double> objective_trace;
    std::vector<double> s_trace;
    int iterations = 0;
    std::uint64_t seed = 0;
    bool converged = false;
    // Number of times a cluster lost all weight and was re-seeded.
    int reseeds = 0;
};

struct KpkOptions {
    int k = 2;
    AnnealSchedule schedule{};
    InitStrategy init = InitStrategy::random_points;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    int max_iter = 500;
};

// Picks k distinct seed indices out of n. For kernel_kpp, `squared_distance(i,
// c)` must return the squared distance between point i and point c.
std::vector<int> seed_indices(int n, int k, InitStrategy strategy, std::uint64_t seed,
                              const std::function<double(int, int)>& squared_distance);

// n x k matrix whose column j is the indicator of indices[j].
WeightMatrix one_hot_weights(int n, const std::vector<int>& indices);

WeightMatrix init_weights(const GramMatrix& gram, int k, InitStrategy strategy, std::uint64_t seed);

// Squared distances between every mapped point and every implicit centroid
//   D(i0, j) = K(i0,i0) + w_j' K w_j / (1'w_j)^2 - 2 (K w_j)(i0) / (1'w_j),
// clamped to be nonnegative. Throws EmptyClusterError for a column whose sum
// is not positive.
DistanceMatrix centroid_distances(const Matrix& gram, const WeightMatrix& weights);
DistanceMatrix centroid_distances(const GramMatrix& gram, const WeightMatrix& weights);

// Row-wise power mean gradient weights of D, before any normalisation.
WeightMatrix raw_weights(const DistanceMatrix& distances, double s);

// Row-wise gradient weights rescaled so that every column sums to one. The
// rescale happens in the log domain, so a column never underflows to zero.
WeightMatrix update_weights(const DistanceMatrix& distances, double s);

// Both of the above from one pass over D.
void compute_weights(const DistanceMatrix& distances, double s, WeightMatrix& raw,
                     WeightMatrix& normalized);

// f_s = sum_i M_s(D row i)
double objective_value(const DistanceMatrix& distances, double s);

// Row-wise argmin; ties go to the lowest cluster index.
Labels nearest_labels(const DistanceMatrix& distances);

// Replaces every zero-weight column of `weights` by the indicator of the point
// farthest from its nearest live centroid. Returns the number of columns
// replaced.
int repair_empty_clusters(const Matrix& gram, WeightMatrix& weights);

// Kernel power k-means.
ClusterResult run_kpk(const GramMatrix& gram, const KpkOptions& options);

void validate_cluster_count(Eigen::Index n, int k);

}  // namespace kpk

#endif  // KPK_CLUSTER_HPP
