#include "kpk/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "kpk/error.hpp"

namespace kpk {

ClusterResult kernel_kmeans(const GramMatrix& gram, const KernelKmeansOptions& options) {
    validate_cluster_count(gram.size(), options.k);
    if (options.max_iter < 1) {
        throw Error(ErrorKind::invalid_config, "max_iter must be positive");
    }
    const Eigen::Index n = gram.size();
    ClusterResult result;
    result.seed = options.seed;
    WeightMatrix weights = init_weights(gram, options.k, options.init, options.seed);
    Labels labels;

    for (int iter = 0; iter < options.max_iter; ++iter) {
        result.reseeds += repair_empty_clusters(gram.values, weights);
        const DistanceMatrix distances = centroid_distances(gram.values, weights);
        Labels next = nearest_labels(distances);
        double objective = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            objective += distances(i, next[static_cast<std::size_t>(i)]);
        }
        result.objective_trace.push_back(objective);
        result.iterations = iter + 1;
        const bool stable = next == labels;
        labels = std::move(next);
        weights.setZero();
        for (Eigen::Index i = 0; i < n; ++i) {
            weights(i, labels[static_cast<std::size_t>(i)]) = 1.0;
        }
        if (stable) {
            result.converged = true;
            break;
        }
    }
    result.labels = std::move(labels);
    result.weights = std::move(weights);
    return result;
}

Matrix explicit_centroids(const Matrix& data, const WeightMatrix& weights) {
    if (data.rows() != weights.rows()) {
        throw Error(ErrorKind::dimension_mismatch, "weights and data differ in row count");
    }
    const Eigen::RowVectorXd mass = weights.colwise().sum();
    for (Eigen::Index j = 0; j < mass.size(); ++j) {
        if (!(mass[j] > 0.0)) throw EmptyClusterError(static_cast<int>(j));
    }
    Matrix centroids = weights.transpose() * data;
    centroids.array().colwise() /= mass.transpose().array();
    return centroids;
}

namespace {

DistanceMatrix euclidean_distances(const Matrix& data, const Matrix& centroids) {
    DistanceMatrix d(data.rows(), centroids.rows());
    for (Eigen::Index j = 0; j < centroids.rows(); ++j) {
        d.col(j) = (data.rowwise() - centroids.row(j)).rowwise().squaredNorm();
    }
    return d;
}

// Farthest-point repair in the explicit space, mirroring repair_empty_clusters.
int repair_explicit(const Matrix& data, WeightMatrix& weights) {
    const Eigen::RowVectorXd mass = weights.colwise().sum();
    std::vector<Eigen::Index> live, dead;
    for (Eigen::Index j = 0; j < mass.size(); ++j) {
        (mass[j] > 0.0 && std::isfinite(mass[j]) ? live : dead).push_back(j);
    }
    if (dead.empty()) return 0;
    Vector nearest = Vector::Constant(data.rows(), std::numeric_limits<double>::infinity());
    for (Eigen::Index j : live) {
        const Eigen::RowVectorXd c = (weights.col(j).transpose() * data) / mass[j];
        nearest = nearest.cwiseMin((data.rowwise() - c).rowwise().squaredNorm());
    }
    for (Eigen::Index j : dead) {
        Eigen::Index far = 0;
        nearest.maxCoeff(&far);
        weights.col(j).setZero();
        weights(far, j) = 1.0;
        nearest = nearest.cwiseMin((data.rowwise() - data.row(far)).rowwise().squaredNorm());
    }
    return static_cast<int>(dead.size());
}

}  // namespace

ClusterResult power_kmeans(const Matrix& data, const KpkOptions& options) {
    const int n = static_cast<int>(data.rows());
    validate_cluster_count(n, options.k);
    if (!data.allFinite()) {
        throw Error(ErrorKind::invalid_input, "data contains non-finite entries");
    }
    if (options.max_iter < 1) {
        throw Error(ErrorKind::invalid_config, "max_iter must be positive");
    }
    AnnealingState anneal(options.schedule, options.tol);

    auto dist = [&](int i, int c) { return (data.row(i) - data.row(c)).squaredNorm(); };
    WeightMatrix weights = one_hot_weights(n, seed_indices(n, options.k, options.init, options.seed, dist));

    ClusterResult result;
    result.seed = options.seed;
    WeightMatrix raw;
    DistanceMatrix distances;
    for (int iter = 0; iter < options.max_iter; ++iter) {
        result.reseeds += repair_explicit(data, weights);
        distances = euclidean_distances(data, explicit_centroids(data, weights));
        const double s = anneal.s();
        const double f = objective_value(distances, s);
        result.objective_trace.push_back(f);
        result.s_trace.push_back(s);
        const bool done = anneal.record(f);
        compute_weights(distances, s, raw, weights);
        result.iterations = iter + 1;
        if (done) {
            result.converged = true;
            break;
        }
        anneal.finish_iteration();
    }
    result.labels = nearest_labels(distances);
    result.weights = std::move(weights);
    return result;
}

}  // namespace kpk
