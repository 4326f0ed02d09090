#include "kpk/multi_kernel.hpp"

#include <algorithm>
#include <cmath>

#include "kpk/error.hpp"

namespace kpk {

namespace {

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw Error(ErrorKind::invalid_config, "lambda must be positive and finite");
    }
}

Eigen::Index shared_size(std::span<const GramMatrix> grams) {
    if (grams.empty()) {
        throw Error(ErrorKind::invalid_input, "at least one gram matrix is required");
    }
    const Eigen::Index n = grams.front().size();
    for (const auto& g : grams) {
        if (g.size() != n) {
            throw Error(ErrorKind::dimension_mismatch, "gram matrices differ in size");
        }
    }
    return n;
}

}  // namespace

std::vector<DistanceMatrix> per_kernel_distances(std::span<const GramMatrix> grams,
                                                 const WeightMatrix& weights) {
    shared_size(grams);
    std::vector<DistanceMatrix> out;
    out.reserve(grams.size());
    for (const auto& g : grams) {
        out.push_back(centroid_distances(g.values, weights));
    }
    return out;
}

DistanceMatrix combined_distances(std::span<const DistanceMatrix> distances, const KernelWeights& alpha) {
    if (distances.empty() || distances.size() != alpha.size()) {
        throw Error(ErrorKind::dimension_mismatch, "need one kernel weight per distance matrix");
    }
    DistanceMatrix out = alpha[0] * distances[0];
    for (std::size_t l = 1; l < distances.size(); ++l) {
        if (distances[l].rows() != out.rows() || distances[l].cols() != out.cols()) {
            throw Error(ErrorKind::dimension_mismatch, "distance matrices differ in shape");
        }
        out += alpha[l] * distances[l];
    }
    return out;
}

WeightMatrix update_weights_multi(std::span<const DistanceMatrix> distances, const KernelWeights& alpha,
                                  double s) {
    return update_weights(combined_distances(distances, alpha), s);
}

std::vector<double> kernel_losses(std::span<const DistanceMatrix> distances, const WeightMatrix& weights) {
    std::vector<double> losses;
    losses.reserve(distances.size());
    for (const auto& d : distances) {
        if (d.rows() != weights.rows() || d.cols() != weights.cols()) {
            throw Error(ErrorKind::dimension_mismatch, "weights and distances differ in shape");
        }
        losses.push_back((weights.array() * d.array()).sum());
    }
    return losses;
}

KernelWeights softmax_weights(std::span<const double> losses, double lambda) {
    check_lambda(lambda);
    if (losses.empty()) {
        throw Error(ErrorKind::invalid_input, "softmax of an empty loss vector");
    }
    for (double v : losses) {
        if (!std::isfinite(v)) {
            throw Error(ErrorKind::invalid_input, "kernel loss is not finite");
        }
    }
    const double lowest = *std::min_element(losses.begin(), losses.end());
    std::vector<double> alpha(losses.size());
    double total = 0.0;
    for (std::size_t l = 0; l < losses.size(); ++l) {
        alpha[l] = std::exp(-(losses[l] - lowest) / lambda);
        total += alpha[l];
    }
    for (double& a : alpha) a /= total;
    // Push any rounding residue onto the largest entry so the sum is exact.
    double sum = 0.0;
    for (double a : alpha) sum += a;
    auto top = std::max_element(alpha.begin(), alpha.end());
    *top += 1.0 - sum;
    return KernelWeights(std::move(alpha));
}

KernelWeights update_alpha(std::span<const DistanceMatrix> distances, const WeightMatrix& weights,
                           double lambda) {
    const auto losses = kernel_losses(distances, weights);
    return softmax_weights(losses, lambda);
}

double entropy_term(const KernelWeights& alpha) {
    double total = 0.0;
    for (double a : alpha.values()) {
        if (a > 0.0) total += a * std::log(a);
    }
    return total;
}

double penalized_objective(std::span<const DistanceMatrix> distances, const KernelWeights& alpha, double s,
                           double lambda) {
    check_lambda(lambda);
    return objective_value(combined_distances(distances, alpha), s) + lambda * entropy_term(alpha);
}

MultiKernelResult run_mkpk(std::span<const GramMatrix> grams, const MkpkOptions& options) {
    const Eigen::Index n = shared_size(grams);
    validate_cluster_count(n, options.k);
    check_lambda(options.lambda);
    if (options.max_iter < 1) {
        throw Error(ErrorKind::invalid_config, "max_iter must be positive");
    }
    AnnealingState anneal(options.schedule, options.tol);

    MultiKernelResult result;
    result.seed = options.seed;
    KernelWeights alpha = KernelWeights::uniform(grams.size());
    WeightMatrix weights = init_weights(combine_grams(grams, alpha), options.k, options.init, options.seed);
    WeightMatrix raw;
    DistanceMatrix combined;
    std::vector<DistanceMatrix> per_kernel;

    for (int iter = 0; iter < options.max_iter; ++iter) {
        if (weights.colwise().sum().minCoeff() <= 0.0 || !weights.allFinite()) {
            result.reseeds += repair_empty_clusters(combine_grams(grams, alpha).values, weights);
            per_kernel.clear();
        }
        if (per_kernel.empty()) per_kernel = per_kernel_distances(grams, weights);
        combined = combined_distances(per_kernel, alpha);
        const double s = anneal.s();
        const double f = objective_value(combined, s) + options.lambda * entropy_term(alpha);
        result.objective_trace.push_back(f);
        result.s_trace.push_back(s);
        result.alpha_trace.push_back(alpha.values());
        const bool done = anneal.record(f);
        compute_weights(combined, s, raw, weights);
        // The alpha step minimizes the same surrogate, so its losses use the
        // distances to the centroids just defined by the new weights.
        per_kernel = per_kernel_distances(grams, weights);
        alpha = update_alpha(per_kernel, raw, options.lambda);
        result.iterations = iter + 1;
        if (done) {
            result.converged = true;
            break;
        }
        anneal.finish_iteration();
    }
    result.labels = nearest_labels(combined);
    result.weights = std::move(weights);
    result.alpha = std::move(alpha);
    return result;
}

}  // namespace kpk
