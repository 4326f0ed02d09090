#include "kpk/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "kpk/error.hpp"
#include "kpk/power_mean.hpp"

namespace kpk {

void AnnealSchedule::validate() const {
    if (!std::isfinite(s0) || !(s0 < 0.0)) {
        throw Error(ErrorKind::invalid_config, "schedule s0 must be negative");
    }
    if (!std::isfinite(eta) || eta < 1.0) {
        throw Error(ErrorKind::invalid_config, "schedule eta must be at least 1");
    }
    if (period < 1) {
        throw Error(ErrorKind::invalid_config, "schedule period must be a positive integer");
    }
    if (!(s_cap >= std::abs(s0)) || !std::isfinite(s_cap)) {
        throw Error(ErrorKind::invalid_config, "schedule s_cap must be finite and at least |s0|");
    }
}

double AnnealSchedule::after(int updates) const {
    const double s = s0 * std::pow(eta, updates);
    return std::max(s, -s_cap);
}

AnnealSchedule AnnealSchedule::fixed(double s) {
    return AnnealSchedule{s, 1.0, 1, std::abs(s)};
}

AnnealingState::AnnealingState(const AnnealSchedule& schedule, double tol)
    : schedule_(schedule), tol_(tol), s_(schedule.s0) {
    schedule_.validate();
    if (!(tol >= 0.0)) {
        throw Error(ErrorKind::invalid_config, "tolerance must be nonnegative");
    }
}

bool AnnealingState::record(double objective) {
    bool converged = false;
    const bool frozen = schedule_.eta == 1.0 || std::abs(s_) >= schedule_.s_cap;
    if (frozen && have_previous_ && previous_s_ == s_) {
        const double change = std::abs(objective - previous_objective_) /
                              std::max(1.0, std::abs(previous_objective_));
        converged = change < tol_;
    }
    have_previous_ = true;
    previous_objective_ = objective;
    previous_s_ = s_;
    return converged;
}

void AnnealingState::finish_iteration() {
    ++iteration_;
    if (schedule_.eta > 1.0 && iteration_ % schedule_.period == 0 && std::abs(s_) < schedule_.s_cap) {
        ++updates_;
        s_ = schedule_.after(updates_);
    }
}

void validate_cluster_count(Eigen::Index n, int k) {
    if (k < 1) {
        throw Error(ErrorKind::invalid_input, "number of clusters must be at least 1");
    }
    if (k > n) {
        throw Error(ErrorKind::invalid_input, "number of clusters (" + std::to_string(k) +
                                                  ") exceeds number of points (" +
                                                  std::to_string(n) + ")");
    }
}

std::vector<int> seed_indices(int n, int k, InitStrategy strategy, std::uint64_t seed,
                              const std::function<double(int, int)>& squared_distance) {
    validate_cluster_count(n, k);
    Rng rng(seed);
    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(k));

    if (strategy == InitStrategy::random_points) {
        // Partial Fisher-Yates.
        std::vector<int> pool(static_cast<std::size_t>(n));
        std::iota(pool.begin(), pool.end(), 0);
        for (int j = 0; j < k; ++j) {
            std::uniform_int_distribution<int> pick(j, n - 1);
            std::swap(pool[static_cast<std::size_t>(j)], pool[static_cast<std::size_t>(pick(rng))]);
            chosen.push_back(pool[static_cast<std::size_t>(j)]);
        }
        return chosen;
    }

    std::uniform_int_distribution<int> first(0, n - 1);
    chosen.push_back(first(rng));
    std::vector<double> nearest(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
    std::vector<char> taken(static_cast<std::size_t>(n), 0);
    taken[static_cast<std::size_t>(chosen.back())] = 1;

    while (static_cast<int>(chosen.size()) < k) {
        const int last = chosen.back();
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            auto& d = nearest[static_cast<std::size_t>(i)];
            d = taken[static_cast<std::size_t>(i)] ? 0.0
                                                   : std::min(d, std::max(0.0, squared_distance(i, last)));
            total += d;
        }
        int next = -1;
        if (total > 0.0) {
            std::discrete_distribution<int> draw(nearest.begin(), nearest.end());
            next = draw(rng);
        } else {
            // Every remaining point coincides with a seed; fall back to uniform.
            std::vector<int> free;
            for (int i = 0; i < n; ++i) {
                if (!taken[static_cast<std::size_t>(i)]) free.push_back(i);
            }
            std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
            next = free[pick(rng)];
        }
        taken[static_cast<std::size_t>(next)] = 1;
        chosen.push_back(next);
    }
    return chosen;
}

WeightMatrix one_hot_weights(int n, const std::vector<int>& indices) {
    WeightMatrix w = WeightMatrix::Zero(n, static_cast<Eigen::Index>(indices.size()));
    for (std::size_t j = 0; j < indices.size(); ++j) {
        w(indices[j], static_cast<Eigen::Index>(j)) = 1.0;
    }
    return w;
}

WeightMatrix init_weights(const GramMatrix& gram, int k, InitStrategy strategy, std::uint64_t seed) {
    const Matrix& kmat = gram.values;
    const int n = static_cast<int>(kmat.rows());
    auto dist = [&](int i, int c) { return kmat(i, i) + kmat(c, c) - 2.0 * kmat(i, c); };
    return one_hot_weights(n, seed_indices(n, k, strategy, seed, dist));
}

DistanceMatrix centroid_distances(const Matrix& gram, const WeightMatrix& weights) {
    if (gram.rows() != gram.cols() || gram.rows() != weights.rows()) {
        throw Error(ErrorKind::dimension_mismatch, "weight matrix rows differ from gram size");
    }
    const Eigen::RowVectorXd mass = weights.colwise().sum();
    for (Eigen::Index j = 0; j < mass.size(); ++j) {
        if (!(mass[j] > 0.0) || !std::isfinite(mass[j])) {
            throw EmptyClusterError(static_cast<int>(j));
        }
    }
    const Matrix kw = gram * weights;
    const Eigen::RowVectorXd self =
        (weights.array() * kw.array()).colwise().sum() / mass.array().square();
    DistanceMatrix d = (-2.0 * kw).array().rowwise() / mass.array();
    d.array().rowwise() += self.array();
    d.colwise() += gram.diagonal();
    return d.cwiseMax(0.0);
}

DistanceMatrix centroid_distances(const GramMatrix& gram, const WeightMatrix& weights) {
    return centroid_distances(gram.values, weights);
}

void compute_weights(const DistanceMatrix& distances, double s, WeightMatrix& raw,
                     WeightMatrix& normalized) {
    const Eigen::Index n = distances.rows();
    const Eigen::Index k = distances.cols();
    Matrix log_w(n, k);
    std::vector<double> row(static_cast<std::size_t>(k));
    std::vector<double> out(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) row[static_cast<std::size_t>(j)] = distances(i, j);
        power_mean_log_weights(row, s, out);
        for (Eigen::Index j = 0; j < k; ++j) log_w(i, j) = out[static_cast<std::size_t>(j)];
    }
    raw = log_w.array().exp();
    normalized.resize(n, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        const double top = log_w.col(j).maxCoeff();
        const Vector scaled = (log_w.col(j).array() - top).exp();
        normalized.col(j) = scaled / scaled.sum();
    }
}

WeightMatrix raw_weights(const DistanceMatrix& distances, double s) {
    WeightMatrix raw, normalized;
    compute_weights(distances, s, raw, normalized);
    return raw;
}

WeightMatrix update_weights(const DistanceMatrix& distances, double s) {
    WeightMatrix raw, normalized;
    compute_weights(distances, s, raw, normalized);
    return normalized;
}

double objective_value(const DistanceMatrix& distances, double s) {
    double total = 0.0;
    std::vector<double> row(static_cast<std::size_t>(distances.cols()));
    for (Eigen::Index i = 0; i < distances.rows(); ++i) {
        for (Eigen::Index j = 0; j < distances.cols(); ++j) row[static_cast<std::size_t>(j)] = distances(i, j);
        total += power_mean(row, s);
    }
    return total;
}

Labels nearest_labels(const DistanceMatrix& distances) {
    Labels labels(static_cast<std::size_t>(distances.rows()));
    for (Eigen::Index i = 0; i < distances.rows(); ++i) {
        Eigen::Index best = 0;
        for (Eigen::Index j = 1; j < distances.cols(); ++j) {
            if (distances(i, j) < distances(i, best)) best = j;
        }
        labels[static_cast<std::size_t>(i)] = static_cast<int>(best);
    }
    return labels;
}

int repair_empty_clusters(const Matrix& gram, WeightMatrix& weights) {
    const Eigen::RowVectorXd mass = weights.colwise().sum();
    std::vector<Eigen::Index> live;
    std::vector<Eigen::Index> dead;
    for (Eigen::Index j = 0; j < mass.size(); ++j) {
        (mass[j] > 0.0 && std::isfinite(mass[j]) ? live : dead).push_back(j);
    }
    if (dead.empty()) {
        return 0;
    }
    const Eigen::Index n = gram.rows();
    Vector nearest = Vector::Constant(n, std::numeric_limits<double>::infinity());
    if (!live.empty()) {
        WeightMatrix alive(n, static_cast<Eigen::Index>(live.size()));
        for (std::size_t t = 0; t < live.size(); ++t) alive.col(static_cast<Eigen::Index>(t)) = weights.col(live[t]);
        nearest = centroid_distances(gram, alive).rowwise().minCoeff();
    }
    for (Eigen::Index j : dead) {
        Eigen::Index far = 0;
        nearest.maxCoeff(&far);
        weights.col(j).setZero();
        weights(far, j) = 1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double d = std::max(0.0, gram(i, i) + gram(far, far) - 2.0 * gram(i, far));
            nearest[i] = std::min(nearest[i], d);
        }
        nearest[far] = 0.0;
    }
    return static_cast<int>(dead.size());
}

ClusterResult run_kpk(const GramMatrix& gram, const KpkOptions& options) {
    validate_cluster_count(gram.size(), options.k);
    if (options.max_iter < 1) {
        throw Error(ErrorKind::invalid_config, "max_iter must be positive");
    }
    AnnealingState anneal(options.schedule, options.tol);

    ClusterResult result;
    result.seed = options.seed;
    WeightMatrix weights = init_weights(gram, options.k, options.init, options.seed);
    WeightMatrix raw;
    DistanceMatrix distances;

    for (int iter = 0; iter < options.max_iter; ++iter) {
        result.reseeds += repair_empty_clusters(gram.values, weights);
        distances = centroid_distances(gram.values, weights);
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
