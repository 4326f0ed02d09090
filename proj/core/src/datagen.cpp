#include "kpk/datagen.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "kpk/error.hpp"

namespace kpk {

namespace {

Vector uniform_direction(Eigen::Index dim, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(dim);
    do {
        for (Eigen::Index t = 0; t < dim; ++t) v[t] = normal(rng);
    } while (v.norm() == 0.0);
    return v / v.norm();
}

double sample_beta(double a, double b, Rng& rng) {
    std::gamma_distribution<double> ga(a, 1.0);
    std::gamma_distribution<double> gb(b, 1.0);
    const double x = ga(rng);
    const double y = gb(rng);
    return x / (x + y);
}

}  // namespace

Dataset gen_rings(const RingsConfig& config) {
    if (config.k < 1 || config.n_per < 1) {
        throw Error(ErrorKind::invalid_config, "rings need at least one ring and one point per ring");
    }
    if (!(config.noise_sd >= 0.0) || !(config.radius_step > 0.0)) {
        throw Error(ErrorKind::invalid_config, "rings need noise_sd >= 0 and radius_step > 0");
    }
    Rng rng(config.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    Dataset out;
    out.x.resize(static_cast<Eigen::Index>(config.k) * config.n_per, 2);
    out.labels.reserve(static_cast<std::size_t>(config.k * config.n_per));
    Eigen::Index row = 0;
    for (int j = 0; j < config.k; ++j) {
        const double nominal = (j + 1) * config.radius_step;
        std::normal_distribution<double> radius(nominal, config.noise_sd > 0.0 ? config.noise_sd : 1.0);
        for (int t = 0; t < config.n_per; ++t, ++row) {
            const double theta = angle(rng);
            const double r = config.noise_sd > 0.0 ? radius(rng) : nominal;
            out.x(row, 0) = r * std::cos(theta);
            out.x(row, 1) = r * std::sin(theta);
            out.labels.push_back(j);
        }
    }
    return out;
}

Vector sample_vmf(const Vector& mu, double kappa, Rng& rng) {
    const Eigen::Index dim = mu.size();
    if (dim < 2) {
        throw Error(ErrorKind::invalid_input, "von Mises-Fisher needs dimension at least 2");
    }
    if (std::abs(mu.norm() - 1.0) > 1e-10) {
        throw Error(ErrorKind::invalid_input, "von Mises-Fisher mean direction must be unit norm");
    }
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw Error(ErrorKind::invalid_input, "von Mises-Fisher concentration must be positive");
    }
    const double m1 = static_cast<double>(dim - 1);
    // b = (-2 kappa + sqrt(4 kappa^2 + m1^2)) / m1, rearranged to avoid cancellation.
    const double b = m1 / (2.0 * kappa + std::sqrt(4.0 * kappa * kappa + m1 * m1));
    const double x0 = (1.0 - b) / (1.0 + b);
    const double c = kappa * x0 + m1 * std::log(1.0 - x0 * x0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double w = 0.0;
    while (true) {
        const double z = sample_beta(m1 / 2.0, m1 / 2.0, rng);
        w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
        const double u = unit(rng);
        if (kappa * w + m1 * std::log(1.0 - x0 * w) - c >= std::log(u)) break;
    }

    // Uniform direction orthogonal to mu.
    Vector v;
    do {
        v = uniform_direction(dim, rng);
        v -= v.dot(mu) * mu;
    } while (v.norm() < 1e-12);
    v.normalize();

    Vector x = w * mu + std::sqrt(std::max(0.0, 1.0 - w * w)) * v;
    return x / x.norm();
}

Dataset gen_vmf_sphere(const VmfConfig& config) {
    if (config.k < 1 || config.n < 1) {
        throw Error(ErrorKind::invalid_config, "vMF data needs k >= 1 and n >= 1");
    }
    if (config.dim < 2) {
        throw Error(ErrorKind::invalid_config, "vMF data needs dim >= 2");
    }
    if (!(config.kappa > 0.0)) {
        throw Error(ErrorKind::invalid_config, "vMF concentration must be positive");
    }
    Rng rng(config.seed);
    std::vector<Vector> centers;
    centers.reserve(static_cast<std::size_t>(config.k));
    for (int j = 0; j < config.k; ++j) centers.push_back(uniform_direction(config.dim, rng));

    std::uniform_int_distribution<int> pick(0, config.k - 1);
    Dataset out;
    out.x.resize(config.n, config.dim);
    out.labels.reserve(static_cast<std::size_t>(config.n));
    for (int i = 0; i < config.n; ++i) {
        const int label = pick(rng);
        out.x.row(i) = sample_vmf(centers[static_cast<std::size_t>(label)], config.kappa, rng).transpose();
        out.labels.push_back(label);
    }
    return out;
}

}  // namespace kpk
