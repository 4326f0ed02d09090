#ifndef KPK_DATAGEN_HPP
#define KPK_DATAGEN_HPP

#include <cstdint>

#include "kpk/cluster.hpp"
#include "kpk/types.hpp"

namespace kpk {

// Concentric rings in the plane. Ring j (0-based) has nominal radius
// (j + 1) * radius_step; each point gets a uniform angle and a radius drawn
// from Normal(nominal, noise_sd). Labels are ring indices.
struct RingsConfig {
    int k = 10;
    int n_per = 100;
    double radius_step = 1.0;
    double noise_sd = 0.1;
    std::uint64_t seed = 0;
};

Dataset gen_rings(const RingsConfig& config);

// Mixture of von Mises-Fisher clusters on the unit sphere S^(dim-1).
struct VmfConfig {
    int k = 10;
    int n = 500;
    int dim = 20;
    double kappa = 30.0;
    std::uint64_t seed = 0;
};

// One draw from vMF(mu, kappa) using Wood's rejection sampler for the
// component along mu and a uniform direction in the tangent space.
Vector sample_vmf(const Vector& mu, double kappa, Rng& rng);

// Mean directions uniform on the sphere, labels uniform over the k clusters.
Dataset gen_vmf_sphere(const VmfConfig& config);

}  // namespace kpk

#endif  // KPK_DATAGEN_HPP
