#ifndef KPK_CONFIG_HPP
#define KPK_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kpk/cluster.hpp"
#include "kpk/kernel.hpp"
#include "kpk/metrics.hpp"

namespace kpk {

inline constexpr int kConfigSchemaVersion = 1;

enum class Algorithm { kpk, mkpk, kernel_kmeans, power_kmeans };

std::string to_string(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& name);
std::string to_string(InitStrategy init);
InitStrategy parse_init(const std::string& name);
std::string to_string(NmiNormalization normalization);
NmiNormalization parse_nmi(const std::string& name);

// A kernel as written in a config file. Bandwidths may be left to the
// data-driven heuristic by leaving sigma empty ("auto").
struct KernelEntry {
    std::string type = "gaussian";  // linear | gaussian | gaussian_arc | polynomial | cosine
    std::optional<double> sigma;
    int degree = 2;
    double coef = 0.0;

    bool operator==(const KernelEntry&) const = default;
};

struct RunConfig {
    int schema_version = kConfigSchemaVersion;
    Algorithm algorithm = Algorithm::kpk;
    int k = 2;
    KernelEntry kernel{};
    // Multi-kernel runs use either a named preset or an explicit list.
    std::string kernel_bank_preset = "standard12";
    std::vector<KernelEntry> kernel_bank;
    AnnealSchedule schedule{};
    double lambda = 1.0;
    InitStrategy init = InitStrategy::random_points;
    int restarts = 20;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    int max_iter = 500;
    // Empty means: on, except for gaussian_arc kernels which expect unit rows.
    std::optional<bool> standardize;
    // Empty means: on for mkpk, off otherwise.
    std::optional<bool> normalize;
    int workers = 1;
    NmiNormalization nmi = NmiNormalization::sqrt;

    bool operator==(const RunConfig&) const = default;

    void validate() const;
    bool effective_standardize() const;
    bool effective_normalize() const;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string config_to_json(const RunConfig& config, int indent = 2);

KernelSpec resolve_kernel(const KernelEntry& entry, const Matrix& data);
std::vector<KernelSpec> resolve_kernel_bank(const RunConfig& config, const Matrix& data);

}  // namespace kpk

#endif  // KPK_CONFIG_HPP
