#ifndef KPK_RUNNER_HPP
#define KPK_RUNNER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kpk/config.hpp"
#include "kpk/types.hpp"

namespace kpk {

inline constexpr int kReportSchemaVersion = 1;

struct RestartReport {
    int restart = 0;
    std::uint64_t seed = 0;
    Labels labels;
    double objective = 0.0;
    int iterations = 0;
    double s_final = 0.0;
    bool converged = false;
    int reseeds = 0;
    std::vector<double> alpha;  // mkpk only
    double wall_time = 0.0;     // seconds
    std::optional<double> nmi;
    std::optional<double> ari;
};

struct Summary {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double sd = 0.0;
};

Summary summarize(const std::vector<double>& values);

struct RunReport {
    RunConfig config;
    Eigen::Index n = 0;
    Eigen::Index dim = 0;
    std::vector<std::string> kernels;
    std::vector<RestartReport> restarts;
    std::optional<Summary> nmi;
    std::optional<Summary> ari;
    Summary objective;
};

// Runs config.restarts independent restarts with seeds seed+0, seed+1, ...
// Restarts are spread over config.workers threads; the report is ordered by
// restart index whatever order they finish in.
RunReport run_command(const RunConfig& config, const Dataset& data);

// Wall-time fields are the only non-deterministic part of a report; leave
// them out to get byte-identical output for identical inputs.
std::string report_to_json(const RunReport& report, bool include_timing = true, int indent = 2);

enum class BenchSuite { rings, vmf };

BenchSuite parse_suite(const std::string& name);

struct BenchOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> restarts;
    std::optional<int> datasets;  // vmf only
    std::optional<int> k;
    std::optional<int> n;         // vmf points, rings points per ring
    std::optional<int> dim;       // vmf only
    std::optional<double> kappa;  // vmf only
    std::optional<double> sigma;
    std::optional<int> max_iter;
    std::optional<int> workers;
    std::vector<Algorithm> algorithms;  // empty: kpk, kernel_kmeans, power_kmeans
};

struct BenchRow {
    Algorithm algorithm = Algorithm::kpk;
    int runs = 0;
    Summary nmi;
    Summary ari;
    double wall_time = 0.0;
};

struct BenchTable {
    BenchSuite suite = BenchSuite::rings;
    int datasets = 0;
    int restarts = 0;
    std::vector<BenchRow> rows;
    // Per-restart ARI and NMI for every algorithm, in row order; restart i of
    // each algorithm used the same seed.
    std::vector<std::vector<double>> ari_runs;
    std::vector<std::vector<double>> nmi_runs;
};

BenchTable bench_command(BenchSuite suite, const BenchOverrides& overrides = {});
std::string bench_to_text(const BenchTable& table);
std::string bench_to_json(const BenchTable& table, int indent = 2);

}  // namespace kpk

#endif  // KPK_RUNNER_HPP
