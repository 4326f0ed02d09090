#include "kpk/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "kpk/baselines.hpp"
#include "kpk/datagen.hpp"
#include "kpk/error.hpp"
#include "kpk/io.hpp"
#include "kpk/metrics.hpp"
#include "kpk/multi_kernel.hpp"

namespace kpk {

using nlohmann::json;

namespace {

struct Prepared {
    Matrix x;
    std::vector<GramMatrix> grams;
    std::vector<std::string> kernels;
};

Prepared prepare(const RunConfig& config, const Dataset& data) {
    Prepared p;
    p.x = config.effective_standardize() ? standardize(data.x) : data.x;
    if (config.algorithm == Algorithm::power_kmeans) return p;

    std::vector<KernelSpec> specs;
    if (config.algorithm == Algorithm::mkpk) {
        specs = resolve_kernel_bank(config, p.x);
    } else {
        specs.push_back(resolve_kernel(config.kernel, p.x));
    }
    for (const auto& spec : specs) {
        GramMatrix g = gram_matrix(spec, p.x);
        if (config.effective_normalize()) g = normalize_gram(g);
        p.kernels.push_back(describe(spec));
        p.grams.push_back(std::move(g));
    }
    return p;
}

RestartReport run_one(const RunConfig& config, const Prepared& p, int restart) {
    RestartReport r;
    r.restart = restart;
    r.seed = config.seed + static_cast<std::uint64_t>(restart);
    const auto start = std::chrono::steady_clock::now();

    ClusterResult result;
    switch (config.algorithm) {
        case Algorithm::kpk: {
            KpkOptions o{config.k, config.schedule, config.init, r.seed, config.tol, config.max_iter};
            result = run_kpk(p.grams.front(), o);
            break;
        }
        case Algorithm::power_kmeans: {
            KpkOptions o{config.k, config.schedule, config.init, r.seed, config.tol, config.max_iter};
            result = power_kmeans(p.x, o);
            break;
        }
        case Algorithm::kernel_kmeans: {
            KernelKmeansOptions o{config.k, config.init, r.seed, config.max_iter};
            result = kernel_kmeans(p.grams.front(), o);
            break;
        }
        case Algorithm::mkpk: {
            MkpkOptions o{config.k, config.lambda, config.schedule, config.init,
                          r.seed, config.tol, config.max_iter};
            MultiKernelResult m = run_mkpk(p.grams, o);
            r.alpha = m.alpha.values();
            result = std::move(m);
            break;
        }
    }
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.labels = std::move(result.labels);
    r.objective = result.objective_trace.empty() ? 0.0 : result.objective_trace.back();
    r.s_final = result.s_trace.empty() ? 0.0 : result.s_trace.back();
    r.iterations = result.iterations;
    r.converged = result.converged;
    r.reseeds = result.reseeds;
    return r;
}

json summary_json(const Summary& s) {
    return {{"mean", s.mean}, {"min", s.min}, {"max", s.max}, {"sd", s.sd}};
}

}  // namespace

Summary summarize(const std::vector<double>& values) {
    Summary s;
    if (values.empty()) return s;
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

RunReport run_command(const RunConfig& config, const Dataset& data) {
    config.validate();
    validate_cluster_count(data.size(), config.k);
    if (data.has_labels() && data.labels.size() != static_cast<std::size_t>(data.size())) {
        throw Error(ErrorKind::dimension_mismatch, "label count does not match row count");
    }

    const Prepared prepared = prepare(config, data);

    RunReport report;
    report.config = config;
    report.n = data.size();
    report.dim = data.dim();
    report.kernels = prepared.kernels;
    report.restarts.resize(static_cast<std::size_t>(config.restarts));

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int i = next++; i < config.restarts; i = next++) {
            try {
                report.restarts[static_cast<std::size_t>(i)] = run_one(config, prepared, i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const int threads = std::min(config.workers, config.restarts);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<double> objectives;
    std::vector<double> nmis;
    std::vector<double> aris;
    for (auto& r : report.restarts) {
        objectives.push_back(r.objective);
        if (data.has_labels()) {
            r.nmi = nmi(data.labels, r.labels, config.nmi);
            r.ari = ari(data.labels, r.labels);
            nmis.push_back(*r.nmi);
            aris.push_back(*r.ari);
        }
    }
    report.objective = summarize(objectives);
    if (data.has_labels()) {
        report.nmi = summarize(nmis);
        report.ari = summarize(aris);
    }
    return report;
}

std::string report_to_json(const RunReport& report, bool include_timing, int indent) {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["config"] = json::parse(config_to_json(report.config));
    j["n"] = report.n;
    j["dim"] = report.dim;
    j["kernels"] = report.kernels;
    json restarts = json::array();
    for (const auto& r : report.restarts) {
        json e = {{"restart", r.restart},
                  {"seed", r.seed},
                  {"objective", r.objective},
                  {"iterations", r.iterations},
                  {"s_final", r.s_final},
                  {"converged", r.converged},
                  {"reseeds", r.reseeds}};
        if (report.config.algorithm == Algorithm::mkpk) e["alpha"] = r.alpha;
        if (r.nmi) e["nmi"] = *r.nmi;
        if (r.ari) e["ari"] = *r.ari;
        if (include_timing) e["wall_time"] = r.wall_time;
        e["labels"] = r.labels;
        restarts.push_back(std::move(e));
    }
    j["restarts"] = std::move(restarts);
    json summary = {{"objective", summary_json(report.objective)}};
    if (report.nmi) summary["nmi"] = summary_json(*report.nmi);
    if (report.ari) summary["ari"] = summary_json(*report.ari);
    j["summary"] = std::move(summary);
    return j.dump(indent);
}

BenchSuite parse_suite(const std::string& name) {
    if (name == "rings") return BenchSuite::rings;
    if (name == "vmf") return BenchSuite::vmf;
    throw Error(ErrorKind::invalid_config, "unknown bench suite '" + name + "' (expected rings or vmf)");
}

BenchTable bench_command(BenchSuite suite, const BenchOverrides& ov) {
    BenchTable table;
    table.suite = suite;
    const std::uint64_t seed = ov.seed.value_or(0);
    table.restarts = ov.restarts.value_or(20);
    table.datasets = suite == BenchSuite::rings ? 1 : ov.datasets.value_or(20);
    if (table.restarts < 1 || table.datasets < 1) {
        throw Error(ErrorKind::invalid_config, "restarts and datasets must be >= 1");
    }
    std::vector<Algorithm> algorithms = ov.algorithms;
    if (algorithms.empty()) {
        algorithms = {Algorithm::kpk, Algorithm::kernel_kmeans, Algorithm::power_kmeans};
    }

    RunConfig base;
    base.restarts = table.restarts;
    base.max_iter = ov.max_iter.value_or(base.max_iter);
    base.workers = ov.workers.value_or(1);
    base.standardize = false;
    base.normalize = false;

    std::vector<Dataset> data;
    if (suite == BenchSuite::rings) {
        RingsConfig rc;
        rc.k = ov.k.value_or(rc.k);
        rc.n_per = ov.n.value_or(rc.n_per);
        rc.seed = seed;
        base.k = rc.k;
        base.kernel = KernelEntry{"gaussian", ov.sigma.value_or(1.0)};
        data.push_back(gen_rings(rc));
    } else {
        VmfConfig vc;
        vc.k = ov.k.value_or(vc.k);
        vc.n = ov.n.value_or(vc.n);
        vc.dim = ov.dim.value_or(vc.dim);
        vc.kappa = ov.kappa.value_or(vc.kappa);
        base.k = vc.k;
        base.kernel = KernelEntry{"gaussian_arc", ov.sigma.value_or(1.0)};
        for (int d = 0; d < table.datasets; ++d) {
            vc.seed = seed + static_cast<std::uint64_t>(d);
            data.push_back(gen_vmf_sphere(vc));
        }
    }

    for (Algorithm algorithm : algorithms) {
        RunConfig config = base;
        config.algorithm = algorithm;
        BenchRow row;
        row.algorithm = algorithm;
        std::vector<double> nmis;
        std::vector<double> aris;
        for (std::size_t d = 0; d < data.size(); ++d) {
            config.seed = seed + 1000003ULL * d;
            const RunReport report = run_command(config, data[d]);
            for (const auto& r : report.restarts) {
                nmis.push_back(*r.nmi);
                aris.push_back(*r.ari);
                row.wall_time += r.wall_time;
            }
        }
        row.runs = static_cast<int>(nmis.size());
        row.nmi = summarize(nmis);
        row.ari = summarize(aris);
        table.rows.push_back(row);
        table.nmi_runs.push_back(std::move(nmis));
        table.ari_runs.push_back(std::move(aris));
    }
    return table;
}

std::string bench_to_text(const BenchTable& table) {
    std::ostringstream out;
    out << "suite " << (table.suite == BenchSuite::rings ? "rings" : "vmf") << ": " << table.datasets
        << " dataset(s) x " << table.restarts << " restart(s)\n";
    out << std::left << std::setw(16) << "algorithm" << std::right << std::setw(6) << "runs"
        << std::setw(10) << "nmi_mean" << std::setw(10) << "nmi_sd" << std::setw(10) << "ari_mean"
        << std::setw(10) << "ari_sd" << std::setw(10) << "time_s" << '\n';
    out << std::fixed;
    for (const auto& row : table.rows) {
        out << std::left << std::setw(16) << to_string(row.algorithm) << std::right << std::setw(6)
            << row.runs << std::setprecision(4) << std::setw(10) << row.nmi.mean << std::setw(10)
            << row.nmi.sd << std::setw(10) << row.ari.mean << std::setw(10) << row.ari.sd
            << std::setprecision(2) << std::setw(10) << row.wall_time << '\n';
    }
    return out.str();
}

std::string bench_to_json(const BenchTable& table, int indent) {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["suite"] = table.suite == BenchSuite::rings ? "rings" : "vmf";
    j["datasets"] = table.datasets;
    j["restarts"] = table.restarts;
    json rows = json::array();
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        rows.push_back({{"algorithm", to_string(row.algorithm)},
                        {"runs", row.runs},
                        {"nmi", summary_json(row.nmi)},
                        {"ari", summary_json(row.ari)},
                        {"wall_time", row.wall_time},
                        {"nmi_runs", table.nmi_runs[i]},
                        {"ari_runs", table.ari_runs[i]}});
    }
    j["rows"] = std::move(rows);
    return j.dump(indent);
}

}  // namespace kpk
