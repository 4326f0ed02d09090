// kpk: command-line front end for the clustering toolkit.
//
//   kpk gen --suite rings --out rings.csv
//   kpk cluster --data rings.csv --header --labels-col -1 --k 10 --sigma 1 --no-standardize
//   kpk cluster-multi --data x.csv --k 3 --kernel-bank standard12
//   kpk eval --truth a.txt --pred b.txt
//   kpk bench --suite vmf --datasets 5 --restarts 5

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kpk/config.hpp"
#include "kpk/datagen.hpp"
#include "kpk/error.hpp"
#include "kpk/io.hpp"
#include "kpk/metrics.hpp"
#include "kpk/runner.hpp"

namespace {

using nlohmann::json;

int fail(const std::string& kind, const std::string& message, int code) {
    std::cerr << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
    return code;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw kpk::Error(kpk::ErrorKind::io, "cannot write " + path);
    out << text;
}

std::optional<double> parse_sigma(const std::string& text) {
    if (text == "auto") return std::nullopt;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) {
        throw kpk::Error(kpk::ErrorKind::invalid_config, "sigma must be a number or 'auto', got '" + text + "'");
    }
    return v;
}

// "gaussian:0.5,polynomial:2:1,cosine" -> entries; a bare gaussian uses sigma auto.
std::vector<kpk::KernelEntry> parse_bank_list(const std::string& text) {
    std::vector<kpk::KernelEntry> bank;
    std::stringstream items(text);
    std::string item;
    while (std::getline(items, item, ',')) {
        std::vector<std::string> fields;
        std::stringstream parts(item);
        std::string f;
        while (std::getline(parts, f, ':')) fields.push_back(f);
        if (fields.empty()) continue;
        kpk::KernelEntry e;
        e.type = fields[0];
        if (e.type == "gaussian" || e.type == "gaussian_arc") {
            if (fields.size() > 1) e.sigma = parse_sigma(fields[1]);
        } else if (e.type == "polynomial") {
            if (fields.size() > 1) e.degree = std::stoi(fields[1]);
            if (fields.size() > 2) e.coef = std::stod(fields[2]);
        }
        bank.push_back(e);
    }
    return bank;
}

struct RunFlags {
    std::string config_path;
    std::string data;
    bool header = false;
    std::optional<int> labels_col;
    char delimiter = ',';
    std::optional<std::string> algorithm;
    std::optional<int> k;
    std::optional<std::string> kernel;
    std::optional<std::string> kernel_bank;
    std::optional<std::string> sigma;
    std::optional<int> degree;
    std::optional<double> coef;
    std::optional<double> s0;
    std::optional<double> eta;
    std::optional<int> period;
    std::optional<double> s_cap;
    std::optional<double> lambda;
    std::optional<std::string> init;
    std::optional<int> restarts;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<int> max_iter;
    std::optional<int> workers;
    std::optional<bool> standardize;
    std::optional<bool> normalize;
    std::optional<std::string> nmi;
    bool no_timing = false;
    std::string out;
    std::string write_config;
};

void add_run_flags(CLI::App* cmd, RunFlags& f, bool multi) {
    cmd->add_option("--config", f.config_path, "JSON run config; flags override its fields");
    cmd->add_option("--data", f.data, "input CSV")->required();
    cmd->add_flag("--header", f.header, "first CSV row is a header");
    cmd->add_option("--labels-col", f.labels_col, "ground-truth label column (negative counts from the end)");
    cmd->add_option("--delimiter", f.delimiter, "CSV delimiter");
    if (!multi) {
        cmd->add_option("--algorithm", f.algorithm, "kpk | kernel_kmeans | power_kmeans | mkpk");
    }
    cmd->add_option("--k", f.k, "number of clusters");
    cmd->add_option("--kernel", f.kernel, "linear | gaussian | gaussian_arc | polynomial | cosine");
    cmd->add_option("--kernel-bank", f.kernel_bank,
                    "preset name (standard12) or list like gaussian:0.5,polynomial:2:1,cosine");
    cmd->add_option("--sigma", f.sigma, "Gaussian bandwidth or 'auto'");
    cmd->add_option("--degree", f.degree, "polynomial degree");
    cmd->add_option("--coef", f.coef, "polynomial offset");
    cmd->add_option("--s0", f.s0, "initial power exponent");
    cmd->add_option("--eta", f.eta, "annealing factor");
    cmd->add_option("--period", f.period, "iterations between exponent updates");
    cmd->add_option("--s-cap", f.s_cap, "largest |s|");
    cmd->add_option("--lambda", f.lambda, "entropy weight for kernel weights");
    cmd->add_option("--init", f.init, "random | kpp");
    cmd->add_option("--restarts", f.restarts, "number of restarts");
    cmd->add_option("--seed", f.seed, "master seed; restart i uses seed + i");
    cmd->add_option("--tol", f.tol, "relative convergence tolerance");
    cmd->add_option("--max-iter", f.max_iter, "iteration limit per restart");
    cmd->add_option("--workers", f.workers, "worker threads for restarts");
    cmd->add_flag("--standardize,!--no-standardize", f.standardize, "center and scale columns");
    cmd->add_flag("--normalize,!--no-normalize", f.normalize, "cosine-normalize and rescale Gram matrices");
    cmd->add_option("--nmi", f.nmi, "NMI normalization: sqrt | max | arithmetic");
    cmd->add_flag("--no-timing", f.no_timing, "omit wall-time fields from the report");
    cmd->add_option("--out", f.out, "report path (default stdout)");
    cmd->add_option("--write-config", f.write_config, "also write the effective config to this path");
}

kpk::RunConfig build_config(const RunFlags& f, bool multi) {
    kpk::RunConfig c = f.config_path.empty() ? kpk::RunConfig{} : kpk::load_config(f.config_path);
    if (multi) {
        c.algorithm = kpk::Algorithm::mkpk;
    } else if (f.algorithm) {
        c.algorithm = kpk::parse_algorithm(*f.algorithm);
    }
    if (f.k) c.k = *f.k;
    if (f.kernel) c.kernel.type = *f.kernel;
    if (f.sigma) c.kernel.sigma = parse_sigma(*f.sigma);
    if (f.degree) c.kernel.degree = *f.degree;
    if (f.coef) c.kernel.coef = *f.coef;
    if (f.kernel_bank) {
        if (f.kernel_bank->find_first_of(",:") == std::string::npos && *f.kernel_bank != "linear" &&
            *f.kernel_bank != "gaussian" && *f.kernel_bank != "gaussian_arc" &&
            *f.kernel_bank != "polynomial" && *f.kernel_bank != "cosine") {
            c.kernel_bank_preset = *f.kernel_bank;
            c.kernel_bank.clear();
        } else {
            c.kernel_bank = parse_bank_list(*f.kernel_bank);
        }
    }
    if (f.s0) c.schedule.s0 = *f.s0;
    if (f.eta) c.schedule.eta = *f.eta;
    if (f.period) c.schedule.period = *f.period;
    if (f.s_cap) c.schedule.s_cap = *f.s_cap;
    if (f.lambda) c.lambda = *f.lambda;
    if (f.init) c.init = kpk::parse_init(*f.init);
    if (f.restarts) c.restarts = *f.restarts;
    if (f.seed) c.seed = *f.seed;
    if (f.tol) c.tol = *f.tol;
    if (f.max_iter) c.max_iter = *f.max_iter;
    if (f.workers) c.workers = *f.workers;
    if (f.standardize) c.standardize = *f.standardize;
    if (f.normalize) c.normalize = *f.normalize;
    if (f.nmi) c.nmi = kpk::parse_nmi(*f.nmi);
    c.validate();
    return c;
}

void run_cluster(const RunFlags& f, bool multi) {
    const kpk::RunConfig config = build_config(f, multi);
    if (!f.write_config.empty()) emit(kpk::config_to_json(config) + "\n", f.write_config);
    kpk::CsvOptions csv;
    csv.has_header = f.header;
    csv.label_column = f.labels_col;
    csv.delimiter = f.delimiter;
    const kpk::Dataset data = kpk::load_csv(f.data, csv);
    const kpk::RunReport report = kpk::run_command(config, data);
    emit(kpk::report_to_json(report, !f.no_timing) + "\n", f.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kernel power k-means clustering toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic dataset as CSV");
    std::string gen_suite = "rings";
    kpk::RingsConfig rings;
    kpk::VmfConfig vmf;
    std::optional<int> gen_k;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--suite", gen_suite, "rings | vmf");
    gen->add_option("--k", gen_k, "rings or vMF components");
    gen->add_option("--n-per", rings.n_per, "points per ring");
    gen->add_option("--radius-step", rings.radius_step, "ring spacing");
    gen->add_option("--noise", rings.noise_sd, "radial noise sd");
    gen->add_option("--n", vmf.n, "vMF sample size");
    gen->add_option("--dim", vmf.dim, "vMF ambient dimension");
    gen->add_option("--kappa", vmf.kappa, "vMF concentration");
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--out", gen_out, "output CSV (default stdout)");

    // cluster, cluster-multi
    RunFlags single;
    RunFlags multi;
    auto* cluster = app.add_subcommand("cluster", "run kpk or a baseline with restarts");
    add_run_flags(cluster, single, false);
    auto* cluster_multi = app.add_subcommand("cluster-multi", "run multi-kernel power k-means");
    add_run_flags(cluster_multi, multi, true);

    // eval
    auto* eval = app.add_subcommand("eval", "compare two label files");
    std::string truth_path;
    std::string pred_path;
    bool eval_header = false;
    std::string eval_nmi = "sqrt";
    eval->add_option("--truth", truth_path, "reference labels")->required();
    eval->add_option("--pred", pred_path, "predicted labels")->required();
    eval->add_flag("--header", eval_header, "label files have a header row");
    eval->add_option("--nmi", eval_nmi, "sqrt | max | arithmetic");

    // bench
    auto* bench = app.add_subcommand("bench", "run a benchmark suite with matched seeds");
    std::string bench_suite = "rings";
    kpk::BenchOverrides ov;
    std::vector<std::string> bench_algorithms;
    bool bench_json = false;
    std::string bench_out;
    bench->add_option("--suite", bench_suite, "rings | vmf");
    bench->add_option("--seed", ov.seed, "master seed");
    bench->add_option("--restarts", ov.restarts, "restarts per dataset");
    bench->add_option("--datasets", ov.datasets, "datasets (vmf)");
    bench->add_option("--k", ov.k, "clusters");
    bench->add_option("--n", ov.n, "points (vmf) or points per ring (rings)");
    bench->add_option("--dim", ov.dim, "vMF dimension");
    bench->add_option("--kappa", ov.kappa, "vMF concentration");
    bench->add_option("--sigma", ov.sigma, "kernel bandwidth");
    bench->add_option("--max-iter", ov.max_iter, "iteration limit");
    bench->add_option("--workers", ov.workers, "worker threads");
    bench->add_option("--algorithms", bench_algorithms, "subset of kpk kernel_kmeans power_kmeans mkpk")
        ->delimiter(',');
    bench->add_flag("--json", bench_json, "print the JSON table instead of text");
    bench->add_option("--out", bench_out, "also write the JSON table here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), 2);
    }

    try {
        if (gen->parsed()) {
            kpk::Dataset data;
            if (gen_suite == "rings") {
                if (gen_k) rings.k = *gen_k;
                rings.seed = gen_seed;
                data = kpk::gen_rings(rings);
            } else if (gen_suite == "vmf") {
                if (gen_k) vmf.k = *gen_k;
                vmf.seed = gen_seed;
                data = kpk::gen_vmf_sphere(vmf);
            } else {
                throw kpk::Error(kpk::ErrorKind::invalid_config, "unknown suite '" + gen_suite + "'");
            }
            std::ostringstream text;
            kpk::write_csv(text, data, true);
            emit(text.str(), gen_out);
        } else if (cluster->parsed()) {
            run_cluster(single, false);
        } else if (cluster_multi->parsed()) {
            run_cluster(multi, true);
        } else if (eval->parsed()) {
            const auto truth = kpk::load_labels(truth_path, eval_header);
            const auto pred = kpk::load_labels(pred_path, eval_header);
            const json out = {{"n", truth.size()},
                              {"nmi", kpk::nmi(truth, pred, kpk::parse_nmi(eval_nmi))},
                              {"nmi_normalization", eval_nmi},
                              {"ari", kpk::ari(truth, pred)}};
            std::cout << out.dump(2) << '\n';
        } else if (bench->parsed()) {
            for (const auto& name : bench_algorithms) ov.algorithms.push_back(kpk::parse_algorithm(name));
            const auto table = kpk::bench_command(kpk::parse_suite(bench_suite), ov);
            if (bench_json) {
                std::cout << kpk::bench_to_json(table) << '\n';
            } else {
                std::cout << kpk::bench_to_text(table);
            }
            if (!bench_out.empty()) emit(kpk::bench_to_json(table) + "\n", bench_out);
        }
    } catch (const kpk::Error& e) {
        return fail(std::string(kpk::to_string(e.kind())), e.what(), 1);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 1);
    }
    return 0;
}
