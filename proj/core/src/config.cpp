#include "kpk/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "kpk/error.hpp"

namespace kpk {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& message) {
    throw Error(ErrorKind::invalid_config, message);
}

void reject_unknown(const json& object, const std::set<std::string>& known, const std::string& where) {
    for (const auto& item : object.items()) {
        if (!known.count(item.key())) {
            config_error("unknown key '" + item.key() + "' in " + where);
        }
    }
}

template <typename T>
T get_as(const json& object, const char* key, const std::string& where) {
    try {
        return object.at(key).get<T>();
    } catch (const json::exception&) {
        config_error("bad value for '" + std::string(key) + "' in " + where);
    }
}

template <typename T>
void read_if(const json& object, const char* key, T& out, const std::string& where) {
    if (object.contains(key)) out = get_as<T>(object, key, where);
}

json kernel_to_json(const KernelEntry& entry) {
    json j = {{"type", entry.type}};
    if (entry.type == "gaussian" || entry.type == "gaussian_arc") {
        j["sigma"] = entry.sigma ? json(*entry.sigma) : json("auto");
    } else if (entry.type == "polynomial") {
        j["degree"] = entry.degree;
        j["coef"] = entry.coef;
    }
    return j;
}

KernelEntry kernel_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) config_error(where + " must be an object");
    reject_unknown(j, {"type", "sigma", "degree", "coef"}, where);
    KernelEntry entry;
    read_if(j, "type", entry.type, where);
    static const std::set<std::string> types = {"linear", "gaussian", "gaussian_arc", "polynomial",
                                                "cosine"};
    if (!types.count(entry.type)) config_error("unknown kernel type '" + entry.type + "'");
    if (j.contains("sigma")) {
        const auto& sigma = j.at("sigma");
        if (sigma.is_string() && sigma.get<std::string>() == "auto") {
            entry.sigma.reset();
        } else if (sigma.is_number()) {
            entry.sigma = sigma.get<double>();
        } else {
            config_error("sigma in " + where + " must be a number or \"auto\"");
        }
    }
    read_if(j, "degree", entry.degree, where);
    read_if(j, "coef", entry.coef, where);
    return entry;
}

json optional_bool(const std::optional<bool>& v) {
    return v ? json(*v) : json("auto");
}

std::optional<bool> optional_bool_from(const json& j, const char* key) {
    if (j.is_boolean()) return j.get<bool>();
    if (j.is_string() && j.get<std::string>() == "auto") return std::nullopt;
    config_error(std::string(key) + " must be true, false or \"auto\"");
}

}  // namespace

std::string to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::kpk: return "kpk";
        case Algorithm::mkpk: return "mkpk";
        case Algorithm::kernel_kmeans: return "kernel_kmeans";
        case Algorithm::power_kmeans: return "power_kmeans";
    }
    return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
    for (auto a : {Algorithm::kpk, Algorithm::mkpk, Algorithm::kernel_kmeans, Algorithm::power_kmeans}) {
        if (to_string(a) == name) return a;
    }
    config_error("unknown algorithm '" + name + "'");
}

std::string to_string(InitStrategy init) {
    return init == InitStrategy::kernel_kpp ? "kpp" : "random";
}

InitStrategy parse_init(const std::string& name) {
    if (name == "random") return InitStrategy::random_points;
    if (name == "kpp") return InitStrategy::kernel_kpp;
    config_error("unknown init '" + name + "' (expected random or kpp)");
}

std::string to_string(NmiNormalization normalization) {
    switch (normalization) {
        case NmiNormalization::sqrt: return "sqrt";
        case NmiNormalization::max: return "max";
        case NmiNormalization::arithmetic: return "arithmetic";
    }
    return "unknown";
}

NmiNormalization parse_nmi(const std::string& name) {
    for (auto v : {NmiNormalization::sqrt, NmiNormalization::max, NmiNormalization::arithmetic}) {
        if (to_string(v) == name) return v;
    }
    config_error("unknown nmi normalization '" + name + "'");
}

void RunConfig::validate() const {
    if (schema_version != kConfigSchemaVersion) {
        config_error("unsupported schema_version " + std::to_string(schema_version));
    }
    if (k < 1) config_error("k must be >= 1");
    if (restarts < 1) config_error("restarts must be >= 1");
    if (max_iter < 1) config_error("max_iter must be >= 1");
    if (workers < 1) config_error("workers must be >= 1");
    if (!(tol >= 0.0)) config_error("tol must be >= 0");
    if (!(lambda > 0.0)) config_error("lambda must be > 0");
    try {
        schedule.validate();
    } catch (const Error& e) {
        config_error(e.what());
    }
    if (algorithm == Algorithm::mkpk && kernel_bank.empty() && kernel_bank_preset != "standard12") {
        config_error("unknown kernel bank preset '" + kernel_bank_preset + "'");
    }
}

bool RunConfig::effective_standardize() const {
    if (standardize) return *standardize;
    if (algorithm == Algorithm::mkpk || algorithm == Algorithm::power_kmeans) return true;
    return kernel.type != "gaussian_arc";
}

bool RunConfig::effective_normalize() const {
    if (normalize) return *normalize;
    return algorithm == Algorithm::mkpk;
}

std::string config_to_json(const RunConfig& c, int indent) {
    json j;
    j["schema_version"] = c.schema_version;
    j["algorithm"] = to_string(c.algorithm);
    j["k"] = c.k;
    j["kernel"] = kernel_to_json(c.kernel);
    if (c.kernel_bank.empty()) {
        j["kernel_bank"] = c.kernel_bank_preset;
    } else {
        json bank = json::array();
        for (const auto& e : c.kernel_bank) bank.push_back(kernel_to_json(e));
        j["kernel_bank"] = bank;
    }
    j["schedule"] = {{"s0", c.schedule.s0},
                     {"eta", c.schedule.eta},
                     {"period", c.schedule.period},
                     {"s_cap", c.schedule.s_cap}};
    j["lambda"] = c.lambda;
    j["init"] = to_string(c.init);
    j["restarts"] = c.restarts;
    j["seed"] = c.seed;
    j["tol"] = c.tol;
    j["max_iter"] = c.max_iter;
    j["standardize"] = optional_bool(c.standardize);
    j["normalize"] = optional_bool(c.normalize);
    j["workers"] = c.workers;
    j["nmi"] = to_string(c.nmi);
    return j.dump(indent);
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        config_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) config_error("config must be a JSON object");
    reject_unknown(j,
                   {"schema_version", "algorithm", "k", "kernel", "kernel_bank", "schedule", "lambda",
                    "init", "restarts", "seed", "tol", "max_iter", "standardize", "normalize",
                    "workers", "nmi"},
                   "config");
    const std::string where = "config";
    RunConfig c;
    read_if(j, "schema_version", c.schema_version, where);
    if (j.contains("algorithm")) c.algorithm = parse_algorithm(get_as<std::string>(j, "algorithm", where));
    read_if(j, "k", c.k, where);
    if (j.contains("kernel")) c.kernel = kernel_from_json(j.at("kernel"), "kernel");
    if (j.contains("kernel_bank")) {
        const auto& bank = j.at("kernel_bank");
        if (bank.is_string()) {
            c.kernel_bank_preset = bank.get<std::string>();
        } else if (bank.is_array()) {
            for (std::size_t i = 0; i < bank.size(); ++i) {
                c.kernel_bank.push_back(kernel_from_json(bank[i], "kernel_bank[" + std::to_string(i) + "]"));
            }
            if (c.kernel_bank.empty()) config_error("kernel_bank list is empty");
        } else {
            config_error("kernel_bank must be a preset name or a list of kernels");
        }
    }
    if (j.contains("schedule")) {
        const auto& s = j.at("schedule");
        if (!s.is_object()) config_error("schedule must be an object");
        reject_unknown(s, {"s0", "eta", "period", "s_cap"}, "schedule");
        read_if(s, "s0", c.schedule.s0, "schedule");
        read_if(s, "eta", c.schedule.eta, "schedule");
        read_if(s, "period", c.schedule.period, "schedule");
        read_if(s, "s_cap", c.schedule.s_cap, "schedule");
    }
    read_if(j, "lambda", c.lambda, where);
    if (j.contains("init")) c.init = parse_init(get_as<std::string>(j, "init", where));
    read_if(j, "restarts", c.restarts, where);
    read_if(j, "seed", c.seed, where);
    read_if(j, "tol", c.tol, where);
    read_if(j, "max_iter", c.max_iter, where);
    if (j.contains("standardize")) c.standardize = optional_bool_from(j.at("standardize"), "standardize");
    if (j.contains("normalize")) c.normalize = optional_bool_from(j.at("normalize"), "normalize");
    read_if(j, "workers", c.workers, where);
    if (j.contains("nmi")) c.nmi = parse_nmi(get_as<std::string>(j, "nmi", where));
    c.validate();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot open " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

KernelSpec resolve_kernel(const KernelEntry& entry, const Matrix& data) {
    KernelSpec spec;
    auto sigma = [&] { return entry.sigma ? *entry.sigma : bandwidth_heuristic(data); };
    if (entry.type == "linear") {
        spec = LinearKernel{};
    } else if (entry.type == "gaussian") {
        spec = GaussianKernel{sigma()};
    } else if (entry.type == "gaussian_arc") {
        spec = GaussianArcKernel{sigma()};
    } else if (entry.type == "polynomial") {
        spec = PolynomialKernel{entry.degree, entry.coef};
    } else if (entry.type == "cosine") {
        spec = CosineKernel{};
    } else {
        config_error("unknown kernel type '" + entry.type + "'");
    }
    validate(spec);
    return spec;
}

std::vector<KernelSpec> resolve_kernel_bank(const RunConfig& config, const Matrix& data) {
    if (config.kernel_bank.empty()) {
        if (config.kernel_bank_preset != "standard12") {
            config_error("unknown kernel bank preset '" + config.kernel_bank_preset + "'");
        }
        const double base = config.kernel.sigma ? *config.kernel.sigma : bandwidth_heuristic(data);
        return standard_kernel_bank(base);
    }
    std::vector<KernelSpec> bank;
    for (const auto& entry : config.kernel_bank) bank.push_back(resolve_kernel(entry, data));
    return bank;
}

}  // namespace kpk
