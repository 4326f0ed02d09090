#include <gtest/gtest.h>

#include <json.hpp>

#include "kpk/datagen.hpp"
#include "kpk/error.hpp"
#include "kpk/runner.hpp"

using namespace kpk;

namespace {

Dataset small_vmf() {
    VmfConfig c;
    c.k = 3;
    c.n = 60;
    c.dim = 5;
    c.seed = 7;
    return gen_vmf_sphere(c);
}

}  // namespace

TEST(Runner, SingleClusterSingleRestart) {
    RunConfig c;
    c.k = 1;
    c.restarts = 1;
    c.max_iter = 5;
    const auto r = run_command(c, small_vmf());
    ASSERT_EQ(r.restarts.size(), 1u);
    for (int l : r.restarts[0].labels) EXPECT_EQ(l, 0);
    ASSERT_TRUE(r.ari.has_value());
    EXPECT_EQ(r.restarts[0].seed, 0u);
}

TEST(Runner, SeedsAndOrderAreStable) {
    RunConfig c;
    c.k = 3;
    c.restarts = 5;
    c.seed = 40;
    c.max_iter = 60;
    c.kernel = KernelEntry{"gaussian_arc", 1.0};
    const Dataset d = small_vmf();
    const auto serial = run_command(c, d);
    c.workers = 3;
    const auto parallel = run_command(c, d);
    for (int i = 0; i < 5; ++i) {
        EXPECT_EQ(serial.restarts[static_cast<std::size_t>(i)].seed, 40u + static_cast<unsigned>(i));
        EXPECT_EQ(parallel.restarts[static_cast<std::size_t>(i)].restart, i);
    }
    c.workers = 1;
    EXPECT_EQ(report_to_json(serial, false), report_to_json(run_command(c, d), false));
    // Only the workers field of the echoed config differs.
    auto a = nlohmann::json::parse(report_to_json(serial, false));
    auto b = nlohmann::json::parse(report_to_json(parallel, false));
    a["config"].erase("workers");
    b["config"].erase("workers");
    EXPECT_EQ(a, b);
}

TEST(Runner, ReportSchema) {
    RunConfig c;
    c.algorithm = Algorithm::mkpk;
    c.k = 3;
    c.restarts = 2;
    c.max_iter = 20;
    c.kernel_bank = {KernelEntry{"gaussian", 1.0}, KernelEntry{"cosine"}};
    const auto j = nlohmann::json::parse(report_to_json(run_command(c, small_vmf())));
    EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
    EXPECT_EQ(j["kernels"].size(), 2u);
    const auto& first = j["restarts"][0];
    for (const char* key : {"restart", "seed", "labels", "objective", "iterations", "s_final", "alpha",
                            "wall_time", "nmi", "ari"}) {
        EXPECT_TRUE(first.contains(key)) << key;
    }
    EXPECT_EQ(first["alpha"].size(), 2u);
    for (const char* key : {"mean", "min", "max"}) {
        EXPECT_TRUE(j["summary"]["nmi"].contains(key));
        EXPECT_TRUE(j["summary"]["ari"].contains(key));
    }
}

TEST(Runner, IncompatibleInputs) {
    RunConfig c;
    c.k = 100;
    EXPECT_THROW(run_command(c, small_vmf()), Error);
    c.k = 2;
    c.kernel = KernelEntry{"gaussian_arc", 1.0};
    c.standardize = true;  // rows are no longer unit length
    EXPECT_THROW(run_command(c, small_vmf()), Error);
}

TEST(Runner, EveryAlgorithmRuns) {
    for (auto a : {Algorithm::kpk, Algorithm::mkpk, Algorithm::kernel_kmeans, Algorithm::power_kmeans}) {
        RunConfig c;
        c.algorithm = a;
        c.k = 3;
        c.restarts = 2;
        c.max_iter = 30;
        const auto r = run_command(c, small_vmf());
        EXPECT_EQ(r.restarts.size(), 2u) << to_string(a);
        EXPECT_GE(r.nmi->min, 0.0);
        EXPECT_LE(r.nmi->max, 1.0);
    }
}

TEST(Bench, SmallVmfTable) {
    BenchOverrides o;
    o.datasets = 2;
    o.restarts = 2;
    o.n = 60;
    o.k = 3;
    o.max_iter = 30;
    const auto t = bench_command(BenchSuite::vmf, o);
    ASSERT_EQ(t.rows.size(), 3u);
    EXPECT_EQ(t.rows[0].runs, 4);
    EXPECT_EQ(t.ari_runs[1].size(), 4u);
    EXPECT_NE(bench_to_text(t).find("kernel_kmeans"), std::string::npos);
    const auto j = nlohmann::json::parse(bench_to_json(t));
    EXPECT_EQ(j["rows"].size(), 3u);
    o.seed = 1;
    const auto other = bench_command(BenchSuite::vmf, o);
    EXPECT_EQ(bench_command(BenchSuite::vmf, o).nmi_runs, other.nmi_runs);
    EXPECT_THROW(parse_suite("moons"), Error);
}
