#include <gtest/gtest.h>

#include <sstream>

#include "kpk/config.hpp"
#include "kpk/error.hpp"
#include "kpk/io.hpp"

using namespace kpk;

namespace {

std::string error_message(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Csv, PlainNumericTable) {
    std::istringstream in("1,2\n3,4\n5,6\n");
    const auto d = read_csv(in);
    ASSERT_EQ(d.size(), 3);
    ASSERT_EQ(d.dim(), 2);
    EXPECT_EQ(d.x(2, 1), 6.0);
    EXPECT_FALSE(d.has_labels());
}

TEST(Csv, HeaderAndTrailingLabels) {
    std::istringstream in("a,b,class\n1.5,2,setosa\n3,-4e-1,virginica\n\n5,6,setosa\n");
    CsvOptions o;
    o.has_header = true;
    o.label_column = -1;
    const auto d = read_csv(in, o);
    ASSERT_EQ(d.dim(), 2);
    EXPECT_EQ(d.labels, (Labels{0, 1, 0}));
    EXPECT_EQ(d.x(1, 1), -0.4);
}

TEST(Csv, LeadingLabelColumnAndDelimiter) {
    std::istringstream in("7;1;2\n3;3;4\n");
    CsvOptions o;
    o.label_column = 0;
    o.delimiter = ';';
    const auto d = read_csv(in, o);
    EXPECT_EQ(d.labels, (Labels{0, 1}));
    EXPECT_EQ(d.x(1, 0), 3.0);
}

TEST(Csv, ErrorsNamePosition) {
    std::istringstream ragged("1,2\n3,4\n5\n");
    EXPECT_NE(error_message([&] { read_csv(ragged); }).find("line 3"), std::string::npos);
    std::istringstream word("1,2\n3,x\n");
    const auto msg = error_message([&] { read_csv(word); });
    EXPECT_NE(msg.find("line 2"), std::string::npos);
    EXPECT_NE(msg.find("column 2"), std::string::npos);
    std::istringstream empty("");
    EXPECT_THROW(read_csv(empty), Error);
    std::istringstream only_header("a,b\n");
    CsvOptions o;
    o.has_header = true;
    EXPECT_THROW(read_csv(only_header, o), Error);
    EXPECT_THROW(load_csv("/nonexistent/file.csv"), Error);
}

TEST(Csv, WriteReadRoundTrip) {
    Dataset d;
    d.x.resize(2, 2);
    d.x << 0.1, 1.0 / 3.0, -2e-300, 7;
    d.labels = {0, 1};
    std::stringstream buf;
    write_csv(buf, d);
    CsvOptions o;
    o.has_header = true;
    o.label_column = -1;
    const auto back = read_csv(buf, o);
    EXPECT_EQ(back.x, d.x);
    EXPECT_EQ(back.labels, d.labels);
}

TEST(Labels, IntegerAndStringLabels) {
    std::istringstream ints("3\n1\n\n3\n");
    EXPECT_EQ(read_labels(ints), (Labels{3, 1, 3}));
    std::istringstream words("label\ncat\ndog\ncat\n");
    EXPECT_EQ(read_labels(words, true), (Labels{0, 1, 0}));
}

TEST(Standardize, ZeroMeanUnitSd) {
    Matrix x(4, 2);
    x << 1, 5, 2, 5, 3, 5, 4, 5;
    const Matrix z = standardize(x);
    EXPECT_NEAR(z.col(0).mean(), 0.0, 1e-15);
    EXPECT_NEAR(z.col(0).squaredNorm() / 3, 1.0, 1e-14);
    EXPECT_EQ(z.col(1).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Config, DefaultsMatchDocumentedSchedule) {
    const RunConfig c = parse_config("{}");
    EXPECT_EQ(c.schedule.s0, -1.0);
    EXPECT_EQ(c.schedule.eta, 1.04);
    EXPECT_EQ(c.schedule.period, 5);
    EXPECT_EQ(c.schedule.s_cap, 1e5);
    EXPECT_EQ(c.tol, 1e-8);
    EXPECT_EQ(c.max_iter, 500);
    EXPECT_TRUE(c.effective_standardize());
    EXPECT_FALSE(c.effective_normalize());
}

TEST(Config, RoundTripIsLossless) {
    RunConfig c;
    c.algorithm = Algorithm::mkpk;
    c.k = 7;
    c.kernel = KernelEntry{"gaussian", 0.1 + 0.2};
    c.kernel_bank = {KernelEntry{"gaussian", std::nullopt}, KernelEntry{"polynomial", std::nullopt, 4, 1.0 / 3.0},
                     KernelEntry{"cosine"}};
    c.schedule = AnnealSchedule{-0.7, 1.0123456789, 3, 12345.678};
    c.lambda = 1e-3 / 7;
    c.init = InitStrategy::kernel_kpp;
    c.restarts = 3;
    c.seed = 18446744073709551557ULL;
    c.tol = 1.5e-11;
    c.max_iter = 77;
    c.standardize = false;
    c.workers = 4;
    c.nmi = NmiNormalization::arithmetic;
    const RunConfig back = parse_config(config_to_json(c));
    EXPECT_EQ(back, c);
    EXPECT_EQ(config_to_json(back), config_to_json(c));
}

TEST(Config, RejectsUnknownAndInvalid) {
    EXPECT_NE(error_message([] { parse_config(R"({"k": 3, "colour": 1})"); }).find("colour"), std::string::npos);
    EXPECT_THROW(parse_config(R"({"schedule": {"s0": -1, "speed": 2}})"), Error);
    EXPECT_THROW(parse_config(R"({"kernel": {"type": "rbf"}})"), Error);
    EXPECT_THROW(parse_config(R"({"restarts": 0})"), Error);
    EXPECT_THROW(parse_config(R"({"k": "three"})"), Error);
    EXPECT_THROW(parse_config(R"({"schedule": {"s0": 1}})"), Error);
    EXPECT_THROW(parse_config(R"({"schema_version": 2})"), Error);
    EXPECT_THROW(parse_config("[1,2]"), Error);
    EXPECT_THROW(parse_config("{"), Error);
}

TEST(Config, ArcKernelTurnsOffStandardization) {
    const RunConfig c = parse_config(R"({"kernel": {"type": "gaussian_arc", "sigma": 1}})");
    EXPECT_FALSE(c.effective_standardize());
    EXPECT_EQ(*c.kernel.sigma, 1.0);
    const RunConfig m = parse_config(R"({"algorithm": "mkpk"})");
    EXPECT_TRUE(m.effective_normalize());
}

TEST(Config, KernelResolution) {
    Matrix x(2, 1);
    x << 0, 4;
    const auto spec = resolve_kernel(KernelEntry{"gaussian", std::nullopt}, x);
    EXPECT_DOUBLE_EQ(std::get<GaussianKernel>(spec).sigma, 4.0);
    RunConfig c;
    c.algorithm = Algorithm::mkpk;
    EXPECT_EQ(resolve_kernel_bank(c, x).size(), 12u);
    c.kernel_bank = {KernelEntry{"linear"}};
    EXPECT_EQ(resolve_kernel_bank(c, x).size(), 1u);
}
