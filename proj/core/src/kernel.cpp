#include "kpk/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "kpk/error.hpp"

namespace kpk {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kUnitNormTolerance = 1e-8;

void check_finite(const Matrix& data) {
    if (!data.allFinite()) {
        throw Error(ErrorKind::invalid_input, "data contains non-finite entries");
    }
}

void check_unit_rows(const Matrix& data) {
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
        const double norm = data.row(i).norm();
        if (std::abs(norm - 1.0) > kUnitNormTolerance) {
            std::ostringstream msg;
            msg << "gaussian_arc kernel requires unit-norm rows; row " << i << " has norm " << norm;
            throw Error(ErrorKind::domain_violation, msg.str());
        }
    }
}

double arc_value(double inner, double sigma) {
    return std::exp(-std::acos(std::clamp(inner, -1.0, 1.0)) / (2.0 * sigma * sigma));
}

double dot(std::span<const double> x, std::span<const double> y) {
    return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

}  // namespace

std::string describe(const KernelSpec& spec) {
    std::ostringstream out;
    std::visit(overloaded{
                   [&](const LinearKernel&) { out << "linear"; },
                   [&](const GaussianKernel& g) { out << "gaussian(sigma=" << g.sigma << ")"; },
                   [&](const GaussianArcKernel& g) { out << "gaussian_arc(sigma=" << g.sigma << ")"; },
                   [&](const PolynomialKernel& p) {
                       out << "polynomial(degree=" << p.degree << ", coef=" << p.coef << ")";
                   },
                   [&](const CosineKernel&) { out << "cosine"; },
               },
               spec);
    return out.str();
}

void validate(const KernelSpec& spec) {
    auto bad = [&](const char* what) {
        throw Error(ErrorKind::invalid_config, describe(spec) + ": " + what);
    };
    std::visit(overloaded{
                   [&](const GaussianKernel& g) {
                       if (!(g.sigma > 0.0) || !std::isfinite(g.sigma)) bad("sigma must be positive");
                   },
                   [&](const GaussianArcKernel& g) {
                       if (!(g.sigma > 0.0) || !std::isfinite(g.sigma)) bad("sigma must be positive");
                   },
                   [&](const PolynomialKernel& p) {
                       if (p.degree < 1) bad("degree must be a positive integer");
                       if (!(p.coef >= 0.0) || !std::isfinite(p.coef)) bad("coef must be nonnegative");
                   },
                   [](const auto&) {},
               },
               spec);
}

double evaluate(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw Error(ErrorKind::dimension_mismatch, "kernel arguments differ in dimension");
    }
    return std::visit(
        overloaded{
            [&](const LinearKernel&) { return dot(x, y); },
            [&](const GaussianKernel& g) {
                double d2 = 0.0;
                for (std::size_t t = 0; t < x.size(); ++t) d2 += (x[t] - y[t]) * (x[t] - y[t]);
                return std::exp(-d2 / (2.0 * g.sigma * g.sigma));
            },
            [&](const GaussianArcKernel& g) { return arc_value(dot(x, y), g.sigma); },
            [&](const PolynomialKernel& p) { return std::pow(dot(x, y) + p.coef, p.degree); },
            [&](const CosineKernel&) {
                return dot(x, y) / std::sqrt(dot(x, x) * dot(y, y));
            },
        },
        spec);
}

GramMatrix gram_matrix(const KernelSpec& spec, const Matrix& data) {
    validate(spec);
    if (data.rows() < 1) {
        throw Error(ErrorKind::invalid_input, "gram matrix of an empty dataset");
    }
    check_finite(data);
    if (std::holds_alternative<GaussianArcKernel>(spec)) {
        check_unit_rows(data);
    }

    const Eigen::Index n = data.rows();
    Matrix inner = data * data.transpose();
    const Vector sq = inner.diagonal();

    if (std::holds_alternative<CosineKernel>(spec)) {
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!(sq[i] > 0.0)) {
                throw Error(ErrorKind::domain_violation,
                            "cosine kernel undefined for zero row " + std::to_string(i));
            }
        }
    }

    auto entry = overloaded{
        [&](const LinearKernel&, Eigen::Index i, Eigen::Index j) { return inner(i, j); },
        [&](const GaussianKernel& g, Eigen::Index i, Eigen::Index j) {
            const double d2 = std::max(0.0, sq[i] + sq[j] - 2.0 * inner(i, j));
            return std::exp(-d2 / (2.0 * g.sigma * g.sigma));
        },
        [&](const GaussianArcKernel& g, Eigen::Index i, Eigen::Index j) {
            return arc_value(inner(i, j), g.sigma);
        },
        [&](const PolynomialKernel& p, Eigen::Index i, Eigen::Index j) {
            return std::pow(inner(i, j) + p.coef, p.degree);
        },
        [&](const CosineKernel&, Eigen::Index i, Eigen::Index j) {
            return inner(i, j) / std::sqrt(sq[i] * sq[j]);
        },
    };

    GramMatrix gram;
    gram.values.resize(n, n);
    gram.spec = spec;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i <= j; ++i) {
            const double v = std::visit([&](const auto& k) { return entry(k, i, j); }, spec);
            gram.values(i, j) = v;
            gram.values(j, i) = v;
        }
    }
    if (std::holds_alternative<GaussianKernel>(spec)) {
        gram.values.diagonal().setOnes();
    }
    return gram;
}

Matrix cosine_normalize(const Matrix& k) {
    const Vector diag = k.diagonal();
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        if (!(diag[i] > 0.0)) {
            throw Error(ErrorKind::domain_violation,
                        "cannot normalise a gram matrix with nonpositive diagonal entry " +
                            std::to_string(i));
        }
    }
    const Vector inv = diag.cwiseSqrt().cwiseInverse();
    Matrix out = inv.asDiagonal() * k * inv.asDiagonal();
    out.diagonal().setOnes();
    return out;
}

GramMatrix normalize_gram(const GramMatrix& gram) {
    GramMatrix out = gram;
    out.values = cosine_normalize(gram.values);
    const double lo = out.values.minCoeff();
    const double hi = out.values.maxCoeff();
    // A spread at rounding level is a constant matrix; stretching it would
    // only amplify noise.
    if (hi - lo > 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(hi))) {
        out.values = (out.values.array() - lo) / (hi - lo);
        out.rescale_skipped = false;
    } else {
        out.rescale_skipped = true;
    }
    out.normalized = true;
    return out;
}

KernelWeights::KernelWeights(std::vector<double> alpha) : alpha_(std::move(alpha)) {
    if (alpha_.empty()) {
        throw Error(ErrorKind::invalid_input, "kernel weights must not be empty");
    }
    double total = 0.0;
    for (double a : alpha_) {
        if (!(a >= 0.0) || !std::isfinite(a)) {
            throw Error(ErrorKind::invalid_input, "kernel weights must be finite and nonnegative");
        }
        total += a;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw Error(ErrorKind::invalid_input, "kernel weights must sum to one");
    }
}

KernelWeights KernelWeights::uniform(std::size_t count) {
    if (count == 0) {
        throw Error(ErrorKind::invalid_input, "kernel weights must not be empty");
    }
    return KernelWeights(std::vector<double>(count, 1.0 / static_cast<double>(count)));
}

GramMatrix combine_grams(std::span<const GramMatrix> grams, const KernelWeights& alpha) {
    if (grams.empty() || grams.size() != alpha.size()) {
        throw Error(ErrorKind::dimension_mismatch,
                    "combine_grams needs one weight per gram matrix");
    }
    const Eigen::Index n = grams.front().size();
    GramMatrix out;
    out.values = Matrix::Zero(n, n);
    out.spec = grams.front().spec;
    out.normalized = true;
    for (std::size_t l = 0; l < grams.size(); ++l) {
        if (grams[l].size() != n) {
            throw Error(ErrorKind::dimension_mismatch, "gram matrices differ in size");
        }
        out.values += alpha[l] * grams[l].values;
        out.normalized = out.normalized && grams[l].normalized;
        out.components.emplace_back(grams[l].spec, alpha[l]);
    }
    return out;
}

double bandwidth_heuristic(const Matrix& data) {
    const Eigen::Index n = data.rows();
    if (n < 2) {
        throw Error(ErrorKind::invalid_input, "bandwidth heuristic needs at least two points");
    }
    check_finite(data);
    // sum_{i,j} |x_i - x_j|^2 = 2 n sum_i |x_i - mean|^2
    const Eigen::RowVectorXd mean = data.colwise().mean();
    const double scatter = (data.rowwise() - mean).squaredNorm();
    const double nn = static_cast<double>(n);
    const double sigma = std::sqrt(2.0 * nn * scatter / (nn * (nn - 1.0)));
    if (!(sigma > 0.0)) {
        throw Error(ErrorKind::degenerate, "all points are identical; bandwidth would be zero");
    }
    return sigma;
}

std::vector<KernelSpec> standard_kernel_bank(double base_sigma) {
    if (!(base_sigma > 0.0)) {
        throw Error(ErrorKind::invalid_config, "base bandwidth must be positive");
    }
    std::vector<KernelSpec> bank;
    for (double t : {0.01, 0.05, 0.1, 1.0, 10.0, 50.0, 100.0}) {
        bank.emplace_back(GaussianKernel{t * base_sigma});
    }
    bank.emplace_back(PolynomialKernel{2, 0.0});
    bank.emplace_back(PolynomialKernel{4, 0.0});
    bank.emplace_back(PolynomialKernel{2, 1.0});
    bank.emplace_back(PolynomialKernel{4, 1.0});
    bank.emplace_back(CosineKernel{});
    return bank;
}

}  // namespace kpk
