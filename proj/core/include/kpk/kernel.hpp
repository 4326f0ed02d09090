#ifndef KPK_KERNEL_HPP
#define KPK_KERNEL_HPP

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kpk/types.hpp"

namespace kpk {

struct LinearKernel {};

// exp(-|x - y|^2 / (2 sigma^2))
struct GaussianKernel {
    double sigma = 1.0;
};

// exp(-acos(x'y) / (2 sigma^2)) on unit-norm inputs.
struct GaussianArcKernel {
    double sigma = 1.0;
};

// (x'y + coef)^degree
struct PolynomialKernel {
    int degree = 2;
    double coef = 0.0;
};

// x'y / (|x| |y|)
struct CosineKernel {};

using KernelSpec =
    std::variant<LinearKernel, GaussianKernel, GaussianArcKernel, PolynomialKernel, CosineKernel>;

// Short human-readable form, e.g. "gaussian(sigma=1.5)".
std::string describe(const KernelSpec& spec);

// Rejects nonpositive bandwidths, nonpositive degrees and negative offsets.
void validate(const KernelSpec& spec);

// Kernel value for one pair of points.
double evaluate(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

struct GramMatrix {
    Matrix values;
    KernelSpec spec;
    bool normalized = false;
    // Set by normalize_gram when the cosine-normalised matrix was constant and
    // the [0,1] rescale could not be applied.
    bool rescale_skipped = false;
    // Non-empty for a convex combination: the (kernel, weight) pairs it was
    // built from. `spec` then repeats the first component.
    std::vector<std::pair<KernelSpec, double>> components;

    Eigen::Index size() const { return values.rows(); }
};

GramMatrix gram_matrix(const KernelSpec& spec, const Matrix& data);

// Cosine normalisation K_ij / sqrt(K_ii K_jj) followed by a global min-max
// rescale of all entries to [0, 1].
GramMatrix normalize_gram(const GramMatrix& gram);

// Only the cosine stage of normalize_gram.
Matrix cosine_normalize(const Matrix& k);

// Simplex weights over a bank of kernels.
class KernelWeights {
public:
    KernelWeights() = default;
    // Throws unless every weight is nonnegative and the sum is 1 within 1e-12.
    explicit KernelWeights(std::vector<double> alpha);

    static KernelWeights uniform(std::size_t count);

    std::size_t size() const { return alpha_.size(); }
    double operator[](std::size_t l) const { return alpha_[l]; }
    const std::vector<double>& values() const { return alpha_; }

private:
    std::vector<double> alpha_;
};

GramMatrix combine_grams(std::span<const GramMatrix> grams, const KernelWeights& alpha);

// sqrt(sum_{i != j} |x_i - x_j|^2 / (n (n - 1)))
double bandwidth_heuristic(const Matrix& data);

// Twelve-kernel bank: seven Gaussians at sigma = t * base_sigma for
// t in {0.01, 0.05, 0.1, 1, 10, 50, 100}, polynomials with (degree, coef) in
// {(2,0), (4,0), (2,1), (4,1)}, and the cosine kernel.
std::vector<KernelSpec> standard_kernel_bank(double base_sigma);

}  // namespace kpk

#endif  // KPK_KERNEL_HPP
