#ifndef KPK_METRICS_HPP
#define KPK_METRICS_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace kpk {

// Cross-tabulation of two labelings over their distinct values, in order of
// first appearance.
struct ContingencyTable {
    std::vector<std::vector<std::int64_t>> counts;
    std::vector<std::int64_t> row_totals;
    std::vector<std::int64_t> col_totals;
    std::int64_t n = 0;

    std::size_t rows() const { return row_totals.size(); }
    std::size_t cols() const { return col_totals.size(); }
};

ContingencyTable contingency(std::span<const int> a, std::span<const int> b);

enum class NmiNormalization {
    sqrt,        // I / sqrt(H(a) H(b))
    max,         // I / max(H(a), H(b))
    arithmetic,  // 2 I / (H(a) + H(b))
};

// Normalised mutual information with natural logs. Returns 0 when the
// normaliser vanishes (either labeling has a single cluster).
double nmi(std::span<const int> a, std::span<const int> b,
           NmiNormalization normalization = NmiNormalization::sqrt);

// Adjusted Rand index. Returns 0 when the expected and maximum index coincide.
double ari(std::span<const int> a, std::span<const int> b);

}  // namespace kpk

#endif  // KPK_METRICS_HPP
