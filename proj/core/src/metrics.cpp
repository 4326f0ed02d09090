#include "kpk/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "kpk/error.hpp"

namespace kpk {

namespace {

void check_lengths(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::dimension_mismatch, "labelings differ in length");
    }
    if (a.empty()) {
        throw Error(ErrorKind::invalid_input, "labelings are empty");
    }
}

std::vector<std::size_t> encode(std::span<const int> labels, std::size_t& distinct) {
    std::unordered_map<int, std::size_t> ids;
    std::vector<std::size_t> out;
    out.reserve(labels.size());
    for (int v : labels) {
        auto [it, inserted] = ids.try_emplace(v, ids.size());
        out.push_back(it->second);
    }
    distinct = ids.size();
    return out;
}

double entropy(const std::vector<std::int64_t>& totals, double n) {
    double h = 0.0;
    for (auto c : totals) {
        if (c > 0) {
            const double p = static_cast<double>(c) / n;
            h -= p * std::log(p);
        }
    }
    return h;
}

}  // namespace

ContingencyTable contingency(std::span<const int> a, std::span<const int> b) {
    check_lengths(a, b);
    std::size_t ra = 0, cb = 0;
    const auto ea = encode(a, ra);
    const auto eb = encode(b, cb);
    ContingencyTable t;
    t.counts.assign(ra, std::vector<std::int64_t>(cb, 0));
    t.row_totals.assign(ra, 0);
    t.col_totals.assign(cb, 0);
    for (std::size_t i = 0; i < ea.size(); ++i) {
        ++t.counts[ea[i]][eb[i]];
        ++t.row_totals[ea[i]];
        ++t.col_totals[eb[i]];
    }
    t.n = static_cast<std::int64_t>(a.size());
    return t;
}

double nmi(std::span<const int> a, std::span<const int> b, NmiNormalization normalization) {
    const ContingencyTable t = contingency(a, b);
    const double n = static_cast<double>(t.n);
    // Terms are summed in sorted order so that nmi(a, b) == nmi(b, a) bitwise.
    std::vector<double> terms;
    for (std::size_t u = 0; u < t.rows(); ++u) {
        for (std::size_t v = 0; v < t.cols(); ++v) {
            const auto c = t.counts[u][v];
            if (c == 0) continue;
            const double pc = static_cast<double>(c);
            terms.push_back(pc / n *
                            std::log(pc * n / (static_cast<double>(t.row_totals[u]) *
                                               static_cast<double>(t.col_totals[v]))));
        }
    }
    std::sort(terms.begin(), terms.end());
    double mi = 0.0;
    for (double term : terms) mi += term;
    const double ha = entropy(t.row_totals, n);
    const double hb = entropy(t.col_totals, n);
    double denom = 0.0;
    switch (normalization) {
        case NmiNormalization::sqrt: denom = std::sqrt(ha * hb); break;
        case NmiNormalization::max: denom = std::max(ha, hb); break;
        case NmiNormalization::arithmetic: denom = 0.5 * (ha + hb); break;
    }
    if (!(denom > 0.0)) {
        return 0.0;
    }
    return std::clamp(std::max(mi, 0.0) / denom, 0.0, 1.0);
}

double ari(std::span<const int> a, std::span<const int> b) {
    check_lengths(a, b);
    if (a.size() < 2) {
        throw Error(ErrorKind::invalid_input, "adjusted Rand index needs at least two points");
    }
    const ContingencyTable t = contingency(a, b);
    // Integer pair counts keep the degeneracy test exact.
    auto c2 = [](std::int64_t m) { return m * (m - 1) / 2; };
    std::int64_t index = 0, sum_a = 0, sum_b = 0;
    for (const auto& row : t.counts) {
        for (auto c : row) index += c2(c);
    }
    for (auto c : t.row_totals) sum_a += c2(c);
    for (auto c : t.col_totals) sum_b += c2(c);
    const std::int64_t total = c2(t.n);
    // max - expected = ((sum_a + sum_b) total - 2 sum_a sum_b) / (2 total)
    __extension__ using wide = __int128;
    const wide span = static_cast<wide>(sum_a + sum_b) * total - static_cast<wide>(2 * sum_a) * sum_b;
    if (span == 0) {
        return 0.0;
    }
    // Scaling through by 2 total leaves a single rounding at the division.
    const wide num = 2 * (static_cast<wide>(index) * total - static_cast<wide>(sum_a) * sum_b);
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(span));
}

}  // namespace kpk
