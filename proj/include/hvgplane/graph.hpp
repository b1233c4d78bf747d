#pragma once

// Horizontal visibility graph of a time series.
//
// Nodes i < j are linked iff x_i > x_n and x_j > x_n for every i < n < j.
// The inequality is strict, so equal intermediate heights block visibility.

#include "hvgplane/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hvgplane {

struct DegreeSequence {
    std::vector<std::uint32_t> degrees;

    std::size_t size() const noexcept { return degrees.size(); }
    std::uint32_t operator[](std::size_t i) const { return degrees[i]; }
    std::uint64_t degree_sum() const {
        return std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0});
    }
};

using Edge = std::pair<std::size_t, std::size_t>;

namespace detail {
struct NoEdgeSink {
    void operator()(std::size_t, std::size_t) const noexcept {}
};
}  // namespace detail

/// Builds the HVG in one left-to-right pass over a stack of indices whose
/// values are strictly decreasing (the nodes not yet occluded). Each index
/// is pushed and popped at most once. `on_edge(i, j)` sees every link, i < j.
template <class EdgeSink = detail::NoEdgeSink>
DegreeSequence build_hvg(std::span<const double> x, EdgeSink&& on_edge = {}) {
    if (x.size() < 2) throw std::invalid_argument("series too short");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i])) throw std::invalid_argument("non-finite sample at index " + std::to_string(i));

    DegreeSequence out;
    out.degrees.assign(x.size(), 0);
    auto& deg = out.degrees;
    std::vector<std::size_t> stack;
    stack.reserve(64);

    for (std::size_t j = 0; j < x.size(); ++j) {
        while (!stack.empty() && x[stack.back()] < x[j]) {
            const std::size_t i = stack.back();
            ++deg[i];
            ++deg[j];
            on_edge(i, j);
            stack.pop_back();
        }
        if (!stack.empty()) {
            const std::size_t i = stack.back();
            ++deg[i];
            ++deg[j];
            on_edge(i, j);
            if (x[i] == x[j]) stack.pop_back();
        }
        stack.push_back(j);
    }
    return out;
}

inline DegreeSequence build_hvg(const TimeSeries& series) { return build_hvg(std::span(series.values())); }

/// Full edge list, 0-indexed, in discovery order.
inline std::vector<Edge> hvg_edges(std::span<const double> x) {
    std::vector<Edge> edges;
    edges.reserve(2 * x.size());
    build_hvg(x, [&](std::size_t i, std::size_t j) { edges.emplace_back(i, j); });
    return edges;
}

/// Probability mass over the contiguous degree range [support_min, support_max].
///
/// Empirical distributions keep their per-degree counts; distributions built
/// from probabilities (analytic laws) have empty `counts` and zero `n_nodes`.
struct DegreePDF {
    std::uint32_t support_min = 0;
    std::uint32_t support_max = 0;
    std::vector<std::uint64_t> counts;
    std::vector<double> probabilities;
    std::uint64_t n_nodes = 0;

    std::size_t bins() const noexcept { return probabilities.size(); }
    double at(std::uint32_t kappa) const {
        if (kappa < support_min || kappa > support_max) return 0.0;
        return probabilities[kappa - support_min];
    }

    /// Normalizes `weights` over [kappa_min, kappa_min + size) and trims
    /// zero-mass bins at either end.
    static DegreePDF from_probabilities(std::uint32_t kappa_min, std::vector<double> weights) {
        if (kappa_min < 1) throw std::invalid_argument("support_min must be >= 1");
        double total = 0.0;
        for (double w : weights) {
            if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("probabilities must be finite and >= 0");
            total += w;
        }
        if (!(total > 0.0)) throw std::invalid_argument("probabilities must have positive mass");
        std::size_t first = 0, last = weights.size() - 1;
        while (weights[first] == 0.0) ++first;
        while (weights[last] == 0.0) --last;
        DegreePDF pdf;
        pdf.support_min = kappa_min + static_cast<std::uint32_t>(first);
        pdf.support_max = kappa_min + static_cast<std::uint32_t>(last);
        pdf.probabilities.assign(weights.begin() + static_cast<std::ptrdiff_t>(first),
                                 weights.begin() + static_cast<std::ptrdiff_t>(last) + 1);
        for (double& p : pdf.probabilities) p /= total;
        return pdf;
    }
};

/// Histogram of a degree sequence over its contiguous support, zero-count
/// gaps retained.
inline DegreePDF degree_pdf(const DegreeSequence& seq) {
    if (seq.degrees.empty()) throw std::invalid_argument("empty degree sequence");
    const auto [lo, hi] = std::minmax_element(seq.degrees.begin(), seq.degrees.end());
    DegreePDF pdf;
    pdf.support_min = *lo;
    pdf.support_max = *hi;
    if (pdf.support_min < 1) throw std::invalid_argument("degree sequence contains an isolated node");
    pdf.counts.assign(pdf.support_max - pdf.support_min + 1, 0);
    for (std::uint32_t d : seq.degrees) ++pdf.counts[d - pdf.support_min];
    pdf.n_nodes = seq.degrees.size();
    pdf.probabilities.resize(pdf.counts.size());
    const double n = static_cast<double>(pdf.n_nodes);
    std::transform(pdf.counts.begin(), pdf.counts.end(), pdf.probabilities.begin(),
                   [n](std::uint64_t c) { return static_cast<double>(c) / n; });
    return pdf;
}

}  // namespace hvgplane
