#pragma once

// Statistics of an HVG degree distribution: the exponential decay rate with
// its confidence interval, quantile-based skewness and kurtosis, and the
// normalized Shannon entropy / discrete Fisher information pair.

#include "hvgplane/graph.hpp"
#include "hvgplane/systems.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hvgplane {

/// Decay rate of the white-noise degree law P(k) = (1/3)(2/3)^(k-2).
inline const double kLambdaCritical = std::log(1.5);

struct ScalingZone {
    std::uint32_t kappa_lo = 3;
    std::uint32_t kappa_hi = 20;

    ScalingZone() = default;
    ScalingZone(std::uint32_t lo, std::uint32_t hi) : kappa_lo(lo), kappa_hi(hi) {
        if (lo < 1) throw std::invalid_argument("scaling zone lower bound must be >= 1");
        if (hi <= lo) throw std::invalid_argument("scaling zone upper bound must exceed the lower bound");
    }
    friend bool operator==(const ScalingZone&, const ScalingZone&) = default;
};

/// [3,25] for chaotic systems, [3,20] for stochastic ones.
inline ScalingZone default_zone(SystemClass c) {
    return c == SystemClass::chaotic ? ScalingZone{3, 25} : ScalingZone{3, 20};
}

/// Parses "lo:hi".
inline ScalingZone parse_zone(std::string_view text) {
    const auto colon = text.find(':');
    auto parse = [](std::string_view part) {
        std::uint32_t v = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc() || ptr != part.data() + part.size() || part.empty())
            throw std::invalid_argument("zone must be written lo:hi with positive integers");
        return v;
    };
    if (colon == std::string_view::npos) throw std::invalid_argument("zone must be written lo:hi");
    return ScalingZone(parse(text.substr(0, colon)), parse(text.substr(colon + 1)));
}

struct ExponentialFit {
    double lambda = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double r_squared = 0.0;
    ScalingZone zone;  // after intersection with the observed support
    std::size_t n_points = 0;
};

/// Least-squares line through ln P(k) against k over the positive-probability
/// bins of `zone` (clipped to the support); lambda is minus the slope. The
/// 95% interval is symmetric, from the slope standard error with a Student-t
/// quantile on n_points - 2 degrees of freedom.
inline ExponentialFit fit_lambda(const DegreePDF& pdf, ScalingZone zone) {
    const std::uint32_t lo = std::max(zone.kappa_lo, pdf.support_min);
    const std::uint32_t hi = std::min(zone.kappa_hi, pdf.support_max);

    std::vector<double> ks, ys;
    for (std::uint32_t k = lo; k <= hi && lo <= hi; ++k) {
        const double p = pdf.at(k);
        if (p > 0.0) {
            ks.push_back(static_cast<double>(k));
            ys.push_back(std::log(p));
        }
    }
    const std::size_t m = ks.size();
    if (m < 3)
        throw std::domain_error("fewer than 3 usable bins in scaling zone [" + std::to_string(zone.kappa_lo) +
                                "," + std::to_string(zone.kappa_hi) + "]");

    const double md = static_cast<double>(m);
    double kbar = 0.0, ybar = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        kbar += ks[i];
        ybar += ys[i];
    }
    kbar /= md;
    ybar /= md;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double dk = ks[i] - kbar, dy = ys[i] - ybar;
        sxx += dk * dk;
        sxy += dk * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::domain_error("zero variance in degree values");

    const double slope = sxy / sxx;
    const double intercept = ybar - slope * kbar;
    double ssr = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = ys[i] - (intercept + slope * ks[i]);
        ssr += r * r;
    }

    ExponentialFit fit;
    fit.lambda = -slope;
    fit.n_points = m;
    fit.zone = ScalingZone(lo, hi);
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
    const double se = std::sqrt(ssr / (md - 2.0) / sxx);
    const boost::math::students_t t(md - 2.0);
    const double half = boost::math::quantile(boost::math::complement(t, 0.025)) * se;
    fit.ci_lo = fit.lambda - half;
    fit.ci_hi = fit.lambda + half;
    return fit;
}

enum class LambdaClass { chaotic, uncorrelated, correlated };

inline std::string_view to_string(LambdaClass c) {
    switch (c) {
        case LambdaClass::chaotic: return "chaotic";
        case LambdaClass::uncorrelated: return "uncorrelated";
        case LambdaClass::correlated: return "correlated";
    }
    return "?";
}

/// Places the confidence interval relative to ln(3/2).
inline LambdaClass classify_lambda(const ExponentialFit& fit) {
    if (fit.ci_hi < kLambdaCritical) return LambdaClass::chaotic;
    if (fit.ci_lo > kLambdaCritical) return LambdaClass::correlated;
    return LambdaClass::uncorrelated;
}

namespace detail {

inline void check_eta(double eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("quantile order must lie in (0,1)");
}

// Smallest i in [1, n] with i / n >= eta, evaluated the way the empirical
// CDF is.
inline std::size_t quantile_rank(std::size_t n, double eta) {
    const double nd = static_cast<double>(n);
    auto i = static_cast<std::size_t>(std::ceil(eta * nd));
    i = std::clamp<std::size_t>(i, 1, n);
    while (i > 1 && static_cast<double>(i - 1) / nd >= eta) --i;
    while (i < n && static_cast<double>(i) / nd < eta) ++i;
    return i;
}

}  // namespace detail

/// q(eta) = min{ x : F(x) >= eta } over the empirical CDF of `data`.
inline double sample_quantile(std::span<const double> data, double eta) {
    if (data.empty()) throw std::invalid_argument("empty data");
    detail::check_eta(eta);
    std::vector<double> sorted(data.begin(), data.end());
    const std::size_t rank = detail::quantile_rank(sorted.size(), eta);
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1), sorted.end());
    return sorted[rank - 1];
}

/// Same definition over a degree sequence, by counting.
inline std::uint32_t degree_quantile(const DegreeSequence& seq, double eta) {
    if (seq.degrees.empty()) throw std::invalid_argument("empty data");
    detail::check_eta(eta);
    const DegreePDF pdf = degree_pdf(seq);
    const std::size_t rank = detail::quantile_rank(seq.size(), eta);
    std::uint64_t cum = 0;
    for (std::size_t b = 0; b < pdf.counts.size(); ++b) {
        cum += pdf.counts[b];
        if (cum >= rank) return pdf.support_min + static_cast<std::uint32_t>(b);
    }
    return pdf.support_max;
}

class DegenerateSpread : public std::domain_error {
public:
    DegenerateSpread() : std::domain_error("degenerate spread: q(1-xi) == q(xi)") {}
};

/// (q(1-xi) + q(xi) - 2 q(1/2)) / (q(1-xi) - q(xi)) for any quantile function q.
template <class QuantileFn>
double quantile_skewness_of(QuantileFn&& q, double xi) {
    if (!(xi > 0.0 && xi < 0.5)) throw std::invalid_argument("xi must lie in (0, 1/2)");
    const double hi = q(1.0 - xi), lo = q(xi), med = q(0.5);
    if (!(hi > lo)) throw DegenerateSpread();
    return (hi + lo - 2.0 * med) / (hi - lo);
}

/// (q(1-rho) - q(rho)) / (q(1-xi) - q(xi)) for any quantile function q.
template <class QuantileFn>
double quantile_kurtosis_of(QuantileFn&& q, double xi, double rho) {
    if (!(rho > 0.0 && rho < xi && xi < 0.5)) throw std::invalid_argument("quantile orders must satisfy 0 < rho < xi < 1/2");
    const double hi = q(1.0 - xi), lo = q(xi);
    if (!(hi > lo)) throw DegenerateSpread();
    return (q(1.0 - rho) - q(rho)) / (hi - lo);
}

inline constexpr double kDefaultXi = 0.1;
inline constexpr double kDefaultRho = 0.01;

inline double quantile_skewness(const DegreeSequence& seq, double xi = kDefaultXi) {
    return quantile_skewness_of([&](double eta) { return double(degree_quantile(seq, eta)); }, xi);
}

inline double quantile_kurtosis(const DegreeSequence& seq, double xi = kDefaultXi, double rho = kDefaultRho) {
    return quantile_kurtosis_of([&](double eta) { return double(degree_quantile(seq, eta)); }, xi, rho);
}

struct QuantileStats {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double xi = kDefaultXi;
    double rho = kDefaultRho;
};

inline QuantileStats quantile_stats(const DegreeSequence& seq, double xi = kDefaultXi, double rho = kDefaultRho) {
    return {quantile_skewness(seq, xi), quantile_kurtosis(seq, xi, rho), xi, rho};
}

struct ShannonEntropy {
    double raw = 0.0;         // nats
    double normalized = 0.0;  // raw / ln(number of bins)
};

/// -sum p ln p (with 0 ln 0 = 0), normalized by the log of the number of states.
inline ShannonEntropy shannon_entropy(std::span<const double> p) {
    ShannonEntropy s;
    for (double v : p)
        if (v > 0.0) s.raw -= v * std::log(v);
    s.raw = std::max(s.raw, 0.0);
    s.normalized = p.size() > 1 ? std::clamp(s.raw / std::log(static_cast<double>(p.size())), 0.0, 1.0) : 0.0;
    return s;
}

inline ShannonEntropy shannon_entropy(const DegreePDF& pdf) { return shannon_entropy(std::span(pdf.probabilities)); }

/// F0 * sum_i (sqrt(p_{i+1}) - sqrt(p_i))^2 with F0 = 1 when all mass sits in
/// the first or the last state and 1/2 otherwise.
inline double fisher_information(std::span<const double> p) {
    if (p.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        const double d = std::sqrt(p[i + 1]) - std::sqrt(p[i]);
        sum += d * d;
    }
    const bool edge_delta = p.front() == 1.0 || p.back() == 1.0;
    return std::clamp((edge_delta ? 1.0 : 0.5) * sum, 0.0, 1.0);
}

/// Fisher information of a degree distribution over the degree domain
/// [1, support_max]: bins below the observed minimum enter as zero mass, so
/// the value does not jump with whether an endpoint node has degree 1.
inline double fisher_information(const DegreePDF& pdf) {
    if (pdf.support_min <= 1) return fisher_information(std::span(pdf.probabilities));
    std::vector<double> padded(pdf.support_min - 1, 0.0);
    padded.insert(padded.end(), pdf.probabilities.begin(), pdf.probabilities.end());
    return fisher_information(std::span(padded));
}

struct InfoPoint {
    double shannon_raw = 0.0;
    double shannon_normalized = 0.0;
    double shannon_rel_wgn = 0.0;  // raw entropy over that of white Gaussian noise
    double fisher = 0.0;
    std::string label;
};

inline InfoPoint info_point(const DegreePDF& pdf, double s_wgn_reference, std::string label = {}) {
    if (!(s_wgn_reference > 0.0)) throw std::invalid_argument("white-noise reference entropy must be positive");
    const ShannonEntropy s = shannon_entropy(pdf);
    return {s.raw, s.normalized, s.raw / s_wgn_reference, fisher_information(pdf), std::move(label)};
}

/// Mean raw HVG entropy of white Gaussian noise of length n, over an ensemble.
/// Immutable once built.
class WgnReference {
public:
    static constexpr std::size_t kDefaultReplicates = 10;
    static constexpr std::uint64_t kDefaultSeed = 0x5eed0f11ULL;

    explicit WgnReference(std::size_t n, std::size_t replicates = kDefaultReplicates,
                          std::uint64_t seed = kDefaultSeed)
        : n_(n), replicates_(replicates) {
        if (replicates == 0) throw std::invalid_argument("white-noise reference needs at least one replicate");
        double total = 0.0;
        for (std::size_t r = 0; r < replicates; ++r) {
            const TimeSeries wgn = gen_fgn(0.5, n, seed + r);
            total += shannon_entropy(degree_pdf(build_hvg(wgn))).raw;
        }
        entropy_ = total / static_cast<double>(replicates);
    }

    double entropy() const noexcept { return entropy_; }
    std::size_t length() const noexcept { return n_; }
    std::size_t replicates() const noexcept { return replicates_; }

private:
    std::size_t n_;
    std::size_t replicates_;
    double entropy_ = 0.0;
};

}  // namespace hvgplane
