#pragma once

// Seeded stochastic generators: f^-k power-law noise shaped from uniform
// white noise, and exact fractional Gaussian noise / fractional Brownian
// motion by circulant embedding (Davies-Harte).

#include "hvgplane/fft.hpp"
#include "hvgplane/series.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace hvgplane {

inline constexpr double kMaxPowerLawExponent = 2.5;

/// Autocovariance of unit-variance fGn at integer lag k.
inline double fgn_autocovariance(double hurst, std::size_t lag) {
    const double h2 = 2.0 * hurst;
    const double k = static_cast<double>(lag);
    if (lag == 0) return 1.0;
    return 0.5 * (std::pow(k + 1.0, h2) - 2.0 * std::pow(k, h2) + std::pow(k - 1.0, h2));
}

namespace detail {

inline void check_hurst(double hurst) {
    if (!(hurst > 0.0 && hurst < 1.0)) throw std::invalid_argument("hurst must be in (0,1)");
}

inline void standardize(std::vector<double>& x) {
    const double n = static_cast<double>(x.size());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double ss = 0.0;
    for (double& v : x) {
        v -= mean;
        ss += v * v;
    }
    const double sd = std::sqrt(ss / n);
    if (sd > 0.0)
        for (double& v : x) v /= sd;
}

}  // namespace detail

/// Noise with power spectrum ~ f^-k.
///
/// Uniform samples on (-0.5, 0.5) are transformed, the coefficient at
/// frequency f = j/n is scaled by f^(-k/2) (the DC term is zeroed), and the
/// Hermitian inverse gives a real series, standardized to zero mean and unit
/// variance. Any n >= 4 is accepted.
inline TimeSeries gen_powerlaw_noise(double k, std::size_t n, std::uint64_t seed) {
    if (!(k >= 0.0)) throw std::invalid_argument("k must be non-negative");
    if (k > kMaxPowerLawExponent) throw std::invalid_argument("k must not exceed 2.5");
    if (n < 4) throw std::invalid_argument("series too short: power-law noise needs n >= 4");

    Engine rng(seed);
    std::vector<double> white(n);
    for (double& v : white) v = uniform_open(rng) - 0.5;

    auto spectrum = fft::rfft(std::move(white));
    spectrum[0] = 0.0;
    const double nd = static_cast<double>(n);
    for (std::size_t j = 1; j < spectrum.size(); ++j)
        spectrum[j] *= std::pow(static_cast<double>(j) / nd, -k / 2.0);
    // The Nyquist bin of an even-length real transform is already real.
    auto out = fft::irfft(std::move(spectrum), n);
    detail::standardize(out);
    return TimeSeries(std::move(out), Provenance{{"powerlaw", {{"k", k}}, 0, seed}, 0});
}

/// Exact unit-variance fractional Gaussian noise.
inline TimeSeries gen_fgn(double hurst, std::size_t n, std::uint64_t seed) {
    detail::check_hurst(hurst);
    if (n < 2) throw std::invalid_argument("series too short");

    // First row of the 2n circulant that embeds the n x n Toeplitz covariance.
    const std::size_t m = 2 * n;
    std::vector<std::complex<double>> row(m);
    for (std::size_t j = 0; j <= n; ++j) row[j] = fgn_autocovariance(hurst, j);
    for (std::size_t j = n + 1; j < m; ++j) row[j] = row[m - j];
    fft::dft(row);

    double max_eig = 0.0;
    for (const auto& c : row) max_eig = std::max(max_eig, c.real());

    Engine rng(seed);
    std::vector<std::complex<double>> w(m);
    for (std::size_t j = 0; j < m; ++j) {
        double eig = row[j].real();
        if (eig < 0.0) {
            if (eig < -1e-9 * max_eig) throw std::runtime_error("fgn: circulant embedding not positive");
            eig = 0.0;
        }
        const auto [a, b] = normal_pair(rng);
        w[j] = std::sqrt(eig / static_cast<double>(m)) * std::complex<double>(a, b);
    }
    fft::dft(w);

    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = w[j].real();
    return TimeSeries(std::move(out), Provenance{{"fgn", {{"hurst", hurst}}, 0, seed}, 0});
}

/// Fractional Brownian motion B(1..n) with the implicit anchor B(0) = 0.
inline TimeSeries gen_fbm(double hurst, std::size_t n, std::uint64_t seed) {
    detail::check_hurst(hurst);
    auto increments = gen_fgn(hurst, n, seed).values();
    std::partial_sum(increments.begin(), increments.end(), increments.begin());
    return TimeSeries(std::move(increments), Provenance{{"fbm", {{"hurst", hurst}}, 0, seed}, 0});
}

}  // namespace hvgplane
