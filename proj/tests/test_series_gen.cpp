#include "hvgplane/systems.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

using namespace hvgplane;
using Catch::Approx;

namespace {

// Periodogram at frequency index j by direct summation (Goertzel), independent
// of the library's FFT path.
double periodogram(const std::vector<double>& x, std::size_t j) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(x.size());
    const double c = 2.0 * std::cos(w);
    double s1 = 0.0, s2 = 0.0;
    for (double v : x) {
        const double s0 = v + c * s1 - s2;
        s2 = s1;
        s1 = s0;
    }
    const double re = s1 - s2 * std::cos(w);
    const double im = s2 * std::sin(w);
    return re * re + im * im;
}

// Log-log slope of the band-averaged periodogram over j in [lo, hi].
double spectral_slope(const std::vector<double>& x, std::size_t lo, std::size_t hi) {
    const int bins = 24;
    const double llo = std::log(double(lo)), lhi = std::log(double(hi));
    std::vector<double> sum(bins, 0.0), cnt(bins, 0.0), lf(bins, 0.0);
    for (std::size_t j = lo; j <= hi; j += 3) {
        const int b = std::min(bins - 1, int((std::log(double(j)) - llo) / (lhi - llo) * bins));
        sum[b] += periodogram(x, j);
        lf[b] += std::log(double(j));
        cnt[b] += 1.0;
    }
    std::vector<double> xs, ys;
    for (int b = 0; b < bins; ++b)
        if (cnt[b] > 0) {
            xs.push_back(lf[b] / cnt[b]);
            ys.push_back(std::log(sum[b] / cnt[b]));
        }
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / double(xs.size());
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / double(ys.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

double autocov_zero_mean(const std::vector<double>& x, std::size_t lag) {
    double s = 0.0;
    for (std::size_t t = 0; t + lag < x.size(); ++t) s += x[t] * x[t + lag];
    return s / static_cast<double>(x.size() - lag);
}

}  // namespace

TEST_CASE("generators are pure functions of descriptor and seed", "[series][determinism]") {
    CHECK(gen_powerlaw_noise(1.0, 1000, 42).values() == gen_powerlaw_noise(1.0, 1000, 42).values());
    CHECK(gen_fgn(0.7, 1000, 42).values() == gen_fgn(0.7, 1000, 42).values());
    CHECK(gen_fbm(0.7, 1000, 42).values() == gen_fbm(0.7, 1000, 42).values());
    CHECK(schuster_seeded(1.5, 9, 1000, 100).values() == schuster_seeded(1.5, 9, 1000, 100).values());
    CHECK(gen_powerlaw_noise(1.0, 1000, 42).values() != gen_powerlaw_noise(1.0, 1000, 43).values());
    CHECK(gen_fgn(0.7, 1000, 1).values() != gen_fgn(0.7, 1000, 2).values());

    SystemDescriptor henon{"henon", {}, 1, std::nullopt};
    CHECK(generate(henon, 500).values() == generate(henon, 500).values());
}

TEST_CASE("every registered map stays inside its invariant box", "[series][maps]") {
    for (const auto& spec : map_registry()) {
        for (std::size_t c = 0; c < spec.dim; ++c) {
            SystemDescriptor d{std::string(spec.id), {}, c, std::uint64_t{3}};
            const TimeSeries ts = generate(d, 20000);
            INFO(spec.id << " coordinate " << c);
            for (double v : ts.values()) {
                REQUIRE(v >= spec.lo[c]);
                REQUIRE(v <= spec.hi[c]);
            }
        }
    }
}

TEST_CASE("registry contains the catalogue", "[series][maps]") {
    CHECK(map_registry().size() == 28);
    for (const char* id : {"logistic", "tent", "sine", "cusp", "henon", "lozi", "delayed_logistic", "tinkerbell",
                           "burgers", "holmes", "ikeda", "sinai", "dissipative_standard", "arnold_cat", "lcg"})
        CHECK(find_map(id) != nullptr);
    CHECK_THROWS_AS(require_map("lorenz"), std::invalid_argument);
    CHECK_THROWS_WITH(generate(SystemDescriptor{"nope", {}, 0, {}}, 10), Catch::Matchers::ContainsSubstring("unknown"));
}

TEST_CASE("logistic map", "[series][maps]") {
    SECTION("x0 = 0.5 collapses to the fixed point 0, so it is rejected") {
        MapState s{0.5};
        const double r = 4.0;
        detail::logistic(s, std::span(&r, 1));
        CHECK(s[0] == 1.0);
        detail::logistic(s, std::span(&r, 1));
        CHECK(s[0] == 0.0);
        detail::logistic(s, std::span(&r, 1));
        CHECK(s[0] == 0.0);
        for (double x0 : {0.0, 0.5, 1.0})
            CHECK_THROWS_AS(iterate_map(SystemDescriptor{"logistic", {{"x0", x0}}, 0, {}}, 10, 0),
                            std::invalid_argument);
    }
    SECTION("orbit from x0 = 0.1 stays in [0, 1]") {
        const TimeSeries ts = iterate_map(SystemDescriptor{"logistic", {{"x0", 0.1}}, 0, {}}, 100000, 100000);
        CHECK(ts.size() == 100000);
        for (double v : ts.values()) REQUIRE((v >= 0.0 && v <= 1.0));
    }
    SECTION("jitter needs a seed and changes the orbit") {
        CHECK_THROWS(iterate_map(SystemDescriptor{"logistic", {{"jitter", 1e-3}}, 0, {}}, 10));
        const auto a = iterate_map(SystemDescriptor{"logistic", {{"jitter", 1e-3}}, 0, 1}, 100).values();
        const auto b = iterate_map(SystemDescriptor{"logistic", {{"jitter", 1e-3}}, 0, 2}, 100).values();
        CHECK(a != b);
    }
}

TEST_CASE("henon orbit is bounded", "[series][maps]") {
    for (std::size_t c : {0u, 1u}) {
        const TimeSeries ts = generate(SystemDescriptor{"henon", {}, c, {}}, 100000);
        double m = 0.0;
        for (double v : ts.values()) m = std::max(m, std::abs(v));
        CHECK(m < 1.5);
    }
}

TEST_CASE("map preconditions", "[series][maps]") {
    CHECK_THROWS_WITH(generate(SystemDescriptor{"henon", {}, 2, {}}, 10), Catch::Matchers::ContainsSubstring("coordinate"));
    CHECK_THROWS_WITH(generate(SystemDescriptor{"henon", {{"q", 1}}, 0, {}}, 10),
                      Catch::Matchers::ContainsSubstring("unknown parameter"));
    CHECK_THROWS_WITH(generate(SystemDescriptor{"logistic", {}, 0, {}}, 1), Catch::Matchers::ContainsSubstring("too short"));
    // r > 4 pushes the orbit out of [0, 1] and on to -infinity
    CHECK_THROWS_AS(generate(SystemDescriptor{"logistic", {{"r", 4.5}}, 0, {}}, 2000, 0), OrbitEscape);
    try {
        generate(SystemDescriptor{"logistic", {{"r", 4.5}}, 0, {}}, 2000, 0);
    } catch (const OrbitEscape& e) {
        CHECK(e.iteration() > 0);
    }
}

TEST_CASE("schuster map", "[series][schuster]") {
    SECTION("one step") {
        CHECK(schuster(2.0, 0.5, 2, 0)[0] == 0.75);
        // oracle: (0.9 + 0.9^1.25) mod 1 at 40 digits
        CHECK(schuster(1.25, 0.9, 2, 0)[0] == Approx(0.7766033717827671).epsilon(1e-14));
    }
    SECTION("iterates stay in [0, 1)") {
        for (double z : {1.25, 1.5, 1.75, 2.0}) {
            const TimeSeries ts = schuster_seeded(z, 11, 50000, 1000);
            for (double v : ts.values()) REQUIRE((v >= 0.0 && v < 1.0));
        }
    }
    SECTION("a start near zero gives a long laminar phase") {
        const TimeSeries ts = schuster(2.0, 1e-6, 1000, 0);
        CHECK(std::all_of(ts.values().begin(), ts.values().begin() + 500, [](double v) { return v < 1e-3; }));
    }
    SECTION("preconditions") {
        CHECK_THROWS_AS(schuster(1.0, 0.5, 10, 0), std::invalid_argument);
        CHECK_THROWS_AS(schuster(2.0, 0.0, 10, 0), std::invalid_argument);
        CHECK_THROWS_AS(schuster(2.0, 1.0, 10, 0), std::invalid_argument);
        CHECK_THROWS_WITH(generate(SystemDescriptor{"schuster", {{"z", 2.0}}, 0, {}}, 10),
                          Catch::Matchers::ContainsSubstring("seed"));
        CHECK_NOTHROW(schuster(3.5, 0.3, 10, 0));  // any z > 1 is accepted
    }
}

TEST_CASE("power-law noise", "[series][noise]") {
    SECTION("preconditions") {
        CHECK_THROWS_AS(gen_powerlaw_noise(-0.1, 100, 1), std::invalid_argument);
        CHECK_THROWS_AS(gen_powerlaw_noise(2.6, 100, 1), std::invalid_argument);
        CHECK_THROWS_AS(gen_powerlaw_noise(1.0, 3, 1), std::invalid_argument);
        CHECK_NOTHROW(gen_powerlaw_noise(1.0, 4, 1));
        CHECK_NOTHROW(gen_powerlaw_noise(1.0, 1001, 1));  // odd, not a power of two
    }
    SECTION("output is standardized") {
        const auto x = gen_powerlaw_noise(1.5, 10007, 5).values();
        const double mean = std::accumulate(x.begin(), x.end(), 0.0) / double(x.size());
        double var = 0.0;
        for (double v : x) var += (v - mean) * (v - mean);
        CHECK(std::abs(mean) < 1e-12);
        CHECK(var / double(x.size()) == Approx(1.0).epsilon(1e-12));
    }
    SECTION("k = 0 is uncorrelated at lag 1") {
        const auto x = gen_powerlaw_noise(0.0, 100000, 8).values();
        CHECK(std::abs(autocov_zero_mean(x, 1)) < 3.0 / std::sqrt(100000.0));
    }
    SECTION("periodogram slope is -k") {
        const std::size_t n = 1u << 16;
        for (double k : {0.0, 1.0, 2.0}) {
            const auto x = gen_powerlaw_noise(k, n, 2024).values();
            const double slope = spectral_slope(x, 16, n / 4);
            INFO("k = " << k << ", slope = " << slope);
            CHECK(std::abs(slope + k) <= 0.1);
        }
    }
}

TEST_CASE("fractional Gaussian noise", "[series][noise]") {
    SECTION("theoretical autocovariance") {
        CHECK(fgn_autocovariance(0.5, 1) == 0.0);
        CHECK(fgn_autocovariance(0.5, 7) == 0.0);
        CHECK(fgn_autocovariance(0.9, 1) == Approx(0.5 * (std::pow(2.0, 1.8) - 2.0)).epsilon(1e-15));
        CHECK(fgn_autocovariance(0.9, 1) == Approx(0.7411).margin(5e-5));
        CHECK(fgn_autocovariance(0.1, 1) == Approx(0.5 * (std::pow(2.0, 0.2) - 2.0)).epsilon(1e-15));
        CHECK(fgn_autocovariance(0.1, 1) == Approx(-0.42565).margin(5e-6));
    }
    SECTION("sample autocovariance at lags 1..5 within 3 standard errors") {
        const std::size_t n = 20000, reps = 60;
        for (double h : {0.3, 0.7}) {
            for (std::size_t lag = 1; lag <= 5; ++lag) {
                double s = 0.0, ss = 0.0;
                for (std::size_t r = 0; r < reps; ++r) {
                    const double c = autocov_zero_mean(gen_fgn(h, n, 100 + r).values(), lag);
                    s += c;
                    ss += c * c;
                }
                const double mean = s / double(reps);
                const double se = std::sqrt((ss / double(reps) - mean * mean) / double(reps - 1));
                INFO("H = " << h << ", lag = " << lag << ", mean = " << mean << ", se = " << se);
                CHECK(std::abs(mean - fgn_autocovariance(h, lag)) <= 3.0 * se);
            }
        }
    }
    SECTION("H = 0.9 lag-1 correlation from a single series") {
        const auto x = gen_fgn(0.9, 100000, 1).values();
        CHECK(autocov_zero_mean(x, 1) / autocov_zero_mean(x, 0) == Approx(0.7411).margin(0.02));
    }
    SECTION("H = 0.1 is anti-persistent") {
        const auto x = gen_fgn(0.1, 100000, 1).values();
        CHECK(autocov_zero_mean(x, 1) / autocov_zero_mean(x, 0) == Approx(-0.42565).margin(0.02));
    }
    SECTION("preconditions") {
        for (double h : {0.0, 1.0, -0.2, 1.5})
            CHECK_THROWS_WITH(gen_fgn(h, 100, 1), "hurst must be in (0,1)");
        CHECK_THROWS_WITH(gen_fbm(1.5, 100, 1), "hurst must be in (0,1)");
    }
}

TEST_CASE("fractional Brownian motion", "[series][noise]") {
    SECTION("first value is the first increment") {
        CHECK(gen_fbm(0.7, 100, 3)[0] == gen_fgn(0.7, 100, 3)[0]);
    }
    SECTION("H = 0.5 variance grows linearly with slope 1") {
        // Var[B(t + tau) - B(t)] pooled over 100 paths and every origin t
        const std::size_t n = 100000, paths = 100;
        const std::vector<std::size_t> taus = {1, 10, 100, 300, 1000};
        std::vector<double> var(taus.size(), 0.0), cnt(taus.size(), 0.0);
        for (std::size_t p = 0; p < paths; ++p) {
            const auto b = gen_fbm(0.5, n, 500 + p).values();
            for (std::size_t i = 0; i < taus.size(); ++i)
                for (std::size_t t = 0; t + taus[i] < n; ++t) {
                    const double d = b[t + taus[i]] - b[t];
                    var[i] += d * d;
                    cnt[i] += 1.0;
                }
        }
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < taus.size(); ++i) {
            var[i] /= cnt[i];
            sxy += var[i] * double(taus[i]);
            sxx += double(taus[i]) * double(taus[i]);
        }
        const double slope = sxy / sxx;
        INFO("slope = " << slope);
        CHECK(std::abs(slope - 1.0) <= 0.1);
        CHECK(var[0] == Approx(1.0).margin(0.01));
    }
}

TEST_CASE("time series validation", "[series]") {
    CHECK_THROWS_WITH(TimeSeries({1.0}, Provenance{}), "series too short");
    CHECK_THROWS_WITH(TimeSeries({1.0, NAN, 2.0}, Provenance{}), "non-finite sample at index 1");
    CHECK_THROWS_WITH(generate(SystemDescriptor{"powerlaw", {{"k", 1.0}}, 0, {}}, 100),
                      Catch::Matchers::ContainsSubstring("seed"));
}

TEST_CASE("labels", "[series]") {
    CHECK(system_label(SystemDescriptor{"holmes", {}, 0, {}}) == "holmes (X)");
    CHECK(system_label(SystemDescriptor{"powerlaw", {{"k", 1.75}}, 0, 1}) == "powerlaw k=1.75");
    CHECK(system_label(SystemDescriptor{"fbm", {{"hurst", 0.9}}, 0, 1}) == "fbm H=0.9");
    CHECK(system_label(SystemDescriptor{"logistic", {}, 0, {}}) == "logistic");
}
