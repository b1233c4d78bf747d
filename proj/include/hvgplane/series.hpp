#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hvgplane {

inline constexpr const char* kVersion = "1.0.0";

/// Raised when a chaotic orbit leaves the finite reals.
class OrbitEscape : public std::runtime_error {
public:
    OrbitEscape(const std::string& system, std::size_t iteration)
        : std::runtime_error(system + ": orbit escaped to a non-finite value at iteration " +
                             std::to_string(iteration)),
          iteration_(iteration) {}

    std::size_t iteration() const noexcept { return iteration_; }

private:
    std::size_t iteration_;
};

/// Identifies one generator run: which system, with which parameters, which
/// coordinate of a multi-dimensional map, and (for random systems) the seed.
struct SystemDescriptor {
    std::string id;
    std::map<std::string, double> params;
    std::size_t coordinate = 0;
    std::optional<std::uint64_t> seed;

    double param(const std::string& name, double fallback) const {
        auto it = params.find(name);
        return it == params.end() ? fallback : it->second;
    }
    bool has_param(const std::string& name) const { return params.count(name) != 0; }

    friend bool operator==(const SystemDescriptor&, const SystemDescriptor&) = default;
};

struct Provenance {
    SystemDescriptor system;
    std::size_t transient = 0;
};

/// A finite real-valued series of at least two samples plus where it came from.
class TimeSeries {
public:
    TimeSeries() = default;
    TimeSeries(std::vector<double> values, Provenance provenance)
        : values_(std::move(values)), provenance_(std::move(provenance)) {
        validate(values_);
    }

    static void validate(const std::vector<double>& values) {
        if (values.size() < 2) throw std::invalid_argument("series too short");
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!std::isfinite(values[i]))
                throw std::invalid_argument("non-finite sample at index " + std::to_string(i));
        }
    }

    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const Provenance& provenance() const noexcept { return provenance_; }

private:
    std::vector<double> values_;
    Provenance provenance_;
};

// Generators draw from mt19937_64 and convert bits to reals by hand, so a
// (descriptor, seed) pair yields identical samples across standard libraries.
using Engine = std::mt19937_64;

/// Uniform on the open interval (0, 1).
inline double uniform_open(Engine& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal pair via Box-Muller.
inline std::pair<double, double> normal_pair(Engine& rng) {
    const double u1 = uniform_open(rng);
    const double u2 = uniform_open(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace hvgplane
