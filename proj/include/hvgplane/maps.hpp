#pragma once

// Deterministic chaotic maps.
//
// Every map is a registry entry: its update rule, canonical parameters, a
// default initial condition (in the basin, near the attractor, or in the
// chaotic sea) and a box that the post-transient orbit must stay inside.
// Parameters and initial conditions follow Sprott, "Chaos and Time-Series
// Analysis" (2003), appendix A, unless a comment says otherwise.

#include "hvgplane/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hvgplane {

inline constexpr std::size_t kMaxMapDim = 3;
inline constexpr std::size_t kDefaultTransient = 100000;

using MapState = std::array<double, kMaxMapDim>;
using MapRule = void (*)(MapState& s, std::span<const double> p);

enum class MapFamily { noninvertible, dissipative, conservative, intermittent };

struct MapSpec {
    std::string_view id;
    int number;  // position in the 27-map catalogue; 28 for Schuster
    std::string_view name;
    MapFamily family;
    std::size_t dim;
    std::vector<std::string> param_names;
    std::vector<double> param_defaults;
    MapState initial;
    MapState lo;  // invariant box, coordinate-wise
    MapState hi;
    MapRule step;
    bool (*degenerate)(const MapState&) = nullptr;
};

namespace detail {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double wrap(double v, double period) {
    double r = v - period * std::floor(v / period);
    return r >= period ? 0.0 : r;
}

inline void logistic(MapState& s, std::span<const double> p) { s[0] = p[0] * s[0] * (1.0 - s[0]); }
inline void sine(MapState& s, std::span<const double> p) { s[0] = p[0] * std::sin(std::numbers::pi * s[0]); }
inline void tent(MapState& s, std::span<const double> p) { s[0] = p[0] * std::min(s[0], 1.0 - s[0]); }
inline void lcg(MapState& s, std::span<const double> p) { s[0] = std::fmod(p[0] * s[0] + p[1], p[2]); }
inline void cubic(MapState& s, std::span<const double> p) { s[0] = p[0] * s[0] * (1.0 - s[0] * s[0]); }
inline void ricker(MapState& s, std::span<const double> p) { s[0] = p[0] * s[0] * std::exp(-s[0]); }
inline void gauss(MapState& s, std::span<const double>) {
    s[0] = s[0] == 0.0 ? 0.0 : wrap(1.0 / s[0], 1.0);
}
inline void cusp(MapState& s, std::span<const double> p) { s[0] = 1.0 - p[0] * std::sqrt(std::abs(s[0])); }
inline void pinchers(MapState& s, std::span<const double> p) { s[0] = std::abs(std::tanh(p[0] * (s[0] - p[1]))); }
inline void spence(MapState& s, std::span<const double>) { s[0] = std::abs(std::log(s[0])); }
inline void sine_circle(MapState& s, std::span<const double> p) {
    s[0] = wrap(s[0] + p[0] - p[1] / kTwoPi * std::sin(kTwoPi * s[0]), 1.0);
}

inline void henon(MapState& s, std::span<const double> p) {
    const double x = s[0];
    s[0] = 1.0 - p[0] * x * x + p[1] * s[1];
    s[1] = x;
}
inline void lozi(MapState& s, std::span<const double> p) {
    const double x = s[0];
    s[0] = 1.0 - p[0] * std::abs(x) + p[1] * s[1];
    s[1] = x;
}
inline void delayed_logistic(MapState& s, std::span<const double> p) {
    const double x = s[0];
    s[0] = p[0] * x * (1.0 - s[1]);
    s[1] = x;
}
inline void tinkerbell(MapState& s, std::span<const double> p) {
    const double x = s[0], y = s[1];
    s[0] = x * x - y * y + p[0] * x + p[1] * y;
    s[1] = 2.0 * x * y + p[2] * x + p[3] * y;
}
inline void burgers(MapState& s, std::span<const double> p) {
    const double x = s[0], y = s[1];
    s[0] = p[0] * x - y * y;
    s[1] = p[1] * y + x * y;
}
inline void holmes(MapState& s, std::span<const double> p) {
    const double x = s[0], y = s[1];
    s[0] = y;
    s[1] = -p[0] * x + p[1] * y - y * y * y;
}
inline void dissipative_standard(MapState& s, std::span<const double> p) {
    const double y = wrap(p[0] * s[1] + p[1] * std::sin(s[0]), kTwoPi);
    s[0] = wrap(s[0] + y, kTwoPi);
    s[1] = y;
}
inline void ikeda(MapState& s, std::span<const double> p) {
    // p = {alpha, beta, gamma, mu}
    const double x = s[0], y = s[1];
    const double phi = p[1] - p[0] / (1.0 + x * x + y * y);
    const double c = std::cos(phi), sn = std::sin(phi);
    s[0] = p[2] + p[3] * (x * c - y * sn);
    s[1] = p[3] * (x * sn + y * c);
}
inline void sinai(MapState& s, std::span<const double> p) {
    const double x = s[0], y = s[1];
    s[0] = wrap(x + y + p[0] * std::cos(kTwoPi * y), 1.0);
    s[1] = wrap(x + 2.0 * y, 1.0);
}
inline void predator_prey(MapState& s, std::span<const double> p) {
    const double x = s[0], y = s[1];
    s[0] = x * std::exp(p[0] * (1.0 - x) - p[1] * y);
    s[1] = x * (1.0 - std::exp(-p[1] * y));
}

inline void chirikov(MapState& s, std::span<const double> p) {
    const double y = wrap(s[1] - p[0] * std::sin(s[0]), kTwoPi);
    s[0] = wrap(s[0] + y, kTwoPi);
    s[1] = y;
}
inline void henon_area(MapState& s, std::span<const double> p) {
    const double c = p[0];
    const double sn = std::sqrt(1.0 - c * c);
    const double x = s[0], w = s[1] - s[0] * s[0];
    s[0] = x * c - w * sn;
    s[1] = x * sn + w * c;
}
inline void arnold_cat(MapState& s, std::span<const double> p) {
    const double x = s[0], y = s[1];
    s[0] = wrap(x + y, 1.0);
    s[1] = wrap(x + p[0] * y, 1.0);
}
inline void gingerbreadman(MapState& s, std::span<const double>) {
    const double x = s[0];
    s[0] = 1.0 + std::abs(x) - s[1];
    s[1] = x;
}
inline void chaotic_web(MapState& s, std::span<const double> p) {
    const double c = std::cos(p[0]), sn = std::sin(p[0]);
    const double x = s[0], w = s[1] + p[1] * std::sin(s[0]);
    s[0] = x * c - w * sn;
    s[1] = x * sn + w * c;
}
inline void lorenz3d(MapState& s, std::span<const double>) {
    const double x = s[0], y = s[1], z = s[2];
    s[0] = x * y - z;
    s[1] = x;
    s[2] = y;
}

inline void schuster(MapState& s, std::span<const double> p) {
    const double v = s[0] + std::pow(s[0], p[0]);
    s[0] = v >= 1.0 ? v - 1.0 : v;
}

inline bool logistic_degenerate(const MapState& s) {
    return !(s[0] > 0.0 && s[0] < 1.0) || s[0] == 0.5;
}
inline bool open_unit_degenerate(const MapState& s) { return !(s[0] > 0.0 && s[0] < 1.0); }

constexpr double inf = HUGE_VAL;

}  // namespace detail

/// The map catalogue. Order follows the catalogue numbering.
inline const std::vector<MapSpec>& map_registry() {
    using detail::inf;
    using detail::kTwoPi;
    static const std::vector<MapSpec> registry = {
        {"logistic", 1, "Logistic map", MapFamily::noninvertible, 1, {"r"}, {4.0},
         {0.1}, {0.0}, {1.0}, detail::logistic, detail::logistic_degenerate},
        {"sine", 2, "Sine map", MapFamily::noninvertible, 1, {"a"}, {1.0},
         {0.1}, {0.0}, {1.0}, detail::sine},
        // slope 2 collapses to 0 in binary floating point within ~55 steps
        {"tent", 3, "Tent map", MapFamily::noninvertible, 1, {"a"}, {1.99999},
         {std::numbers::sqrt2 / 2.0}, {0.0}, {1.0}, detail::tent},
        {"lcg", 4, "Linear congruential generator", MapFamily::noninvertible, 1, {"a", "b", "c"},
         {7141.0, 54773.0, 259200.0}, {0.0}, {0.0}, {259200.0}, detail::lcg},
        {"cubic", 5, "Cubic map", MapFamily::noninvertible, 1, {"a"}, {3.0},
         {0.1}, {-1.155}, {1.155}, detail::cubic},
        {"ricker", 6, "Ricker's population model", MapFamily::noninvertible, 1, {"a"}, {20.0},
         {0.1}, {0.0}, {7.36}, detail::ricker},
        // 0.1 is mapped to exactly 0 in binary floating point
        {"gauss", 7, "Gauss map", MapFamily::noninvertible, 1, {}, {},
         {0.3}, {0.0}, {1.0}, detail::gauss},
        {"cusp", 8, "Cusp map", MapFamily::noninvertible, 1, {"a"}, {2.0},
         {0.5}, {-1.0}, {1.0}, detail::cusp},
        {"pinchers", 9, "Pinchers map", MapFamily::noninvertible, 1, {"s", "c"}, {2.0, 0.5},
         {0.0}, {0.0}, {1.0}, detail::pinchers},
        {"spence", 10, "Spence map", MapFamily::noninvertible, 1, {}, {},
         {0.5}, {0.0}, {746.0}, detail::spence},
        {"sine_circle", 11, "Sine-circle map", MapFamily::noninvertible, 1, {"omega", "k"},
         {0.606661, 1.0}, {0.1}, {0.0}, {1.0}, detail::sine_circle},

        {"henon", 12, "Henon map", MapFamily::dissipative, 2, {"a", "b"}, {1.4, 0.3},
         {0.0, 0.0}, {-1.5, -1.5}, {1.5, 1.5}, detail::henon},
        {"lozi", 13, "Lozi map", MapFamily::dissipative, 2, {"a", "b"}, {1.7, 0.5},
         {0.0, 0.0}, {-2.0, -2.0}, {2.0, 2.0}, detail::lozi},
        {"delayed_logistic", 14, "Delayed logistic map", MapFamily::dissipative, 2, {"a"}, {2.27},
         {0.001, 0.001}, {0.0, 0.0}, {1.5, 1.5}, detail::delayed_logistic},
        {"tinkerbell", 15, "Tinkerbell map", MapFamily::dissipative, 2, {"a", "b", "c", "d"},
         {0.9, -0.6013, 2.0, 0.5}, {-0.72, -0.64}, {-1.5, -2.0}, {1.0, 1.0}, detail::tinkerbell},
        {"burgers", 16, "Burgers' map", MapFamily::dissipative, 2, {"a", "b"}, {0.75, 1.75},
         {-0.1, 0.1}, {-3.0, -3.0}, {3.0, 3.0}, detail::burgers},
        {"holmes", 17, "Holmes cubic map", MapFamily::dissipative, 2, {"b", "d"}, {0.2, 2.77},
         {1.6, 0.0}, {-2.0, -2.0}, {2.0, 2.0}, detail::holmes},
        {"dissipative_standard", 18, "Dissipative standard map", MapFamily::dissipative, 2,
         {"b", "k"}, {0.1, 8.8}, {0.1, 0.1}, {0.0, 0.0}, {kTwoPi, kTwoPi},
         detail::dissipative_standard},
        {"ikeda", 19, "Ikeda map", MapFamily::dissipative, 2, {"alpha", "beta", "gamma", "mu"},
         {6.0, 0.4, 1.0, 0.9}, {0.0, 0.0}, {-3.0, -3.0}, {3.0, 3.0}, detail::ikeda},
        {"sinai", 20, "Sinai map", MapFamily::dissipative, 2, {"delta"}, {0.1},
         {0.5, 0.5}, {0.0, 0.0}, {1.0, 1.0}, detail::sinai},
        {"predator_prey", 21, "Discrete predator-prey map", MapFamily::dissipative, 2, {"r", "b"},
         {3.0, 3.5}, {0.5, 0.5}, {0.0, 0.0}, {10.0, 10.0}, detail::predator_prey},

        {"chirikov", 22, "Chirikov standard map", MapFamily::conservative, 2, {"k"}, {1.0},
         {0.0, 6.0}, {0.0, 0.0}, {kTwoPi, kTwoPi}, detail::chirikov},
        {"henon_area", 23, "Henon area-preserving quadratic map", MapFamily::conservative, 2,
         {"cos_alpha"}, {0.24}, {0.6, 0.13}, {-2.0, -2.0}, {2.0, 2.0}, detail::henon_area},
        {"arnold_cat", 24, "Arnold's cat map", MapFamily::conservative, 2, {"k"}, {2.0},
         {0.0, std::numbers::sqrt2 / 2.0}, {0.0, 0.0}, {1.0, 1.0}, detail::arnold_cat},
        {"gingerbreadman", 25, "Gingerbreadman map", MapFamily::conservative, 2, {}, {},
         {0.5, 3.7}, {-10.0, -10.0}, {10.0, 10.0}, detail::gingerbreadman},
        {"chaotic_web", 26, "Chaotic web map", MapFamily::conservative, 2, {"alpha", "k"},
         {std::numbers::pi / 4.0, 1.0}, {0.0, 3.0}, {-inf, -inf}, {inf, inf}, detail::chaotic_web},
        {"lorenz3d", 27, "Lorenz three-dimensional chaotic map", MapFamily::conservative, 3, {}, {},
         {0.5, 0.5, -1.0}, {-3.0, -3.0, -3.0}, {3.0, 3.0, 3.0}, detail::lorenz3d},

        // z is left to the caller; x0 is drawn uniformly in (0,1) from the seed when absent
        {"schuster", 28, "Schuster map", MapFamily::intermittent, 1, {"z"}, {2.0},
         {0.5}, {0.0}, {1.0}, detail::schuster, detail::open_unit_degenerate},
    };
    return registry;
}

/// Looks up a map by id; nullptr when unknown.
inline const MapSpec* find_map(std::string_view id) {
    for (const auto& m : map_registry())
        if (m.id == id) return &m;
    return nullptr;
}

inline const MapSpec& require_map(std::string_view id) {
    if (const MapSpec* m = find_map(id)) return *m;
    throw std::invalid_argument("unknown map id: " + std::string(id));
}

inline std::string coordinate_label(std::size_t coordinate) {
    static constexpr std::array<const char*, kMaxMapDim> names = {"X", "Y", "Z"};
    return coordinate < kMaxMapDim ? names[coordinate] : std::to_string(coordinate);
}

namespace detail {

inline const char* initial_name(std::size_t c) {
    static constexpr std::array<const char*, kMaxMapDim> names = {"x0", "y0", "z0"};
    return names[c];
}

inline void check_schuster_z(double z) {
    if (!(z > 1.0)) throw std::invalid_argument("schuster z must be > 1");
}

}  // namespace detail

/// Iterates a registered map and returns the selected coordinate of `n`
/// iterates taken after discarding `transient` iterations.
///
/// Initial conditions come from the registry unless overridden through the
/// `x0`, `y0`, `z0` params. A positive `jitter` param perturbs each
/// coordinate uniformly within +/- jitter, drawn from the descriptor seed.
inline TimeSeries iterate_map(const SystemDescriptor& desc, std::size_t n,
                              std::size_t transient = kDefaultTransient) {
    const MapSpec& spec = require_map(desc.id);
    if (n < 2) throw std::invalid_argument("series too short");
    if (desc.coordinate >= spec.dim)
        throw std::invalid_argument(std::string(spec.id) + ": coordinate " +
                                    std::to_string(desc.coordinate) + " out of range (dimension " +
                                    std::to_string(spec.dim) + ")");
    for (const auto& [name, value] : desc.params) {
        const bool known = name == "jitter" || name == "x0" || name == "y0" || name == "z0" ||
                           std::find(spec.param_names.begin(), spec.param_names.end(), name) !=
                               spec.param_names.end();
        if (!known)
            throw std::invalid_argument(std::string(spec.id) + ": unknown parameter '" + name + "'");
    }

    std::vector<double> p(spec.param_defaults);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = desc.param(spec.param_names[i], p[i]);
    if (spec.id == "schuster") detail::check_schuster_z(p[0]);

    MapState state = spec.initial;
    std::optional<Engine> rng;
    if (desc.seed) rng.emplace(*desc.seed);

    if (spec.id == "schuster" && !desc.has_param("x0")) {
        if (!rng) throw std::invalid_argument("schuster: x0 or a seed is required");
        state[0] = uniform_open(*rng);
    }
    for (std::size_t c = 0; c < spec.dim; ++c) state[c] = desc.param(detail::initial_name(c), state[c]);

    const double jitter = desc.param("jitter", 0.0);
    if (jitter < 0.0) throw std::invalid_argument("jitter must be non-negative");
    if (jitter > 0.0) {
        if (!rng) throw std::invalid_argument(std::string(spec.id) + ": jitter requires a seed");
        for (std::size_t c = 0; c < spec.dim; ++c) state[c] += jitter * (2.0 * uniform_open(*rng) - 1.0);
    }
    if (spec.degenerate && spec.degenerate(state))
        throw std::invalid_argument(std::string(spec.id) + ": degenerate initial condition");

    const std::span<const double> params(p);
    const std::size_t total = transient + n;
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t it = 0; it < total; ++it) {
        spec.step(state, params);
        for (std::size_t c = 0; c < spec.dim; ++c)
            if (!std::isfinite(state[c])) throw OrbitEscape(std::string(spec.id), it + 1);
        if (it >= transient) out.push_back(state[desc.coordinate]);
    }
    return TimeSeries(std::move(out), Provenance{desc, transient});
}

/// x_{n+1} = (x_n + x_n^z) mod 1.
inline TimeSeries schuster(double z, double x0, std::size_t n,
                           std::size_t transient = kDefaultTransient) {
    detail::check_schuster_z(z);
    if (!(x0 > 0.0 && x0 < 1.0)) throw std::invalid_argument("schuster x0 must lie in (0,1)");
    return iterate_map(SystemDescriptor{"schuster", {{"z", z}, {"x0", x0}}, 0, std::nullopt}, n,
                       transient);
}

/// Schuster map with x0 drawn uniformly in (0,1) from `seed`.
inline TimeSeries schuster_seeded(double z, std::uint64_t seed, std::size_t n,
                           std::size_t transient = kDefaultTransient) {
    detail::check_schuster_z(z);
    return iterate_map(SystemDescriptor{"schuster", {{"z", z}}, 0, seed}, n, transient);
}

}  // namespace hvgplane
