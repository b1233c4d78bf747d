#pragma once

// One entry point over every generator: chaotic maps by registry id plus the
// stochastic families "powerlaw" (param k), "fgn" and "fbm" (param hurst).

#include "hvgplane/maps.hpp"
#include "hvgplane/noise.hpp"

#include <sstream>
#include <string>
#include <string_view>

namespace hvgplane {

enum class SystemClass { chaotic, stochastic };

inline std::string_view to_string(SystemClass c) {
    return c == SystemClass::chaotic ? "chaotic" : "stochastic";
}

inline SystemClass parse_system_class(std::string_view s) {
    if (s == "chaotic") return SystemClass::chaotic;
    if (s == "stochastic") return SystemClass::stochastic;
    throw std::invalid_argument("class must be 'chaotic' or 'stochastic', got '" + std::string(s) + "'");
}

inline bool is_stochastic_id(std::string_view id) {
    return id == "powerlaw" || id == "fgn" || id == "fbm";
}

inline bool is_known_system(std::string_view id) {
    return is_stochastic_id(id) || find_map(id) != nullptr;
}

inline SystemClass system_class(std::string_view id) {
    if (is_stochastic_id(id)) return SystemClass::stochastic;
    require_map(id);
    return SystemClass::chaotic;
}

/// Number of coordinates a system emits.
inline std::size_t system_dimension(std::string_view id) {
    return is_stochastic_id(id) ? 1 : require_map(id).dim;
}

namespace detail {

inline double required_param(const SystemDescriptor& d, const char* name) {
    for (const auto& [key, value] : d.params)
        if (key != name) throw std::invalid_argument(d.id + ": unknown parameter '" + key + "'");
    auto it = d.params.find(name);
    if (it == d.params.end()) throw std::invalid_argument(d.id + ": missing parameter '" + name + "'");
    return it->second;
}

}  // namespace detail

/// Produces the series a descriptor names. `transient` applies to maps only.
inline TimeSeries generate(const SystemDescriptor& desc, std::size_t n,
                           std::size_t transient = kDefaultTransient) {
    if (!is_stochastic_id(desc.id)) return iterate_map(desc, n, transient);
    if (!desc.seed) throw std::invalid_argument(desc.id + ": stochastic systems require a seed");
    if (desc.coordinate != 0) throw std::invalid_argument(desc.id + ": coordinate out of range (dimension 1)");
    if (desc.id == "powerlaw") return gen_powerlaw_noise(detail::required_param(desc, "k"), n, *desc.seed);
    if (desc.id == "fgn") return gen_fgn(detail::required_param(desc, "hurst"), n, *desc.seed);
    return gen_fbm(detail::required_param(desc, "hurst"), n, *desc.seed);
}

/// Human-readable label, e.g. "holmes (X)", "powerlaw k=1.75", "fbm H=0.9".
inline std::string system_label(const SystemDescriptor& desc) {
    std::ostringstream out;
    out << desc.id;
    if (desc.id == "powerlaw") {
        out << " k=" << desc.param("k", 0.0);
    } else if (desc.id == "fgn" || desc.id == "fbm") {
        out << " H=" << desc.param("hurst", 0.5);
    } else if (desc.id == "schuster") {
        out << " z=" << desc.param("z", 2.0);
    } else if (const MapSpec* m = find_map(desc.id); m && m->dim > 1) {
        out << " (" << coordinate_label(desc.coordinate) << ")";
    }
    return out.str();
}

}  // namespace hvgplane
