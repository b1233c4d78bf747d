#pragma once

// Battery orchestration: expand a configuration into independent runs,
// execute them on a worker pool, and emit battery.csv, plane.csv,
// stability.csv, per-run JSON manifests and per-run degree-PDF dumps.

#include "hvgplane/graph.hpp"
#include "hvgplane/io.hpp"
#include "hvgplane/quantifiers.hpp"
#include "hvgplane/systems.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace hvgplane {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------------------
// Single-series analysis

struct Analysis {
    DegreePDF pdf;
    std::optional<ExponentialFit> fit;
    std::string fit_error;
    QuantileStats quantiles{kNaN, kNaN};
    InfoPoint info;
};

/// Every quantifier for one series. A failed exponential fit or a degenerate
/// quantile spread leaves that part empty (NaN) instead of failing the rest.
inline Analysis analyze(std::span<const double> x, ScalingZone zone, double s_wgn_reference,
                        std::string label = {}) {
    const DegreeSequence seq = build_hvg(x);
    Analysis a;
    a.pdf = degree_pdf(seq);
    try {
        a.fit = fit_lambda(a.pdf, zone);
    } catch (const std::domain_error& e) {
        a.fit_error = e.what();
    }
    try {
        a.quantiles = quantile_stats(seq);
    } catch (const DegenerateSpread&) {
        a.quantiles = {kNaN, kNaN};
    }
    a.info = info_point(a.pdf, s_wgn_reference, std::move(label));
    return a;
}

// ---------------------------------------------------------------------------
// Configuration

struct ZoneOverrides {
    std::optional<ScalingZone> chaotic;
    std::optional<ScalingZone> stochastic;

    ScalingZone zone_for(SystemClass c) const {
        const auto& o = c == SystemClass::chaotic ? chaotic : stochastic;
        return o ? *o : default_zone(c);
    }
};

struct BatteryConfig {
    std::vector<SystemDescriptor> systems;
    std::vector<std::size_t> lengths{100000};
    std::size_t transient = kDefaultTransient;
    std::vector<std::uint64_t> seeds;
    ZoneOverrides zones;
    std::size_t wgn_replicates = WgnReference::kDefaultReplicates;
    std::uint64_t wgn_seed = WgnReference::kDefaultSeed;
    std::size_t workers = 0;  // 0: HVGPLANE_WORKERS, else hardware concurrency
    std::filesystem::path output_dir;
};

/// True when a descriptor's output depends on a seed.
inline bool needs_seed(const SystemDescriptor& d) {
    return is_stochastic_id(d.id) || (d.id == "schuster" && !d.has_param("x0")) || d.param("jitter", 0.0) > 0.0;
}

inline std::size_t resolve_workers(std::size_t requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("HVGPLANE_WORKERS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

inline void validate(const BatteryConfig& c) {
    if (c.systems.empty()) throw ConfigError("config: systems must not be empty");
    if (c.lengths.empty()) throw ConfigError("config: lengths must not be empty");
    for (std::size_t n : c.lengths)
        if (n < 4) throw ConfigError("config: every length must be >= 4");
    if (c.wgn_replicates == 0) throw ConfigError("config: wgn_reference.replicates must be >= 1");
    for (const auto& d : c.systems) {
        if (!is_known_system(d.id)) throw ConfigError("config: unknown system '" + d.id + "'");
        if (d.coordinate >= system_dimension(d.id))
            throw ConfigError("config: " + d.id + ": coordinate out of range");
        if (needs_seed(d) && !d.seed && c.seeds.empty())
            throw ConfigError("config: " + system_label(d) + " requires a seed but no seeds are given");
    }
}

namespace detail {

inline ScalingZone zone_from_json(const nlohmann::json& j) {
    if (j.is_string()) return parse_zone(j.get<std::string>());
    if (j.is_array() && j.size() == 2) return ScalingZone(j[0].get<std::uint32_t>(), j[1].get<std::uint32_t>());
    throw ConfigError("config: a zone is \"lo:hi\" or [lo, hi]");
}

inline void reject_unknown_keys(const nlohmann::json& obj, std::initializer_list<const char*> allowed,
                                const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            throw ConfigError("config: unknown key '" + key + "' in " + where);
    }
}

}  // namespace detail

/// Reads the JSON battery schema:
///
///   {
///     "systems": [ {"system": "holmes", "params": {"b": 0.2}, "coordinate": "all"},
///                  {"system": "powerlaw", "params": {"k": 1.75}, "seed": 3} ],
///     "lengths": [100000], "transient": 100000, "seeds": [1, 2],
///     "zones": {"chaotic": "3:25", "stochastic": [3, 20]},
///     "wgn_reference": {"replicates": 10, "seed": 7},
///     "workers": 4, "output_dir": "out"
///   }
///
/// "coordinate" is an index or "all"; only "systems" is required.
inline BatteryConfig parse_battery_config(const nlohmann::json& j) {
    using nlohmann::json;
    try {
        if (!j.is_object()) throw ConfigError("config: top level must be an object");
        detail::reject_unknown_keys(
            j, {"systems", "lengths", "transient", "seeds", "zones", "wgn_reference", "workers", "output_dir"}, "config");
        BatteryConfig c;
        if (!j.contains("systems") || !j["systems"].is_array()) throw ConfigError("config: 'systems' array is required");
        for (const auto& s : j["systems"]) {
            detail::reject_unknown_keys(s, {"system", "params", "coordinate", "seed"}, "system entry");
            SystemDescriptor d;
            d.id = s.at("system").get<std::string>();
            if (!is_known_system(d.id)) throw ConfigError("config: unknown system '" + d.id + "'");
            if (s.contains("params"))
                for (const auto& [k, v] : s["params"].items()) d.params[k] = v.get<double>();
            if (s.contains("seed")) d.seed = s["seed"].get<std::uint64_t>();
            const json coord = s.value("coordinate", json(0));
            if (coord.is_string()) {
                if (coord.get<std::string>() != "all") throw ConfigError("config: coordinate must be an index or \"all\"");
                for (std::size_t k = 0; k < system_dimension(d.id); ++k) {
                    d.coordinate = k;
                    c.systems.push_back(d);
                }
            } else {
                d.coordinate = coord.get<std::size_t>();
                c.systems.push_back(d);
            }
        }
        if (j.contains("lengths")) c.lengths = j["lengths"].get<std::vector<std::size_t>>();
        if (j.contains("transient")) c.transient = j["transient"].get<std::size_t>();
        if (j.contains("seeds")) c.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
        if (j.contains("zones")) {
            detail::reject_unknown_keys(j["zones"], {"chaotic", "stochastic"}, "zones");
            if (j["zones"].contains("chaotic")) c.zones.chaotic = detail::zone_from_json(j["zones"]["chaotic"]);
            if (j["zones"].contains("stochastic")) c.zones.stochastic = detail::zone_from_json(j["zones"]["stochastic"]);
        }
        if (j.contains("wgn_reference")) {
            const auto& w = j["wgn_reference"];
            detail::reject_unknown_keys(w, {"replicates", "seed"}, "wgn_reference");
            c.wgn_replicates = w.value("replicates", c.wgn_replicates);
            c.wgn_seed = w.value("seed", c.wgn_seed);
        }
        if (j.contains("workers")) c.workers = j["workers"].get<std::size_t>();
        if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
        validate(c);
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

inline BatteryConfig load_battery_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config: " + path.string() + ": " + e.what());
    }
    return parse_battery_config(j);
}

// ---------------------------------------------------------------------------
// Runs

struct RunRecord {
    SystemDescriptor descriptor;
    std::string label;
    SystemClass system_class = SystemClass::chaotic;
    std::size_t length = 0;
    std::size_t transient = 0;
    std::optional<ExponentialFit> fit;
    std::string fit_error;
    QuantileStats quantiles{kNaN, kNaN};
    InfoPoint info{kNaN, kNaN, kNaN, kNaN, {}};
    DegreePDF pdf;
    double wall_seconds = 0.0;
    std::string hash;
    std::string error;  // non-empty when the run itself failed

    bool ok() const noexcept { return error.empty(); }
    std::optional<std::uint64_t> seed() const { return descriptor.seed; }
};

/// Deterministic digest of what determines a run's output.
inline std::string manifest_hash(const SystemDescriptor& d, std::size_t length, std::size_t transient) {
    nlohmann::json j = io::descriptor_json(d);
    j["length"] = length;
    j["transient"] = transient;
    j["version"] = kVersion;
    return io::sha256_hex(j.dump());
}

/// The (descriptor, length) jobs a config expands to, in output order:
/// system-major, then length, then seed.
inline std::vector<std::pair<SystemDescriptor, std::size_t>> expand_jobs(const BatteryConfig& c) {
    std::vector<std::pair<SystemDescriptor, std::size_t>> jobs;
    for (const auto& base : c.systems) {
        for (std::size_t n : c.lengths) {
            if (!needs_seed(base) || base.seed) {
                jobs.emplace_back(base, n);
                continue;
            }
            for (std::uint64_t s : c.seeds) {
                SystemDescriptor d = base;
                d.seed = s;
                jobs.emplace_back(std::move(d), n);
            }
        }
    }
    return jobs;
}

/// Runs `fn(i)` for i in [0, count) on up to `workers` threads. The first
/// exception escaping `fn` is rethrown after all threads join.
template <class Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
    workers = std::max<std::size_t>(1, std::min(workers, count));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
}

inline RunRecord run_one(const SystemDescriptor& d, std::size_t n, std::size_t transient, const ZoneOverrides& zones,
                         double s_wgn) {
    RunRecord r;
    r.descriptor = d;
    r.label = system_label(d);
    r.system_class = system_class(d.id);
    r.length = n;
    r.transient = is_stochastic_id(d.id) ? 0 : transient;
    r.hash = manifest_hash(d, n, r.transient);
    const auto start = std::chrono::steady_clock::now();
    try {
        const TimeSeries ts = generate(d, n, transient);
        Analysis a = analyze(ts.values(), zones.zone_for(r.system_class), s_wgn, r.label);
        r.fit = a.fit;
        r.fit_error = std::move(a.fit_error);
        r.quantiles = a.quantiles;
        r.info = std::move(a.info);
        r.pdf = std::move(a.pdf);
    } catch (const std::exception& e) {
        r.error = r.label + ": " + e.what();
    }
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

/// One record per (system, coordinate, length, seed), in config order.
/// Failed runs keep their identity and carry the error; other runs proceed.
inline std::vector<RunRecord> run_battery(const BatteryConfig& config) {
    validate(config);
    std::map<std::size_t, double> wgn;
    for (std::size_t n : config.lengths)
        if (!wgn.count(n)) wgn[n] = WgnReference(n, config.wgn_replicates, config.wgn_seed).entropy();

    const auto jobs = expand_jobs(config);
    std::vector<RunRecord> records(jobs.size());
    parallel_for(jobs.size(), resolve_workers(config.workers), [&](std::size_t i) {
        const auto& [d, n] = jobs[i];
        records[i] = run_one(d, n, config.transient, config.zones, wgn.at(n));
    });
    return records;
}

// ---------------------------------------------------------------------------
// Tables

namespace detail {

inline std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline std::string csv_field(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

inline std::string slug(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-')
            out += c;
        else if (!out.empty() && out.back() != '_')
            out += '_';
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out;
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace detail

inline constexpr const char* kBatteryHeader =
    "label,system,coordinate,seed,n,class,lambda,ci_lo,ci_hi,r_squared,lambda_class,"
    "gamma1,gamma2,s_raw,s_norm,s_rel_wgn,fisher,hash,status";

inline std::string battery_csv(const std::vector<RunRecord>& records) {
    using detail::num;
    std::ostringstream out;
    out << kBatteryHeader << '\n';
    for (const auto& r : records) {
        const auto& f = r.fit;
        out << detail::csv_field(r.label) << ',' << r.descriptor.id << ',' << coordinate_label(r.descriptor.coordinate)
            << ',' << (r.seed() ? std::to_string(*r.seed()) : "") << ',' << r.length << ',' << to_string(r.system_class)
            << ',' << num(f ? f->lambda : kNaN) << ',' << num(f ? f->ci_lo : kNaN) << ','
            << num(f ? f->ci_hi : kNaN) << ',' << num(f ? f->r_squared : kNaN) << ','
            << (f ? to_string(classify_lambda(*f)) : "") << ',' << num(r.quantiles.gamma1) << ','
            << num(r.quantiles.gamma2) << ',' << num(r.info.shannon_raw) << ',' << num(r.info.shannon_normalized)
            << ',' << num(r.info.shannon_rel_wgn) << ',' << num(r.info.fisher) << ',' << r.hash << ','
            << (r.ok() ? "ok" : detail::csv_field(r.error)) << '\n';
    }
    return out.str();
}

inline nlohmann::json run_manifest(const RunRecord& r) {
    nlohmann::json j = io::descriptor_json(r.descriptor);
    j["label"] = r.label;
    j["class"] = to_string(r.system_class);
    j["length"] = r.length;
    j["transient"] = r.transient;
    j["version"] = kVersion;
    j["hash"] = r.hash;
    if (!r.ok()) {
        j["error"] = r.error;
        return j;
    }
    if (r.fit) {
        j["fit"] = {{"lambda", r.fit->lambda},
                    {"ci_lo", r.fit->ci_lo},
                    {"ci_hi", r.fit->ci_hi},
                    {"r_squared", r.fit->r_squared},
                    {"zone", {r.fit->zone.kappa_lo, r.fit->zone.kappa_hi}},
                    {"points", r.fit->n_points},
                    {"class", to_string(classify_lambda(*r.fit))}};
    } else {
        j["fit"] = {{"error", r.fit_error}};
    }
    auto finite_or_null = [](double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); };
    j["quantiles"] = {{"gamma1", finite_or_null(r.quantiles.gamma1)},
                      {"gamma2", finite_or_null(r.quantiles.gamma2)},
                      {"xi", r.quantiles.xi},
                      {"rho", r.quantiles.rho}};
    j["information"] = {{"shannon_raw", r.info.shannon_raw},
                        {"shannon_normalized", r.info.shannon_normalized},
                        {"shannon_rel_wgn", r.info.shannon_rel_wgn},
                        {"fisher", r.info.fisher}};
    j["pdf"] = io::pdf_json(r.pdf);
    return j;
}

struct PlaneRow {
    std::string label;
    SystemClass system_class = SystemClass::chaotic;
    double s_rel_wgn = 0.0;
    double fisher = 0.0;
};

/// Points of the entropy-Fisher plane. Failed runs are skipped; records of
/// different lengths are rejected.
inline std::vector<PlaneRow> plane_dataset(const std::vector<RunRecord>& records) {
    std::vector<PlaneRow> rows;
    std::optional<std::size_t> length;
    for (const auto& r : records) {
        if (length && *length != r.length) throw std::invalid_argument("plane: records have mixed lengths");
        length = r.length;
        if (r.ok()) rows.push_back({r.label, r.system_class, r.info.shannon_rel_wgn, r.info.fisher});
    }
    return rows;
}

/// Plane rows from a battery.csv written by `battery_csv`.
inline std::vector<PlaneRow> plane_dataset_from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) return {};
    const auto header = detail::split_csv(line);
    auto column = [&](const char* name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw std::invalid_argument(std::string("battery csv: missing column '") + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t c_label = column("label"), c_class = column("class"), c_n = column("n"),
                      c_s = column("s_rel_wgn"), c_f = column("fisher"), c_status = column("status");
    std::vector<PlaneRow> rows;
    std::optional<std::string> length;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = detail::split_csv(line);
        if (cells.size() != header.size())
            throw std::invalid_argument("battery csv: line " + std::to_string(lineno) + " has the wrong field count");
        if (length && *length != cells[c_n]) throw std::invalid_argument("plane: records have mixed lengths");
        length = cells[c_n];
        if (cells[c_status] != "ok") continue;
        try {
            rows.push_back({cells[c_label], parse_system_class(cells[c_class]), std::stod(cells[c_s]),
                            std::stod(cells[c_f])});
        } catch (const std::logic_error&) {
            throw std::invalid_argument("battery csv: malformed line " + std::to_string(lineno));
        }
    }
    return rows;
}

inline std::string plane_csv(const std::vector<PlaneRow>& rows) {
    std::ostringstream out;
    out << "label,class,s_rel_wgn,fisher\n";
    for (const auto& r : rows)
        out << detail::csv_field(r.label) << ',' << to_string(r.system_class) << ',' << detail::num(r.s_rel_wgn)
            << ',' << detail::num(r.fisher) << '\n';
    return out.str();
}

/// Writes battery.csv, plane.csv (single-length batteries), and per-run
/// manifests/ and pdfs/ under `dir`.
inline void write_battery_outputs(const std::vector<RunRecord>& records, const std::filesystem::path& dir) {
    io::write_text_file(dir / "battery.csv", battery_csv(records));
    bool single_length = true;
    for (const auto& r : records) single_length = single_length && r.length == records.front().length;
    if (single_length) io::write_text_file(dir / "plane.csv", plane_csv(plane_dataset(records)));
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        char idx[16];
        std::snprintf(idx, sizeof idx, "%04zu", i);
        std::string stem = std::string(idx) + "_" + detail::slug(r.label) + "_n" + std::to_string(r.length);
        if (r.seed()) stem += "_s" + std::to_string(*r.seed());
        io::write_text_file(dir / "manifests" / (stem + ".json"), run_manifest(r).dump(2) + "\n");
        if (r.ok()) {
            std::ostringstream pdf;
            io::write_pdf_text(pdf, r.pdf);
            io::write_text_file(dir / "pdfs" / (stem + ".txt"), pdf.str());
        }
    }
}

// ---------------------------------------------------------------------------
// Length stability

/// Initial-condition jitter applied to map replicates that do not set one.
inline constexpr double kDefaultReplicateJitter = 1e-3;

struct StabilityRow {
    std::size_t length = 0;
    std::size_t replicates = 0;
    double s_mean = 0.0, s_sd = 0.0;
    double f_mean = 0.0, f_sd = 0.0;
    double s_rel_change = kNaN;  // versus the previous length
    double f_rel_change = kNaN;
};

struct StabilityOptions {
    std::size_t transient = kDefaultTransient;
    std::uint64_t base_seed = 1;
    std::size_t workers = 0;
};

/// Mean and sample standard deviation of raw entropy and Fisher information
/// at each length. Replicate r uses seed base_seed + r; map replicates are
/// decorrelated by jittering the initial condition.
inline std::vector<StabilityRow> length_stability(const SystemDescriptor& desc, const std::vector<std::size_t>& lengths,
                                                  std::size_t replicates, const StabilityOptions& opt = {}) {
    if (lengths.size() < 2) throw std::invalid_argument("stability: at least two lengths are required");
    if (replicates < 1) throw std::invalid_argument("stability: replicates must be >= 1");
    if (!is_known_system(desc.id)) throw std::invalid_argument("unknown system '" + desc.id + "'");

    SystemDescriptor base = desc;
    if (!is_stochastic_id(base.id) && replicates > 1 && !base.has_param("jitter"))
        base.params["jitter"] = kDefaultReplicateJitter;
    const std::uint64_t seed0 = desc.seed.value_or(opt.base_seed);
    const bool seeded = needs_seed(base);

    const std::size_t total = lengths.size() * replicates;
    std::vector<double> s(total), f(total);
    std::vector<std::string> errors(total);
    parallel_for(total, resolve_workers(opt.workers), [&](std::size_t i) {
        const std::size_t li = i / replicates, r = i % replicates;
        SystemDescriptor d = base;
        if (seeded) d.seed = seed0 + r;
        try {
            const DegreePDF pdf = degree_pdf(build_hvg(generate(d, lengths[li], opt.transient)));
            s[i] = shannon_entropy(pdf).raw;
            f[i] = fisher_information(pdf);
        } catch (const std::exception& e) {
            errors[i] = system_label(d) + ": " + e.what();
        }
    });
    for (const auto& e : errors)
        if (!e.empty()) throw std::runtime_error(e);

    auto mean_sd = [&](const std::vector<double>& v, std::size_t li) {
        double m = 0.0;
        for (std::size_t r = 0; r < replicates; ++r) m += v[li * replicates + r];
        m /= static_cast<double>(replicates);
        double ss = 0.0;
        for (std::size_t r = 0; r < replicates; ++r) ss += (v[li * replicates + r] - m) * (v[li * replicates + r] - m);
        const double sd = replicates > 1 ? std::sqrt(ss / static_cast<double>(replicates - 1)) : 0.0;
        return std::pair{m, sd};
    };

    std::vector<StabilityRow> rows;
    for (std::size_t li = 0; li < lengths.size(); ++li) {
        StabilityRow row;
        row.length = lengths[li];
        row.replicates = replicates;
        std::tie(row.s_mean, row.s_sd) = mean_sd(s, li);
        std::tie(row.f_mean, row.f_sd) = mean_sd(f, li);
        if (li > 0) {
            row.s_rel_change = std::abs(row.s_mean - rows.back().s_mean) / std::abs(rows.back().s_mean);
            row.f_rel_change = std::abs(row.f_mean - rows.back().f_mean) / std::abs(rows.back().f_mean);
        }
        rows.push_back(row);
    }
    return rows;
}

inline std::string stability_csv(const std::string& label, const std::vector<StabilityRow>& rows) {
    using detail::num;
    std::ostringstream out;
    out << "label,n,replicates,s_mean,s_sd,f_mean,f_sd,s_rel_change,f_rel_change\n";
    for (const auto& r : rows)
        out << detail::csv_field(label) << ',' << r.length << ',' << r.replicates << ',' << num(r.s_mean) << ','
            << num(r.s_sd) << ',' << num(r.f_mean) << ',' << num(r.f_sd) << ',' << num(r.s_rel_change) << ','
            << num(r.f_rel_change) << '\n';
    return out.str();
}

}  // namespace hvgplane
