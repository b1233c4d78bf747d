// hvgplane command-line front end.
//
// Exit codes: 0 success, 1 runtime failure or partial battery, 2 usage,
// configuration or precondition error.

#include "hvgplane/hvgplane.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace hvgplane;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Options shared by every subcommand that can synthesize a series.
struct SourceOptions {
    std::string system;
    std::vector<std::string> params;
    std::optional<double> k, hurst, z;
    std::size_t coordinate = 0;
    std::size_t n = 100000;
    std::optional<std::uint64_t> seed;
    std::size_t transient = kDefaultTransient;
    std::string in;

    void add_generation(CLI::App* app) {
        app->add_option("--system", system, "System id (map registry id, powerlaw, fgn, fbm)");
        app->add_option("--param", params, "Parameter as name=value; repeatable");
        app->add_option("--k", k, "Power-law exponent (powerlaw)");
        app->add_option("--hurst", hurst, "Hurst exponent (fgn, fbm)");
        app->add_option("--z", z, "Intermittency exponent (schuster)");
        app->add_option("--coordinate", coordinate, "Coordinate index of a multi-dimensional map");
        add_common(app);
    }
    void add_common(CLI::App* app) {
        app->add_option("--n", n, "Series length")->check(CLI::PositiveNumber);
        app->add_option("--seed", seed, "64-bit seed");
        app->add_option("--transient", transient, "Iterations discarded before recording (maps)");
    }

    SystemDescriptor descriptor() const {
        SystemDescriptor d;
        d.id = system;
        if (!is_known_system(d.id)) throw std::invalid_argument("unknown system '" + system + "'");
        for (const auto& p : params) {
            const auto eq = p.find('=');
            if (eq == std::string::npos || eq == 0) throw std::invalid_argument("--param expects name=value, got '" + p + "'");
            try {
                std::size_t used = 0;
                d.params[p.substr(0, eq)] = std::stod(p.substr(eq + 1), &used);
                if (used != p.size() - eq - 1) throw std::invalid_argument("");
            } catch (const std::logic_error&) {
                throw std::invalid_argument("--param value is not a number: '" + p + "'");
            }
        }
        if (k) d.params["k"] = *k;
        if (hurst) d.params["hurst"] = *hurst;
        if (z) d.params["z"] = *z;
        d.coordinate = coordinate;
        d.seed = seed;
        return d;
    }

    // The series named by --in, or generated from --system.
    TimeSeries load() const {
        if (!in.empty() && !system.empty()) throw std::invalid_argument("give either --in or --system, not both");
        if (!in.empty()) {
            auto values = io::read_series_file(in);
            SystemDescriptor d;
            d.id = "file";
            return TimeSeries(std::move(values), Provenance{d, 0});
        }
        if (system.empty()) throw std::invalid_argument("one of --in or --system is required");
        return generate(descriptor(), n, transient);
    }
};

void write_or_print(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        io::write_text_file(path, content);
}

std::string series_text(const TimeSeries& ts) {
    std::ostringstream out;
    io::write_series(out, ts.values());
    return out.str();
}

int cmd_generate(const SourceOptions& src, const std::string& out, std::string manifest) {
    if (src.system.empty()) throw std::invalid_argument("--system is required");
    const TimeSeries ts = generate(src.descriptor(), src.n, src.transient);
    write_or_print(out, series_text(ts));
    if (manifest.empty() && !out.empty() && out != "-") manifest = out + ".json";
    if (!manifest.empty()) io::write_text_file(manifest, io::series_manifest(ts).dump(2) + "\n");
    return kExitOk;
}

int cmd_hvg(const SourceOptions& src, const std::string& out, const std::string& edges, const std::string& pdf) {
    const TimeSeries ts = src.load();
    std::vector<Edge> edge_list;
    const DegreeSequence seq = edges.empty() ? build_hvg(ts)
                                             : build_hvg(std::span(ts.values()), [&](std::size_t i, std::size_t j) {
                                                   edge_list.emplace_back(i, j);
                                               });
    std::ostringstream deg;
    for (auto d : seq.degrees) deg << d << '\n';
    write_or_print(out, deg.str());
    if (!edges.empty()) {
        std::ostringstream e;
        io::write_edges(e, edge_list);
        io::write_text_file(edges, e.str());
    }
    if (!pdf.empty()) {
        std::ostringstream p;
        io::write_pdf_text(p, degree_pdf(seq));
        io::write_text_file(pdf, p.str());
    }
    return kExitOk;
}

struct AnalyzeOptions {
    std::string cls;
    std::string zone;
    std::string dump_pdf;
    std::string out;
    std::size_t wgn_replicates = WgnReference::kDefaultReplicates;
};

int cmd_analyze(const SourceOptions& src, const AnalyzeOptions& opt) {
    const TimeSeries ts = src.load();
    SystemClass cls = SystemClass::stochastic;
    if (!opt.cls.empty())
        cls = parse_system_class(opt.cls);
    else if (!src.system.empty())
        cls = system_class(src.system);
    const ScalingZone zone = opt.zone.empty() ? default_zone(cls) : parse_zone(opt.zone);
    const double s_wgn = WgnReference(ts.size(), opt.wgn_replicates).entropy();
    const std::string label = src.system.empty() ? src.in : system_label(src.descriptor());
    const Analysis a = analyze(ts.values(), zone, s_wgn, label);

    const auto& f = a.fit;
    std::ostringstream report;
    report << "label,n,lambda,ci_lo,ci_hi,r_squared,lambda_class,gamma1,gamma2,s_raw,s_norm,s_rel_wgn,fisher\n"
           << detail::csv_field(label) << ',' << ts.size() << ',' << detail::num(f ? f->lambda : kNaN) << ','
           << detail::num(f ? f->ci_lo : kNaN) << ',' << detail::num(f ? f->ci_hi : kNaN) << ','
           << detail::num(f ? f->r_squared : kNaN) << ',' << (f ? to_string(classify_lambda(*f)) : "") << ','
           << detail::num(a.quantiles.gamma1) << ',' << detail::num(a.quantiles.gamma2) << ','
           << detail::num(a.info.shannon_raw) << ',' << detail::num(a.info.shannon_normalized) << ','
           << detail::num(a.info.shannon_rel_wgn) << ',' << detail::num(a.info.fisher) << '\n';
    std::cout << report.str();
    if (!f) std::cerr << "warning: exponential fit unavailable: " << a.fit_error << '\n';

    if (!opt.out.empty()) {
        RunRecord r;
        r.descriptor = ts.provenance().system;
        r.label = label;
        r.system_class = cls;
        r.length = ts.size();
        r.fit = a.fit;
        r.fit_error = a.fit_error;
        r.quantiles = a.quantiles;
        r.info = a.info;
        r.pdf = a.pdf;
        r.transient = ts.provenance().transient;
        r.hash = manifest_hash(r.descriptor, r.length, r.transient);
        io::write_text_file(opt.out, run_manifest(r).dump(2) + "\n");
    }
    if (!opt.dump_pdf.empty()) {
        std::ostringstream p;
        io::write_pdf_text(p, a.pdf);
        io::write_text_file(opt.dump_pdf, p.str());
    }
    return kExitOk;
}

struct BatteryOptions {
    std::string config;
    std::string out;
    std::size_t workers = 0;
};

int cmd_battery(const SourceOptions& common, const BatteryOptions& opt, const CLI::App& sub) {
    BatteryConfig c = load_battery_config(opt.config);
    if (sub.count("--n")) c.lengths = {common.n};
    if (common.seed) c.seeds = {*common.seed};
    if (sub.count("--transient")) c.transient = common.transient;
    if (opt.workers) c.workers = opt.workers;
    if (!opt.out.empty()) c.output_dir = opt.out;
    if (c.output_dir.empty()) c.output_dir = ".";
    validate(c);

    const auto records = run_battery(c);
    write_battery_outputs(records, c.output_dir);
    int failed = 0;
    for (const auto& r : records)
        if (!r.ok()) {
            std::cerr << "error: " << r.error << '\n';
            ++failed;
        }
    return failed ? kExitFailure : kExitOk;
}

int cmd_plane(const std::string& in, const std::string& out) {
    std::ifstream f(in);
    if (!f) throw std::runtime_error("cannot open " + in);
    write_or_print(out, plane_csv(plane_dataset_from_csv(f)));
    return kExitOk;
}

struct StabilityCliOptions {
    std::vector<std::size_t> lengths;
    std::size_t replicates = 10;
    std::size_t workers = 0;
    std::string out;
};

int cmd_stability(const SourceOptions& src, const StabilityCliOptions& opt) {
    if (src.system.empty()) throw std::invalid_argument("--system is required");
    StabilityOptions so;
    so.transient = src.transient;
    so.base_seed = src.seed.value_or(1);
    so.workers = opt.workers;
    SystemDescriptor d = src.descriptor();
    d.seed.reset();
    const auto rows = length_stability(d, opt.lengths, opt.replicates, so);
    write_or_print(opt.out, stability_csv(system_label(d), rows));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Horizontal visibility graph quantifiers for chaotic maps and correlated noises"};
    app.set_version_flag("--version", std::string(hvgplane::kVersion));
    app.require_subcommand(1, 1);

    SourceOptions src;
    std::string out, manifest, edges, pdf;

    auto* gen = app.add_subcommand("generate", "Write a series (one value per line) and its JSON manifest");
    src.add_generation(gen);
    gen->add_option("--out,-o", out, "Series file (default: standard output)");
    gen->add_option("--manifest", manifest, "Manifest path (default: <out>.json)");

    auto* hvg = app.add_subcommand("hvg", "Write the HVG degree sequence of a series");
    hvg->add_option("--in,-i", src.in, "Series file");
    src.add_generation(hvg);
    hvg->add_option("--out,-o", out, "Degree sequence file (default: standard output)");
    hvg->add_option("--edges", edges, "Also write the edge list");
    hvg->add_option("--pdf", pdf, "Also write the degree distribution");

    AnalyzeOptions aopt;
    auto* analyze_cmd = app.add_subcommand("analyze", "Compute every quantifier for a series");
    analyze_cmd->add_option("--in,-i", src.in, "Series file");
    src.add_generation(analyze_cmd);
    analyze_cmd->add_option("--class", aopt.cls, "chaotic or stochastic; selects the default scaling zone")
        ->check(CLI::IsMember({"chaotic", "stochastic"}));
    analyze_cmd->add_option("--zone", aopt.zone, "Scaling zone lo:hi for the exponential fit");
    analyze_cmd->add_option("--dump-pdf", aopt.dump_pdf, "Write the degree distribution");
    analyze_cmd->add_option("--out,-o", aopt.out, "Write the full record as JSON");
    analyze_cmd->add_option("--wgn-replicates", aopt.wgn_replicates, "White-noise reference ensemble size")
        ->check(CLI::PositiveNumber);

    BatteryOptions bopt;
    auto* battery = app.add_subcommand("battery", "Run a configured battery of systems");
    battery->add_option("--config,-c", bopt.config, "JSON configuration")->required();
    battery->add_option("--out,-o", bopt.out, "Output directory (overrides the config)");
    battery->add_option("--workers,-j", bopt.workers, "Parallel workers (default: HVGPLANE_WORKERS or all cores)");
    src.add_common(battery);

    std::string plane_in;
    auto* plane = app.add_subcommand("plane", "Project a battery.csv onto the entropy-Fisher plane");
    plane->add_option("--in,-i", plane_in, "battery.csv")->required();
    plane->add_option("--out,-o", out, "plane.csv (default: standard output)");

    StabilityCliOptions sopt;
    auto* stability = app.add_subcommand("stability", "Entropy and Fisher information versus series length");
    src.add_generation(stability);
    stability->add_option("--lengths", sopt.lengths, "Series lengths, at least two")->delimiter(',')->required();
    stability->add_option("--replicates", sopt.replicates, "Replicates per length")->check(CLI::PositiveNumber);
    stability->add_option("--workers,-j", sopt.workers, "Parallel workers");
    stability->add_option("--out,-o", sopt.out, "stability.csv (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen) return cmd_generate(src, out, manifest);
        if (*hvg) return cmd_hvg(src, out, edges, pdf);
        if (*analyze_cmd) return cmd_analyze(src, aopt);
        if (*battery) return cmd_battery(src, bopt, *battery);
        if (*plane) return cmd_plane(plane_in, out);
        if (*stability) return cmd_stability(src, sopt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
