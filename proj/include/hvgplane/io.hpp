#pragma once

// Plain-text and JSON exchange formats.
//
//   series      one sample per line, 17 significant digits
//   manifest    {"system","params","coordinate","seed","n","transient","version"}
//   pdf text    "kappa P(kappa)" per line over the contiguous support
//   pdf json    {"support_min","support_max","counts","n_nodes"}
//   edges       "i j" per line, 0-indexed, i < j

#include "hvgplane/graph.hpp"
#include "hvgplane/series.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hvgplane::io {

using json = nlohmann::json;

/// Shortest text that reads back to the same double.
inline std::string format_double(double v) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return buf.data();
}

inline void write_series(std::ostream& out, std::span<const double> values) {
    for (double v : values) out << format_double(v) << '\n';
}

/// Reads one real per non-blank line. Lines starting with '#' are skipped.
inline std::vector<double> read_series(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(line.substr(first), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed series file: line " + std::to_string(lineno));
        }
        if (line.find_first_not_of(" \t\r", first + used) != std::string::npos)
            throw std::invalid_argument("malformed series file: line " + std::to_string(lineno));
        values.push_back(v);
    }
    return values;
}

inline std::vector<double> read_series_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_series(in);
}

inline json descriptor_json(const SystemDescriptor& d) {
    json j;
    j["system"] = d.id;
    j["params"] = json::object();
    for (const auto& [k, v] : d.params) j["params"][k] = v;
    j["coordinate"] = d.coordinate;
    j["seed"] = d.seed ? json(*d.seed) : json(nullptr);
    return j;
}

inline json series_manifest(const TimeSeries& ts) {
    json j = descriptor_json(ts.provenance().system);
    j["n"] = ts.size();
    j["transient"] = ts.provenance().transient;
    j["version"] = kVersion;
    return j;
}

inline void write_pdf_text(std::ostream& out, const DegreePDF& pdf) {
    for (std::size_t b = 0; b < pdf.bins(); ++b)
        out << pdf.support_min + b << ' ' << format_double(pdf.probabilities[b]) << '\n';
}

inline json pdf_json(const DegreePDF& pdf) {
    return json{{"support_min", pdf.support_min},
                {"support_max", pdf.support_max},
                {"counts", pdf.counts},
                {"n_nodes", pdf.n_nodes}};
}

inline void write_edges(std::ostream& out, std::span<const Edge> edges) {
    for (const auto& [i, j] : edges) out << i << ' ' << j << '\n';
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

/// Lower-case hex SHA-256.
inline std::string sha256_hex(const std::string& data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return out.str();
}

}  // namespace hvgplane::io
