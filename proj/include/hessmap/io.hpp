#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hessmap/precision.hpp"

namespace hessmap {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Shortest decimal representation that round-trips.
inline std::string format_double(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline uint64_t fnv1a(std::string_view s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hash_hex(uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

inline std::string file_comment(const std::string& config_hash) {
    return std::string("# hessmap ") + kArtifactVersion + " config " + config_hash;
}

inline void write_csv(const std::string& path, const std::string& config_hash,
                      const std::string& header, const std::vector<std::string>& rows,
                      const std::vector<std::string>& extra_comments = {}) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << file_comment(config_hash) << "\n";
    for (const std::string& c : extra_comments) f << c << "\n";
    f << header << "\n";
    for (const std::string& r : rows) f << r << "\n";
    if (!f) throw std::runtime_error("write failed: " + path);
}

// One polyline path per curve, viewBox fitted to the data.
inline void write_svg_polylines(const std::string& path, const std::string& config_hash,
                                const std::vector<std::vector<cxd>>& curves) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    for (const auto& c : curves)
        for (const cxd& z : c) {
            if (first) {
                xmin = xmax = z.real();
                ymin = ymax = z.imag();
                first = false;
            }
            xmin = std::min(xmin, z.real());
            xmax = std::max(xmax, z.real());
            ymin = std::min(ymin, z.imag());
            ymax = std::max(ymax, z.imag());
        }
    const double pad = 0.05 * std::max(xmax - xmin, ymax - ymin) + 1e-9;
    xmin -= pad;
    xmax += pad;
    ymin -= pad;
    ymax += pad;
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_double(xmin) << " "
      << format_double(-ymax) << " " << format_double(xmax - xmin) << " "
      << format_double(ymax - ymin) << "\">\n";
    f << "<!-- " << file_comment(config_hash) << " -->\n";
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    int ci = 0;
    for (const auto& c : curves) {
        f << "<polyline fill=\"none\" stroke=\"" << colors[ci++ % 5] << "\" stroke-width=\""
          << format_double(0.004 * std::max(xmax - xmin, ymax - ymin)) << "\" points=\"";
        for (const cxd& z : c)
            f << format_double(z.real()) << "," << format_double(-z.imag()) << " ";
        f << "\"/>\n";
    }
    f << "</svg>\n";
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace hessmap
