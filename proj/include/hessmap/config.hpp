#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hessmap/geometry.hpp"
#include "hessmap/riemann.hpp"

namespace hessmap {

using json = nlohmann::json;

struct config_error : std::runtime_error {
    std::string field;
    config_error(std::string fld, const std::string& msg)
        : std::runtime_error(fld + ": " + msg), field(std::move(fld)) {}
};

enum class OutputKind { moments, hessenberg, diagnostics, boundary, grid, capacity };

inline const char* output_kind_name(OutputKind k) {
    switch (k) {
        case OutputKind::moments: return "moments";
        case OutputKind::hessenberg: return "hessenberg";
        case OutputKind::diagnostics: return "diagnostics";
        case OutputKind::boundary: return "boundary";
        case OutputKind::grid: return "grid";
        case OutputKind::capacity: return "capacity";
    }
    return "?";
}

struct OutputSpec {
    OutputKind kind{};
    std::string path;
    std::string format = "csv";  // csv | svg
    json params = json::object();
};

struct RunConfig {
    CurveSpec curve;
    int n = 0;
    int nodes_per_segment = 0;  // 0 = default max(128, 8n)
    std::string precision_mode = "double";
    int digits = 0;
    std::optional<RefKind> reference;
    std::vector<OutputSpec> outputs;
    int samples = 4096;
    std::string canonical;  // canonical serialization, hashed into outputs

    int effective_nodes_per_segment() const {
        return nodes_per_segment > 0 ? nodes_per_segment : std::max(128, 8 * n);
    }
};

inline CurveKind parse_curve_kind(const std::string& s, const std::string& field) {
    if (s == "interval") return CurveKind::interval;
    if (s == "cross") return CurveKind::cross;
    if (s == "arc_circle") return CurveKind::arc_circle;
    if (s == "drop") return CurveKind::drop;
    if (s == "spiral") return CurveKind::spiral;
    if (s == "polyline") return CurveKind::polyline;
    if (s == "circle") return CurveKind::circle;
    throw config_error(field, "unknown curve kind '" + s + "'");
}

inline RefKind parse_ref_kind(const std::string& s, const std::string& field) {
    if (s == "arc") return RefKind::arc;
    if (s == "cross") return RefKind::cross;
    if (s == "joukowski") return RefKind::joukowski;
    if (s == "circle") return RefKind::identity_circle;
    throw config_error(field, "unknown reference kind '" + s + "'");
}

inline OutputKind parse_output_kind(const std::string& s, const std::string& field) {
    if (s == "moments") return OutputKind::moments;
    if (s == "hessenberg") return OutputKind::hessenberg;
    if (s == "diagnostics") return OutputKind::diagnostics;
    if (s == "boundary") return OutputKind::boundary;
    if (s == "grid") return OutputKind::grid;
    if (s == "capacity") return OutputKind::capacity;
    throw config_error(field, "unknown output kind '" + s + "'");
}

inline RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error("(document)", std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw config_error("(document)", "top level must be an object");
    RunConfig cfg;

    if (!doc.contains("curve") || !doc["curve"].is_object())
        throw config_error("curve", "required object");
    const json& cv = doc["curve"];
    if (!cv.contains("kind") || !cv["kind"].is_string())
        throw config_error("curve.kind", "required string");
    cfg.curve.kind = parse_curve_kind(cv["kind"].get<std::string>(), "curve.kind");
    if (cv.contains("a")) {
        if (!cv["a"].is_number()) throw config_error("curve.a", "must be a number");
        cfg.curve.a = cv["a"].get<double>();
    }
    if (cv.contains("b")) {
        if (!cv["b"].is_number()) throw config_error("curve.b", "must be a number");
        cfg.curve.b = cv["b"].get<double>();
    }
    if (cv.contains("vertices")) {
        if (!cv["vertices"].is_array()) throw config_error("curve.vertices", "must be an array");
        for (const json& v : cv["vertices"]) {
            if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
                throw config_error("curve.vertices", "entries must be [re, im] number pairs");
            cfg.curve.vertices.emplace_back(v[0].get<double>(), v[1].get<double>());
        }
    }
    // Surface geometric validation (e.g. interval a >= b) at parse time.
    try {
        build_curve(cfg.curve);
    } catch (const std::invalid_argument& e) {
        throw config_error("curve", e.what());
    }

    if (!doc.contains("n") || !doc["n"].is_number_integer())
        throw config_error("n", "required integer");
    cfg.n = doc["n"].get<int>();
    if (cfg.n < 2) throw config_error("n", "must be >= 2");

    if (doc.contains("quadrature")) {
        const json& q = doc["quadrature"];
        if (!q.is_object()) throw config_error("quadrature", "must be an object");
        if (q.contains("nodes_per_segment")) {
            if (!q["nodes_per_segment"].is_number_integer())
                throw config_error("quadrature.nodes_per_segment", "must be an integer");
            cfg.nodes_per_segment = q["nodes_per_segment"].get<int>();
            if (cfg.nodes_per_segment < 2)
                throw config_error("quadrature.nodes_per_segment", "must be >= 2");
        }
    }

    if (doc.contains("precision")) {
        const json& p = doc["precision"];
        if (!p.is_object()) throw config_error("precision", "must be an object");
        if (p.contains("mode")) {
            std::string mode = p["mode"].get<std::string>();
            if (mode != "double" && mode != "extended")
                throw config_error("precision.mode", "must be 'double' or 'extended'");
            cfg.precision_mode = mode;
        }
        if (p.contains("digits")) {
            if (!p["digits"].is_number_integer())
                throw config_error("precision.digits", "must be an integer");
            cfg.digits = p["digits"].get<int>();
        }
        if (cfg.precision_mode == "extended") {
            if (cfg.digits == 0) cfg.digits = 30;
            if (cfg.digits < 15)
                throw config_error("precision.digits", "must be >= 15 in extended mode");
        }
    }

    if (doc.contains("reference")) {
        if (!doc["reference"].is_string()) throw config_error("reference", "must be a string");
        cfg.reference = parse_ref_kind(doc["reference"].get<std::string>(), "reference");
    }

    if (doc.contains("samples")) {
        if (!doc["samples"].is_number_integer() || doc["samples"].get<int>() < 2)
            throw config_error("samples", "must be an integer >= 2");
        cfg.samples = doc["samples"].get<int>();
    }

    if (doc.contains("outputs")) {
        if (!doc["outputs"].is_array()) throw config_error("outputs", "must be an array");
        std::set<std::string> paths;
        int idx = 0;
        for (const json& o : doc["outputs"]) {
            std::string field = "outputs[" + std::to_string(idx++) + "]";
            if (!o.is_object()) throw config_error(field, "must be an object");
            OutputSpec spec;
            if (!o.contains("kind") || !o["kind"].is_string())
                throw config_error(field + ".kind", "required string");
            spec.kind = parse_output_kind(o["kind"].get<std::string>(), field + ".kind");
            if (!o.contains("path") || !o["path"].is_string())
                throw config_error(field + ".path", "required string");
            spec.path = o["path"].get<std::string>();
            if (!paths.insert(spec.path).second)
                throw config_error(field + ".path", "conflicting output path '" + spec.path + "'");
            if (o.contains("format")) {
                spec.format = o["format"].get<std::string>();
                if (spec.format != "csv" && spec.format != "svg")
                    throw config_error(field + ".format", "must be 'csv' or 'svg'");
            }
            if (o.contains("params")) spec.params = o["params"];
            cfg.outputs.push_back(std::move(spec));
        }
    }

    cfg.canonical = doc.dump();
    return cfg;
}

}  // namespace hessmap
