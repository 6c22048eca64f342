#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hessmap/config.hpp"
#include "hessmap/io.hpp"
#include "hessmap/riemann.hpp"

namespace hessmap {

struct RunReport {
    std::vector<std::string> outputs;
    double seconds = 0;
    double condition_estimate = 0;  // 0 when no moment matrix was formed
    std::optional<double> sup_diff;
    std::optional<double> capacity_error;
    HessenbergSection::Source source = HessenbergSection::Source::arnoldi;
    std::string limits_provenance;
    std::vector<std::string> notes;
};

namespace detail {

template <class T>
[[noreturn]] void rethrow_stage(const std::string& stage, const T& e) {
    throw std::runtime_error("[" + stage + "] " + e.what());
}

template <class Real>
HessenbergSection moments_route(const Curve& curve, int n, int nps, double* condition) {
    Measure<Real> meas = discretize_measure<Real>(curve, nps);
    MomentMatrix<Real> M = moment_matrix(meas, n + 1);
    *condition = static_cast<double>(M.condition_estimate);
    return hessenberg_from_moments(M, n);
}

inline std::string join_path(const std::string& dir, const std::string& file) {
    if (dir.empty()) return file;
    return dir.back() == '/' ? dir + file : dir + "/" + file;
}

}  // namespace detail

inline RunReport run(const RunConfig& cfg, const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport report;
    const std::string cfg_hash = hash_hex(fnv1a(cfg.canonical));
    const int nps = cfg.effective_nodes_per_segment();

    Curve curve;
    try {
        curve = build_curve(cfg.curve);
    } catch (const std::exception& e) {
        detail::rethrow_stage("curve", e);
    }

    // The arc-of-circle example has no quadrature path: its measure is only
    // given implicitly, and the matrix comes from the closed form.
    const bool closed_form = (cfg.curve.kind == CurveKind::arc_circle);

    HessenbergSection D;
    std::optional<Measure<double>> measure;
    try {
        if (closed_form) {
            D = closed_form_arc_hessenberg(cfg.curve.a, cfg.n);
        } else {
            measure = discretize_measure<double>(curve, nps);
            if (cfg.precision_mode == "extended") {
                switch (precision_tier_digits(cfg.digits)) {
                    case 30:
                        D = detail::moments_route<ext30>(curve, cfg.n, nps,
                                                         &report.condition_estimate);
                        break;
                    case 50:
                        D = detail::moments_route<ext50>(curve, cfg.n, nps,
                                                         &report.condition_estimate);
                        break;
                    default:
                        D = detail::moments_route<ext100>(curve, cfg.n, nps,
                                                          &report.condition_estimate);
                        break;
                }
            } else {
                D = hessenberg_arnoldi(*measure, cfg.n).section;
            }
        }
    } catch (const std::exception& e) {
        detail::rethrow_stage("hessenberg", e);
    }
    report.source = D.source;

    std::optional<ReferenceMap> ref;
    if (cfg.reference) {
        double ra = cfg.curve.a, rb = cfg.curve.b;
        if (*cfg.reference == RefKind::joukowski && !(ra < rb)) {
            ra = -1;
            rb = 1;
        }
        try {
            ref = make_reference(*cfg.reference, ra, rb);
        } catch (const std::exception& e) {
            detail::rethrow_stage("reference", e);
        }
    }

    auto limits = [&]() -> DiagonalLimits {
        if (ref) {
            report.limits_provenance = "analytic";
            return limits_from_reference(*ref, std::max(2 * cfg.n, 256));
        }
        // theta_norms needs size-1 trailing diagonals, which only the
        // final column provides; wider windows would truncate dneg.
        report.limits_provenance = "estimated";
        return estimate_diagonal_limits(D, 1);
    };

    for (const OutputSpec& out : cfg.outputs) {
        const std::string path = detail::join_path(out_dir, out.path);
        const std::string stage = std::string("output:") + output_kind_name(out.kind);
        try {
            switch (out.kind) {
                case OutputKind::moments: {
                    if (!measure)
                        throw std::runtime_error("moment export needs a quadrature path");
                    int order = out.params.value("order", cfg.n + 1);
                    MomentMatrix<double> M = moment_matrix(*measure, order);
                    report.condition_estimate = M.condition_estimate;
                    std::vector<std::string> rows;
                    std::string header;
                    for (int k = 0; k < order; ++k) {
                        if (k) header += ",";
                        header += "re" + std::to_string(k) + ",im" + std::to_string(k);
                    }
                    for (int j = 0; j < order; ++j) {
                        std::string row;
                        for (int k = 0; k < order; ++k) {
                            if (k) row += ",";
                            row += format_double(M.at(j, k).real()) + "," +
                                   format_double(M.at(j, k).imag());
                        }
                        rows.push_back(std::move(row));
                    }
                    write_csv(path, cfg_hash, header, rows,
                              {"# row-major re,im pairs, order " + std::to_string(order)});
                    break;
                }
                case OutputKind::hessenberg: {
                    std::vector<std::string> rows;
                    for (int i = 1; i <= D.size; ++i)
                        for (int j = (i > 1 ? i - 1 : 1); j <= D.size; ++j) {
                            cxd v = D.d(i, j);
                            rows.push_back(std::to_string(i) + "," + std::to_string(j) + "," +
                                           format_double(v.real()) + "," +
                                           format_double(v.imag()));
                        }
                    write_csv(path, cfg_hash, "i,j,re,im", rows);
                    break;
                }
                case OutputKind::diagnostics: {
                    DiagonalLimits lim = limits();
                    ToeplitzDiagnostics diag = theta_norms(D, lim);
                    std::vector<std::string> rows;
                    for (size_t i = 0; i < diag.theta2.size(); ++i)
                        rows.push_back(std::to_string(i + 1) + "," + format_double(diag.theta2[i]) +
                                       "," + format_double(diag.theta1[i]) + "," +
                                       format_double(diag.tail_l2[i]));
                    write_csv(path, cfg_hash, "n,theta2,theta1,tail_l2", rows,
                              {"# limits: " + report.limits_provenance});
                    break;
                }
                case OutputKind::capacity: {
                    int window = std::min(out.params.value("window", 8), D.size - 1);
                    CapacityEstimate est = capacity_estimate(D, window);
                    std::vector<std::string> rows;
                    rows.push_back("estimate," + format_double(est.value));
                    for (size_t i = 0; i < est.trace.size(); ++i)
                        rows.push_back("trace" + std::to_string(i + 1) + "," +
                                       format_double(est.trace[i]));
                    write_csv(path, cfg_hash, "label,value", rows);
                    break;
                }
                case OutputKind::boundary: {
                    int hn = out.params.value("n", D.size - 1);
                    double radius = out.params.value("radius", 1.0);
                    LaurentMap h = approximant(D, hn);
                    if (out.format == "svg") {
                        int samples = out.params.value("samples", 720);
                        auto pts = boundary_image(h, samples, radius);
                        std::vector<cxd> poly;
                        for (auto& p : pts) poly.push_back(p.second);
                        poly.push_back(pts.front().second);
                        write_svg_polylines(path, cfg_hash, {poly});
                    } else {
                        int samples = out.params.value("samples", cfg.samples);
                        auto pts = boundary_image(h, samples, radius);
                        std::vector<std::string> rows;
                        for (auto& p : pts)
                            rows.push_back(format_double(p.first) + "," +
                                           format_double(p.second.real()) + "," +
                                           format_double(p.second.imag()));
                        write_csv(path, cfg_hash, "theta,re,im", rows);
                    }
                    break;
                }
                case OutputKind::grid: {
                    int hn = out.params.value("n", D.size - 1);
                    std::vector<double> radii =
                        out.params.value("radii", std::vector<double>{1.1, 1.2, 1.3, 1.4, 1.5});
                    LaurentMap h = approximant(D, hn);
                    if (out.format == "svg") {
                        int samples = out.params.value("samples", 720);
                        auto curves = equipotential_grid(h, radii, samples);
                        std::vector<std::vector<cxd>> polys;
                        for (auto& c : curves) {
                            std::vector<cxd> poly;
                            for (auto& p : c) poly.push_back(p.second);
                            poly.push_back(c.front().second);
                            polys.push_back(std::move(poly));
                        }
                        write_svg_polylines(path, cfg_hash, polys);
                    } else {
                        int samples = out.params.value("samples", cfg.samples);
                        auto curves = equipotential_grid(h, radii, samples);
                        std::vector<std::string> rows;
                        for (size_t r = 0; r < radii.size(); ++r)
                            for (auto& p : curves[r])
                                rows.push_back(format_double(radii[r]) + "," +
                                               format_double(p.first) + "," +
                                               format_double(p.second.real()) + "," +
                                               format_double(p.second.imag()));
                        write_csv(path, cfg_hash, "r,theta,re,im", rows);
                    }
                    break;
                }
            }
        } catch (const std::exception& e) {
            detail::rethrow_stage(stage, e);
        }
        report.outputs.push_back(path);
    }

    if (ref) {
        LaurentMap h = approximant(D, D.size - 1);
        report.sup_diff = sup_difference(h, *ref, 1.0, cfg.samples);
        int window = std::min(8, D.size - 1);
        report.capacity_error =
            std::abs(capacity_estimate(D, window).value - ref->capacity());
    }

    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

// Named paper-figure/table recipes.
inline RunReport run_recipe(const std::string& name, const std::string& out_dir) {
    auto run_json = [&](const std::string& text) {
        return run(parse_config(text), out_dir);
    };
    if (name == "cross-9x9") {
        return run_json(R"({"curve":{"kind":"cross","a":1,"b":1},"n":9,
            "outputs":[{"kind":"hessenberg","path":"cross-9x9.csv"}]})");
    }
    if (name == "cross-theta") {
        return run_json(R"({"curve":{"kind":"cross","a":1,"b":1},"n":100,
            "quadrature":{"nodes_per_segment":400},"reference":"cross",
            "outputs":[{"kind":"diagnostics","path":"cross-theta.csv"}]})");
    }
    if (name == "drop-boundary") {
        return run_json(R"({"curve":{"kind":"drop"},"n":12,"samples":720,
            "outputs":[{"kind":"boundary","path":"drop-boundary-h5.csv","params":{"n":5}},
                       {"kind":"boundary","path":"drop-boundary-h8.csv","params":{"n":8}},
                       {"kind":"boundary","path":"drop-boundary-h11.csv","params":{"n":11}}]})");
    }
    if (name == "spiral-boundary") {
        return run_json(R"({"curve":{"kind":"spiral"},"n":12,"samples":720,
            "outputs":[{"kind":"boundary","path":"spiral-boundary-h7.csv","params":{"n":7}},
                       {"kind":"boundary","path":"spiral-boundary-h11.csv","params":{"n":11}}]})");
    }
    if (name == "example1-table") {
        // Approximation thresholds for the arc example: smallest n whose
        // analytic r=1 bound (theta1 + l1 coefficient tail) falls below the
        // threshold, next to the smallest n whose sampled sup does.
        const auto t0 = std::chrono::steady_clock::now();
        RunReport report;
        const std::string cfg_hash = hash_hex(fnv1a("recipe:example1-table"));
        const int size = 80;
        HessenbergSection D = closed_form_arc_hessenberg(2.0, size);
        ReferenceMap ref = make_reference(RefKind::arc, 2.0);
        DiagonalLimits lim = limits_from_reference(ref, 400);
        ToeplitzDiagnostics diag = theta_norms(D, lim);
        std::vector<double> l1_tail(size, 0.0);
        {
            double run_sum = 0;
            for (size_t k = lim.dneg.size(); k-- > 0;) {
                run_sum += std::abs(lim.dneg[k]);
                if (k < l1_tail.size()) l1_tail[k] = run_sum;
            }
        }
        std::vector<double> measured(size, 0.0), bound(size, 0.0);
        for (int n = 1; n <= size - 1; ++n) {
            measured[n] = sup_difference(approximant(D, n), ref, 1.0, 4096);
            bound[n] = diag.theta1[n - 1] + l1_tail[n];
        }
        std::vector<std::string> rows;
        for (double thr : {0.2, 0.1, 0.01, 0.001, 0.0001}) {
            int n_bound = -1, n_measured = -1;
            for (int n = 1; n <= size - 1; ++n) {
                if (n_bound < 0 && bound[n] <= thr) n_bound = n;
                if (n_measured < 0 && measured[n] <= thr) n_measured = n;
            }
            rows.push_back(format_double(thr) + "," + std::to_string(n_bound) + "," +
                           std::to_string(n_measured));
        }
        const std::string path = detail::join_path(out_dir, "example1-table.csv");
        write_csv(path, cfg_hash, "threshold,n_bound,n_measured", rows);
        report.outputs.push_back(path);
        report.source = HessenbergSection::Source::closed_form_arc;
        report.limits_provenance = "analytic";
        report.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return report;
    }
    throw std::invalid_argument("unknown recipe '" + name +
                                "' (expected example1-table, cross-9x9, cross-theta, "
                                "drop-boundary or spiral-boundary)");
}

}  // namespace hessmap
