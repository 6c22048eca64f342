#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hessmap/precision.hpp"
#include "hessmap/quadrature.hpp"

namespace hessmap {

enum class CurveKind { interval, cross, arc_circle, drop, spiral, polyline, circle };

inline const char* curve_kind_name(CurveKind k) {
    switch (k) {
        case CurveKind::interval: return "interval";
        case CurveKind::cross: return "cross";
        case CurveKind::arc_circle: return "arc_circle";
        case CurveKind::drop: return "drop";
        case CurveKind::spiral: return "spiral";
        case CurveKind::polyline: return "polyline";
        case CurveKind::circle: return "circle";
    }
    return "?";
}

// Smooth pieces, each parametrized over s in [0,1]. The trig shapes keep their
// angular range symbolic so that extended-precision node generation does not
// inherit double-rounded endpoints.
struct LineSeg {
    cxd a, b;
};
struct CircleSeg {};  // e^{2*pi*i*s}
struct DropSeg {};    // e^{2it}/(1+2e^{it}), t = pi*s
struct SpiralSeg {};  // t*e^{it}/6, t = 2*pi*s

struct Segment {
    std::variant<LineSeg, CircleSeg, DropSeg, SpiralSeg> shape;
};

struct Curve {
    CurveKind kind{};
    double a = 0, b = 0;
    std::vector<Segment> segments;
};

struct CurveSpec {
    CurveKind kind{};
    double a = 0, b = 0;
    std::vector<cxd> vertices;  // polyline only
};

template <class Real>
complex_of_t<Real> seg_value(const Segment& seg, const Real& s) {
    using C = complex_of_t<Real>;
    using std::cos;
    using std::sin;
    struct V {
        const Real& s;
        C operator()(const LineSeg& l) const {
            return C(Real(l.a.real()) + (Real(l.b.real()) - Real(l.a.real())) * s,
                     Real(l.a.imag()) + (Real(l.b.imag()) - Real(l.a.imag())) * s);
        }
        C operator()(const CircleSeg&) const {
            Real t = Real(2) * real_pi<Real>() * s;
            return C(cos(t), sin(t));
        }
        C operator()(const DropSeg&) const {
            Real t = real_pi<Real>() * s;
            C u(cos(t), sin(t));
            return u * u / (C(Real(1), Real(0)) + Real(2) * u);
        }
        C operator()(const SpiralSeg&) const {
            Real t = Real(2) * real_pi<Real>() * s;
            return C(t * cos(t) / Real(6), t * sin(t) / Real(6));
        }
    };
    return std::visit(V{s}, seg.shape);
}

// d/ds of seg_value (chain factors for the rescaled angular ranges included).
template <class Real>
complex_of_t<Real> seg_deriv(const Segment& seg, const Real& s) {
    using C = complex_of_t<Real>;
    using std::cos;
    using std::sin;
    struct V {
        const Real& s;
        C operator()(const LineSeg& l) const {
            return C(Real(l.b.real()) - Real(l.a.real()), Real(l.b.imag()) - Real(l.a.imag()));
        }
        C operator()(const CircleSeg&) const {
            Real twopi = Real(2) * real_pi<Real>();
            Real t = twopi * s;
            return C(-twopi * sin(t), twopi * cos(t));
        }
        C operator()(const DropSeg&) const {
            Real pi = real_pi<Real>();
            Real t = pi * s;
            C i(Real(0), Real(1));
            C u(cos(t), sin(t));
            C one(Real(1), Real(0));
            C den = one + Real(2) * u;
            return pi * Real(2) * i * u * u * (one + u) / (den * den);
        }
        C operator()(const SpiralSeg&) const {
            Real twopi = Real(2) * real_pi<Real>();
            Real t = twopi * s;
            C i(Real(0), Real(1));
            C u(cos(t), sin(t));
            return twopi * u * (C(Real(1), Real(0)) + i * t) / Real(6);
        }
    };
    return std::visit(V{s}, seg.shape);
}

inline Curve build_curve(const CurveSpec& spec) {
    Curve c;
    c.kind = spec.kind;
    c.a = spec.a;
    c.b = spec.b;
    switch (spec.kind) {
        case CurveKind::interval:
            if (!(spec.a < spec.b)) throw std::invalid_argument("interval requires a < b");
            c.segments.push_back({LineSeg{cxd(spec.a, 0), cxd(spec.b, 0)}});
            break;
        case CurveKind::cross:
            if (!(spec.a > 0) || !(spec.b > 0))
                throw std::invalid_argument("cross requires positive arm lengths a, b");
            c.segments.push_back({LineSeg{cxd(-spec.a, 0), cxd(0, 0)}});
            c.segments.push_back({LineSeg{cxd(0, 0), cxd(spec.a, 0)}});
            c.segments.push_back({LineSeg{cxd(0, -spec.b), cxd(0, 0)}});
            c.segments.push_back({LineSeg{cxd(0, 0), cxd(0, spec.b)}});
            break;
        case CurveKind::arc_circle:
            // Labeling only: this kind routes to the closed-form matrix
            // generator and carries no quadrature parametrization.
            if (!(spec.a > 1)) throw std::invalid_argument("arc_circle requires a > 1");
            break;
        case CurveKind::drop:
            c.segments.push_back({DropSeg{}});
            break;
        case CurveKind::spiral:
            c.segments.push_back({SpiralSeg{}});
            break;
        case CurveKind::circle:
            c.segments.push_back({CircleSeg{}});
            break;
        case CurveKind::polyline: {
            if (spec.vertices.size() < 2)
                throw std::invalid_argument("polyline requires at least two vertices");
            for (size_t i = 0; i + 1 < spec.vertices.size(); ++i) {
                if (spec.vertices[i] == spec.vertices[i + 1])
                    throw std::invalid_argument("polyline has a degenerate (zero-length) edge");
                c.segments.push_back({LineSeg{spec.vertices[i], spec.vertices[i + 1]}});
            }
            break;
        }
    }
    return c;
}

template <class Real>
struct Measure {
    std::vector<complex_of_t<Real>> nodes;
    std::vector<Real> weights;
    int nodes_per_segment = 0;
    std::string rule;
};

// Gauss-Legendre nodes through each segment with arc-length weights,
// normalized to total mass 1. The closed circle uses equispaced nodes (the
// natural rule there, and exact for discrete orthogonality of characters).
// Ordering is segment-major, parameter-increasing.
template <class Real = double>
Measure<Real> discretize_measure(const Curve& curve, int nodes_per_segment) {
    using std::abs;
    if (nodes_per_segment < 2)
        throw std::invalid_argument("discretize_measure: nodes_per_segment must be >= 2");
    if (curve.segments.empty())
        throw std::invalid_argument(std::string("discretize_measure: curve kind '") +
                                    curve_kind_name(curve.kind) + "' has no parametrization");
    Measure<Real> m;
    m.nodes_per_segment = nodes_per_segment;
    if (curve.kind == CurveKind::circle) {
        m.rule = "uniform-periodic";
        const int n = nodes_per_segment;
        for (int j = 0; j < n; ++j) {
            Real s = Real(j) / Real(n);
            m.nodes.push_back(seg_value(curve.segments[0], s));
            m.weights.push_back(Real(1) / Real(n));
        }
        return m;
    }
    m.rule = "gauss-legendre";
    const GaussRule<Real> g = gauss_legendre<Real>(nodes_per_segment);
    for (const Segment& seg : curve.segments) {
        Real seg_mass(0);
        for (int i = 0; i < nodes_per_segment; ++i) {
            Real s = (g.x[i] + Real(1)) / Real(2);
            m.nodes.push_back(seg_value(seg, s));
            Real w = g.w[i] * abs(seg_deriv(seg, s));
            m.weights.push_back(w);
            seg_mass += w;
        }
        if (!(seg_mass > Real(0)))
            throw std::runtime_error("discretize_measure: segment with vanishing derivative");
    }
    Real total(0);
    for (const Real& w : m.weights) total += w;
    if (!(total > Real(0))) throw std::runtime_error("discretize_measure: normalization sum zero");
    for (Real& w : m.weights) w /= total;
    return m;
}

inline double arc_length(const Curve& curve) {
    if (curve.segments.empty())
        throw std::invalid_argument(std::string("arc_length: curve kind '") +
                                    curve_kind_name(curve.kind) + "' has no parametrization");
    double total = 0;
    for (const Segment& seg : curve.segments) {
        total += adaptive_integrate([&seg](double s) { return std::abs(seg_deriv(seg, s)); }, 0.0,
                                    1.0, 1e-11);
    }
    return total;
}

}  // namespace hessmap
