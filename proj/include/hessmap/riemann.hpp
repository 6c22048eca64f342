#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hessmap/toeplitz.hpp"

namespace hessmap {

// Truncated Laurent series c_1 z + c_0 + c_{-1}/z + ... intended for |z| >= 1.
struct LaurentMap {
    cxd c1 = 0;
    std::vector<cxd> cneg;  // c_0, c_{-1}, ..., c_{-m}

    cxd operator()(cxd z) const;
};

inline cxd evaluate(const LaurentMap& map, cxd z) {
    if (z == cxd(0)) throw std::invalid_argument("evaluate: z = 0");
    cxd acc = 0;
    for (size_t i = map.cneg.size(); i-- > 0;) acc = acc / z + map.cneg[i];
    // loop leaves acc = c_0 + c_{-1}/z + ...
    return map.c1 * z + acc;
}

inline cxd LaurentMap::operator()(cxd z) const { return evaluate(*this, z); }

// |z| < 1 is outside the domain the convergence theory covers; evaluation is
// still performed (the map is a finite Laurent polynomial).
struct EvalResult {
    cxd value;
    bool outside_theory_domain;
};

inline EvalResult evaluate_checked(const LaurentMap& map, cxd z) {
    return {evaluate(map, z), std::abs(z) < 1.0};
}

// Column approximant h_n from the n-th column of D.
inline LaurentMap approximant(const HessenbergSection& D, int n) {
    if (n < 1 || n > D.size - 1) throw std::invalid_argument("approximant: n out of range");
    LaurentMap h;
    h.c1 = D.d(n + 1, n);
    for (int k = 0; k <= n - 1; ++k) h.cneg.push_back(D.d(n - k, n));
    return h;
}

enum class RefKind { arc, cross, joukowski, identity_circle };

inline const char* ref_kind_name(RefKind k) {
    switch (k) {
        case RefKind::arc: return "arc";
        case RefKind::cross: return "cross";
        case RefKind::joukowski: return "joukowski";
        case RefKind::identity_circle: return "circle";
    }
    return "?";
}

// Closed-form exterior maps used as oracles.
struct ReferenceMap {
    RefKind kind = RefKind::identity_circle;
    double a = 0, b = 0;

    cxd operator()(cxd z) const {
        switch (kind) {
            case RefKind::identity_circle:
                return z;
            case RefKind::joukowski:
                return ((b - a) / 4) * (z + 1.0 / z) + (a + b) / 2;
            case RefKind::arc: {
                const double s = std::sqrt(a * a - 1);
                return z * (a - s * z) / (s - a * z);
            }
            case RefKind::cross: {
                // phi = (sqrt(a^2+b^2)/2) z sqrt(1 + 2c/z^2 + 1/z^4) with the
                // branch that is continuous on |z| > 1 and ~ z at infinity;
                // the radicand avoids the negative real axis there.
                const double ab2 = a * a + b * b;
                const double c = (a * a - b * b) / ab2;
                const cxd u = 1.0 / (z * z);
                return (std::sqrt(ab2) / 2) * z * std::sqrt(1.0 + u * (2.0 * c + u));
            }
        }
        return z;
    }

    double capacity() const {
        switch (kind) {
            case RefKind::identity_circle: return 1.0;
            case RefKind::joukowski: return (b - a) / 4;
            case RefKind::arc: return std::sqrt(a * a - 1) / a;
            case RefKind::cross: return std::sqrt(a * a + b * b) / 2;
        }
        return 0;
    }
};

inline ReferenceMap make_reference(RefKind kind, double a = 0, double b = 0) {
    switch (kind) {
        case RefKind::arc:
            if (!(a > 1)) throw std::invalid_argument("reference arc requires a > 1");
            break;
        case RefKind::cross:
            if (!(a > 0) || !(b > 0))
                throw std::invalid_argument("reference cross requires a, b > 0");
            break;
        case RefKind::joukowski:
            if (!(a < b)) throw std::invalid_argument("reference joukowski requires a < b");
            break;
        case RefKind::identity_circle:
            break;
    }
    return ReferenceMap{kind, a, b};
}

// Exact Laurent coefficients of the reference maps. The cross expansion uses
// the sqrt power-series recurrence in u = 1/z^2, valid to any depth.
inline LaurentMap reference_laurent(const ReferenceMap& ref, int truncation) {
    if (truncation < 1) throw std::invalid_argument("reference_laurent: truncation must be >= 1");
    LaurentMap map;
    map.cneg.assign(truncation + 1, cxd(0));
    switch (ref.kind) {
        case RefKind::identity_circle:
            map.c1 = 1;
            break;
        case RefKind::joukowski:
            map.c1 = (ref.b - ref.a) / 4;
            map.cneg[0] = (ref.a + ref.b) / 2;
            if (truncation >= 1) map.cneg[1] = (ref.b - ref.a) / 4;
            break;
        case RefKind::arc: {
            const double a = ref.a;
            const double q = std::sqrt(a * a - 1) / a;
            map.c1 = q;
            double p = 1.0 / (a * a);
            for (int k = 0; k <= truncation; ++k) {
                map.cneg[k] = -p;
                p *= q;
            }
            break;
        }
        case RefKind::cross: {
            const double ab2 = ref.a * ref.a + ref.b * ref.b;
            const double c = (ref.a * ref.a - ref.b * ref.b) / ab2;
            map.c1 = std::sqrt(ab2) / 2;
            // g = sqrt(1 + 2c u + u^2): g_m from sum_j g_j g_{m-j} = p_m
            const int mmax = truncation / 2;
            std::vector<double> g(mmax + 1, 0.0);
            g[0] = 1;
            for (int m = 1; m <= mmax; ++m) {
                double pm = (m == 1) ? 2 * c : (m == 2 ? 1.0 : 0.0);
                double s = 0;
                for (int j = 1; j < m; ++j) s += g[j] * g[m - j];
                g[m] = (pm - s) / 2;
            }
            for (int m = 1; m <= mmax; ++m) map.cneg[2 * m - 1] = (std::sqrt(ab2) / 2) * g[m];
            break;
        }
    }
    return map;
}

inline DiagonalLimits limits_from_reference(const ReferenceMap& ref, int truncation) {
    LaurentMap lm = reference_laurent(ref, truncation);
    DiagonalLimits lim;
    lim.provenance = DiagonalLimits::Provenance::analytic;
    lim.d1 = lm.c1.real();
    lim.dneg = lm.cneg;
    return lim;
}

inline LaurentMap symbol_from_limits(const DiagonalLimits& limits, int truncation) {
    if (truncation >= static_cast<int>(limits.dneg.size()))
        throw std::invalid_argument("symbol_from_limits: truncation exceeds available dneg length");
    LaurentMap map;
    map.c1 = limits.d1;
    map.cneg.assign(limits.dneg.begin(), limits.dneg.begin() + truncation + 1);
    return map;
}

struct CapacityEstimate {
    double value = 0;
    std::vector<double> trace;  // subdiagonal entries used
    std::string method;
};

inline CapacityEstimate capacity_estimate(const HessenbergSection& D, int window) {
    if (window < 1 || window >= D.size)
        throw std::invalid_argument("capacity_estimate: window must be in [1, size)");
    CapacityEstimate est;
    est.method = "mean of last " + std::to_string(window) + " subdiagonal entries";
    double sum = 0;
    for (int j = D.size - window; j <= D.size - 1; ++j) {
        double v = D.d(j + 1, j).real();
        est.trace.push_back(v);
        sum += v;
    }
    est.value = sum / window;
    return est;
}

template <class MapT>
std::vector<std::pair<double, cxd>> boundary_image(const MapT& map, int samples, double radius) {
    if (samples < 2) throw std::invalid_argument("boundary_image: samples must be >= 2");
    if (!(radius >= 1)) throw std::invalid_argument("boundary_image: radius must be >= 1");
    std::vector<std::pair<double, cxd>> out;
    out.reserve(samples);
    const double twopi = 2 * std::acos(-1.0);
    for (int j = 0; j < samples; ++j) {
        double th = twopi * j / samples;
        out.emplace_back(th, map(std::polar(radius, th)));
    }
    return out;
}

template <class MapT>
std::vector<std::vector<std::pair<double, cxd>>> equipotential_grid(const MapT& map,
                                                                    const std::vector<double>& radii,
                                                                    int samples) {
    std::vector<std::vector<std::pair<double, cxd>>> out;
    for (double r : radii) {
        if (!(r > 1)) throw std::invalid_argument("equipotential_grid: radii must be > 1");
        out.push_back(boundary_image(map, samples, r));
    }
    return out;
}

// Sampled sup of |A - B| on the circle of the given radius. Not a certified
// bound; the modulus of continuity of a truncated Laurent map is controlled
// by sum k|c_{-k}|.
template <class MapA, class MapB>
double sup_difference(const MapA& fa, const MapB& fb, double radius, int samples) {
    if (samples < 16) throw std::invalid_argument("sup_difference: samples must be >= 16");
    double sup = 0;
    const double twopi = 2 * std::acos(-1.0);
    for (int j = 0; j < samples; ++j) {
        cxd z = std::polar(radius, twopi * j / samples);
        sup = std::max(sup, std::abs(fa(z) - fb(z)));
    }
    return sup;
}

// Analytic error bound Theta_n sqrt(r^2 + 1/(r^2-1)) + tail * r/sqrt(r^2-1) * r^{-n},
// valid for r > 1.
inline double remark_error_bound(double theta_n, double tail_l2, double r, int n) {
    if (!(r > 1)) throw std::invalid_argument("remark_error_bound: requires r > 1");
    return theta_n * std::sqrt(r * r + 1.0 / (r * r - 1)) +
           tail_l2 * (r / std::sqrt(r * r - 1)) * std::pow(r, -n);
}

}  // namespace hessmap
