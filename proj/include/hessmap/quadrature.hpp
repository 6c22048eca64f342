#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hessmap/precision.hpp"

namespace hessmap {

template <class Real>
struct GaussRule {
    std::vector<Real> x;  // nodes on (-1,1), ascending
    std::vector<Real> w;
};

// Nodes by Newton iteration on P_n; seeds from the Chebyshev estimate.
template <class Real>
GaussRule<Real> gauss_legendre(int n) {
    using std::abs;
    using std::cos;
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussRule<Real> rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const Real tol = real_eps<Real>() * 8;
    const double pi_d = std::acos(-1.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        Real x(std::cos(pi_d * (i + 0.75) / (n + 0.5)));
        Real p, dp;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence for P_n(x) and P_n'(x)
            Real p0(1), p1 = x;
            for (int k = 2; k <= n; ++k) {
                Real pk = (Real(2 * k - 1) * x * p1 - Real(k - 1) * p0) / Real(k);
                p0 = p1;
                p1 = pk;
            }
            p = p1;
            dp = Real(n) * (x * p1 - p0) / (x * x - Real(1));
            Real dx = p / dp;
            x -= dx;
            if (abs(dx) <= tol * abs(x) + tol) break;
        }
        Real w = Real(2) / ((Real(1) - x * x) * dp * dp);
        rule.x[i] = x;
        rule.w[i] = w;
        rule.x[n - 1 - i] = -x;
        rule.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.x[n / 2] = Real(0);
    return rule;
}

// Adaptive Gauss quadrature by interval bisection, comparing G15 against G30.
// rel_tol is relative to the running whole-interval estimate.
inline double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                                 double rel_tol = 1e-10) {
    static const GaussRule<double> g15 = gauss_legendre<double>(15);
    static const GaussRule<double> g30 = gauss_legendre<double>(30);
    auto apply = [&f](const GaussRule<double>& g, double lo, double hi) {
        const double h = 0.5 * (hi - lo), c = 0.5 * (lo + hi);
        double s = 0;
        for (size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * f(c + h * g.x[i]);
        return s * h;
    };
    const double scale = std::abs(apply(g30, a, b)) + rel_tol;
    struct Frame {
        double lo, hi;
        int depth;
    };
    std::vector<Frame> stack{{a, b, 0}};
    double total = 0;
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        const double coarse = apply(g15, fr.lo, fr.hi);
        const double fine = apply(g30, fr.lo, fr.hi);
        if (std::abs(fine - coarse) <= rel_tol * scale) {
            total += fine;
        } else if (fr.depth >= 40) {
            throw std::runtime_error("adaptive_integrate: failed to converge within node budget");
        } else {
            const double mid = 0.5 * (fr.lo + fr.hi);
            stack.push_back({fr.lo, mid, fr.depth + 1});
            stack.push_back({mid, fr.hi, fr.depth + 1});
        }
    }
    return total;
}

}  // namespace hessmap
