#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hessmap/hessenberg.hpp"

namespace hessmap {

struct DiagonalLimits {
    enum class Provenance { analytic, estimated };

    double d1 = 0;          // subdiagonal limit, the capacity
    std::vector<cxd> dneg;  // d_0, d_{-1}, d_{-2}, ...
    Provenance provenance = Provenance::analytic;
    // Estimation only: per-diagonal max-min over the window.
    double d1_spread = 0;
    std::vector<double> dneg_spread;
};

struct ToeplitzDiagnostics {
    // Index n-1 holds the column-n values, n = 1..size-1.
    std::vector<double> theta2;   // l2 norm of column n of D - T
    std::vector<double> theta1;   // l1 norm
    std::vector<double> tail_l2;  // sqrt(sum_{k>=n} |d_{-k}|^2), truncation tail
    std::vector<double> row_l1;   // partial sums of |d_{-k}|
};

// Column deviation norms against the limit diagonals: column n pairs
// d_{n+1,n} with d_1 and d_{n-k,n} with d_{-k} for k = 0..n-1.
inline ToeplitzDiagnostics theta_norms(const HessenbergSection& D, const DiagonalLimits& limits) {
    const int n_cols = D.size - 1;
    if (static_cast<int>(limits.dneg.size()) < n_cols)
        throw std::invalid_argument("theta_norms: insufficient dneg coefficients");
    ToeplitzDiagnostics diag;
    for (int n = 1; n <= n_cols; ++n) {
        double s2 = 0, s1 = 0;
        cxd dsub = D.d(n + 1, n) - cxd(limits.d1);
        s2 += std::norm(dsub);
        s1 += std::abs(dsub);
        for (int k = 0; k <= n - 1; ++k) {
            cxd diff = D.d(n - k, n) - limits.dneg[k];
            s2 += std::norm(diff);
            s1 += std::abs(diff);
        }
        diag.theta2.push_back(std::sqrt(s2));
        diag.theta1.push_back(s1);
        double tail = 0;
        for (size_t k = n; k < limits.dneg.size(); ++k) tail += std::norm(limits.dneg[k]);
        diag.tail_l2.push_back(std::sqrt(tail));
    }
    double run = 0;
    for (const cxd& c : limits.dneg) {
        run += std::abs(c);
        diag.row_l1.push_back(run);
    }
    return diag;
}

// Windowed tail-mean over the last `window` columns; early columns are far
// from the limit and would bias the estimate.
inline DiagonalLimits estimate_diagonal_limits(const HessenbergSection& D, int window) {
    if (window < 1 || window >= D.size / 2)
        throw std::invalid_argument("estimate_diagonal_limits: window must be in [1, size/2)");
    DiagonalLimits lim;
    lim.provenance = DiagonalLimits::Provenance::estimated;
    {
        double sum = 0, lo = 0, hi = 0;
        for (int j = D.size - window; j <= D.size - 1; ++j) {
            double v = D.d(j + 1, j).real();
            if (j == D.size - window) lo = hi = v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
        }
        lim.d1 = sum / window;
        lim.d1_spread = hi - lo;
    }
    const int kmax = D.size - window - 1;  // diagonal k present in every window column
    for (int k = 0; k <= kmax; ++k) {
        cxd sum = 0;
        double lo_r = 0, hi_r = 0, lo_i = 0, hi_i = 0;
        bool first = true;
        for (int j = D.size - window + 1; j <= D.size; ++j) {
            cxd v = D.d(j - k, j);
            sum += v;
            if (first) {
                lo_r = hi_r = v.real();
                lo_i = hi_i = v.imag();
                first = false;
            }
            lo_r = std::min(lo_r, v.real());
            hi_r = std::max(hi_r, v.real());
            lo_i = std::min(lo_i, v.imag());
            hi_i = std::max(hi_i, v.imag());
        }
        lim.dneg.push_back(sum / double(window));
        lim.dneg_spread.push_back(std::max(hi_r - lo_r, hi_i - lo_i));
    }
    return lim;
}

}  // namespace hessmap
