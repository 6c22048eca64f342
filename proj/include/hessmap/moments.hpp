#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hessmap/geometry.hpp"
#include "hessmap/precision.hpp"

namespace hessmap {

// Loss of numerical positive definiteness in the moment Gram matrix. Carries
// the failing pivot so the caller can decide between raising precision and
// lowering the order.
struct posdef_error : std::runtime_error {
    int pivot_index;
    double pivot;
    double condition;
    posdef_error(int idx, double piv, double cond)
        : std::runtime_error("moment matrix lost positive definiteness at pivot " +
                             std::to_string(idx) + " (pivot " + std::to_string(piv) +
                             ", condition estimate " + std::to_string(cond) + ")"),
          pivot_index(idx),
          pivot(piv),
          condition(cond) {}
};

template <class Real>
struct MomentMatrix {
    int order = 0;
    std::vector<complex_of_t<Real>> entries;  // row-major, entry(j,k) = <z^j, z^k>
    Real condition_estimate = Real(0);

    const complex_of_t<Real>& at(int j, int k) const { return entries[j * order + k]; }
    complex_of_t<Real>& at(int j, int k) { return entries[j * order + k]; }
};

template <class Real>
Real posdef_pivot_tolerance() {
    return real_eps<Real>() * Real(1000);
}
template <>
inline double posdef_pivot_tolerance<double>() {
    return 1e-13;
}

// Cholesky factor L (lower, row-major m x m) of a Hermitian matrix given by an
// accessor. Throws posdef_error when a pivot falls below tol * a(0,0).
template <class Real, class At>
std::vector<complex_of_t<Real>> cholesky_lower(int m, const At& a, Real* min_pivot = nullptr,
                                               Real* max_pivot = nullptr) {
    using C = complex_of_t<Real>;
    using std::abs;
    using std::sqrt;
    std::vector<C> L(static_cast<size_t>(m) * m, C(Real(0), Real(0)));
    const Real tol = posdef_pivot_tolerance<Real>() * a(0, 0).real();
    Real pmin(0), pmax(0);
    for (int j = 0; j < m; ++j) {
        Real diag = a(j, j).real();
        for (int k = 0; k < j; ++k) {
            const C& l = L[j * m + k];
            diag -= l.real() * l.real() + l.imag() * l.imag();
        }
        if (j == 0) pmin = pmax = diag;
        if (diag < pmin) pmin = diag;
        if (diag > pmax) pmax = diag;
        if (!(diag > tol)) {
            double cond = static_cast<double>(pmax / (diag > Real(0) ? diag : tol));
            throw posdef_error(j, static_cast<double>(diag), cond);
        }
        Real ljj = sqrt(diag);
        L[j * m + j] = C(ljj, Real(0));
        for (int i = j + 1; i < m; ++i) {
            C s = a(i, j);
            for (int k = 0; k < j; ++k) s -= L[i * m + k] * conj(L[j * m + k]);
            L[i * m + j] = s / ljj;
        }
    }
    if (min_pivot) *min_pivot = pmin;
    if (max_pivot) *max_pivot = pmax;
    return L;
}

// Gram matrix of monomials under the discretized measure. Entries accumulate
// over nodes in index order with compensated summation; Hermitian symmetry is
// enforced by construction (j >= k computed, mirror conjugated).
template <class Real>
MomentMatrix<Real> moment_matrix(const Measure<Real>& measure, int order) {
    using C = complex_of_t<Real>;
    if (order < 1) throw std::invalid_argument("moment_matrix: order must be >= 1");
    if (static_cast<int>(measure.nodes.size()) < order)
        throw std::invalid_argument("moment_matrix: node count below requested order");
    const size_t n = measure.nodes.size();
    std::vector<C> powers(n * order);
    for (size_t i = 0; i < n; ++i) {
        C p(Real(1), Real(0));
        for (int j = 0; j < order; ++j) {
            powers[i * order + j] = p;
            p *= measure.nodes[i];
        }
    }
    MomentMatrix<Real> M;
    M.order = order;
    M.entries.resize(static_cast<size_t>(order) * order);
    for (int j = 0; j < order; ++j) {
        for (int k = 0; k <= j; ++k) {
            Real sr(0), si(0), cr(0), ci(0);  // Kahan accumulators per component
            for (size_t i = 0; i < n; ++i) {
                C term = measure.weights[i] * powers[i * order + j] * conj(powers[i * order + k]);
                Real yr = term.real() - cr;
                Real tr = sr + yr;
                cr = (tr - sr) - yr;
                sr = tr;
                Real yi = term.imag() - ci;
                Real ti = si + yi;
                ci = (ti - si) - yi;
                si = ti;
            }
            // diagonal entries are real; drop the rounding-level imaginary
            // part so Hermitian symmetry holds exactly
            M.at(j, k) = C(sr, k == j ? Real(0) : si);
            if (k != j) M.at(k, j) = conj(M.at(j, k));
        }
    }
    Real pmin, pmax;
    cholesky_lower<Real>(order, [&M](int r, int s) -> const C& { return M.at(r, s); }, &pmin,
                         &pmax);
    M.condition_estimate = pmax / pmin;
    return M;
}

// <Q, R>_mu for coefficient sequences in the monomial basis (Horner).
inline cxd inner_product(const Measure<double>& measure, std::span<const cxd> Q,
                         std::span<const cxd> R) {
    if (Q.empty() || R.empty())
        throw std::invalid_argument("inner_product: empty coefficient sequence");
    auto horner = [](std::span<const cxd> c, cxd z) {
        cxd acc = c.back();
        for (size_t i = c.size() - 1; i-- > 0;) acc = acc * z + c[i];
        return acc;
    };
    cxd sum = 0;
    for (size_t i = 0; i < measure.nodes.size(); ++i)
        sum += measure.weights[i] * horner(Q, measure.nodes[i]) *
               std::conj(horner(R, measure.nodes[i]));
    if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag()))
        throw std::runtime_error("inner_product: non-finite result");
    return sum;
}

}  // namespace hessmap
