#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hessmap/moments.hpp"

namespace hessmap {

// Krylov space numerically exhausted: the measure is supported on too few
// points (or the discretization is too coarse) to continue.
struct breakdown_error : std::runtime_error {
    int step;
    explicit breakdown_error(int s)
        : std::runtime_error("arnoldi breakdown at step " + std::to_string(s) +
                             ": residual below threshold (measure supported on <= " +
                             std::to_string(s) + " points or discretization too coarse)"),
          step(s) {}
};

// Finite n x n section of the multiplication-by-z Hessenberg matrix.
// Entry accessors are 1-based, mirroring the usual d_{i,j} notation.
struct HessenbergSection {
    enum class Source { arnoldi, moments, closed_form_arc, jacobi, shift };

    int size = 0;
    Source source = Source::arnoldi;
    double param_a = 0, param_b = 0;
    std::vector<cxd> entries;  // row-major

    HessenbergSection() = default;
    HessenbergSection(int n, Source src) : size(n), source(src), entries(size_t(n) * n, cxd(0)) {}

    cxd d(int i, int j) const { return entries[size_t(i - 1) * size + (j - 1)]; }
    cxd& d(int i, int j) { return entries[size_t(i - 1) * size + (j - 1)]; }
};

inline const char* source_name(HessenbergSection::Source s) {
    switch (s) {
        case HessenbergSection::Source::arnoldi: return "arnoldi";
        case HessenbergSection::Source::moments: return "moments";
        case HessenbergSection::Source::closed_form_arc: return "closed_form_arc";
        case HessenbergSection::Source::jacobi: return "jacobi";
        case HessenbergSection::Source::shift: return "shift";
    }
    return "?";
}

struct ArnoldiResult {
    HessenbergSection section;
    // vectors[k][i] = sqrt(w_i) * P_k(z_i), k = 0..n-1: the orthonormal basis
    // sampled at the nodes.
    std::vector<std::vector<cxd>> vectors;
};

namespace detail {
inline cxd dot(const std::vector<cxd>& a, const std::vector<cxd>& b) {
    cxd s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}
inline double nrm(const std::vector<cxd>& a) {
    double s = 0;
    for (const cxd& v : a) s += std::norm(v);
    return std::sqrt(s);
}
}  // namespace detail

// Arnoldi on the diagonal node-multiplication operator, starting from
// v_0 = (sqrt(w_i))_i, with one full reorthogonalization pass.
inline ArnoldiResult hessenberg_arnoldi(const Measure<double>& measure, int n) {
    if (n < 1) throw std::invalid_argument("hessenberg_arnoldi: n must be >= 1");
    if (static_cast<int>(measure.nodes.size()) < n + 1)
        throw std::invalid_argument("hessenberg_arnoldi: need at least n+1 nodes");
    const size_t N = measure.nodes.size();
    ArnoldiResult res;
    res.section = HessenbergSection(n, HessenbergSection::Source::arnoldi);
    res.vectors.reserve(n);

    std::vector<cxd> v0(N);
    for (size_t i = 0; i < N; ++i) v0[i] = std::sqrt(measure.weights[i]);
    double nv = detail::nrm(v0);
    for (cxd& x : v0) x /= nv;
    res.vectors.push_back(std::move(v0));

    std::vector<cxd> u(N);
    double initial_norm = 0;
    for (size_t i = 0; i < N; ++i) initial_norm += std::norm(measure.nodes[i] * res.vectors[0][i]);
    initial_norm = std::sqrt(initial_norm);

    for (int j = 1; j <= n; ++j) {
        for (size_t i = 0; i < N; ++i) u[i] = measure.nodes[i] * res.vectors[j - 1][i];
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                cxd c = detail::dot(res.vectors[k], u);
                res.section.d(k + 1, j) += c;
                for (size_t i = 0; i < N; ++i) u[i] -= c * res.vectors[k][i];
            }
        }
        double r = detail::nrm(u);
        if (r < 1e-14 * initial_norm) throw breakdown_error(j);
        if (j < n) {
            res.section.d(j + 1, j) = r;
            std::vector<cxd> vj(N);
            for (size_t i = 0; i < N; ++i) vj[i] = u[i] / r;
            res.vectors.push_back(std::move(vj));
        }
        // d_{n+1,n} falls outside the n x n section and is dropped.
    }
    return res;
}

// Moment-Cholesky route: M = L L*, orthonormal coefficients C = L^{-1}, then
// d_{k+1,j+1} = <z P_j, P_k> assembled from the shifted moment block.
template <class Real>
HessenbergSection hessenberg_from_moments(const MomentMatrix<Real>& M, int n) {
    using C = complex_of_t<Real>;
    if (n < 1) throw std::invalid_argument("hessenberg_from_moments: n must be >= 1");
    if (M.order < n + 1)
        throw std::invalid_argument("hessenberg_from_moments: moment matrix order must be >= n+1");
    const int m = n + 1;
    std::vector<C> L =
        cholesky_lower<Real>(m, [&M](int r, int s) -> const C& { return M.at(r, s); });
    // Forward substitution: rows of Cinv are the ONPS monomial coefficients.
    std::vector<C> Cinv(size_t(m) * m, C(Real(0), Real(0)));
    for (int j = 0; j < m; ++j) {
        Cinv[j * m + j] = C(Real(1), Real(0)) / L[j * m + j];
        for (int i = j + 1; i < m; ++i) {
            C s(Real(0), Real(0));
            for (int k = j; k < i; ++k) s += L[i * m + k] * Cinv[k * m + j];
            Cinv[i * m + j] = -s / L[i * m + i];
        }
    }
    // B[j][s] = sum_r Cinv[j][r] * <z^{r+1}, z^s>
    std::vector<C> B(size_t(n) * n, C(Real(0), Real(0)));
    for (int j = 0; j < n; ++j)
        for (int s = 0; s < n; ++s) {
            C acc(Real(0), Real(0));
            for (int r = 0; r <= j; ++r) acc += Cinv[j * m + r] * M.at(r + 1, s);
            B[j * n + s] = acc;
        }
    HessenbergSection D(n, HessenbergSection::Source::moments);
    for (int j = 0; j < n; ++j) {
        const int kmax = std::min(j + 1, n - 1);
        for (int k = 0; k <= kmax; ++k) {
            C acc(Real(0), Real(0));
            for (int s = 0; s <= k; ++s) acc += B[j * n + s] * conj(Cinv[k * m + s]);
            D.d(k + 1, j + 1) = to_cxd(acc);
        }
    }
    return D;
}

// Example-1 matrix for an arc of the unit circle: constant diagonals from the
// second column on, unitary, with a rank-one deviation from its Toeplitz limit.
inline HessenbergSection closed_form_arc_hessenberg(double a, int n) {
    if (!(a > 1)) throw std::invalid_argument("closed_form_arc_hessenberg: requires a > 1");
    if (n < 1) throw std::invalid_argument("closed_form_arc_hessenberg: n must be >= 1");
    const double q = std::sqrt(a * a - 1) / a;
    HessenbergSection D(n, HessenbergSection::Source::closed_form_arc);
    D.param_a = a;
    for (int k = 1; k <= n; ++k) D.d(1, k) = -std::pow(q, k - 1) / a;
    for (int j = 2; j <= n; ++j)
        for (int k = j; k <= n; ++k) D.d(j, k) = -std::pow(q, k - j) / (a * a);
    for (int j = 1; j < n; ++j) D.d(j + 1, j) = q;
    return D;
}

enum class JacobiMode { limit, legendre };

inline HessenbergSection jacobi_interval(double a, double b, int n, JacobiMode mode) {
    if (!(a < b)) throw std::invalid_argument("jacobi_interval: requires a < b");
    if (n < 1) throw std::invalid_argument("jacobi_interval: n must be >= 1");
    HessenbergSection D(n, HessenbergSection::Source::jacobi);
    D.param_a = a;
    D.param_b = b;
    const double mid = (a + b) / 2;
    for (int k = 1; k <= n; ++k) D.d(k, k) = mid;
    for (int k = 1; k < n; ++k) {
        double off = (mode == JacobiMode::limit)
                         ? (b - a) / 4
                         : ((b - a) / 2) * k / std::sqrt(4.0 * k * k - 1);
        D.d(k + 1, k) = off;
        D.d(k, k + 1) = off;
    }
    return D;
}

inline HessenbergSection shift_section(int n) {
    HessenbergSection D(n, HessenbergSection::Source::shift);
    for (int j = 1; j < n; ++j) D.d(j + 1, j) = 1;
    return D;
}

struct OrthonormalBasis {
    int degree = 0;                         // highest represented degree
    std::vector<std::vector<cxd>> coeffs;   // row k: monomial coefficients of P_k
    std::vector<double> leading;            // gamma_k
};

// Monomial coefficients of the ONPS recovered from the section by inverting
// the recurrence z P_j = sum_k d_{k+1,j+1} P_k; reaches degree size-1.
inline OrthonormalBasis basis_from_section(const HessenbergSection& D) {
    OrthonormalBasis b;
    b.degree = D.size - 1;
    b.coeffs.assign(D.size, {});
    b.coeffs[0] = {cxd(1)};
    b.leading.assign(D.size, 0.0);
    b.leading[0] = 1.0;
    for (int j = 0; j + 1 <= b.degree; ++j) {
        const cxd sub = D.d(j + 2, j + 1);
        if (!(sub.real() > 0))
            throw std::runtime_error("basis_from_section: nonpositive subdiagonal entry");
        std::vector<cxd> next(j + 2, cxd(0));
        for (int m = 0; m <= j; ++m) next[m + 1] = b.coeffs[j][m];  // z * P_j
        for (int k = 0; k <= j; ++k)
            for (int m = 0; m < static_cast<int>(b.coeffs[k].size()); ++m)
                next[m] -= D.d(k + 1, j + 1) * b.coeffs[k][m];
        for (cxd& c : next) c /= sub;
        b.leading[j + 1] = next.back().real();
        b.coeffs[j + 1] = std::move(next);
    }
    return b;
}

// Max weighted l2 residual of z P_{j-1} - sum_k d_{k,j} P_{k-1} over columns
// j < size, where the P_k are rebuilt independently of the section by
// Gram-Schmidt on monomials under the measure.
inline double verify_recurrence(const HessenbergSection& D, const Measure<double>& measure) {
    const int n = D.size;
    const size_t N = measure.nodes.size();
    if (static_cast<int>(N) < n + 1)
        throw std::invalid_argument("verify_recurrence: size mismatch (too few nodes)");
    std::vector<std::vector<cxd>> Q;
    Q.reserve(n);
    std::vector<cxd> mono(N);
    for (size_t i = 0; i < N; ++i) mono[i] = std::sqrt(measure.weights[i]);
    for (int k = 0; k < n; ++k) {
        std::vector<cxd> u = mono;
        for (int pass = 0; pass < 2; ++pass)
            for (int r = 0; r < k; ++r) {
                cxd c = detail::dot(Q[r], u);
                for (size_t i = 0; i < N; ++i) u[i] -= c * Q[r][i];
            }
        double r = detail::nrm(u);
        for (cxd& x : u) x /= r;
        Q.push_back(u);
        for (size_t i = 0; i < N; ++i) mono[i] *= measure.nodes[i];
    }
    double worst = 0;
    std::vector<cxd> resid(N);
    for (int j = 1; j < n; ++j) {
        for (size_t i = 0; i < N; ++i) resid[i] = measure.nodes[i] * Q[j - 1][i];
        for (int k = 1; k <= j + 1; ++k) {
            cxd c = D.d(k, j);
            for (size_t i = 0; i < N; ++i) resid[i] -= c * Q[k - 1][i];
        }
        worst = std::max(worst, detail::nrm(resid));
    }
    return worst;
}

}  // namespace hessmap
