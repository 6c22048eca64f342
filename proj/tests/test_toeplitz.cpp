#include <catch2/catch_amalgamated.hpp>

#include "hessmap/riemann.hpp"
#include "hessmap/toeplitz.hpp"

using namespace hessmap;

namespace {
Measure<double> make(CurveKind kind, int nps, double a = 0, double b = 0) {
    CurveSpec spec;
    spec.kind = kind;
    spec.a = a;
    spec.b = b;
    return discretize_measure(build_curve(spec), nps);
}
}  // namespace

TEST_CASE("theta_norms: arc closed form collapses to a single element per column") {
    const int N = 30;
    HessenbergSection D = closed_form_arc_hessenberg(2.0, N);
    DiagonalLimits lim = limits_from_reference(make_reference(RefKind::arc, 2.0), 2 * N);
    ToeplitzDiagnostics diag = theta_norms(D, lim);
    const double q = std::sqrt(3.0) / 2;
    for (int n = 1; n <= N - 1; ++n) {
        // single nonzero deviation entry (row 1): Theta_n = theta_n =
        // ((a-1)/a^2) q^{n-1} for 1-based column n; the paper's display
        // writes the exponent as n, counting columns from 0.
        double expect = 0.25 * std::pow(q, n - 1);
        CHECK(diag.theta2[n - 1] == Catch::Approx(expect).epsilon(1e-12));
        CHECK(diag.theta1[n - 1] == Catch::Approx(expect).epsilon(1e-12));
    }
    CHECK(diag.theta2[2] == Catch::Approx(0.1875).margin(1e-15));  // 0.25 * q^2
}

TEST_CASE("theta_norms: circle shift deviation is zero") {
    DiagonalLimits lim;
    lim.d1 = 1;
    lim.dneg.assign(16, cxd(0));
    ToeplitzDiagnostics diag = theta_norms(shift_section(12), lim);
    for (double v : diag.theta2) CHECK(v == 0.0);
    for (double v : diag.theta1) CHECK(v == 0.0);
}

TEST_CASE("theta_norms: cross table values and Theta <= theta") {
    HessenbergSection D = hessenberg_arnoldi(make(CurveKind::cross, 160, 1, 1), 17).section;
    DiagonalLimits lim = limits_from_reference(make_reference(RefKind::cross, 1, 1), 64);
    ToeplitzDiagnostics diag = theta_norms(D, lim);
    CHECK(diag.theta2[3] == Catch::Approx(0.1756039179).margin(1e-6));
    CHECK(diag.theta1[3] == Catch::Approx(0.1771699698).margin(1e-6));
    CHECK(diag.theta2[7] == Catch::Approx(0.08706648).margin(1e-6));
    CHECK(diag.theta1[7] == Catch::Approx(0.10815579).margin(1e-6));
    for (size_t i = 0; i < diag.theta2.size(); ++i) {
        CHECK(diag.theta2[i] <= diag.theta1[i] + 1e-15);
        CHECK(diag.theta2[i] >= 0);
        CHECK(diag.tail_l2[i] >= 0);
    }
    // tail_l2 is nonincreasing in n (tail of a fixed l2 vector)
    for (size_t i = 1; i < diag.tail_l2.size(); ++i)
        CHECK(diag.tail_l2[i] <= diag.tail_l2[i - 1] + 1e-15);
    CHECK_THROWS_AS(theta_norms(D, DiagonalLimits{}), std::invalid_argument);
}

TEST_CASE("theta_norms: row_l1 partial sums monotone and geometrically bounded for the arc") {
    DiagonalLimits lim = limits_from_reference(make_reference(RefKind::arc, 2.0), 120);
    ToeplitzDiagnostics diag = theta_norms(closed_form_arc_hessenberg(2.0, 10), lim);
    for (size_t i = 1; i < diag.row_l1.size(); ++i) CHECK(diag.row_l1[i] >= diag.row_l1[i - 1]);
    // ratio test on |d_{-k}|: ratio -> sqrt(3)/2 < 1
    for (size_t k = 5; k + 1 < lim.dneg.size(); ++k)
        CHECK(std::abs(lim.dneg[k + 1]) / std::abs(lim.dneg[k]) ==
              Catch::Approx(std::sqrt(3.0) / 2).epsilon(1e-10));
}

TEST_CASE("estimate_diagonal_limits: exactly Toeplitz tails are recovered with zero spread") {
    HessenbergSection D = closed_form_arc_hessenberg(2.0, 40);
    DiagonalLimits lim = estimate_diagonal_limits(D, 5);
    CHECK(lim.provenance == DiagonalLimits::Provenance::estimated);
    CHECK(lim.d1 == Catch::Approx(std::sqrt(3.0) / 2).margin(1e-15));
    CHECK(lim.d1_spread < 1e-15);
    CHECK(std::abs(lim.dneg[0] - cxd(-0.25)) < 1e-15);
    CHECK(lim.dneg_spread[0] < 1e-15);
    // deeper diagonals: -q^k/4
    const double q = std::sqrt(3.0) / 2;
    for (int k = 1; k <= 10; ++k) {
        CHECK(std::abs(lim.dneg[k] - cxd(-std::pow(q, k) / 4)) < 1e-14);
        CHECK(lim.dneg_spread[k] < 1e-14);
    }

    DiagonalLimits sh = estimate_diagonal_limits(shift_section(20), 4);
    CHECK(sh.d1 == 1.0);
    for (const cxd& c : sh.dneg) CHECK(c == cxd(0));
}

TEST_CASE("estimate_diagonal_limits: cross capacity and window validation") {
    HessenbergSection D = hessenberg_arnoldi(make(CurveKind::cross, 320, 1, 1), 40).section;
    DiagonalLimits lim = estimate_diagonal_limits(D, 8);
    CHECK(lim.d1 == Catch::Approx(std::sqrt(2.0) / 2).margin(2e-2));
    CHECK_THROWS_AS(estimate_diagonal_limits(D, 0), std::invalid_argument);
    CHECK_THROWS_AS(estimate_diagonal_limits(D, 20), std::invalid_argument);
}

TEST_CASE("symbol_from_limits: closed-form symbol values") {
    DiagonalLimits arc = limits_from_reference(make_reference(RefKind::arc, 2.0), 220);
    LaurentMap sym = symbol_from_limits(arc, 200);
    CHECK(std::abs(sym(cxd(1)) - cxd(-1)) < 1e-12);

    DiagonalLimits circle = limits_from_reference(make_reference(RefKind::identity_circle), 8);
    LaurentMap symc = symbol_from_limits(circle, 4);
    CHECK(std::abs(symc(cxd(0, 1)) - cxd(0, 1)) < 1e-15);

    DiagonalLimits iv;
    iv.d1 = 0.5;
    iv.dneg = {cxd(0), cxd(0.5)};
    LaurentMap symi = symbol_from_limits(iv, 1);
    CHECK(std::abs(symi(cxd(1)) - cxd(1)) < 1e-15);

    CHECK_THROWS_AS(symbol_from_limits(iv, 2), std::invalid_argument);
}
