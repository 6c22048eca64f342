#pragma once

#include <complex>
#include <limits>
#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace hessmap {

namespace mp = boost::multiprecision;

using cxd = std::complex<double>;

// Extended-precision tiers. Requested digit counts are rounded up to the
// nearest tier (see precision_tier_digits).
using cx30 = mp::cpp_complex<30>;
using cx50 = mp::cpp_complex<50>;
using cx100 = mp::cpp_complex<100>;
using ext30 = cx30::value_type;
using ext50 = cx50::value_type;
using ext100 = cx100::value_type;

template <class Real>
struct complex_of;
template <>
struct complex_of<double> {
    using type = cxd;
};
template <>
struct complex_of<ext30> {
    using type = cx30;
};
template <>
struct complex_of<ext50> {
    using type = cx50;
};
template <>
struct complex_of<ext100> {
    using type = cx100;
};

template <class Real>
using complex_of_t = typename complex_of<Real>::type;

template <class Real>
complex_of_t<Real> make_cx(const Real& re, const Real& im) {
    return complex_of_t<Real>(re, im);
}

template <class Real>
Real real_pi() {
    using std::acos;
    return acos(Real(-1));
}

template <class Real>
Real real_eps() {
    return std::numeric_limits<Real>::epsilon();
}

inline cxd to_cxd(const cxd& z) { return z; }

template <class C>
cxd to_cxd(const C& z) {
    return cxd(static_cast<double>(z.real()), static_cast<double>(z.imag()));
}

inline int precision_tier_digits(int requested) {
    if (requested <= 30) return 30;
    if (requested <= 50) return 50;
    return 100;
}

}  // namespace hessmap
