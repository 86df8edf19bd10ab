#pragma once

// Closed forms for zeta_A(s) = 1/(1 - q^{1-s}) and the functional-equation factors
// X(s) = q^{s-1/2}, X_P(s) = |P|^{1/2-s} X(s) = q^{g(1-2s)}.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace fflm {

using cplx = std::complex<double>;

class PoleError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

namespace detail {
inline constexpr double pole_guard = 1e-13;

inline cplx q_pow(unsigned q, cplx s) { return std::exp(s * std::log(static_cast<double>(q))); }
}  // namespace detail

inline cplx zeta_A(unsigned q, cplx s) {
    const cplx denom = 1.0 - detail::q_pow(q, 1.0 - s);
    if (std::abs(denom) < detail::pole_guard)
        throw PoleError("zeta_A evaluated at a pole s = " + std::to_string(s.real()) + "+" +
                        std::to_string(s.imag()) + "i");
    return 1.0 / denom;
}

inline double zeta_A(unsigned q, double s) { return zeta_A(q, cplx(s, 0.0)).real(); }

/// 1/zeta_A(s) = 1 - q^{1-s}; entire, so it vanishes at the poles instead of raising.
inline double inv_zeta_A(unsigned q, double s) { return 1.0 - std::pow(static_cast<double>(q), 1.0 - s); }

/// zeta_A'(s) / zeta_A(s) = -log q * q^{1-s} / (1 - q^{1-s}).
inline cplx zeta_A_dlog(unsigned q, cplx s) {
    const cplx w = detail::q_pow(q, 1.0 - s);
    if (std::abs(1.0 - w) < detail::pole_guard) throw PoleError("zeta_A'/zeta_A evaluated at a pole");
    return -std::log(static_cast<double>(q)) * w / (1.0 - w);
}

inline double zeta_A_dlog(unsigned q, double s) { return zeta_A_dlog(q, cplx(s, 0.0)).real(); }

inline cplx xfactor(unsigned q, cplx s) { return detail::q_pow(q, s - 0.5); }
inline double xfactor(unsigned q, double s) { return std::pow(static_cast<double>(q), s - 0.5); }

/// X'(s)/X(s); constant because X is a pure exponential.
inline double xfactor_dlog(unsigned q) { return std::log(static_cast<double>(q)); }

inline cplx xfactor_P(unsigned q, int g, cplx s) { return detail::q_pow(q, static_cast<double>(g) * (1.0 - 2.0 * s)); }
inline double xfactor_P(unsigned q, int g, double s) {
    return std::pow(static_cast<double>(q), static_cast<double>(g) * (1.0 - 2.0 * s));
}

}  // namespace fflm
