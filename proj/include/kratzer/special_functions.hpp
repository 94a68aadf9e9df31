#ifndef KRATZER_SPECIAL_FUNCTIONS_HPP
#define KRATZER_SPECIAL_FUNCTIONS_HPP

#include <complex>

#include "kratzer/errors.hpp"

namespace kratzer {

using cplx = std::complex<double>;

// Convergence control for hypergeometric series.
struct SeriesControl {
    double rel_tol = 1e-12;  // in (0, 1e-6]
    int max_terms = 500;     // >= 50
};

// Principal-branch complex log-gamma.
//
// Lanczos approximation for Re z >= 0.5; elsewhere the recursion
// lgamma(z) = lgamma(z+N) - sum log(z+k), whose principal logs reproduce
// the principal branch off the real axis (and its E+i0 limit on it).
// Throws PoleError at non-positive integers.
cplx log_gamma(cplx z);

// log|Gamma(x)| for real x with the sign of Gamma(x) in `sign`.
double log_gamma_signed(double x, int& sign);

// Gamma(z) = exp(log_gamma(z)); overflow reported as Error.
cplx gamma_fn(cplx z);

// 1/Gamma(w) and its w-derivative; entire, finite at the poles of Gamma.
void recip_gamma(cplx w, cplx& rg, cplx& drg);

// Digamma psi(z) = Gamma'(z)/Gamma(z): recursion into Re z >= 10 plus the
// Bernoulli asymptotic tail. Throws PoleError at non-positive integers.
cplx digamma(cplx z);
double digamma_real(double x);

// Trigamma psi'(x), real arguments off the poles.
double trigamma_real(double x);

// Kummer confluent function Phi(a,b;z) (a.k.a. M / 1F1).
//
// Taylor series inside |z| <= 30 (with a Kummer-transform rewrite for
// Re z < 0 and a double-double pass when the terms cancel heavily),
// large-|z| asymptotics outside. Terminates exactly when a is a
// non-positive integer. Throws PoleError for b in {0,-1,-2,...}.
cplx kummer_phi(cplx a, cplx b, cplx z, SeriesControl ctl = {});

// lim_{b -> -n} Phi(a,b;z)/Gamma(b)
//   = z^{n+1} (a)_{n+1} / (n+1)! * Phi(a+n+1, n+2; z),   n >= 0.
cplx kummer_phi_limit(cplx a, int n, cplx z, SeriesControl ctl = {});

// Tricomi function Psi(a,b;z), principal branch of z^{1-b}.
//
// Non-integer b: two-Phi connection formula. Integer b = 1, 2: the
// logarithmic series shared with the u3/u5 solution bases. Integer
// b <= 0 is mapped through Psi(a,b;z) = z^{1-b} Psi(a-b+1,2-b;z);
// integer b >= 3 is outside the parameter set this library generates
// and throws BranchError. |z| >= 30 uses the z^{-a} 2F0 expansion.
cplx tricomi_psi(cplx a, cplx b, cplx z, SeriesControl ctl = {});

// d/dmu [ x^mu Phi(1/2 + mu + g1/lambda, 1 + 2 mu; z) ] at mu = 0
//   = ln(x) Phi(a,1;z) + dPhi/da + 2 dPhi/db,  a = 1/2 + g1/lambda,
// with the parameter derivatives summed term by term.
cplx phi_mu_derivative(cplx g1_over_lambda, cplx z, double x,
                       SeriesControl ctl = {});

namespace detail_sf {

// Value and d/dz pairs produced by the series kernels.
struct HypValue {
    cplx f;   // function value
    cplx fz;  // d/dz
};

// First parameter derivatives alongside the value.
struct HypDerivs {
    cplx f, fz;
    cplx fa, faz;  // d/da and d/da d/dz
    cplx fb, fbz;  // d/db and d/db d/dz
};

// Plain Taylor series for Phi(a,b;z); no transform, no dispatch.
HypValue kummer_series(cplx a, cplx b, cplx z, const SeriesControl& ctl);

// Taylor series with d/da and d/db, for the logarithmic bases.
HypDerivs kummer_series_derivs(cplx a, cplx b, cplx z, const SeriesControl& ctl);

// Regularized series PhiG(a,b;z) = Phi(a,b;z)/Gamma(b) with d/da, d/db;
// entire in b, usable at non-positive integer b.
HypDerivs kummer_series_regularized(cplx a, cplx b, cplx z, const SeriesControl& ctl);

// Series route forced (with Kummer-transform preconditioning), regardless
// of |z|; exposed so tests can probe the series/asymptotic switch.
cplx phi_series_route(cplx a, cplx b, cplx z, const SeriesControl& ctl);

// Large-|z| asymptotics of Phi and of z^a Psi (the 2F0 sum).
HypValue kummer_asymptotic(cplx a, cplx b, cplx z, const SeriesControl& ctl);
HypValue tricomi_asymptotic(cplx a, cplx b, cplx z, const SeriesControl& ctl);

// Gamma(a) * Psi(a,1;z) via the b=1 logarithmic series (finite at a poles
// of Gamma when multiplied out is NOT needed here; a must avoid them).
HypValue gamma_psi_b1(cplx a, cplx z, const SeriesControl& ctl);

// z * Gamma(1+ap) * Psi(1+ap, 2; z) via the b=2 logarithmic series.
HypValue z_gamma_psi_b2(cplx ap, cplx z, const SeriesControl& ctl);

// Switch radius between Taylor series and asymptotic expansions.
inline constexpr double kAsymptoticRadius = 30.0;

} // namespace detail_sf

} // namespace kratzer

#endif
