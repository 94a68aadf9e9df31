#ifndef KRATZER_BASIS_HPP
#define KRATZER_BASIS_HPP

#include <vector>

#include "kratzer/model.hpp"
#include "kratzer/special_functions.hpp"

namespace kratzer {

// Names the solutions of  psi'' - (g1/x + g2/x^2 - W) psi = 0  built here.
//
//   U1        x^{1/2+mu} e^{-z/2} Phi(a+, b+; z), entire in W
//   U2        mu -> -mu partner (undefined at 2mu integer)
//   U3        logarithmic partner at mu = 0   (third range)
//   U5        logarithmic partner at mu = 1/2 (fifth range)
//   V1        lambda^{2mu} x^{1/2+mu} e^{-z/2} Psi(a+, b+; z),
//             recessive at infinity for Im W != 0
//   Vm        u2 regularized against u1 inside m-1 < 2mu < m+1
//   Principal u_{2,nu} / u_{3,vartheta} / u_{4,theta} / u_{5,eps}
//             (the combination obeying the extension's boundary condition;
//              u1 in the first range)
//   Conjugate the tilde partners of Principal
struct SolutionId {
    enum Tag { U1, U2, U3, U5, V1, Vm, Principal, Conjugate };
    Tag tag = U1;
    int m = 0;  // Vm only

    static SolutionId u1() { return {U1, 0}; }
    static SolutionId u2() { return {U2, 0}; }
    static SolutionId u3() { return {U3, 0}; }
    static SolutionId u5() { return {U5, 0}; }
    static SolutionId v1() { return {V1, 0}; }
    static SolutionId vm(int m) { return {Vm, m}; }
    static SolutionId principal() { return {Principal, 0}; }
    static SolutionId conjugate() { return {Conjugate, 0}; }
};

struct SolutionSample {
    cplx value;
    cplx deriv;  // d/dx
    double x;
    cplx W;
};

// Per-(p, W) scratch: the variable change z = lambda x with
// lambda = 2 sqrt(|W|) e^{i(phi-pi)/2}, W = |W| e^{i phi}, phi in [0, 2pi),
// and the confluent parameters a± = 1/2 ± mu + g1/lambda, b± = 1 ± 2mu.
struct WaveContext {
    CouplingParams p;
    RangeClass range;
    cplx W;
    cplx lambda;
    cplx mu;
    cplx alpha_p, alpha_m, beta_p, beta_m;

    cplx z(double x) const { return lambda * x; }
    static WaveContext make(const CouplingParams& p, cplx W);
};

cplx lambda_of(cplx W);

// ---- evaluation -----------------------------------------------------------

SolutionSample eval_solution(SolutionId id, const CouplingParams& p,
                             const ExtensionParam& ext, double x, cplx W);

SolutionSample eval_u1(const CouplingParams& p, double x, cplx W);
SolutionSample eval_u2(const CouplingParams& p, double x, cplx W);
SolutionSample eval_u3(const CouplingParams& p, double x, cplx W);
SolutionSample eval_u5(const CouplingParams& p, double x, cplx W);
SolutionSample eval_v1(const CouplingParams& p, double x, cplx W);
SolutionSample eval_vm(int m, const CouplingParams& p, double x, cplx W);
SolutionSample eval_principal(const CouplingParams& p, const ExtensionParam& ext,
                              double x, cplx W);
SolutionSample eval_conjugate(const CouplingParams& p, const ExtensionParam& ext,
                              double x, cplx W);

// u v' - u' v evaluated from two samples at one x.
cplx wronskian_of(const SolutionSample& a, const SolutionSample& b);
cplx wronskian(SolutionId ida, SolutionId idb, const CouplingParams& p,
               const ExtensionParam& ext, double x, cplx W);

// ---- coefficient functions used across modules ----------------------------

// omega(W) = Gamma(b+)/Gamma(a+); Wr(u1, v1) = -omega.
cplx omega_fn(const WaveContext& c);

// a_m(W) = lambda^m (a_{-m})_m / m!  with a_{±m} = (1±m)/2 + g1/lambda;
// real polynomial in W.
cplx am_coefficient(const WaveContext& c, int m);

// A_m(W) in v1 = A_m u1 + (omega/2mu) v_(m); finite at 2mu = m.
cplx Am_coefficient(const WaveContext& c, int m);

// omega0(W) = 2 psi(1) - psi(a) - ln(lambda/k0) (third range), and the
// mu = 1/2 analogue omega_half(W) = g1 C + g1[psi(a_half) + ln(lambda/k0)]
// - g1 - lambda/2 (fifth range).
cplx omega0_fn(const WaveContext& c);
cplx omega_half_fn(const WaveContext& c);

// ---- origin asymptotics ----------------------------------------------------

// The two leading origin forms of the range, evaluated with derivative:
//   first  = u1as  (k0 x)^{1/2+mu}            [R5: k0 x]
//   second = u2as / u3as / u5as per range.
struct AsymptoticForm {
    cplx value;
    cplx deriv;
};
AsymptoticForm origin_form_first(const CouplingParams& p, double x);
AsymptoticForm origin_form_second(const CouplingParams& p, double x);

struct BoundaryFit {
    cplx a1, a2;
    double residual;  // rms misfit / rms sample
};

// Least-squares a.b. coefficients of a sample set near the origin against
// the range's two asymptotic forms (values and derivatives stacked).
BoundaryFit boundary_fit(const std::vector<SolutionSample>& samples,
                         const CouplingParams& p);

// Default largest x considered inside the origin asymptotic regime.
double asymptotic_regime_bound(const CouplingParams& p, cplx W);

} // namespace kratzer

#endif
