#include "kratzer/basis.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace kratzer {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kEuler = 0.57721566490153286060651209008240243;
constexpr double kAsymV1Radius = 20.0;   // v1 switches to the 2F0 route here
constexpr double kHalfIntBand = 1e-3;    // |2mu - m| band for limit forms
constexpr double kHalfIntExact = 1e-12;

using detail_sf::HypDerivs;
using detail_sf::HypValue;

const SeriesControl kCtl{};

bool nonpos_int(cplx z, double tol = 1e-12) {
    if (std::abs(z.imag()) > tol) return false;
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) <= tol;
}

cplx xpow(double x, cplx e) { return std::exp(e * std::log(x)); }

// Phi(a,b;z) with d/dz, dispatching series / termination / asymptotics.
HypValue phi_vd(cplx a, cplx b, cplx z) {
    if (z == cplx(0.0, 0.0)) return {1.0, a / b};
    if (nonpos_int(a) || std::abs(z) <= detail_sf::kAsymptoticRadius) {
        if (z.real() < 0.0 && !nonpos_int(a)) {
            HypValue g = detail_sf::kummer_series(b - a, b, -z, kCtl);
            cplx ez = std::exp(z);
            return {ez * g.f, ez * (g.f - g.fz)};
        }
        return detail_sf::kummer_series(a, b, z, kCtl);
    }
    return detail_sf::kummer_asymptotic(a, b, z, kCtl);
}

// Psi(a,b;z) with d/dz; integer b only for b in {1,2} (log kernels),
// matching the solution-basis constructions.
HypValue psi_vd(cplx a, cplx b, cplx z) {
    if (z == cplx(0.0, 0.0)) throw DomainError("psi_vd: z = 0");
    if (std::abs(z) >= kAsymV1Radius)
        return detail_sf::tricomi_asymptotic(a, b, z, kCtl);

    bool b_int = std::abs(b.imag()) < 1e-9 &&
                 std::abs(b.real() - std::round(b.real())) < 1e-9;
    if (b_int) {
        int bi = static_cast<int>(std::lround(b.real()));
        if (bi == 1 || bi == 2) {
            if (nonpos_int(a)) {
                // Psi(-n,b;z) = (-1)^n (b)_n Phi(-n,b;z)
                int n = static_cast<int>(std::lround(-a.real()));
                double poch = 1.0;
                for (int k = 0; k < n; ++k) poch *= (double(bi) + double(k));
                double sgn = (n % 2 == 0) ? 1.0 : -1.0;
                HypValue p = phi_vd(a, b, z);
                return {sgn * poch * p.f, sgn * poch * p.fz};
            }
            if (bi == 1) {
                HypValue gp = detail_sf::gamma_psi_b1(a, z, kCtl);
                cplx rg = std::exp(-log_gamma(a));
                return {rg * gp.f, rg * gp.fz};
            }
            HypValue gp = detail_sf::z_gamma_psi_b2(a - 1.0, z, kCtl);
            cplx rg = std::exp(-log_gamma(a));
            return {rg * gp.f / z, rg * (gp.fz / z - gp.f / (z * z))};
        }
        throw BranchError("psi_vd: integer b outside {1,2}");
    }

    // Connection formula; reciprocal gammas absorb denominator poles.
    cplx rg1, drg1, rg2, drg2;
    recip_gamma(a - b + 1.0, rg1, drg1);
    recip_gamma(a, rg2, drg2);
    HypValue out{0.0, 0.0};
    if (rg1 != cplx(0.0, 0.0)) {
        HypValue p = phi_vd(a, b, z);
        cplx c = gamma_fn(1.0 - b) * rg1;
        out.f += c * p.f;
        out.fz += c * p.fz;
    }
    if (rg2 != cplx(0.0, 0.0)) {
        HypValue p = phi_vd(a - b + 1.0, 2.0 - b, z);
        cplx c = gamma_fn(b - 1.0) * rg2;
        cplx zp = std::exp((1.0 - b) * std::log(z));
        out.f += c * zp * p.f;
        out.fz += c * zp * (p.fz + (1.0 - b) * p.f / z);
    }
    return out;
}

// x^rho e^{-z/2} F(z) and its x-derivative from a HypValue.
SolutionSample assemble(const WaveContext& c, double x, cplx rho,
                        const HypValue& F) {
    cplx pre = xpow(x, rho) * std::exp(-c.lambda * x / 2.0);
    SolutionSample s;
    s.x = x;
    s.W = c.W;
    s.value = pre * F.f;
    s.deriv = pre * ((rho / x - c.lambda / 2.0) * F.f + c.lambda * F.fz);
    return s;
}

// Frobenius power series at W = 0: x^rho Sum c_k x^k with
// k (k + 2 rho - 1) c_k = g1 c_{k-1}; equals the lambda -> 0 limit of the
// hypergeometric representation.
SolutionSample frobenius_w0(const CouplingParams& p, double x, cplx rho) {
    cplx val = 1.0, der = 0.0;  // series and its x d/dx part
    cplx ck = 1.0;
    for (int k = 1; k < 400; ++k) {
        ck *= p.g1 / (double(k) * (double(k) + 2.0 * rho - 1.0));
        cplx t = ck * std::pow(x, double(k));
        val += t;
        der += double(k) * t;
        if (std::abs(t) < 1e-17 * std::abs(val) && k > 3) break;
    }
    SolutionSample s;
    s.x = x;
    s.W = 0.0;
    cplx pre = xpow(x, rho);
    s.value = pre * val;
    s.deriv = pre * (rho * val + der) / x;
    return s;
}

struct VmPieces {
    SolutionSample vm;
    cplx am;
};

SolutionSample eval_u1_ctx(const WaveContext& c, double x);
SolutionSample eval_u2_ctx(const WaveContext& c, double x);
SolutionSample eval_v1_ctx(const WaveContext& c, double x);
SolutionSample eval_vm_ctx(const WaveContext& c, int m, double x);

SolutionSample eval_u1_ctx(const WaveContext& c, double x) {
    if (c.W == cplx(0.0, 0.0)) return frobenius_w0(c.p, x, 0.5 + c.mu);
    return assemble(c, x, 0.5 + c.mu, phi_vd(c.alpha_p, c.beta_p, c.z(x)));
}

// Direct mu -> -mu partner; callers handle the half-integer band.
SolutionSample eval_u2_direct(const WaveContext& c, double x) {
    if (c.W == cplx(0.0, 0.0)) return frobenius_w0(c.p, x, 0.5 - c.mu);
    return assemble(c, x, 0.5 - c.mu, phi_vd(c.alpha_m, c.beta_m, c.z(x)));
}

double two_mu_int_dist(const WaveContext& c, int& m) {
    if (std::abs(c.mu.imag()) > 0.0) { m = 0; return 1e9; }
    double tm = 2.0 * c.mu.real();
    m = static_cast<int>(std::lround(tm));
    return std::abs(tm - double(m));
}

SolutionSample eval_u2_ctx(const WaveContext& c, double x) {
    int m = 0;
    double dist = two_mu_int_dist(c, m);
    if (m >= 1 && dist < kHalfIntBand) {
        if (dist <= kHalfIntExact)
            throw InvalidSolution("u2 undefined at half-integer mu");
        // u2 = v_(m) + a_m Gamma(b-) u1 stays accurate across the band.
        SolutionSample vm = eval_vm_ctx(c, m, x);
        SolutionSample u1 = eval_u1_ctx(c, x);
        cplx coeff = am_coefficient(c, m) * gamma_fn(c.beta_m);
        SolutionSample s = vm;
        s.value += coeff * u1.value;
        s.deriv += coeff * u1.deriv;
        return s;
    }
    if (m == 0 && dist < kHalfIntExact)
        throw InvalidSolution("u2 undefined at mu = 0 (third range)");
    return eval_u2_direct(c, x);
}

SolutionSample eval_u3_ctx(const WaveContext& c, double x) {
    if (c.range.id != RangeId::R3)
        throw InvalidSolution("u3 is defined only in the third range");
    if (c.W == cplx(0.0, 0.0))
        throw DomainError("u3: W = 0 evaluation not supported");
    cplx z = c.z(x);
    cplx alpha = c.alpha_p;  // alpha_p == alpha_m at mu = 0
    if (std::abs(z) < detail_sf::kAsymptoticRadius) {
        HypDerivs d = detail_sf::kummer_series_derivs(alpha, 1.0, z, kCtl);
        double L = std::log(c.p.k0 * x);
        HypValue F;
        F.f = L * d.f + d.fa + 2.0 * d.fb;
        // The ln(k0 x) factor contributes f/x on top of the z-chain rule;
        // fold it in as (1/(lambda x)) f so assemble() stays uniform.
        F.fz = L * d.fz + d.faz + 2.0 * d.fbz + d.f / z;
        return assemble(c, x, 0.5, F);
    }
    // u3 = omega0 u1 - Gamma(alpha) v1
    SolutionSample u1 = eval_u1_ctx(c, x);
    SolutionSample v1 = eval_v1_ctx(c, x);
    cplx w0 = omega0_fn(c);
    cplx ga = gamma_fn(alpha);
    SolutionSample s;
    s.x = x;
    s.W = c.W;
    s.value = w0 * u1.value - ga * v1.value;
    s.deriv = w0 * u1.deriv - ga * v1.deriv;
    return s;
}

SolutionSample eval_u5_ctx(const WaveContext& c, double x) {
    if (c.range.id != RangeId::R5)
        throw InvalidSolution("u5 is defined only in the fifth range");
    if (c.W == cplx(0.0, 0.0))
        throw DomainError("u5: W = 0 evaluation not supported");
    cplx z = c.z(x);
    cplx a = c.p.g1 / c.lambda;
    if (std::abs(z) < detail_sf::kAsymptoticRadius) {
        // u5 = e^{-z/2} [ 1 + (z/2) Phi5 + a z (M + L Phi5) ],
        // Phi5 = Phi(1+a,2;z), L = ln(k0 x) + C, and M carries the
        // digamma-difference sums of the mu -> 1/2 limit.
        cplx phi5 = 0.0, dphi5 = 0.0, M = 0.0, dM = 0.0;
        cplx u = 1.0, va = 0.0;
        double h = 0.0;  // H_k + psi(2+k) - psi(2)
        int settled = 0;
        for (int k = 0; k < kCtl.max_terms; ++k) {
            cplx m_term = va - u * h;
            phi5 += u;
            dphi5 += double(k) * u;
            M += m_term;
            dM += double(k) * m_term;
            double tm = std::abs(u) * (1.0 + h) + std::abs(va);
            double scale = std::abs(phi5) + std::abs(M) + 1e-300;
            if (tm <= kCtl.rel_tol * scale) {
                if (++settled >= 3) break;
            } else {
                settled = 0;
            }
            cplx mult = z / ((2.0 + double(k)) * double(k + 1));
            va = (va * (1.0 + a + double(k)) + u) * mult;
            u *= (1.0 + a + double(k)) * mult;
            h += 1.0 / double(k + 1) + 1.0 / double(k + 2);
        }
        if (settled < 3) throw NonConvergence("u5 series: max_terms exceeded");
        cplx L = std::log(c.p.k0 * x) + kEuler;
        cplx body = 1.0 + 0.5 * z * phi5 + a * z * (M + L * phi5);
        cplx dbody_dz = 0.5 * (phi5 + dphi5) + a * (M + L * phi5) +
                        a * (dM + L * dphi5);
        cplx pre = std::exp(-z / 2.0);
        SolutionSample s;
        s.x = x;
        s.W = c.W;
        s.value = pre * body;
        s.deriv = pre * (c.lambda * (-0.5 * body + dbody_dz) +
                         a * c.lambda * phi5);
        return s;
    }
    // u5 = Gamma(a_half) v1 - omega_half u1
    SolutionSample u1 = eval_u1_ctx(c, x);
    SolutionSample v1 = eval_v1_ctx(c, x);
    cplx ga = gamma_fn(1.0 + a);
    cplx wh = omega_half_fn(c);
    SolutionSample s;
    s.x = x;
    s.W = c.W;
    s.value = ga * v1.value - wh * u1.value;
    s.deriv = ga * v1.deriv - wh * u1.deriv;
    return s;
}

SolutionSample eval_v1_ctx(const WaveContext& c, double x) {
    if (c.W == cplx(0.0, 0.0))
        throw DomainError("v1: W = 0 evaluation not supported");
    cplx z = c.z(x);
    int m = 0;
    double dist = two_mu_int_dist(c, m);
    // mu = 0 and mu = 1/2 exactly have their own log kernels (b = 1, 2);
    // other (near-)half-integer mu goes through A_m / v_(m).
    bool band_route =
        std::abs(z) < kAsymV1Radius && dist < kHalfIntBand &&
        ((m >= 2) || (m == 1 && dist > kHalfIntExact));
    if (band_route) {
        // Inside the half-integer band use v1 = A_m u1 + (omega/2mu) v_(m).
        SolutionSample u1 = eval_u1_ctx(c, x);
        SolutionSample vm = eval_vm_ctx(c, m, x);
        cplx Am = Am_coefficient(c, m);
        cplx w = omega_fn(c) / (2.0 * c.mu);
        SolutionSample s;
        s.x = x;
        s.W = c.W;
        s.value = Am * u1.value + w * vm.value;
        s.deriv = Am * u1.deriv + w * vm.deriv;
        return s;
    }
    cplx pre = std::exp(2.0 * c.mu * std::log(c.lambda));
    HypValue F = psi_vd(c.alpha_p, c.beta_p, z);
    SolutionSample s = assemble(c, x, 0.5 + c.mu, F);
    s.value *= pre;
    s.deriv *= pre;
    return s;
}

// v_(m) by its defining combination away from the band, by the analytic
// mu-derivative limit at 2mu = m, and by polynomial interpolation in mu
// across the remaining sliver.
SolutionSample eval_vm_ctx(const WaveContext& c, int m, double x) {
    if (c.W == cplx(0.0, 0.0))
        throw DomainError("v_(m): W = 0 evaluation not supported");
    if (m < 1 || std::abs(c.mu.imag()) > 0.0)
        throw InvalidSolution("v_(m) requires real mu and m >= 1");
    double tm = 2.0 * c.mu.real();
    if (!(tm > double(m) - 1.0 && tm < double(m) + 1.0))
        throw InvalidSolution("v_(m) requires m-1 < 2mu < m+1");
    double dist = std::abs(tm - double(m));

    if (dist >= kHalfIntBand) {
        cplx z = c.z(x);
        if (std::abs(z) >= detail_sf::kAsymptoticRadius) {
            SolutionSample v1 = eval_v1_ctx(c, x);
            SolutionSample u1 = eval_u1_ctx(c, x);
            cplx Am = Am_coefficient(c, m);
            cplx w = 2.0 * c.mu / omega_fn(c);
            SolutionSample s;
            s.x = x;
            s.W = c.W;
            s.value = w * (v1.value - Am * u1.value);
            s.deriv = w * (v1.deriv - Am * u1.deriv);
            return s;
        }
        SolutionSample u2 = eval_u2_direct(c, x);
        SolutionSample u1 = eval_u1_ctx(c, x);
        cplx coeff = am_coefficient(c, m) * gamma_fn(c.beta_m);
        SolutionSample s = u2;
        s.value -= coeff * u1.value;
        s.deriv -= coeff * u1.deriv;
        return s;
    }

    if (dist <= kHalfIntExact) {
        // v_(m) = (-1)^m B'(m/2) / (2 (m-1)!),  B = x^{1/2-mu} e^{-z/2} PhiG-
        //         a_m x^{1/2+mu} e^{-z/2} Phi, differentiated in mu.
        cplx z = c.z(x);
        HypDerivs R = detail_sf::kummer_series_regularized(
            c.alpha_m, cplx(1.0 - double(m), 0.0), z, kCtl);
        HypDerivs P = detail_sf::kummer_series_derivs(
            c.alpha_p, cplx(1.0 + double(m), 0.0), z, kCtl);
        cplx am = am_coefficient(c, m);
        double L = std::log(x);
        cplx rm = 0.5 - c.mu, rp = 0.5 + c.mu;
        cplx e = std::exp(-z / 2.0);
        // value pieces
        cplx Fm = -L * R.f - R.fa - 2.0 * R.fb;
        cplx Fp = L * P.f + P.fa + 2.0 * P.fb;
        cplx Bp = e * (xpow(x, rm) * Fm - am * xpow(x, rp) * Fp);
        // x-derivative: chain rule through x^rho, e^{-z/2}, F(z), ln x
        cplx dFm = -L * R.fz - R.faz - 2.0 * R.fbz;
        cplx dFp = L * P.fz + P.faz + 2.0 * P.fbz;
        cplx dBp =
            e * (xpow(x, rm) * ((rm / x - c.lambda / 2.0) * Fm +
                                c.lambda * dFm - R.f / x) -
                 am * xpow(x, rp) * ((rp / x - c.lambda / 2.0) * Fp +
                                     c.lambda * dFp + P.f / x));
        double fac = ((m % 2 == 0) ? 1.0 : -1.0) / (2.0 * std::tgamma(double(m)));
        SolutionSample s;
        s.x = x;
        s.W = c.W;
        s.value = fac * Bp;
        s.deriv = fac * dBp;
        return s;
    }

    // Sliver: Lagrange interpolation through four safely-offset mu nodes.
    const std::array<double, 4> off = {-1e-2, -5e-3, 5e-3, 1e-2};
    std::array<cplx, 4> vals, ders;
    std::array<double, 4> nodes;
    for (int i = 0; i < 4; ++i) {
        double mu_i = 0.5 * double(m) + off[i];
        nodes[i] = mu_i;
        CouplingParams q = c.p;
        q.g2 = mu_i * mu_i - 0.25;
        WaveContext cc = WaveContext::make(q, c.W);
        SolutionSample si = eval_vm_ctx(cc, m, x);
        vals[i] = si.value;
        ders[i] = si.deriv;
    }
    double mu = c.mu.real();
    SolutionSample s;
    s.x = x;
    s.W = c.W;
    s.value = 0.0;
    s.deriv = 0.0;
    for (int i = 0; i < 4; ++i) {
        double li = 1.0;
        for (int j = 0; j < 4; ++j)
            if (j != i) li *= (mu - nodes[j]) / (nodes[i] - nodes[j]);
        s.value += li * vals[i];
        s.deriv += li * ders[i];
    }
    return s;
}

SolutionSample eval_principal_ctx(const WaveContext& c, const ExtensionParam& ext,
                                  double x) {
    if (ext.range != c.range.id)
        throw InvalidSolution("extension range does not match couplings");
    switch (c.range.id) {
        case RangeId::R1:
            return eval_u1_ctx(c, x);
        case RangeId::R2: {
            SolutionSample u1 = eval_u1_ctx(c, x), u2 = eval_u2_ctx(c, x);
            cplx c1 = xpow(c.p.k0, 0.5 + c.mu) * std::sin(ext.angle);
            cplx c2 = xpow(c.p.k0, 0.5 - c.mu) * std::cos(ext.angle);
            return {c1 * u1.value + c2 * u2.value, c1 * u1.deriv + c2 * u2.deriv,
                    x, c.W};
        }
        case RangeId::R3: {
            SolutionSample u1 = eval_u1_ctx(c, x), u3 = eval_u3_ctx(c, x);
            double s = std::sin(ext.angle), co = std::cos(ext.angle);
            return {s * u1.value + co * u3.value, s * u1.deriv + co * u3.deriv,
                    x, c.W};
        }
        case RangeId::R4: {
            SolutionSample u1 = eval_u1_ctx(c, x), u2 = eval_u2_ctx(c, x);
            cplx e1 = std::exp(cplx(0.0, ext.angle)) * xpow(c.p.k0, 0.5 + c.mu);
            cplx e2 = std::exp(cplx(0.0, -ext.angle)) * xpow(c.p.k0, 0.5 - c.mu);
            return {e1 * u1.value + e2 * u2.value, e1 * u1.deriv + e2 * u2.deriv,
                    x, c.W};
        }
        case RangeId::R5: {
            SolutionSample u1 = eval_u1_ctx(c, x), u5 = eval_u5_ctx(c, x);
            double s = std::sin(ext.angle), co = std::cos(ext.angle);
            return {c.p.k0 * s * u1.value + co * u5.value,
                    c.p.k0 * s * u1.deriv + co * u5.deriv, x, c.W};
        }
    }
    throw InvalidSolution("unknown range");
}

SolutionSample eval_conjugate_ctx(const WaveContext& c, const ExtensionParam& ext,
                                  double x) {
    if (ext.range != c.range.id)
        throw InvalidSolution("extension range does not match couplings");
    switch (c.range.id) {
        case RangeId::R1:
            throw InvalidSolution("first range has no conjugate partner");
        case RangeId::R2: {
            SolutionSample u1 = eval_u1_ctx(c, x), u2 = eval_u2_ctx(c, x);
            cplx c1 = -xpow(c.p.k0, 0.5 + c.mu) * std::cos(ext.angle);
            cplx c2 = xpow(c.p.k0, 0.5 - c.mu) * std::sin(ext.angle);
            return {c1 * u1.value + c2 * u2.value, c1 * u1.deriv + c2 * u2.deriv,
                    x, c.W};
        }
        case RangeId::R3: {
            SolutionSample u1 = eval_u1_ctx(c, x), u3 = eval_u3_ctx(c, x);
            double s = std::sin(ext.angle), co = std::cos(ext.angle);
            return {co * u1.value - s * u3.value, co * u1.deriv - s * u3.deriv,
                    x, c.W};
        }
        case RangeId::R4: {
            SolutionSample u1 = eval_u1_ctx(c, x), u2 = eval_u2_ctx(c, x);
            cplx i(0.0, 1.0);
            cplx e1 = std::exp(cplx(0.0, ext.angle)) * xpow(c.p.k0, 0.5 + c.mu);
            cplx e2 = std::exp(cplx(0.0, -ext.angle)) * xpow(c.p.k0, 0.5 - c.mu);
            return {i * (e2 * u2.value - e1 * u1.value),
                    i * (e2 * u2.deriv - e1 * u1.deriv), x, c.W};
        }
        case RangeId::R5: {
            SolutionSample u1 = eval_u1_ctx(c, x), u5 = eval_u5_ctx(c, x);
            double s = std::sin(ext.angle), co = std::cos(ext.angle);
            return {c.p.k0 * co * u1.value - s * u5.value,
                    c.p.k0 * co * u1.deriv - s * u5.deriv, x, c.W};
        }
    }
    throw InvalidSolution("unknown range");
}

} // namespace

cplx lambda_of(cplx W) {
    double phi = std::arg(W);
    if (phi < 0.0) phi += 2.0 * kPi;
    double r = std::sqrt(std::abs(W));
    return std::polar(2.0 * r, 0.5 * (phi - kPi));
}

WaveContext WaveContext::make(const CouplingParams& p, cplx W) {
    p.validate();
    WaveContext c;
    c.p = p;
    c.range = classify(p);
    c.W = W;
    c.mu = c.range.mu.value();
    c.lambda = lambda_of(W);
    cplx gol = (W == cplx(0.0, 0.0)) ? cplx(0.0, 0.0) : p.g1 / c.lambda;
    c.alpha_p = 0.5 + c.mu + gol;
    c.alpha_m = 0.5 - c.mu + gol;
    c.beta_p = 1.0 + 2.0 * c.mu;
    c.beta_m = 1.0 - 2.0 * c.mu;
    return c;
}

SolutionSample eval_u1(const CouplingParams& p, double x, cplx W) {
    if (!(x > 0.0)) throw DomainError("x must be > 0");
    return eval_u1_ctx(WaveContext::make(p, W), x);
}
SolutionSample eval_u2(const CouplingParams& p, double x, cplx W) {
    if (!(x > 0.0)) throw DomainError("x must be > 0");
    return eval_u2_ctx(WaveContext::make(p, W), x);
}
SolutionSample eval_u3(const CouplingParams& p, double x, cplx W) {
    if (!(x > 0.0)) throw DomainError("x must be > 0");
    return eval_u3_ctx(WaveContext::make(p, W), x);
}
SolutionSample eval_u5(const CouplingParams& p, double x, cplx W) {
    if (!(x > 0.0)) throw DomainError("x must be > 0");
    return eval_u5_ctx(WaveContext::make(p, W), x);
}
SolutionSample eval_v1(const CouplingParams& p, double x, cplx W) {
    if (!(x > 0.0)) throw DomainError("x must be > 0");
    return eval_v1_ctx(WaveContext::make(p, W), x);
}
SolutionSample eval_vm(int m, const CouplingParams& p, double x, cplx W) {
    if (!(x > 0.0)) throw DomainError("x must be > 0");
    return eval_vm_ctx(WaveContext::make(p, W), m, x);
}
SolutionSample eval_principal(const CouplingParams& p, const ExtensionParam& ext,
                              double x, cplx W) {
    if (!(x > 0.0)) throw DomainError("x must be > 0");
    return eval_principal_ctx(WaveContext::make(p, W), ext, x);
}
SolutionSample eval_conjugate(const CouplingParams& p, const ExtensionParam& ext,
                              double x, cplx W) {
    if (!(x > 0.0)) throw DomainError("x must be > 0");
    return eval_conjugate_ctx(WaveContext::make(p, W), ext, x);
}

SolutionSample eval_solution(SolutionId id, const CouplingParams& p,
                             const ExtensionParam& ext, double x, cplx W) {
    switch (id.tag) {
        case SolutionId::U1: return eval_u1(p, x, W);
        case SolutionId::U2: return eval_u2(p, x, W);
        case SolutionId::U3: return eval_u3(p, x, W);
        case SolutionId::U5: return eval_u5(p, x, W);
        case SolutionId::V1: return eval_v1(p, x, W);
        case SolutionId::Vm: return eval_vm(id.m, p, x, W);
        case SolutionId::Principal: return eval_principal(p, ext, x, W);
        case SolutionId::Conjugate: return eval_conjugate(p, ext, x, W);
    }
    throw InvalidSolution("unknown solution id");
}

cplx wronskian_of(const SolutionSample& a, const SolutionSample& b) {
    return a.value * b.deriv - a.deriv * b.value;
}

cplx wronskian(SolutionId ida, SolutionId idb, const CouplingParams& p,
               const ExtensionParam& ext, double x, cplx W) {
    return wronskian_of(eval_solution(ida, p, ext, x, W),
                        eval_solution(idb, p, ext, x, W));
}

cplx omega_fn(const WaveContext& c) {
    return std::exp(log_gamma(c.beta_p) - log_gamma(c.alpha_p));
}

cplx am_coefficient(const WaveContext& c, int m) {
    // lambda^m (alpha_{-m})_m / m!, a real polynomial in W
    cplx alpha_minus_m = (1.0 - double(m)) / 2.0 + c.p.g1 / c.lambda;
    cplx poch = 1.0;
    for (int k = 0; k < m; ++k) poch *= (alpha_minus_m + double(k));
    return std::exp(double(m) * std::log(c.lambda)) * poch /
           std::tgamma(double(m + 1));
}

cplx Am_coefficient(const WaveContext& c, int m) {
    if (std::abs(c.mu.imag()) > 0.0)
        throw InvalidSolution("A_m needs real mu");
    double tm = 2.0 * c.mu.real();
    double dist = std::abs(tm - double(m));
    cplx am = am_coefficient(c, m);
    if (dist <= kHalfIntExact) {
        // L'Hopital across the sin(2 pi mu) zero
        cplx g = am * std::exp(-log_gamma(c.alpha_p));
        cplx bracketp = digamma(c.alpha_p) + digamma(c.alpha_m) +
                        2.0 * std::log(c.lambda) -
                        2.0 * digamma(cplx(double(m + 1), 0.0));
        double sgn = (m % 2 == 0) ? 1.0 : -1.0;
        return -sgn * 0.5 * g * bracketp;
    }
    if (dist < kHalfIntBand) {
        // interpolate through safe nodes, as in eval_vm
        const std::array<double, 4> off = {-1e-2, -5e-3, 5e-3, 1e-2};
        std::array<double, 4> nodes;
        std::array<cplx, 4> vals;
        for (int i = 0; i < 4; ++i) {
            double mu_i = 0.5 * double(m) + off[i];
            nodes[i] = mu_i;
            CouplingParams q = c.p;
            q.g2 = mu_i * mu_i - 0.25;
            vals[i] = Am_coefficient(WaveContext::make(q, c.W), m);
        }
        double mu = c.mu.real();
        cplx out = 0.0;
        for (int i = 0; i < 4; ++i) {
            double li = 1.0;
            for (int j = 0; j < 4; ++j)
                if (j != i) li *= (mu - nodes[j]) / (nodes[i] - nodes[j]);
            out += li * vals[i];
        }
        return out;
    }
    cplx rg_p, drg_p, rg_m, drg_m;
    recip_gamma(c.alpha_p, rg_p, drg_p);
    recip_gamma(c.alpha_m, rg_m, drg_m);
    cplx mu2 = 2.0 * c.mu;
    cplx lam2mu = std::exp(mu2 * std::log(c.lambda));
    cplx bracket = am * rg_p - lam2mu * rg_m * std::exp(-log_gamma(1.0 + mu2));
    return kPi / std::sin(kPi * mu2) * bracket;
}

cplx omega0_fn(const WaveContext& c) {
    return -2.0 * kEuler - digamma(c.alpha_p) -
           std::log(c.lambda / c.p.k0);
}

cplx omega_half_fn(const WaveContext& c) {
    cplx a_half = 1.0 + c.p.g1 / c.lambda;
    return c.p.g1 * kEuler +
           c.p.g1 * (digamma(a_half) + std::log(c.lambda / c.p.k0)) -
           c.p.g1 - c.lambda / 2.0;
}

AsymptoticForm origin_form_first(const CouplingParams& p, double x) {
    auto rc = classify(p);
    cplx mu = rc.mu.value();
    AsymptoticForm f;
    if (rc.id == RangeId::R5) {
        f.value = p.k0 * x;
        f.deriv = p.k0;
        return f;
    }
    cplx e = 0.5 + mu;
    f.value = xpow(p.k0 * x, e);
    f.deriv = e * f.value / x;
    return f;
}

AsymptoticForm origin_form_second(const CouplingParams& p, double x) {
    auto rc = classify(p);
    cplx mu = rc.mu.value();
    AsymptoticForm f;
    switch (rc.id) {
        case RangeId::R1: {
            cplx e = 0.5 - mu;
            f.value = xpow(p.k0 * x, e);
            f.deriv = e * f.value / x;
            return f;
        }
        case RangeId::R2: {
            cplx e = 0.5 - mu;
            cplx lead = xpow(p.k0 * x, e);
            cplx corr = (p.g1 / p.k0) / (2.0 * mu - 1.0) * xpow(p.k0 * x, e + 1.0);
            f.value = lead - corr;
            f.deriv = e * lead / x - (e + 1.0) * corr / x;
            return f;
        }
        case RangeId::R3: {
            double L = std::log(p.k0 * x);
            double s = std::sqrt(p.k0 * x);
            f.value = s * L;
            f.deriv = 0.5 * p.k0 * (L + 2.0) / s;
            return f;
        }
        case RangeId::R4: {
            cplx e = 0.5 - mu;
            f.value = xpow(p.k0 * x, e);
            f.deriv = e * f.value / x;
            return f;
        }
        case RangeId::R5: {
            double L = std::log(p.k0 * x);
            f.value = 1.0 + p.g1 * x * L + kEuler * p.g1 * x;
            f.deriv = p.g1 * (L + 1.0 + kEuler);
            return f;
        }
    }
    throw InvalidSolution("unknown range");
}

double asymptotic_regime_bound(const CouplingParams& p, cplx W) {
    double b = 0.01 / p.k0;
    b = std::min(b, 0.01 / std::abs(p.g1));
    double aw = std::abs(W);
    if (aw > 0.0) b = std::min(b, 0.1 / std::sqrt(aw));
    return b;
}

BoundaryFit boundary_fit(const std::vector<SolutionSample>& samples,
                         const CouplingParams& p) {
    if (samples.size() < 3)
        throw IllConditioned("boundary_fit needs at least 3 samples");
    // Stack value and x-scaled derivative rows, then thin QR (2 columns).
    std::vector<std::array<cplx, 3>> rows;
    rows.reserve(2 * samples.size());
    for (const auto& s : samples) {
        AsymptoticForm f1 = origin_form_first(p, s.x);
        AsymptoticForm f2 = origin_form_second(p, s.x);
        rows.push_back({f1.value, f2.value, s.value});
        rows.push_back({f1.deriv * s.x, f2.deriv * s.x, s.deriv * s.x});
    }
    // modified Gram-Schmidt on columns 0,1
    auto dot = [&](int i, int j) {
        cplx acc = 0.0;
        for (auto& r : rows) acc += std::conj(r[i]) * r[j];
        return acc;
    };
    double n1 = std::sqrt(std::abs(dot(0, 0)));
    if (n1 == 0.0) throw IllConditioned("boundary_fit: first form vanishes");
    for (auto& r : rows) r[0] /= n1;
    cplx r12 = dot(0, 1);
    for (auto& r : rows) r[1] -= r12 * r[0];
    double n2 = std::sqrt(std::abs(dot(1, 1)));
    double scale2 = 0.0;
    for (auto& r : rows) scale2 = std::max(scale2, std::abs(r12 * r[0]));
    if (n2 <= 1e-13 * std::max(1.0, scale2))
        throw IllConditioned("boundary_fit: sample x-points do not separate the forms");
    for (auto& r : rows) r[1] /= n2;
    cplx q1b = dot(0, 2), q2b = dot(1, 2);
    // back substitution: R = [[n1, r12],[0, n2]]
    cplx a2 = q2b / n2;
    cplx a1 = (q1b - r12 * a2) / n1;
    double num = 0.0, den = 0.0;
    for (const auto& s : samples) {
        AsymptoticForm f1 = origin_form_first(p, s.x);
        AsymptoticForm f2 = origin_form_second(p, s.x);
        num += std::norm(s.value - a1 * f1.value - a2 * f2.value);
        den += std::norm(s.value);
    }
    BoundaryFit out;
    out.a1 = a1;
    out.a2 = a2;
    out.residual = den > 0.0 ? std::sqrt(num / den) : 0.0;
    return out;
}

} // namespace kratzer
