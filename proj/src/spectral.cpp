#include "kratzer/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace kratzer {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kEuler = 0.57721566490153286060651209008240243;
constexpr double kAngleTol = 1e-9;      // threshold membership tolerance
constexpr double kPoleGuard = 1e-10;

double circle_distance(RangeId range, double a, double b) {
    // distance on the extension circle (period pi)
    double d = canonical_angle(range, a) - canonical_angle(range, b);
    d = std::remainder(d, kPi);
    return std::abs(d);
}

bool is_endpoint_angle(const ExtensionParam& ext) {
    if (ext.unique) return false;
    if (ext.range == RangeId::R4) return false;  // theta has no endpoint case
    return std::abs(std::cos(ext.angle)) < 1e-12;
}

// signed product of gammas: returns log magnitude, accumulates sign
struct SignedLog {
    double log = 0.0;
    int sign = 1;
    void mul_gamma(double x) {
        int s;
        log += log_gamma_signed(x, s);
        sign *= s;
    }
    void div_gamma(double x) {
        int s;
        log -= log_gamma_signed(x, s);
        sign *= s;
    }
    double value() const { return double(sign) * std::exp(log); }
};

double tau_of(double E) { return std::sqrt(-E); }

// f2(E) = Gamma(b-) Gamma(a+) (2 tau / k0)^{2 mu} / (Gamma(b+) Gamma(a-))
double f2_value(const CouplingParams& p, double mu, double E) {
    double tau = tau_of(E);
    double ap = 0.5 + mu + p.g1 / (2.0 * tau);
    double am = 0.5 - mu + p.g1 / (2.0 * tau);
    SignedLog s;
    s.mul_gamma(1.0 - 2.0 * mu);
    s.mul_gamma(ap);
    s.div_gamma(1.0 + 2.0 * mu);
    s.div_gamma(am);
    s.log += 2.0 * mu * std::log(2.0 * tau / p.k0);
    return s.value();
}

double f2_derivative(const CouplingParams& p, double mu, double E) {
    double tau = tau_of(E);
    double ap = 0.5 + mu + p.g1 / (2.0 * tau);
    double am = 0.5 - mu + p.g1 / (2.0 * tau);
    double dalpha = p.g1 / (4.0 * tau * tau * tau);
    return f2_value(p, mu, E) *
           (-mu / (tau * tau) +
            (digamma_real(ap) - digamma_real(am)) * dalpha);
}

double omega3_value(const CouplingParams& p, double vartheta, double E) {
    double tau = tau_of(E);
    double a = 0.5 + p.g1 / (2.0 * tau);
    return digamma_real(a) + std::log(2.0 * tau / p.k0) + 2.0 * kEuler -
           std::tan(vartheta);
}

double omega3_derivative(const CouplingParams& p, double E) {
    double tau = tau_of(E);
    double a = 0.5 + p.g1 / (2.0 * tau);
    double dalpha = p.g1 / (4.0 * tau * tau * tau);
    return trigamma_real(a) * dalpha - 1.0 / (2.0 * tau * tau);
}

double omega5_value(const CouplingParams& p, double eps, double E) {
    double tau = tau_of(E);
    double ah = 1.0 + p.g1 / (2.0 * tau);
    double omega_half = p.g1 * kEuler +
                        p.g1 * (digamma_real(ah) + std::log(2.0 * tau / p.k0)) -
                        p.g1 - tau;
    return p.k0 * std::tan(eps) - omega_half;
}

double omega5_derivative(const CouplingParams& p, double E) {
    double tau = tau_of(E);
    double ah = 1.0 + p.g1 / (2.0 * tau);
    double dalpha = p.g1 / (4.0 * tau * tau * tau);
    double dwhalf = p.g1 * trigamma_real(ah) * dalpha -
                    p.g1 / (2.0 * tau * tau) + 1.0 / (2.0 * tau);
    return -dwhalf;
}

// Theta(E) = theta + theta_G - theta_G(E) + kappa ln(k0 / 2 tau);
// continuous and increasing on E < 0.
double theta_gamma_const(double kappa) {
    return log_gamma(cplx(1.0, 2.0 * kappa)).imag();
}

double theta_gamma_of(const CouplingParams& p, double kappa, double E) {
    double tau = tau_of(E);
    return log_gamma(cplx(0.5 + p.g1 / (2.0 * tau), kappa)).imag();
}

double theta_value(const CouplingParams& p, double kappa, double theta,
                   double E) {
    double tau = tau_of(E);
    return theta + theta_gamma_const(kappa) - theta_gamma_of(p, kappa, E) +
           kappa * std::log(p.k0 / (2.0 * tau));
}

double theta_derivative(const CouplingParams& p, double kappa, double E) {
    double tau = tau_of(E);
    double dalpha = p.g1 / (4.0 * tau * tau * tau);
    double impsi = digamma(cplx(0.5 + p.g1 / (2.0 * tau), kappa)).imag();
    return -impsi * dalpha + kappa / (2.0 * tau * tau);
}

void guard_poles(const CouplingParams& p, double mu_or_one, double offset,
                 double E) {
    // poles where alpha(E) hits a non-positive integer:
    // alpha = offset + mu + g1/(2 tau)
    if (p.g1 >= 0.0) return;
    double tau = tau_of(E);
    double a = offset + mu_or_one + p.g1 / (2.0 * tau);
    double d = std::abs(a - std::round(a));
    if (std::round(a) <= 0.0 && d < 1e-8) {
        // translate the alpha-distance into an energy distance
        double dalpha_dE = std::abs(p.g1) / (4.0 * tau * tau * tau);
        if (d / dalpha_dE < kPoleGuard * std::abs(E))
            throw PoleProximity("characteristic function evaluated at a pole");
    }
}

} // namespace

CharacteristicFn CharacteristicFn::make(const CouplingParams& p,
                                        const ExtensionParam& ext) {
    auto rc = classify(p);
    if (ext.range != rc.id)
        throw InvalidSolution("characteristic: extension range mismatch");
    CharacteristicFn cf;
    cf.p_ = p;
    cf.ext_ = ext;
    if (rc.mu.is_real)
        cf.mu_ = rc.mu.magnitude;
    else
        cf.kappa_ = rc.mu.magnitude;
    switch (rc.id) {
        case RangeId::R1: cf.tag_ = CharacteristicTag::ClosedForm; break;
        case RangeId::R2: cf.tag_ = CharacteristicTag::F2nu; break;
        case RangeId::R3: cf.tag_ = CharacteristicTag::Omega3; break;
        case RangeId::R4: cf.tag_ = CharacteristicTag::Theta; break;
        case RangeId::R5: cf.tag_ = CharacteristicTag::Omega5; break;
    }
    return cf;
}

double CharacteristicFn::value(double E) const {
    if (!(E < 0.0)) throw DomainError("characteristic: need E < 0");
    switch (tag_) {
        case CharacteristicTag::F2nu:
            guard_poles(p_, mu_, 0.5, E);
            return f2_value(p_, mu_, E) + std::tan(ext_.angle);
        case CharacteristicTag::Omega3:
            guard_poles(p_, 0.0, 0.5, E);
            return omega3_value(p_, ext_.angle, E);
        case CharacteristicTag::Omega5:
            guard_poles(p_, 0.0, 1.0, E);
            return omega5_value(p_, ext_.angle, E);
        case CharacteristicTag::Theta:
            return theta_value(p_, kappa_, ext_.angle, E);
        case CharacteristicTag::ClosedForm:
            throw NotApplicable("first range has a closed-form spectrum");
    }
    throw NotApplicable("characteristic: unknown tag");
}

double CharacteristicFn::derivative(double E) const {
    if (!(E < 0.0)) throw DomainError("characteristic: need E < 0");
    switch (tag_) {
        case CharacteristicTag::F2nu:
            guard_poles(p_, mu_, 0.5, E);
            return f2_derivative(p_, mu_, E);
        case CharacteristicTag::Omega3:
            guard_poles(p_, 0.0, 0.5, E);
            return omega3_derivative(p_, E);
        case CharacteristicTag::Omega5:
            guard_poles(p_, 0.0, 1.0, E);
            return omega5_derivative(p_, E);
        case CharacteristicTag::Theta:
            return theta_derivative(p_, kappa_, E);
        case CharacteristicTag::ClosedForm:
            throw NotApplicable("first range has a closed-form spectrum");
    }
    throw NotApplicable("characteristic: unknown tag");
}

std::vector<double> CharacteristicFn::poles_above(double floor,
                                                  int max_count) const {
    std::vector<double> out;
    if (p_.g1 >= 0.0 || tag_ == CharacteristicTag::Theta ||
        tag_ == CharacteristicTag::ClosedForm)
        return out;
    // endpoint spectrum: alpha(E_n) = -n
    double base = (tag_ == CharacteristicTag::F2nu)   ? 1.0 + 2.0 * mu_
                  : (tag_ == CharacteristicTag::Omega3) ? 1.0
                                                        : 2.0;
    for (int n = 0; int(out.size()) < max_count; ++n) {
        double tau = std::abs(p_.g1) / (base + 2.0 * n);
        double En = -tau * tau;
        if (En <= floor) continue;
        out.push_back(En);
        if (base + 2.0 * (n + 1) > 2e6) break;
    }
    return out;
}

double characteristic_value(const CharacteristicFn& cf, double E) {
    return cf.value(E);
}

// ---- thresholds and zero modes ---------------------------------------------

double threshold_param(const CouplingParams& p) {
    auto rc = classify(p);
    if (rc.id == RangeId::R1)
        throw NotApplicable("first range: unique extension, no threshold");
    if (!(p.g1 > 0.0))
        throw NotApplicable("threshold angle defined for g1 > 0");
    switch (rc.id) {
        case RangeId::R2: {
            double mu = rc.mu.magnitude;
            SignedLog s;
            s.mul_gamma(1.0 - 2.0 * mu);
            s.div_gamma(1.0 + 2.0 * mu);
            s.log += 2.0 * mu * std::log(p.g1 / p.k0);
            double t = -s.value();
            return canonical_angle(RangeId::R2, std::atan(t));
        }
        case RangeId::R3:
            return canonical_angle(
                RangeId::R3, std::atan(std::log(p.g1 / p.k0) + 2.0 * kEuler));
        case RangeId::R4: {
            double kappa = rc.mu.magnitude;
            double phi = kappa * std::log(p.g1 / p.k0) -
                         theta_gamma_const(kappa) + kPi / 2.0;
            double theta0 = phi - kPi * std::floor(phi / kPi);
            return canonical_angle(RangeId::R4, theta0);
        }
        case RangeId::R5: {
            double t = (p.g1 / p.k0) *
                       (std::log(p.g1 / p.k0) + kEuler - 1.0);
            return canonical_angle(RangeId::R5, std::atan(t));
        }
        default:
            throw NotApplicable("threshold: unknown range");
    }
}

std::optional<double> zero_energy_eigenvalue(const CouplingParams& p,
                                             const ExtensionParam& ext) {
    auto rc = classify(p);
    if (ext.range != rc.id)
        throw InvalidSolution("zero mode: extension range mismatch");
    if (rc.id == RangeId::R1) return std::nullopt;
    if (!(p.g1 > 0.0))
        throw NotApplicable("zero mode analysis applies to g1 > 0");
    double th0 = threshold_param(p);
    if (circle_distance(rc.id, ext.angle, th0) > kAngleTol) return std::nullopt;
    switch (rc.id) {
        case RangeId::R2: {
            double mu = rc.mu.magnitude;
            // Psi = g1 (g1/k0)^{-mu} / (mu cos nu0)
            //       sqrt(3 Gamma(1+2mu) / (2 k0 (1+2mu) Gamma(2-2mu)))
            int s1, s2;
            double lg = log_gamma_signed(1.0 + 2.0 * mu, s1) -
                        log_gamma_signed(2.0 - 2.0 * mu, s2);
            double root = std::sqrt(3.0 * std::exp(lg) /
                                    (2.0 * p.k0 * (1.0 + 2.0 * mu)));
            double psi = p.g1 * std::pow(p.g1 / p.k0, -mu) /
                         (mu * std::cos(th0)) * root;
            return psi * psi;
        }
        case RangeId::R3: {
            double c = std::cos(th0);
            return 6.0 * p.g1 * p.g1 / (c * c);
        }
        case RangeId::R4: {
            double kappa = rc.mu.magnitude;
            double A = 3.0 * p.g1 * p.g1 /
                       (kappa * (1.0 + 4.0 * kappa * kappa));
            return A / (2.0 * kappa * p.k0);
        }
        case RangeId::R5: {
            double c = std::cos(th0);
            return 3.0 * p.g1 / (c * c);
        }
        default:
            return std::nullopt;
    }
}

// ---- continuum density ------------------------------------------------------

namespace {

// characteristic numerator at E + i0 for E > 0 (lambda = 2 p e^{-i pi/2})
cplx f2_continuum(const WaveContext& c) {
    return std::exp(log_gamma(c.beta_m) + log_gamma(c.alpha_p) -
                    log_gamma(c.beta_p) - log_gamma(c.alpha_m) +
                    2.0 * c.mu * std::log(c.lambda / c.p.k0));
}

double density_r1(const CouplingParams& p, double mu, double E) {
    if (E == 0.0) {
        if (p.g1 > 0.0) return 0.0;
        // p -> 0 limit: |Gamma(1/2+mu+iy)|^2 ~ 2 pi |y|^{2mu} e^{-pi|y|}
        return std::exp(2.0 * mu * std::log(std::abs(p.g1)) -
                        2.0 * std::lgamma(1.0 + 2.0 * mu));
    }
    double pmom = std::sqrt(E);
    cplx ap(0.5 + mu, p.g1 / (2.0 * pmom));
    double lg = 2.0 * log_gamma(ap).real() - 2.0 * std::lgamma(1.0 + 2.0 * mu);
    double expo = lg + 2.0 * mu * std::log(2.0 * pmom) -
                  kPi * p.g1 / (2.0 * pmom);
    return std::exp(expo) / (2.0 * kPi);
}

} // namespace

double continuum_density(const CouplingParams& p, const ExtensionParam& ext,
                         double E) {
    auto rc = classify(p);
    if (ext.range != rc.id)
        throw InvalidSolution("continuum density: extension range mismatch");
    if (E < 0.0) throw DomainError("continuum density: need E >= 0");

    if (rc.id == RangeId::R1) return density_r1(p, rc.mu.magnitude, E);

    if (E == 0.0 && p.g1 > 0.0) {
        double th0 = threshold_param(p);
        if (circle_distance(rc.id, ext.angle, th0) <= kAngleTol)
            throw ThresholdCase("sigma'(0) carries the delta weight here");
        return 0.0;
    }

    switch (rc.id) {
        case RangeId::R2: {
            double mu = rc.mu.magnitude;
            cplx F;
            double cnu = std::cos(ext.angle);
            if (E == 0.0) {
                // g1 < 0 limit of A, B
                double A0 =
                    2.0 * kPi * mu *
                        std::exp(2.0 * mu * std::log(std::abs(p.g1) / p.k0) -
                                 2.0 * std::lgamma(1.0 + 2.0 * mu)) *
                        std::cos(2.0 * kPi * mu) / std::sin(2.0 * kPi * mu) +
                    std::tan(ext.angle);
                double B0 = 2.0 * kPi *
                            std::exp(2.0 * mu * std::log(std::abs(p.g1) / p.k0) -
                                     2.0 * std::lgamma(1.0 + 2.0 * mu));
                if (is_endpoint_angle(ext)) return B0 / (2.0 * kPi * p.k0);
                return B0 /
                       (2.0 * kPi * p.k0 * cnu * cnu *
                        (A0 * A0 + mu * mu * B0 * B0));
            }
            auto c = WaveContext::make(p, cplx(E, 0.0));
            cplx f2 = f2_continuum(c);
            if (is_endpoint_angle(ext))
                return -f2.imag() / (2.0 * kPi * mu * p.k0);
            F = f2 + std::tan(ext.angle);
            double dens = (1.0 / F).imag() / (2.0 * kPi * mu * p.k0 * cnu * cnu);
            return dens;
        }
        case RangeId::R3: {
            double cth = std::cos(ext.angle);
            if (E == 0.0) {
                double B0 = kPi;
                double A0 = std::log(std::abs(p.g1) / p.k0) + 2.0 * kEuler -
                            std::tan(ext.angle);
                if (is_endpoint_angle(ext)) return 1.0;  // (1/2)(1 - tanh(-inf))
                return B0 / (kPi * cth * cth * (A0 * A0 + B0 * B0));
            }
            auto c = WaveContext::make(p, cplx(E, 0.0));
            cplx om = digamma(c.alpha_p) + std::log(c.lambda / c.p.k0) +
                      2.0 * kEuler - std::tan(ext.angle);
            if (is_endpoint_angle(ext))
                return -(digamma(c.alpha_p) + std::log(c.lambda / c.p.k0)).imag() /
                       kPi;
            return (1.0 / om).imag() / (kPi * cth * cth);
        }
        case RangeId::R4: {
            if (E == 0.0)
                throw DomainError(
                    "fourth range: sigma'(0) has no direction-free limit for g1 < 0");
            double kappa = rc.mu.magnitude;
            auto c = WaveContext::make(p, cplx(E, 0.0));
            cplx i(0.0, 1.0);
            cplx lk = std::log(c.lambda / p.k0);
            cplx a = std::exp(i * ext.angle + log_gamma(c.beta_p) -
                              log_gamma(c.alpha_p) - i * kappa * lk);
            cplx b = std::exp(-i * ext.angle + log_gamma(c.beta_m) -
                              log_gamma(c.alpha_m) + i * kappa * lk);
            cplx D = a / b;
            double dens = ((1.0 - std::norm(D)) / std::norm(1.0 + D)) /
                          (4.0 * kPi * kappa * p.k0);
            return dens;
        }
        case RangeId::R5: {
            double ce = std::cos(ext.angle);
            if (E == 0.0) {
                double B0 = kPi * std::abs(p.g1);
                double A0 = p.k0 * std::tan(ext.angle) -
                            p.g1 * (kEuler + std::log(std::abs(p.g1) / p.k0) - 1.0);
                if (is_endpoint_angle(ext))
                    return B0 / (kPi * p.k0 * p.k0);
                return B0 / (kPi * ce * ce * (A0 * A0 + B0 * B0));
            }
            auto c = WaveContext::make(p, cplx(E, 0.0));
            cplx wh = omega_half_fn(c);
            if (is_endpoint_angle(ext))
                return wh.imag() / (kPi * p.k0 * p.k0);
            cplx om5 = p.k0 * std::tan(ext.angle) - wh;
            return (1.0 / om5).imag() / (kPi * ce * ce);
        }
        default:
            throw NotApplicable("continuum density: unknown range");
    }
}

// ---- discrete spectra -------------------------------------------------------

namespace {

double level_weight(const CharacteristicFn& cf, double E) {
    const CouplingParams& p = cf.params();
    double cosang = std::cos(cf.ext().angle);
    switch (cf.tag()) {
        case CharacteristicTag::F2nu: {
            double mu = classify(p).mu.magnitude;
            double d = cf.derivative(E);
            return 1.0 / std::sqrt(-2.0 * mu * p.k0 * cosang * cosang * d);
        }
        case CharacteristicTag::Omega3: {
            double d = cf.derivative(E);
            return 1.0 / std::sqrt(-cosang * cosang * d);
        }
        case CharacteristicTag::Omega5: {
            double d = cf.derivative(E);
            return 1.0 / std::sqrt(-cosang * cosang * d);
        }
        case CharacteristicTag::Theta: {
            double kappa = classify(p).mu.magnitude;
            double d = cf.derivative(E);
            return 1.0 / std::sqrt(4.0 * kappa * p.k0 * d);
        }
        default:
            throw NotApplicable("level weight: closed-form range");
    }
}

// bisection + one secant polish on a sign change of f
template <typename F>
double refine_root(F&& f, double a, double b, double fa, double fb) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw BracketFailure("no sign change inside bracket");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        if (b - a < 1e-13 * std::abs(mid)) break;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if (fa * fm < 0.0) {
            b = mid;
            fb = fm;
        } else {
            a = mid;
            fa = fm;
        }
    }
    // secant polish
    double x0 = a, x1 = b;
    if (fb != fa) {
        double xs = x1 - fb * (x1 - x0) / (fb - fa);
        if (xs > a && xs < b) return xs;
    }
    return 0.5 * (a + b);
}

std::vector<DiscreteLevel> r1_closed_levels(const CouplingParams& p, double mu,
                                            int n_count, bool mirror) {
    std::vector<DiscreteLevel> out;
    if (p.g1 >= 0.0) return out;
    double m = mirror ? -mu : mu;
    int n_start = 0;
    if (mirror && 1.0 - 2.0 * mu <= 0.0) n_start = 1;  // need 1-2mu+2n > 0
    for (int n = n_start; int(out.size()) < n_count; ++n) {
        double denom = 1.0 + 2.0 * m + 2.0 * n;
        if (denom <= 0.0) continue;
        double tau = std::abs(p.g1) / denom;
        DiscreteLevel lvl;
        lvl.n = n;
        lvl.energy = -tau * tau;
        // Q_n = (2 tau)^{m+1} k0^{-(1/2+m)} / Gamma(1+2m)
        //       sqrt(tau Gamma(1+2m+n) / (|g1| n!))
        int s1, s2;
        double lg = log_gamma_signed(1.0 + 2.0 * m + n, s1) -
                    std::lgamma(double(n + 1));
        double lq = (m + 1.0) * std::log(2.0 * tau) -
                    (0.5 + m) * std::log(p.k0);
        int s3;
        lq -= log_gamma_signed(1.0 + 2.0 * m, s3);
        lq += 0.5 * (std::log(tau) - std::log(std::abs(p.g1)) + lg);
        lvl.weight_Q = double(s3) * std::exp(lq);
        lvl.bracket_lo = lvl.energy;
        lvl.bracket_hi = lvl.energy;
        out.push_back(lvl);
    }
    return out;
}

} // namespace

std::vector<DiscreteLevel> closed_form_levels(const CouplingParams& p,
                                              ClosedFormVariant variant,
                                              int n_count) {
    auto rc = classify(p);
    std::vector<DiscreteLevel> out;
    if (p.g1 >= 0.0) return out;
    switch (variant) {
        case ClosedFormVariant::R1: {
            if (rc.id != RangeId::R1)
                throw InvalidSolution("closed form: couplings not in range 1");
            // weight against u1 itself: drop the k0 scaling used by the
            // extension-normalized variants
            auto lv = r1_closed_levels(p, rc.mu.magnitude, n_count, false);
            for (auto& l : lv)
                l.weight_Q *= std::pow(p.k0, 0.5 + rc.mu.magnitude);
            return lv;
        }
        case ClosedFormVariant::R2_endpoint:
            if (rc.id != RangeId::R2)
                throw InvalidSolution("closed form: couplings not in range 2");
            return r1_closed_levels(p, rc.mu.magnitude, n_count, false);
        case ClosedFormVariant::R2_nu0_mirror:
            if (rc.id != RangeId::R2)
                throw InvalidSolution("closed form: couplings not in range 2");
            return r1_closed_levels(p, rc.mu.magnitude, n_count, true);
        case ClosedFormVariant::R3_endpoint: {
            if (rc.id != RangeId::R3)
                throw InvalidSolution("closed form: couplings not in range 3");
            for (int n = 0; n < n_count; ++n) {
                double tau = std::abs(p.g1) / (1.0 + 2.0 * n);
                DiscreteLevel lvl;
                lvl.n = n;
                lvl.energy = -tau * tau;
                lvl.weight_Q =
                    2.0 * std::abs(p.g1) * std::pow(1.0 + 2.0 * n, -1.5);
                lvl.bracket_lo = lvl.bracket_hi = lvl.energy;
                out.push_back(lvl);
            }
            return out;
        }
        case ClosedFormVariant::R5_endpoint: {
            if (rc.id != RangeId::R5)
                throw InvalidSolution("closed form: couplings not in range 5");
            for (int n = 0; n < n_count; ++n) {
                double tau = std::abs(p.g1) / (2.0 + 2.0 * n);
                DiscreteLevel lvl;
                lvl.n = n;
                lvl.energy = -tau * tau;
                lvl.weight_Q = 2.0 / p.k0 * std::pow(tau, 1.5);
                lvl.bracket_lo = lvl.bracket_hi = lvl.energy;
                out.push_back(lvl);
            }
            return out;
        }
    }
    throw NotApplicable("closed_form_levels: unknown variant");
}

std::vector<DiscreteLevel> discrete_spectrum(const CouplingParams& p,
                                             const ExtensionParam& ext,
                                             double e_min, int n_limit) {
    auto rc = classify(p);
    if (ext.range != rc.id)
        throw InvalidSolution("discrete spectrum: extension range mismatch");
    if (!(e_min < 0.0)) throw DomainError("discrete spectrum: e_min must be < 0");
    std::vector<DiscreteLevel> out;

    if (rc.id == RangeId::R1) {
        auto lv = closed_form_levels(p, ClosedFormVariant::R1, n_limit);
        for (auto& l : lv)
            if (l.energy > e_min) out.push_back(l);
        return out;
    }

    // endpoint angles of the nu/vartheta/eps families have closed forms
    if (is_endpoint_angle(ext)) {
        ClosedFormVariant v = rc.id == RangeId::R2 ? ClosedFormVariant::R2_endpoint
                              : rc.id == RangeId::R3
                                  ? ClosedFormVariant::R3_endpoint
                                  : ClosedFormVariant::R5_endpoint;
        if (rc.id == RangeId::R4)
            throw NotApplicable("fourth range has no endpoint closed form");
        auto lv = closed_form_levels(p, v, n_limit);
        std::vector<DiscreteLevel> kept;
        for (auto& l : lv)
            if (l.energy > e_min) kept.push_back(l);
        return kept;
    }

    CharacteristicFn cf = CharacteristicFn::make(p, ext);

    if (rc.id == RangeId::R4) {
        double kappa = rc.mu.magnitude;
        // Theta is continuous and increasing; levels at Theta = pi/2 + pi n.
        double e_hi = -1e-14 * std::max(p.g1 * p.g1, p.k0 * p.k0);
        double th_lo = cf.value(e_min);
        double th_hi = cf.value(e_hi);
        int n_lo = int(std::ceil((th_lo - kPi / 2.0) / kPi));
        int n_hi = int(std::floor((th_hi - kPi / 2.0) / kPi));
        for (int n = n_hi; n >= n_lo && int(out.size()) < n_limit; --n) {
            double target = kPi / 2.0 + kPi * n;
            double E = refine_root(
                [&](double e) { return cf.value(e) - target; }, e_min, e_hi,
                th_lo - target, th_hi - target);
            DiscreteLevel lvl;
            lvl.n = n;
            lvl.energy = E;
            lvl.weight_Q = level_weight(cf, E);
            lvl.bracket_lo = e_min;
            lvl.bracket_hi = e_hi;
            out.push_back(lvl);
        }
        std::sort(out.begin(), out.end(),
                  [](const DiscreteLevel& a, const DiscreteLevel& b) {
                      return a.energy < b.energy;
                  });
        // keep kappa referenced for clarity of the quantization scale
        (void)kappa;
        return out;
    }

    // nu / vartheta / eps families: one root per pole bracket
    if (p.g1 < 0.0) {
        auto poles = cf.poles_above(e_min, n_limit + 2);
        double lo = e_min;
        for (int n = 0; n < int(poles.size()) && int(out.size()) < n_limit;
             ++n) {
            double hi = poles[n];
            double a = lo + kPoleGuard * std::abs(lo) * 10.0;
            double b = hi - std::max(1e-13, 5e-10 * std::abs(hi));
            if (b <= a) { lo = hi; continue; }
            double fa, fb;
            try {
                fa = cf.value(a);
                fb = cf.value(b);
            } catch (const PoleProximity&) {
                lo = hi;
                continue;
            }
            if (fa * fb < 0.0) {
                double E = refine_root([&](double e) { return cf.value(e); }, a,
                                       b, fa, fb);
                DiscreteLevel lvl;
                lvl.n = n;
                lvl.energy = E;
                lvl.weight_Q = level_weight(cf, E);
                lvl.bracket_lo = lo;
                lvl.bracket_hi = hi;
                out.push_back(lvl);
            } else if (n > 0) {
                throw BracketFailure(
                    "expected a sign change between consecutive poles");
            }
            lo = hi;
        }
        return out;
    }

    // g1 > 0: at most one negative level, below the threshold angle
    double th0 = threshold_param(p);
    bool has_level = false;
    switch (rc.id) {
        case RangeId::R2:
        case RangeId::R5:
            has_level = ext.angle < th0 - kAngleTol;
            break;
        case RangeId::R3:
            has_level = ext.angle > th0 + kAngleTol;
            break;
        default:
            break;
    }
    if (!has_level) return out;
    double b = -1e-12 * p.g1 * p.g1;
    double fa = cf.value(e_min), fb = cf.value(b);
    if (fa * fb < 0.0) {
        double E = refine_root([&](double e) { return cf.value(e); }, e_min, b,
                               fa, fb);
        DiscreteLevel lvl;
        lvl.n = 0;
        lvl.energy = E;
        lvl.weight_Q = level_weight(cf, E);
        lvl.bracket_lo = e_min;
        lvl.bracket_hi = 0.0;
        out.push_back(lvl);
    }
    return out;
}

SpectrumReport assemble_spectrum(const CouplingParams& p,
                                 const ExtensionParam& ext, double e_min,
                                 int n_limit,
                                 const std::vector<double>& e_grid) {
    SpectrumReport rep;
    rep.params = p;
    rep.range = classify(p);
    rep.ext = ext;
    for (double E : e_grid) {
        if (E < 0.0) throw DomainError("spectrum grid: E >= 0 required");
        double d;
        try {
            d = continuum_density(p, ext, E);
        } catch (const ThresholdCase&) {
            continue;  // delta weight reported separately
        }
        rep.continuum.push_back({E, d});
    }
    rep.discrete = discrete_spectrum(p, ext, e_min, n_limit);
    if (p.g1 > 0.0 && rep.range.id != RangeId::R1) {
        try {
            rep.zero_mode_weight = zero_energy_eigenvalue(p, ext);
        } catch (const NotApplicable&) {
        }
    }
    if (rep.range.id == RangeId::R4)
        rep.notes.push_back("discrete spectrum unbounded below");
    if (p.g1 < 0.0)
        rep.notes.push_back("discrete spectrum accumulates at E = 0");
    if (rep.discrete.empty() && !rep.zero_mode_weight)
        rep.notes.push_back("continuum only in the requested window");
    rep.notes.push_back("extension labels are relative to k0 = " +
                        std::to_string(p.k0));
    return rep;
}

// ---- shared omolega machinery ----------------------------------------------

ExtensionOmegas extension_omegas(const WaveContext& c, const ExtensionParam& ext) {
    if (ext.range != c.range.id)
        throw InvalidSolution("extension omegas: range mismatch");
    ExtensionOmegas out;
    cplx i(0.0, 1.0);
    switch (c.range.id) {
        case RangeId::R2: {
            cplx mu = c.mu;
            cplx lam_mu = std::exp(mu * std::log(c.lambda / c.p.k0));
            cplx om = omega_fn(c);
            cplx gm = std::exp(log_gamma(c.beta_m) - log_gamma(c.alpha_m));
            double s = std::sin(ext.angle), co = std::cos(ext.angle);
            out.prin_coeff = om / lam_mu * s + lam_mu * gm * co;
            out.conj_coeff = om / lam_mu * co - lam_mu * gm * s;
            out.prefactor = 1.0 / (2.0 * mu) / std::sqrt(c.p.k0) *
                            std::exp(mu * std::log(c.lambda));
            return out;
        }
        case RangeId::R3: {
            cplx w0 = omega0_fn(c);
            double s = std::sin(ext.angle), co = std::cos(ext.angle);
            out.prin_coeff = w0 * co + s;
            out.conj_coeff = w0 * s - co;
            out.prefactor = std::exp(-log_gamma(c.alpha_p));
            return out;
        }
        case RangeId::R4: {
            double kappa = c.range.mu.magnitude;
            cplx lk = std::log(c.lambda / c.p.k0);
            cplx a = std::exp(i * ext.angle + log_gamma(c.beta_p) -
                              log_gamma(c.alpha_p) - i * kappa * lk);
            cplx b = std::exp(-i * ext.angle + log_gamma(c.beta_m) -
                              log_gamma(c.alpha_m) + i * kappa * lk);
            out.prin_coeff = a + b;
            out.conj_coeff = i * (a - b);
            out.prefactor = -std::exp(i * kappa * lk) *
                            std::exp(cplx(-0.5, kappa) * std::log(c.p.k0)) /
                            (4.0 * kappa);
            return out;
        }
        case RangeId::R5: {
            cplx wh = omega_half_fn(c);
            double s = std::sin(ext.angle), co = std::cos(ext.angle);
            out.prin_coeff = wh * co - c.p.k0 * s;
            out.conj_coeff = wh * s + c.p.k0 * co;
            out.prefactor =
                std::exp(-log_gamma(1.0 + c.p.g1 / c.lambda)) / c.p.k0;
            return out;
        }
        default:
            throw NotApplicable("extension omegas: first range has none");
    }
}

double bound_state(const CouplingParams& p, const ExtensionParam& ext,
                   const DiscreteLevel& level, double x) {
    if (!(x > 0.0)) throw DomainError("bound_state: x > 0 required");
    auto rc = classify(p);
    cplx E(level.energy, 0.0);
    auto c = WaveContext::make(p, E);
    double tau = std::sqrt(-level.energy);

    bool polynomial = false;
    if (rc.mu.is_real) {
        double a = c.alpha_p.real();
        polynomial = std::abs(a - std::round(a)) < 1e-9 && a < 0.5;
    }
    double z = 2.0 * tau * x;
    if (polynomial || z <= 15.0 || rc.id == RangeId::R1)
        return level.weight_Q * eval_principal(p, ext, x, E).value.real();

    // recessive representation: principal = v1 / (pre * conj_coeff)
    auto om = extension_omegas(c, ext);
    SeriesControl relaxed;
    relaxed.rel_tol = 1e-9;
    auto psi = detail_sf::tricomi_asymptotic(c.alpha_p, c.beta_p, c.z(x),
                                             relaxed);
    cplx v1 = std::exp(2.0 * c.mu * std::log(c.lambda) +
                       (0.5 + c.mu) * std::log(x) - c.z(x) / 2.0) *
              psi.f;
    cplx val = v1 / (om.prefactor * om.conj_coeff);
    return level.weight_Q * val.real();
}

double bound_state_cutoff(const CouplingParams& p, const DiscreteLevel& level) {
    double tau = std::sqrt(std::max(-level.energy, 1e-300));
    double xt = std::abs(p.g1) / (tau * tau);
    return std::max(2.0 * xt, 45.0 / tau);
}

} // namespace kratzer
