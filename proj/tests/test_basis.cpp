#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "kratzer/basis.hpp"

using namespace kratzer;

namespace {

// One draw of couplings for a given range, away from the half-integer
// slivers where the u2 representation degenerates.
CouplingParams draw_params(RangeId id, std::mt19937& rng) {
    std::uniform_real_distribution<double> g1d(0.3, 2.0), sgn(0.0, 1.0);
    double g1 = g1d(rng) * (sgn(rng) < 0.5 ? -1.0 : 1.0);
    double g2 = 0.0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (id) {
        case RangeId::R1: {
            double mu;
            do { mu = 1.0 + 1.4 * u(rng); } while (
                std::abs(2.0 * mu - std::round(2.0 * mu)) < 5e-2);
            g2 = mu * mu - 0.25;
            break;
        }
        case RangeId::R2: {
            double mu;
            do { mu = 0.05 + 0.9 * u(rng); } while (
                std::abs(mu - 0.5) < 5e-2 || mu > 0.95);
            g2 = mu * mu - 0.25;
            break;
        }
        case RangeId::R3: g2 = -0.25; break;
        case RangeId::R4: {
            double ka = 0.2 + 1.8 * u(rng);
            g2 = -ka * ka - 0.25;
            break;
        }
        case RangeId::R5: g2 = 0.0; break;
    }
    return {g1, g2, 1.0};
}

cplx draw_W(std::mt19937& rng, bool allow_complex = true) {
    std::uniform_real_distribution<double> mag(0.05, 2.0), u(0.0, 1.0);
    double re = mag(rng) * (u(rng) < 0.5 ? -1.0 : 1.0);
    if (allow_complex && u(rng) < 0.3) return {re, mag(rng)};
    return {re, 0.0};
}

int vm_index(const CouplingParams& p) {
    double mu = classify(p).mu.magnitude;
    int m = int(std::lround(2.0 * mu));
    if (!(2.0 * mu > m - 1 && 2.0 * mu < m + 1)) m = int(std::floor(2.0 * mu));
    return std::max(m, 1);
}

std::vector<SolutionId> range_solutions(RangeId id, const CouplingParams& p) {
    std::vector<SolutionId> ids = {SolutionId::u1(), SolutionId::principal()};
    switch (id) {
        case RangeId::R1:
            ids.push_back(SolutionId::vm(vm_index(p)));
            break;
        case RangeId::R2:
        case RangeId::R4:
            ids.push_back(SolutionId::u2());
            ids.push_back(SolutionId::conjugate());
            break;
        case RangeId::R3:
            ids.push_back(SolutionId::u3());
            ids.push_back(SolutionId::conjugate());
            break;
        case RangeId::R5:
            ids.push_back(SolutionId::u5());
            ids.push_back(SolutionId::conjugate());
            break;
    }
    return ids;
}

ExtensionParam draw_ext(RangeId id, std::mt19937& rng) {
    if (id == RangeId::R1) return ExtensionParam::unique_extension();
    std::uniform_real_distribution<double> a(-1.4, 1.4);
    double ang = a(rng);
    if (id == RangeId::R4) ang = std::abs(ang);
    return ExtensionParam::make(id, ang);
}

// Radial-equation residual with a 5-point second-derivative stencil.
double ode_residual(const CouplingParams& p, const ExtensionParam& ext,
                    SolutionId id, double x, cplx W) {
    double V = p.g1 / x + p.g2 / (x * x);
    double h = std::min(0.01 * x,
                        0.07 / std::sqrt(std::abs(W) + std::abs(V) + 1.0));
    cplx f[5];
    for (int i = -2; i <= 2; ++i)
        f[i + 2] = eval_solution(id, p, ext, x + i * h, W).value;
    cplx d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) /
              (12.0 * h * h);
    cplx resid = d2 - (V - W) * f[2];
    double scale = (std::abs(V) + std::abs(W) + 1.0 / (x * x));
    double fmax = 0.0;
    for (auto& v : f) fmax = std::max(fmax, std::abs(v));
    return std::abs(resid) / (scale * std::max(fmax, 1e-300));
}

} // namespace

TEST_CASE("u1 origin behavior at W = 0 (mu = 1)") {
    CouplingParams p{1.0, 0.75, 1.0};
    for (double x : {1e-3, 1e-4}) {
        auto s = eval_u1(p, x, 0.0);
        double lead = std::pow(x, 1.5);
        CHECK(std::abs(s.value - lead) / lead < 0.4 * x);  // O(x) correction
    }
}

TEST_CASE("u1 is invariant under lambda -> -lambda") {
    CouplingParams p{0.8, 0.3 * 0.3 - 0.25, 1.0};
    for (cplx W : {cplx(-0.6, 0.0), cplx(1.2, 0.0), cplx(0.4, 0.7)}) {
        auto c = WaveContext::make(p, W);
        double x = 0.9;
        cplx lam_flip = -c.lambda;
        cplx z_flip = lam_flip * x;
        cplx a_flip = 0.5 + c.mu + p.g1 / lam_flip;
        cplx alt = std::exp((0.5 + c.mu) * std::log(x)) *
                   std::exp(-z_flip / 2.0) *
                   kummer_phi(a_flip, c.beta_p, z_flip);
        auto s = eval_u1(p, x, W);
        CHECK(std::abs(s.value - alt) / std::abs(s.value) < 1e-10);
    }
}

TEST_CASE("fourth range: u2 is the conjugate of u1 at real energy") {
    std::mt19937 rng(42);
    for (int i = 0; i < 10; ++i) {
        auto p = draw_params(RangeId::R4, rng);
        cplx E(draw_W(rng, false).real(), 0.0);
        for (double x : {0.3, 1.1, 4.0}) {
            auto u1 = eval_u1(p, x, E);
            auto u2 = eval_u2(p, x, E);
            CHECK(std::abs(u2.value - std::conj(u1.value)) <=
                  1e-10 * std::abs(u1.value));
            CHECK(std::abs(u2.deriv - std::conj(u1.deriv)) <=
                  1e-10 * std::abs(u1.deriv));
        }
    }
}

TEST_CASE("named Wronskian values") {
    CouplingParams p2{1.3, 0.3 * 0.3 - 0.25, 1.0};
    auto ext2 = ExtensionParam::make(RangeId::R2, 0.2);
    cplx wr = wronskian(SolutionId::u1(), SolutionId::u2(), p2, ext2, 0.7,
                        cplx(-0.8, 0.0));
    CHECK(std::abs(wr - cplx(-0.6, 0.0)) < 1e-9);

    CouplingParams p3{-1.1, -0.25, 1.0};
    auto ext3 = ExtensionParam::make(RangeId::R3, 0.0);
    wr = wronskian(SolutionId::u1(), SolutionId::u3(), p3, ext3, 0.5,
                   cplx(-0.5, 0.0));
    CHECK(std::abs(wr - 1.0) < 1e-9);

    CouplingParams p5{0.9, 0.0, 1.0};
    auto ext5 = ExtensionParam::make(RangeId::R5, 0.0);
    wr = wronskian(SolutionId::u1(), SolutionId::u5(), p5, ext5, 0.8,
                   cplx(0.7, 0.0));
    CHECK(std::abs(wr + 1.0) < 1e-9);
}

TEST_CASE("Wr(u1, v1) = -omega over random draws in every range") {
    std::mt19937 rng(4242);
    for (RangeId id : {RangeId::R1, RangeId::R2, RangeId::R3, RangeId::R4,
                       RangeId::R5}) {
        for (int i = 0; i < 30; ++i) {
            auto p = draw_params(id, rng);
            cplx W = draw_W(rng);
            std::uniform_real_distribution<double> xs(0.05, 2.0);
            double x = xs(rng);
            auto u1 = eval_u1(p, x, W);
            auto v1 = eval_v1(p, x, W);
            auto c = WaveContext::make(p, W);
            cplx om = omega_fn(c);
            CHECK(std::abs(wronskian_of(u1, v1) + om) <=
                  1e-8 * std::max(1.0, std::abs(om)));
        }
    }
}

TEST_CASE("v_(m): Wronskian, real a_m, and the half-integer limit") {
    std::mt19937 rng(7);
    for (int i = 0; i < 20; ++i) {
        auto p = draw_params(RangeId::R1, rng);
        double mu = classify(p).mu.magnitude;
        int m = vm_index(p);
        cplx W = draw_W(rng);
        std::uniform_real_distribution<double> xs(0.1, 2.5);
        double x = xs(rng);
        auto u1 = eval_u1(p, x, W);
        auto vm = eval_vm(m, p, x, W);
        CHECK(std::abs(wronskian_of(u1, vm) + 2.0 * mu) <=
              1e-9 * (1.0 + 2.0 * mu));
    }
    for (int i = 0; i < 10; ++i) {
        auto p = draw_params(RangeId::R1, rng);
        auto c = WaveContext::make(p, cplx(draw_W(rng, false).real(), 0.0));
        for (int m : {2, 3}) {
            cplx am = am_coefficient(c, m);
            CHECK(std::abs(am.imag()) <= 1e-12 * std::max(1.0, std::abs(am)));
        }
    }
    // 2mu = m exactly: matches the mu-limit from offsets ±1e-4
    CouplingParams pe{-1.0, 0.75, 1.0};  // mu = 1, m = 2
    cplx W(-0.4, 0.0);
    auto vme = eval_vm(2, pe, 1.1, W);
    CouplingParams pa = pe, pb = pe;
    pa.g2 = std::pow(1.0 + 1e-4, 2) - 0.25;
    pb.g2 = std::pow(1.0 - 1e-4, 2) - 0.25;
    cplx lim = 0.5 * (eval_vm(2, pa, 1.1, W).value + eval_vm(2, pb, 1.1, W).value);
    CHECK(std::abs(vme.value - lim) <= 1e-6 * std::abs(lim));
}

TEST_CASE("v1: exponential decay and the two evaluation routes") {
    CouplingParams p{1.3, 0.3 * 0.3 - 0.25, 1.0};
    cplx W(0.5, 0.8);
    auto c = WaveContext::make(p, W);
    for (double x : {30.0, 60.0, 120.0}) {
        auto v1 = eval_v1(p, x, W);
        cplx pred = std::exp(-c.alpha_m * std::log(c.lambda)) *
                    std::exp(-(p.g1 / c.lambda) * std::log(x)) *
                    std::exp(-c.z(x) / 2.0);
        CHECK(std::abs(v1.value / pred - 1.0) <= 4.0 / x);
    }
    for (cplx Wd : {cplx(-0.9, 0.0), cplx(0.8, 0.4)}) {
        auto cd = WaveContext::make(p, Wd);
        double x = 0.7;
        auto direct = eval_v1(p, x, Wd);
        cplx c1 = std::exp(2.0 * cd.mu * std::log(cd.lambda)) *
                  gamma_fn(-2.0 * cd.mu) / gamma_fn(cd.alpha_m);
        cplx c2 = gamma_fn(2.0 * cd.mu) / gamma_fn(cd.alpha_p);
        cplx decomp = c1 * eval_u1(p, x, Wd).value + c2 * eval_u2(p, x, Wd).value;
        CHECK(std::abs(direct.value - decomp) <= 1e-8 * std::abs(decomp));
    }
}

TEST_CASE("boundary_fit recovers extension coefficients") {
    std::mt19937 rng(11);
    for (RangeId id : {RangeId::R2, RangeId::R3, RangeId::R5}) {
        auto p = draw_params(id, rng);
        auto ext = draw_ext(id, rng);
        cplx W(-0.35, 0.0);
        double xb = asymptotic_regime_bound(p, W);
        std::vector<SolutionSample> samples;
        for (int i = 0; i < 6; ++i)
            samples.push_back(eval_principal(p, ext, xb * (0.2 + 0.13 * i), W));
        auto fit = boundary_fit(samples, p);
        CHECK(std::abs(fit.a1 - std::sin(ext.angle)) < 1e-6);
        CHECK(std::abs(fit.a2 - std::cos(ext.angle)) < 1e-6);
    }
    // R4: a1/a2 = e^{2 i theta}
    auto p4 = draw_params(RangeId::R4, rng);
    double th = 0.7;
    auto ext4 = ExtensionParam::make(RangeId::R4, th);
    cplx W(-0.5, 0.0);
    double xb = asymptotic_regime_bound(p4, W);
    std::vector<SolutionSample> samples;
    for (int i = 0; i < 6; ++i)
        samples.push_back(eval_principal(p4, ext4, xb * (0.2 + 0.13 * i), W));
    auto fit = boundary_fit(samples, p4);
    cplx ratio = fit.a1 / fit.a2;
    CHECK(std::abs(ratio - std::exp(cplx(0.0, 2.0 * th))) < 1e-6);
    // pure u1 input -> a2 = 0
    auto p2 = draw_params(RangeId::R2, rng);
    samples.clear();
    double xb2 = asymptotic_regime_bound(p2, W);
    auto c2 = WaveContext::make(p2, W);
    cplx norm = std::exp((0.5 + c2.mu) * std::log(p2.k0));
    for (int i = 0; i < 6; ++i) {
        auto s = eval_u1(p2, xb2 * (0.2 + 0.13 * i), W);
        s.value *= norm;
        s.deriv *= norm;
        samples.push_back(s);
    }
    fit = boundary_fit(samples, p2);
    CHECK(std::abs(fit.a2) < 1e-8 * std::max(1.0, std::abs(fit.a1)));
}

TEST_CASE("ODE residual on a log grid for every implemented solution") {
    std::mt19937 rng(20260810);
    for (RangeId id : {RangeId::R1, RangeId::R2, RangeId::R3, RangeId::R4,
                       RangeId::R5}) {
        for (int draw = 0; draw < 30; ++draw) {
            auto p = draw_params(id, rng);
            auto ext = draw_ext(id, rng);
            cplx W = draw_W(rng);
            for (auto sid : range_solutions(id, p)) {
                for (double x : {1.3e-3, 1.1e-2, 0.12, 0.9, 3.1, 11.0, 48.0}) {
                    CHECK(ode_residual(p, ext, sid, x, W) <= 1e-6);
                }
            }
        }
    }
}

TEST_CASE("Wronskian constancy across x for fundamental pairs") {
    std::mt19937 rng(5150);
    for (RangeId id : {RangeId::R1, RangeId::R2, RangeId::R3, RangeId::R4,
                       RangeId::R5}) {
        for (int draw = 0; draw < 6; ++draw) {
            auto p = draw_params(id, rng);
            auto ext = draw_ext(id, rng);
            cplx W = draw_W(rng);
            SolutionId a = SolutionId::principal(), b = SolutionId::conjugate();
            if (id == RangeId::R1) b = SolutionId::vm(vm_index(p));
            cplx w0;
            double spread = 0.0, scale = 0.0;
            for (int i = 0; i < 10; ++i) {
                double x = 0.05 * std::pow(1.9, i);
                cplx w = wronskian(a, b, p, ext, x, W);
                if (i == 0) w0 = w;
                spread = std::max(spread, std::abs(w - w0));
                scale = std::max(scale, std::abs(w));
            }
            CHECK(spread <= 1e-8 * scale);
        }
    }
}

TEST_CASE("real-entirety: imaginary parts vanish at real W") {
    std::mt19937 rng(31415);
    for (RangeId id : {RangeId::R1, RangeId::R2, RangeId::R3, RangeId::R4,
                       RangeId::R5}) {
        for (int draw = 0; draw < 10; ++draw) {
            auto p = draw_params(id, rng);
            auto ext = draw_ext(id, rng);
            cplx E(draw_W(rng, false).real(), 0.0);
            auto ids = range_solutions(id, p);
            if (id == RangeId::R4) {
                // u1, u2 are mutually conjugate; the real-entire objects are
                // the principal/conjugate combinations
                ids = {SolutionId::principal(), SolutionId::conjugate()};
            }
            for (auto sid : ids) {
                for (double x : {0.2, 1.0, 3.7}) {
                    auto s = eval_solution(sid, p, ext, x, E);
                    CHECK(std::abs(s.value.imag()) <=
                          1e-10 * std::max(1e-300, std::abs(s.value)));
                }
            }
        }
    }
}

TEST_CASE("origin asymptotics carry the stated remainder order") {
    std::mt19937 rng(99);
    for (RangeId id : {RangeId::R1, RangeId::R2, RangeId::R3, RangeId::R4,
                       RangeId::R5}) {
        auto p = draw_params(id, rng);
        auto rc = classify(p);
        cplx W(-0.45, 0.0);
        std::vector<double> xs, rs;
        for (double x = 1e-4; x < 2e-2; x *= 2.3) {
            auto s = eval_u1(p, x, W);
            auto lead = origin_form_first(p, x);
            cplx norm = std::exp(-(0.5 + rc.mu.value()) * std::log(p.k0));
            if (id == RangeId::R5) norm = 1.0 / p.k0;
            double r = std::abs(s.value - norm * lead.value);
            if (r > 0.0) {
                xs.push_back(std::log(x));
                rs.push_back(std::log(r));
            }
        }
        REQUIRE(xs.size() >= 4);
        double n = double(xs.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += rs[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * rs[i];
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        double lead_power = (id == RangeId::R5) ? 1.0 : 0.5 + rc.mu.value().real();
        CHECK(slope >= lead_power + 1.0 - 0.1);
    }
}

TEST_CASE("invalid solution requests are rejected") {
    CouplingParams p3{1.0, -0.25, 1.0};
    CHECK_THROWS_AS(eval_u3({1.0, 0.3, 1.0}, 1.0, cplx(-1.0, 0.0)),
                    InvalidSolution);
    CHECK_THROWS_AS(eval_u5(p3, 1.0, cplx(-1.0, 0.0)), InvalidSolution);
    CHECK_THROWS_AS(eval_u2(p3, 1.0, cplx(-1.0, 0.0)), InvalidSolution);
    CHECK_THROWS_AS(eval_u2({1.0, 0.0, 1.0}, 1.0, cplx(-1.0, 0.0)),
                    InvalidSolution);
    CHECK_THROWS_AS(eval_vm(2, {1.0, 0.3, 1.0}, 1.0, cplx(-1.0, 0.0)),
                    InvalidSolution);
    auto extwrong = ExtensionParam::make(RangeId::R2, 0.1);
    CHECK_THROWS_AS(eval_principal({1.0, 1.4, 1.0}, extwrong, 1.0, cplx(-1.0, 0.0)),
                    InvalidSolution);
    CHECK_THROWS_AS(eval_u1({1.0, 1.4, 1.0}, -1.0, cplx(-1.0, 0.0)), DomainError);
}
