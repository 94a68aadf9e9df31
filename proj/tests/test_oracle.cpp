#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "kratzer/basis.hpp"
#include "kratzer/oracle.hpp"

using namespace kratzer;

TEST_CASE("calibration integral") {
    double v = quad_integral([](double x) { return std::sqrt(x); }, 0.0, 1.0,
                             1e-10);
    CHECK(std::abs(v - 2.0 / 3.0) < 1e-10);
    double ip = quad_inner_product([](double x) { return std::sqrt(std::sqrt(x)); },
                                   [](double x) { return std::sqrt(std::sqrt(x)); },
                                   0.0, 1.0, 1e-10);
    CHECK(std::abs(ip - 2.0 / 3.0) < 1e-9);
}

TEST_CASE("bound state decays at the eigenvalue and grows off it") {
    CouplingParams p{-1.0, 0.75, 1.0};  // mu = 1, levels -1/(3+2n)^2
    auto ext = ExtensionParam::unique_extension();
    ShootingConfig cfg;
    cfg.x_far = 60.0;
    std::vector<double> grid = {1.0, 10.0, 30.0, 60.0};
    auto at_level = integrate_solution(p, ext, -1.0 / 9.0, cfg, grid);
    CHECK(std::abs(at_level.back().psi) < 1e-2 * std::abs(at_level[1].psi));
    auto off_level = integrate_solution(p, ext, -1.0 / 9.0 + 0.01, cfg, grid);
    CHECK(std::abs(off_level.back().psi) > 1e2 * std::abs(off_level[1].psi));
}

TEST_CASE("integrated principal solution tracks the closed forms") {
    ShootingConfig cfg;
    cfg.x_far = 50.0;
    std::vector<double> grid;
    for (double x = 0.02; x <= 8.0; x *= 1.7) grid.push_back(x);

    struct Case {
        CouplingParams p;
        ExtensionParam ext;
        double W;
    };
    std::vector<Case> cases = {
        {{-1.0, 0.75, 1.0}, ExtensionParam::unique_extension(), -0.31},
        {{1.2, 0.3 * 0.3 - 0.25, 1.0}, ExtensionParam::make(RangeId::R2, 0.4),
         -0.52},
        {{-0.8, -0.25, 1.0}, ExtensionParam::make(RangeId::R3, 0.9), -0.44},
        {{-1.1, -0.7, 1.0}, ExtensionParam::make(RangeId::R4, 1.1), -0.63},
        {{0.7, 0.0, 1.0}, ExtensionParam::make(RangeId::R5, -0.5), -0.37},
    };
    for (const auto& c : cases) {
        auto pts = integrate_solution(c.p, c.ext, c.W, cfg, grid);
        for (const auto& pt : pts) {
            auto ref = eval_principal(c.p, c.ext, pt.x, cplx(c.W, 0.0));
            CHECK(std::abs(pt.psi - ref.value.real()) <=
                  1e-6 * std::max(1.0, std::abs(ref.value.real())));
        }
    }
}

TEST_CASE("origin seed matches the basis principal solution") {
    CouplingParams p{-0.8, -0.25, 1.0};
    auto ext = ExtensionParam::make(RangeId::R3, 0.9);
    for (double x : {1e-4, 3e-4, 1e-3}) {
        auto seed = origin_series_seed(p, ext, x, -0.44);
        auto ref = eval_principal(p, ext, x, cplx(-0.44, 0.0));
        CHECK(std::abs(seed.psi - ref.value.real()) <=
              1e-9 * std::abs(ref.value.real()));
        CHECK(std::abs(seed.dpsi - ref.deriv.real()) <=
              1e-8 * std::abs(ref.deriv.real()));
    }
}

TEST_CASE("shooting finds the first-range levels and nothing for g1 > 0") {
    CouplingParams p{-1.0, 0.75, 1.0};  // levels -1/9, -1/25, -1/49
    auto ext = ExtensionParam::unique_extension();
    ShootingConfig cfg;
    auto levels = shoot_eigenvalues(p, ext, -0.2, -0.015, cfg, 300);
    REQUIRE(levels.size() == 3);
    CHECK(std::abs(levels[0] + 1.0 / 9.0) <= 1e-6 / 9.0);
    CHECK(std::abs(levels[1] + 1.0 / 25.0) <= 1e-6 / 25.0);
    CHECK(std::abs(levels[2] + 1.0 / 49.0) <= 1e-6 / 49.0);

    CouplingParams prep{1.0, 0.75, 1.0};
    auto none = shoot_eigenvalues(prep, ext, -0.2, -0.015, cfg, 300);
    CHECK(none.empty());
}

TEST_CASE("shooting reproduces the second-range endpoint spectrum") {
    // nu = pi/2 selects u1; quantization at E_n = -g1^2/(1+2mu+2n)^2
    double mu = 0.25;
    CouplingParams p{-1.0, mu * mu - 0.25, 1.0};
    auto ext = ExtensionParam::make(RangeId::R2, 3.141592653589793 / 2.0);
    ShootingConfig cfg;
    auto levels = shoot_eigenvalues(p, ext, -0.6, -0.02, cfg, 400);
    REQUIRE(levels.size() >= 2);
    double e0 = -1.0 / std::pow(1.5, 2);
    double e1 = -1.0 / std::pow(3.5, 2);
    CHECK(std::abs(levels[0] - e0) <= 1e-6 * std::abs(e0));
    CHECK(std::abs(levels[1] - e1) <= 1e-6 * std::abs(e1));
}

TEST_CASE("grid refinement keeps shot eigenvalues stable") {
    CouplingParams p{-1.0, 0.75, 1.0};
    auto ext = ExtensionParam::unique_extension();
    ShootingConfig loose;
    loose.abs_tol = loose.rel_tol = 1e-9;
    ShootingConfig tight;
    tight.abs_tol = tight.rel_tol = 5e-12;
    auto a = shoot_eigenvalues(p, ext, -0.15, -0.08, loose, 120);
    auto b = shoot_eigenvalues(p, ext, -0.15, -0.08, tight, 120);
    REQUIRE(a.size() == 1);
    REQUIRE(b.size() == 1);
    CHECK(std::abs(a[0] - b[0]) <= 1e-8 * std::abs(b[0]));
}

TEST_CASE("config validation") {
    ShootingConfig bad;
    bad.x_start = 2.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    ShootingConfig bad2;
    bad2.rel_tol = 1.0;
    CHECK_THROWS_AS(bad2.validate(), DomainError);
    CHECK_THROWS_AS(quad_integral([](double) { return 1.0; }, 1.0, 0.0, 1e-8),
                    DomainError);
}
