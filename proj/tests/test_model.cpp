#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "kratzer/model.hpp"

using namespace kratzer;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("classify hits every range with the documented boundaries") {
    auto rc = classify({1.0, 1.0, 1.0});
    CHECK(rc.id == RangeId::R1);
    CHECK(rc.mu.is_real);
    CHECK(rc.mu.magnitude == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-12));
    CHECK(rc.deficiency == std::pair<int, int>{0, 0});

    rc = classify({1.0, 0.0, 1.0});
    CHECK(rc.id == RangeId::R5);
    CHECK(rc.mu.magnitude == doctest::Approx(0.5));

    rc = classify({-1.0, -0.5, 1.0});
    CHECK(rc.id == RangeId::R4);
    CHECK_FALSE(rc.mu.is_real);
    CHECK(rc.mu.magnitude == doctest::Approx(0.5).epsilon(1e-12));

    // boundary points
    CHECK(classify({1.0, 0.75, 1.0}).id == RangeId::R1);
    CHECK(classify({1.0, -0.25, 1.0}).id == RangeId::R3);
    CHECK(classify({1.0, 0.3, 1.0}).id == RangeId::R2);
    CHECK(classify({1.0, -0.1, 1.0}).id == RangeId::R2);

    CHECK_THROWS_AS(classify({0.0, 1.0, 1.0}), InvalidCoupling);
    CHECK_THROWS_AS(classify({1.0, 1.0, -1.0}), InvalidCoupling);
}

TEST_CASE("ranges partition the g2 axis and mu^2 = g2 + 1/4") {
    for (int i = 0; i <= 4000; ++i) {
        double g2 = -3.0 + i * (6.0 / 4000.0);
        auto rc = classify({1.0, g2, 1.0});
        int hits = 0;
        if (g2 >= 0.75) { CHECK(rc.id == RangeId::R1); ++hits; }
        if (g2 < 0.75 && g2 > -0.25 && g2 != 0.0) { CHECK(rc.id == RangeId::R2); ++hits; }
        if (g2 == -0.25) { CHECK(rc.id == RangeId::R3); ++hits; }
        if (g2 < -0.25) { CHECK(rc.id == RangeId::R4); ++hits; }
        if (g2 == 0.0) { CHECK(rc.id == RangeId::R5); ++hits; }
        CHECK(hits == 1);
        CHECK(rc.mu.mu_squared() == doctest::Approx(g2 + 0.25).epsilon(1e-12));
        if (rc.id != RangeId::R1) CHECK(rc.deficiency == std::pair<int, int>{1, 1});
    }
}

TEST_CASE("extension angle canonicalization identifies circle endpoints") {
    auto a = ExtensionParam::make(RangeId::R2, kPi / 2.0);
    auto b = ExtensionParam::make(RangeId::R2, -kPi / 2.0);
    CHECK(a.angle == doctest::Approx(b.angle));
    CHECK(a.angle == doctest::Approx(kPi / 2.0));
    // theta circle [0, pi)
    auto c = ExtensionParam::make(RangeId::R4, kPi);
    CHECK(c.angle == doctest::Approx(0.0));
    auto d = ExtensionParam::make(RangeId::R4, -0.3);
    CHECK(d.angle == doctest::Approx(kPi - 0.3));
    // R1 has no angle
    auto e = ExtensionParam::make(RangeId::R1, 0.123);
    CHECK(e.unique);
    CHECK_THROWS_AS(canonical_angle(RangeId::R1, 0.0), NotApplicable);
}

TEST_CASE("molecule couplings: scaling laws and the CO magnitude") {
    MoleculeInput m;
    m.mass = 1.13850e-26;
    m.dissociation_energy = 1.79843e-18;
    m.equilibrium_separation = 1.12832e-10;
    m.l = 0;
    auto p = molecule_couplings(m);
    CHECK(p.g1 < 0.0);
    CHECK(p.g2 > 3.0e4);
    CHECK(p.g2 < 6.0e4);

    // pure centrifugal term when De -> tiny, l = 2 gives g2 -> 6
    MoleculeInput tiny = m;
    tiny.dissociation_energy = 1e-60;
    tiny.l = 2;
    CHECK(molecule_couplings(tiny).g2 == doctest::Approx(6.0).epsilon(1e-9));

    // doubling a at fixed De quadruples the De a^2 part
    MoleculeInput twice = m;
    twice.equilibrium_separation *= 2.0;
    CHECK(molecule_couplings(twice).g2 ==
          doctest::Approx(4.0 * p.g2).epsilon(1e-12));
    CHECK(molecule_couplings(twice).g1 ==
          doctest::Approx(2.0 * p.g1).epsilon(1e-12));

    MoleculeInput bad = m;
    bad.mass = -1.0;
    CHECK_THROWS_AS(molecule_couplings(bad), DomainError);
}

TEST_CASE("molecule file parses bit-exactly and rejects malformed rows") {
    auto recs = parse_molecule_text(
        "# comment line\n"
        "CO  1.13850e-26  1.79843e-18  1.12832e-10\n"
        "\n"
        "H2 8.36747e-28 7.60550e-19 7.41440e-11 # inline comment\n");
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].name == "CO");
    CHECK(recs[0].mass == 1.13850e-26);
    CHECK(recs[0].dissociation_energy == 1.79843e-18);
    CHECK(recs[0].equilibrium_separation == 1.12832e-10);
    CHECK(recs[1].name == "H2");
    CHECK(recs[1].mass == 8.36747e-28);

    CHECK_THROWS_AS(parse_molecule_text("CO 1.0 2.0\n"), DomainError);
    CHECK_THROWS_AS(parse_molecule_text("CO 1.0 2.0 3.0 4.0\n"), DomainError);

    auto shipped = parse_molecule_file(std::string(KRATZER_SOURCE_DIR) +
                                       "/data/molecules.txt");
    REQUIRE(shipped.size() == 5);
    CHECK(shipped[0].name == "CO");
    auto p = molecule_couplings({shipped[0].mass, shipped[0].dissociation_energy,
                                 shipped[0].equilibrium_separation, 0,
                                 1.054571817e-34});
    CHECK(p.g2 > 3.0e4);
    CHECK(p.g2 < 6.0e4);
}

TEST_CASE("potential profile values and minimum") {
    CouplingParams p{1.0, 1.0, 1.0};
    CHECK(potential_profile(p, {1.0})[0] == doctest::Approx(2.0));
    CHECK(potential_profile({1.0, -1.0, 1.0}, {1.0})[0] == doctest::Approx(0.0));
    // (-1, 1): minimum at x0 = 2 with V(x0) = -1/4
    CouplingParams q{-1.0, 1.0, 1.0};
    auto v = potential_profile(q, {2.0 - 1e-6, 2.0, 2.0 + 1e-6});
    CHECK(v[1] == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(v[0] > v[1]);
    CHECK(v[2] > v[1]);
    CHECK_THROWS_AS(potential_profile(p, {0.0}), DomainError);
    CHECK_THROWS_AS(potential_profile(p, {-1.0}), DomainError);
}
