#ifndef KRATZER_MODEL_HPP
#define KRATZER_MODEL_HPP

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "kratzer/errors.hpp"

namespace kratzer {

using cplx = std::complex<double>;

// Couplings of V(x) = g1/x + g2/x^2 plus the fixed reference scale k0.
// Units absorb 2m/hbar^2 = 1; g1 and k0 carry dimension 1/length.
struct CouplingParams {
    double g1 = 1.0;
    double g2 = 1.0;
    double k0 = 1.0;

    void validate() const {
        if (g1 == 0.0) throw InvalidCoupling("g1 must be nonzero");
        if (!(k0 > 0.0)) throw InvalidCoupling("k0 must be positive");
        if (!std::isfinite(g1) || !std::isfinite(g2) || !std::isfinite(k0))
            throw InvalidCoupling("couplings must be finite");
    }
};

enum class RangeId { R1, R2, R3, R4, R5 };

const char* range_name(RangeId id);

// mu = sqrt(g2 + 1/4) when g2 >= -1/4, otherwise i*kappa with
// kappa = sqrt(|g2| - 1/4).
struct MuValue {
    bool is_real = true;
    double magnitude = 0.0;

    cplx value() const {
        return is_real ? cplx(magnitude, 0.0) : cplx(0.0, magnitude);
    }
    // mu^2 = g2 + 1/4 for either kind
    double mu_squared() const {
        return is_real ? magnitude * magnitude : -magnitude * magnitude;
    }
};

struct RangeClass {
    RangeId id;
    MuValue mu;
    std::pair<int, int> deficiency;
};

// One self-adjoint extension: the angle parametrizing the boundary
// condition, or none in the first range. Angles live on a circle:
// nu/vartheta/epsilon in (-pi/2, pi/2] with the endpoints identified,
// theta in [0, pi) likewise.
struct ExtensionParam {
    RangeId range = RangeId::R1;
    bool unique = true;
    double angle = 0.0;

    static ExtensionParam unique_extension() { return {}; }
    static ExtensionParam make(RangeId range, double angle);
};

// Canonical representative of an angle on the range's extension circle.
double canonical_angle(RangeId range, double angle);

RangeClass classify(const CouplingParams& p);

// ---- molecular mapping ---------------------------------------------------

struct MoleculeInput {
    double mass;                    // kg (reduced mass)
    double dissociation_energy;     // J
    double equilibrium_separation;  // m
    int l = 0;
    double hbar = 1.054571817e-34;  // J s

    void validate() const;
};

// g1 = -(4m/hbar^2) De a,  g2 = (2m/hbar^2) De a^2 + l(l+1); k0 = 1.
CouplingParams molecule_couplings(const MoleculeInput& m);

struct MoleculeRecord {
    std::string name;
    double mass;              // kg
    double dissociation_energy;  // J
    double equilibrium_separation;  // m
};

// Plain-text constants file: one record per line,
//   name  mass_kg  De_J  a_m
// '#' starts a comment. Throws DomainError on malformed input.
std::vector<MoleculeRecord> parse_molecule_file(const std::string& path);
std::vector<MoleculeRecord> parse_molecule_text(const std::string& text);

// V(x) on a grid; every x must be positive.
std::vector<double> potential_profile(const CouplingParams& p,
                                      const std::vector<double>& x_grid);

} // namespace kratzer

#endif
