#ifndef KRATZER_SPECTRAL_HPP
#define KRATZER_SPECTRAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "kratzer/basis.hpp"

namespace kratzer {

struct DiscreteLevel {
    int n;
    double energy;          // < 0, or 0 for the threshold eigenvalue
    double weight_Q;        // U_n(x) = Q * principal(x; E_n)
    double bracket_lo;
    double bracket_hi;
};

struct ContinuumSample {
    double E;
    double density;
};

struct SpectrumReport {
    CouplingParams params;
    RangeClass range;
    ExtensionParam ext;
    std::vector<ContinuumSample> continuum;   // support [0, inf)
    std::vector<DiscreteLevel> discrete;
    std::optional<double> zero_mode_weight;   // delta weight at E = 0
    std::vector<std::string> notes;
};

enum class CharacteristicTag { F2nu, Omega3, Theta, Omega5, ClosedForm };

// Real-valued characteristic function on E < 0. Zeros are the discrete
// levels (Theta: crossings of pi/2 + pi n); poles sit at the endpoint
// spectrum of the range.
class CharacteristicFn {
  public:
    static CharacteristicFn make(const CouplingParams& p,
                                 const ExtensionParam& ext);

    CharacteristicTag tag() const { return tag_; }
    const CouplingParams& params() const { return p_; }
    const ExtensionParam& ext() const { return ext_; }

    // value/derivative at E < 0; PoleProximity within 1e-10 of a pole.
    double value(double E) const;
    double derivative(double E) const;

    // Endpoint-spectrum pole ladder; poles with index >= 0 while the pole
    // energy stays below `floor`. Empty when g1 > 0.
    std::vector<double> poles_above(double floor, int max_count) const;

  private:
    CharacteristicTag tag_ = CharacteristicTag::ClosedForm;
    CouplingParams p_;
    ExtensionParam ext_;
    double mu_ = 0.0;     // real ranges
    double kappa_ = 0.0;  // fourth range
};

double characteristic_value(const CharacteristicFn& cf, double E);

// sigma'(E) for E >= 0 (E = 0 where the limit exists; ThresholdCase at the
// threshold extension).
double continuum_density(const CouplingParams& p, const ExtensionParam& ext,
                         double E);

// The extension angle at which E = 0 joins the spectrum (g1 > 0 only).
double threshold_param(const CouplingParams& p);

enum class ClosedFormVariant { R1, R2_endpoint, R3_endpoint, R5_endpoint,
                               R2_nu0_mirror };

// Endpoint/closed-form spectra: E_n and the displayed normalizations.
// Empty for g1 >= 0.
std::vector<DiscreteLevel> closed_form_levels(const CouplingParams& p,
                                              ClosedFormVariant variant,
                                              int n_count);

// All roots of the characteristic equation in (e_min, 0), bracketed
// between consecutive poles, with residue weights.
std::vector<DiscreteLevel> discrete_spectrum(const CouplingParams& p,
                                             const ExtensionParam& ext,
                                             double e_min, int n_limit);

// Present exactly when ext sits at threshold_param (within 1e-9 rad).
std::optional<double> zero_energy_eigenvalue(const CouplingParams& p,
                                             const ExtensionParam& ext);

SpectrumReport assemble_spectrum(const CouplingParams& p,
                                 const ExtensionParam& ext, double e_min,
                                 int n_limit,
                                 const std::vector<double>& e_grid);

// ---- shared coefficient machinery (also used by the Green functions) ------

// v1(x;W) = prefactor(W) [ conj_coeff(W) principal(x;W)
//                          + prin_coeff(W) conjugate(x;W) ]
// in the ranges with an extension family; prin_coeff vanishes exactly at
// the discrete levels.
struct ExtensionOmegas {
    cplx prefactor;
    cplx conj_coeff;
    cplx prin_coeff;
};
ExtensionOmegas extension_omegas(const WaveContext& c, const ExtensionParam& ext);

// Normalized bound state U_n(x) = weight_Q * principal(x; E_n), evaluated
// through the recessive representation at large lambda x.
double bound_state(const CouplingParams& p, const ExtensionParam& ext,
                   const DiscreteLevel& level, double x);

// Suggested integration cutoff for norms of the level's eigenfunction.
double bound_state_cutoff(const CouplingParams& p, const DiscreteLevel& level);

} // namespace kratzer

#endif
