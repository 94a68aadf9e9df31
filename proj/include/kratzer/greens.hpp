#ifndef KRATZER_GREENS_HPP
#define KRATZER_GREENS_HPP

#include "kratzer/spectral.hpp"

namespace kratzer {

struct GreenSample {
    double x;
    double y;
    cplx W;
    cplx value;
};

// Resolvent kernel G(x, y; W) of the extension's Hamiltonian. Valid for
// Im W != 0 and for real W off the spectrum; throws OnSpectrum inside the
// guard band around a discrete level. Symmetric in (x, y); d/dx jump at
// x = y is -1 in the (-d^2/dx^2 + V - W) G = delta convention.
GreenSample green(const CouplingParams& p, const ExtensionParam& ext, double x,
                  double y, cplx W);

// Omega(W): coefficient of the principal-principal dyad in G; its poles on
// the negative real axis are the discrete levels.
cplx green_omega(const CouplingParams& p, const ExtensionParam& ext, cplx W);

} // namespace kratzer

#endif
