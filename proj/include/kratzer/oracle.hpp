#ifndef KRATZER_ORACLE_HPP
#define KRATZER_ORACLE_HPP

#include <functional>
#include <vector>

#include "kratzer/model.hpp"

namespace kratzer {

// Closed-form-independent verification tools: high-order integration of the
// radial equation seeded by origin power series, shooting for eigenvalues,
// and adaptive quadrature for orthonormality checks. Nothing here touches
// the hypergeometric machinery.

struct ShootingConfig {
    double x_start = 1e-4;
    double x_match = 1.0;
    double x_far = 40.0;
    double abs_tol = 1e-11;
    double rel_tol = 1e-11;
    int max_steps = 4000000;

    void validate() const {
        if (!(0.0 < x_start && x_start < x_match && x_match < x_far))
            throw DomainError("shooting config: need 0 < x_start < x_match < x_far");
        if (!(abs_tol > 0.0 && abs_tol <= 1e-4 && rel_tol > 0.0 && rel_tol <= 1e-4))
            throw DomainError("shooting config: tolerances must lie in (0, 1e-4]");
    }
};

struct OdePoint {
    double x;
    double psi;
    double dpsi;
};

// Origin seed for the principal (boundary-condition) solution of the
// extension, from independent Frobenius recursions of the radial equation.
OdePoint origin_series_seed(const CouplingParams& p, const ExtensionParam& ext,
                            double x, double W, int terms = 16);

// Integrate the principal solution from cfg.x_start and sample it on the
// given increasing grid (all points in [cfg.x_start, cfg.x_far]).
std::vector<OdePoint> integrate_solution(const CouplingParams& p,
                                         const ExtensionParam& ext, double W,
                                         const ShootingConfig& cfg,
                                         const std::vector<double>& grid);

// Eigenvalues in (window_lo, window_hi), window_hi <= 0, located by matching
// the origin-seeded solution against the decaying solution integrated inward.
std::vector<double> shoot_eigenvalues(const CouplingParams& p,
                                      const ExtensionParam& ext,
                                      double window_lo, double window_hi,
                                      const ShootingConfig& cfg,
                                      int scan_points = 600);

// Adaptive Gauss-Kronrod integral of fa*fb over (a, b) with endpoint care.
// Throws NonConvergence (with the achieved error in the message) if the
// panel budget cannot reach tol.
double quad_inner_product(const std::function<double(double)>& fa,
                          const std::function<double(double)>& fb, double a,
                          double b, double tol);

double quad_integral(const std::function<double(double)>& f, double a, double b,
                     double tol);

} // namespace kratzer

#endif
